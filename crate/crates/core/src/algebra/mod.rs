//! Exact coefficient arithmetic: Laurent polynomials, truncated power
//! series and a few special expansions.

pub mod laurent;
pub mod series;
pub mod special;

pub use laurent::{rat, render_rational, rint, Exps, LaurentPolynomial};
pub use series::{TruncatedSeries, DEFAULT_CAP};
pub use special::{binomial_coeffs, exp_series, x_minus_of_z, x_of_z, ParamSeries};
