//! Special series: the root `x(z)` of `x - 1/x = z`, binomial expansions,
//! and exponentials over the parameter ring `Q[c]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{render_terms, rint};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// Coefficients of `(1 + t)^r` up to `t^n`.
pub fn binomial_coeffs(r: &BigRational, n: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for k in 1..=n {
        c = c * (r - rint(k as i64 - 1)) / rint(k as i64);
        out.push(c.clone());
    }
    out
}

/// `sqrt(1 + z^2/4)` as a series in `var`.
fn radical(var: &str, cap: u32) -> TruncatedSeries {
    let half = BigRational::new(1.into(), 2.into());
    let b = binomial_coeffs(&half, cap / 2);
    let quarter = BigRational::new(1.into(), 4.into());
    let mut coeffs = vec![BigRational::zero(); cap as usize + 1];
    for (k, c) in b.iter().enumerate() {
        coeffs[2 * k] = c * num_traits::pow(quarter.clone(), k);
    }
    TruncatedSeries::from_coeffs(var, cap, &coeffs)
}

/// The root `x(z) = z/2 + sqrt(1 + z^2/4)` of `x - x^-1 = z` with constant
/// term 1, together with its reciprocal `x(z) - z`.
pub fn x_of_z(var: &str, cap: u32) -> (TruncatedSeries, TruncatedSeries) {
    let z = TruncatedSeries::var(&[var], cap, var);
    let x = &radical(var, cap) + &z.scale(&BigRational::new(1.into(), 2.into()));
    let xinv = &x - &z;
    (x, xinv)
}

/// The other root `z/2 - sqrt(1 + z^2/4)` (constant term -1) and its
/// reciprocal.
pub fn x_minus_of_z(var: &str, cap: u32) -> (TruncatedSeries, TruncatedSeries) {
    let z = TruncatedSeries::var(&[var], cap, var);
    let x = &z.scale(&BigRational::new(1.into(), 2.into())) - &radical(var, cap);
    let xinv = &x - &z;
    (x, xinv)
}

/// A power series in `h`, truncated at `h^cap`, whose coefficients are
/// polynomials in a parameter `c`. Keys are `(h-degree, c-degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSeries {
    cap: u32,
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl ParamSeries {
    pub fn zero(cap: u32) -> Self {
        ParamSeries { cap, terms: BTreeMap::new() }
    }

    pub fn one(cap: u32) -> Self {
        Self::monomial(cap, 0, 0, BigRational::one())
    }

    pub fn monomial(cap: u32, h: u32, c: u32, coeff: BigRational) -> Self {
        let mut s = Self::zero(cap);
        s.add_term(h, c, coeff);
        s
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, h: u32, c: u32) -> BigRational {
        self.terms.get(&(h, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, h: u32, c: u32, coeff: BigRational) {
        if coeff.is_zero() || h > self.cap {
            return;
        }
        let e = self.terms.entry((h, c)).or_insert_with(BigRational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&(h, c));
        }
    }

    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        ParamSeries {
            cap,
            terms: self.terms.iter().filter(|((h, _), _)| *h <= cap).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.cap);
        for ((h, c), v) in &self.terms {
            out.add_term(*h, *c, v * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.cap);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse; the `h^0` part must be a nonzero constant.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() || self.terms.keys().any(|&(h, c)| h == 0 && c > 0) {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.recip();
        let mut minus_r = self.scale(&-&inv_c0);
        minus_r.terms.remove(&(0, 0));
        let mut acc = Self::one(self.cap);
        let mut power = Self::one(self.cap);
        for _ in 0..self.cap {
            power = &power * &minus_r;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv_c0))
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    /// Divides by `h^s`, requiring the coefficients below `h^s` to vanish.
    /// The cap drops by `s`.
    pub fn shift_down(&self, s: u32) -> Result<Self> {
        if self.terms.keys().any(|&(h, _)| h < s) {
            return Err(Error::InexactDivision(format!("series not divisible by h^{}", s)));
        }
        let mut out = Self::zero(self.cap.saturating_sub(s));
        for ((h, c), v) in &self.terms {
            out.add_term(h - s, *c, v.clone());
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let monos: Vec<(Vec<(String, i64)>, &BigRational)> = self
            .terms
            .iter()
            .map(|((h, c), v)| {
                let mut m = Vec::new();
                if *c > 0 {
                    m.push(("c".to_string(), *c as i64));
                }
                if *h > 0 {
                    m.push(("h".to_string(), *h as i64));
                }
                (m, v)
            })
            .collect();
        format!("{} + O(h^{})", render_terms(&monos), self.cap + 1)
    }
}

impl fmt::Display for ParamSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a ParamSeries> for &'a ParamSeries {
    type Output = ParamSeries;
    fn add(self, rhs: &ParamSeries) -> ParamSeries {
        let mut out = self.truncate(rhs.cap);
        for ((h, c), v) in &rhs.terms {
            out.add_term(*h, *c, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamSeries> for &'a ParamSeries {
    type Output = ParamSeries;
    fn sub(self, rhs: &ParamSeries) -> ParamSeries {
        let mut out = self.truncate(rhs.cap);
        for ((h, c), v) in &rhs.terms {
            out.add_term(*h, *c, -v);
        }
        out
    }
}

impl<'a> Mul<&'a ParamSeries> for &'a ParamSeries {
    type Output = ParamSeries;
    fn mul(self, rhs: &ParamSeries) -> ParamSeries {
        let cap = self.cap.min(rhs.cap);
        let mut out = ParamSeries::zero(cap);
        for ((ha, ca), va) in &self.terms {
            for ((hb, cb), vb) in &rhs.terms {
                if ha + hb <= cap {
                    out.add_term(ha + hb, ca + cb, va * vb);
                }
            }
        }
        out
    }
}

impl Neg for &ParamSeries {
    type Output = ParamSeries;
    fn neg(self) -> ParamSeries {
        self.scale(&rint(-1))
    }
}

super::laurent::owned_ops!(ParamSeries);

/// `exp((a*c + b) * h)` truncated at `h^cap`.
pub fn exp_series(a: &BigRational, b: &BigRational, cap: u32) -> ParamSeries {
    // t = (a c + b) h
    let mut t = ParamSeries::zero(cap);
    t.add_term(1, 1, a.clone());
    t.add_term(1, 0, b.clone());
    let mut acc = ParamSeries::one(cap);
    let mut power = ParamSeries::one(cap);
    for n in 1..=cap {
        power = (&power * &t).scale(&rint(n as i64).recip());
        acc = &acc + &power;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::rat;

    #[test]
    fn x_of_z_low_order() {
        let (x, _) = x_of_z("z", 2);
        assert_eq!(x, TruncatedSeries::from_coeffs("z", 2, &[rint(1), rat(1, 2), rat(1, 8)]));
        let (x, _) = x_of_z("z", 4);
        assert_eq!(x.coeff(&[3]), rint(0));
        assert_eq!(x.coeff(&[4]), rat(-1, 128));
    }

    #[test]
    fn x_times_reciprocal_is_one() {
        for cap in [0, 1, 5, 12] {
            let (x, xi) = x_of_z("z", cap);
            assert_eq!(&x * &xi, TruncatedSeries::one(&["z"], cap));
            assert_eq!(&x - &xi, TruncatedSeries::var(&["z"], cap, "z").truncate(cap));
            let (xm, xmi) = x_minus_of_z("z", cap);
            assert_eq!(&xm * &xmi, TruncatedSeries::one(&["z"], cap));
        }
    }

    #[test]
    fn exponential_examples() {
        let e = exp_series(&rint(0), &rint(1), 2);
        assert_eq!(e.coeff(0, 0), rint(1));
        assert_eq!(e.coeff(1, 0), rint(1));
        assert_eq!(e.coeff(2, 0), rat(1, 2));
        let p = &exp_series(&rint(0), &rat(1, 2), 8) * &exp_series(&rint(0), &rat(-1, 2), 8);
        assert_eq!(p, ParamSeries::one(8));
        let ec = exp_series(&rat(1, 2), &rint(0), 1);
        assert_eq!(ec, &ParamSeries::one(1) + &ParamSeries::monomial(1, 1, 1, rat(1, 2)));
    }

    #[test]
    fn shift_down_requires_divisibility() {
        let s = ParamSeries::monomial(4, 2, 1, rint(3));
        assert_eq!(s.shift_down(2).unwrap(), ParamSeries::monomial(2, 0, 1, rint(3)));
        assert!(s.shift_down(3).is_err());
    }
}
