//! Colored finite-type machinery: extending invariants to singular links
//! by the iterated difference `χ(L_s) = χ(L+) - χ(L-)`, falsifying
//! type bounds, and explicit witnesses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::rint;
use crate::diagram::{braid_closure, BraidWord, LinkDiagram, SingularLink};
use crate::error::{Error, Result};
use crate::invariants::{alpha_coeffs, conway_coeffs, series_bundle, Engines};
use crate::transforms::{exp_expand_homfly, exp_expand_kauffman};

type Eval = dyn Fn(&LinkDiagram) -> Result<BigRational> + Send + Sync;

/// A rational-valued invariant of colored links.
#[derive(Clone)]
pub struct InvariantFunction {
    name: String,
    /// Whether the value depends on the coloring (otherwise colors are
    /// ignored by the evaluator).
    colored: bool,
    eval: Arc<Eval>,
}

impl std::fmt::Debug for InvariantFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InvariantFunction").field("name", &self.name).field("colored", &self.colored).finish()
    }
}

fn q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn total_lk(d: &LinkDiagram) -> i64 {
    let lk = d.linking_matrix();
    (0..lk.len()).flat_map(|i| (i + 1..lk.len()).map(move |j| (i, j))).map(|(i, j)| lk[i][j]).sum()
}

impl InvariantFunction {
    pub fn new(
        name: impl Into<String>,
        colored: bool,
        eval: impl Fn(&LinkDiagram) -> Result<BigRational> + Send + Sync + 'static,
    ) -> Self {
        InvariantFunction { name: name.into(), colored, eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn colored(&self) -> bool {
        self.colored
    }

    pub fn eval(&self, d: &LinkDiagram) -> Result<BigRational> {
        (self.eval)(d)
    }

    pub fn constant(v: BigRational) -> Self {
        InvariantFunction::new(format!("const {}", v), false, move |_| Ok(v.clone()))
    }

    /// Total linking number `Σ_{i<j} lk(K_i, K_j)`.
    pub fn linking_number() -> Self {
        InvariantFunction::new("lk", false, |d| Ok(rint(total_lk(d))))
    }

    /// `v = (-1)^lk`.
    pub fn lk_parity() -> Self {
        InvariantFunction::new("(-1)^lk", false, |d| Ok(rint(if total_lk(d) % 2 == 0 { 1 } else { -1 })))
    }

    /// `c_k`, with `∇ = z^{m-1}(c_0 + c_1 z^2 + ...)`.
    pub fn conway_coeff(k: usize, engines: Arc<Engines>) -> Self {
        InvariantFunction::new(format!("c{}", k), false, move |d| {
            let c = conway_coeffs(d, &engines)?;
            Ok(c.get(k).map(q).unwrap_or_else(BigRational::zero))
        })
    }

    /// `α_k` from `∇*`.
    pub fn alpha(k: usize, engines: Arc<Engines>) -> Self {
        InvariantFunction::new(format!("alpha{}", k), false, move |d| {
            let m = d.component_count() as u32;
            let a = alpha_coeffs(d, &engines, m - 1 + 2 * k as u32)?;
            Ok(q(&a[k]))
        })
    }

    /// Coefficient of `℧` at the given monomial in `z_1, ..., z_n` (knots
    /// carry the pole shift, so index `-1` is allowed there).
    pub fn mho_coeff(exponents: Vec<i32>, engines: Arc<Engines>) -> Self {
        let name = format!("mho{:?}", exponents);
        InvariantFunction::new(name, true, move |d| {
            let total: i32 = exponents.iter().sum();
            let cap = total.max(0) as u32;
            let b = series_bundle(d, &engines, cap)?;
            Ok(b.mho.coeff(&exponents))
        })
    }

    /// Sum of the coefficients of `℧` of total degree `n`.
    pub fn mho_degree(n: i32, engines: Arc<Engines>) -> Self {
        InvariantFunction::new(format!("mho_deg{}", n), true, move |d| {
            let b = series_bundle(d, &engines, n.max(0) as u32)?;
            let shift = if b.mho.pole { -1 } else { 0 };
            let mut s = BigRational::zero();
            for (e, c) in b.mho.series.terms() {
                if e.iter().map(|&x| x as i32).sum::<i32>() + shift == n {
                    s += c;
                }
            }
            Ok(s)
        })
    }

    /// `p_{ki}`: coefficient of `h^k c^i` in the exponential expansion of
    /// the HOMFLY polynomial.
    pub fn homfly_p(k: i32, i: i32, engines: Arc<Engines>) -> Self {
        InvariantFunction::new(format!("p{}{}", k, i), false, move |d| {
            let h = engines.homfly.evaluate(d)?;
            Ok(exp_expand_homfly(&h, k.max(0) as u32).get(&[k, i]))
        })
    }

    /// `q_{ki}`: same for the Kauffman polynomial.
    pub fn kauffman_q(k: i32, i: i32, engines: Arc<Engines>) -> Self {
        InvariantFunction::new(format!("q{}{}", k, i), false, move |d| {
            let f = crate::skein::kauffman_f_with(&engines.dubrovnik, d)?;
            Ok(exp_expand_kauffman(&f, k.max(0) as u32).get(&[k, i]))
        })
    }

    /// Pointwise product.
    pub fn product(&self, other: &InvariantFunction) -> Self {
        let (a, b) = (self.clone(), other.clone());
        InvariantFunction::new(format!("{}*{}", self.name, other.name), self.colored || other.colored, move |d| {
            Ok(a.eval(d)? * b.eval(d)?)
        })
    }
}

/// `Σ_ε (-1)^{#minus(ε)} χ(L_ε)` over all resolutions of the double points.
pub fn extend(chi: &InvariantFunction, s: &SingularLink) -> Result<BigRational> {
    s.check_colors()?;
    let k = s.points().len();
    if k > 20 {
        return Err(Error::Precondition(format!("{} double points is too many to resolve", k)));
    }
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << k) {
        let signs: Vec<i8> = (0..k).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
        let v = chi.eval(&s.resolve(&signs))?;
        if mask.count_ones() % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

/// A family member on which the extension does not vanish.
#[derive(Clone, Debug)]
pub struct Witness {
    pub index: usize,
    pub name: Option<String>,
    pub value: BigRational,
}

/// Members of `family` (each with `r + 1` double points) on which `chi`
/// extends to a nonzero value; each one refutes "type ≤ r".
pub fn type_falsify(chi: &InvariantFunction, family: &[SingularLink], r: usize) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for (index, s) in family.iter().enumerate() {
        if s.points().len() != r + 1 {
            return Err(Error::Precondition(format!(
                "family member {} has {} double points, expected {}",
                index,
                s.points().len(),
                r + 1
            )));
        }
        let value = extend(chi, s)?;
        if !value.is_zero() {
            out.push(Witness { index, name: s.base().name().map(str::to_string), value });
        }
    }
    Ok(out)
}

/// `(χψ)(L_s) = χ(L+) ψ(L_s) + χ(L_s) ψ(L-)` at a single double point.
/// Returns both sides.
pub fn leibniz_sides(
    chi: &InvariantFunction,
    psi: &InvariantFunction,
    s: &SingularLink,
) -> Result<(BigRational, BigRational)> {
    if s.points().len() != 1 {
        return Err(Error::Precondition("the product rule is checked at exactly one double point".into()));
    }
    let lhs = extend(&chi.product(psi), s)?;
    let plus = s.resolve(&[1]);
    let minus = s.resolve(&[-1]);
    let rhs = chi.eval(&plus)? * extend(psi, s)? + extend(chi, s)? * psi.eval(&minus)?;
    Ok((lhs, rhs))
}

pub fn leibniz_restrict(chi: &InvariantFunction, psi: &InvariantFunction, s: &SingularLink) -> Result<bool> {
    let (l, r) = leibniz_sides(chi, psi, s)?;
    Ok(l == r)
}

/// `(a+b+c+d)d - (a+c+d)(b+d) - (a+b+d)(c+d) - (b+c+d)(a+d)`.
pub fn alpha2_jump_value(a: i64, b: i64, c: i64, d: i64) -> i64 {
    (a + b + c + d) * d - (a + c + d) * (b + d) - (a + b + d) * (c + d) - (b + c + d) * (a + d)
}

fn clasp(out: &mut Vec<i32>, generator: i32, twists: i64) {
    let g = if twists >= 0 { generator } else { -generator };
    out.extend(std::iter::repeat(g).take(2 * twists.unsigned_abs() as usize));
}

/// A two-component singular link whose first component has three double
/// points with the shadow of the doubled circle, and whose second
/// component links the boundaries of the three lobes and of the central
/// region `a`, `b`, `c`, `d` times. Returns it with the expected value of
/// the extension of `α_2`.
///
/// Built as a 3-braid: strands 1 and 2 carry the doubled circle (its
/// three crossings are the double points), strand 3 clasps the outer arc
/// of each lobe and, for `d`, dips under to clasp the inner arc of the
/// first lobe.
pub fn alpha2_jump_witness(a: i64, b: i64, c: i64, d: i64) -> Result<(SingularLink, BigInt)> {
    if a + b + c + 2 * d != 0 {
        return Err(Error::Precondition(format!("need a + b + c + 2d = 0, got {}", a + b + c + 2 * d)));
    }
    let mut w = vec![1];
    clasp(&mut w, 2, a + d);
    if d != 0 {
        w.extend([2, 1]);
        clasp(&mut w, 1, d);
        w.extend([-1, -2]);
    }
    let second = w.len();
    w.push(1);
    clasp(&mut w, 2, b);
    let third = w.len();
    w.push(1);
    clasp(&mut w, 2, c);
    let braid = BraidWord::new(3, w)?;
    let base = braid_closure(&braid, Some(&[1, 2]))?.with_name(&format!("jump({},{},{},{})", a, b, c, d));
    let s = SingularLink::mark(&base, &[0, second, third])?;
    Ok((s, BigInt::from(alpha2_jump_value(a, b, c, d))))
}

/// The (2, 2n) torus link, one color, with its first `k` crossings marked
/// as double points; `(-1)^lk` extends to `±2^k` on it.
pub fn torus_family(n: usize, k: usize) -> Result<SingularLink> {
    if k > 2 * n {
        return Err(Error::Precondition(format!("only {} crossings to mark", 2 * n)));
    }
    let base = braid_closure(&BraidWord::new(2, vec![1; 2 * n])?, None)?
        .with_name(&format!("T(2,{}) with {} points", 2 * n, k));
    SingularLink::mark(&base, &(0..k).collect::<Vec<_>>())
}

/// `2^k` up to sign.
pub fn is_signed_power_of_two(v: &BigRational, k: u32) -> bool {
    let p = rint(1i64 << k);
    *v == p || *v == -p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn empty_and_single_point_extensions() {
        let hopf = parse_diagram("braid(2): s1 s1").unwrap();
        let lk = InvariantFunction::linking_number();
        let s0 = SingularLink::new(hopf.clone());
        assert_eq!(extend(&lk, &s0).unwrap(), rint(1));
        let s1 = SingularLink::mark(&hopf, &[0]).unwrap();
        assert_eq!(extend(&lk, &s1).unwrap(), rint(1));
        assert!(leibniz_restrict(&lk, &lk, &s1).unwrap());
    }

    #[test]
    fn color_violation_is_reported() {
        let hopf = parse_diagram("braid(2): s1 s1 colors: [1,2]").unwrap();
        let s = SingularLink::mark(&hopf, &[0]).unwrap();
        assert!(matches!(extend(&InvariantFunction::lk_parity(), &s), Err(Error::ColorViolation(0))));
    }

    #[test]
    fn parity_gives_powers_of_two() {
        let v = InvariantFunction::lk_parity();
        for k in 0..=4 {
            let s = torus_family(4, k).unwrap();
            assert!(is_signed_power_of_two(&extend(&v, &s).unwrap(), k as u32), "k = {}", k);
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(alpha2_jump_value(1, 2, -3, 0), 14);
        assert_eq!(alpha2_jump_value(0, 0, 0, 0), 0);
        assert_eq!(alpha2_jump_value(2, 1, -3, 0), alpha2_jump_value(1, 2, -3, 0));
        assert!(alpha2_jump_witness(1, 1, 1, 1).is_err());
    }
}
