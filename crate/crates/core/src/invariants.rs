//! Named numeric invariants read off the series layer, with the
//! cross-identities between them as built-in checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::alexander::{potential_function_with, PotentialFunction, SignProvenance};
use crate::algebra::{render_rational, rint, LaurentPolynomial, TruncatedSeries};
use crate::diagram::{canonical_code, LinkDiagram};
use crate::error::{Error, Result};
use crate::skein::{SkeinEngine, SkeinKind, DEFAULT_BUDGET};
use crate::transforms::{
    self, decompose, mho, nabla_bold, starred, traldi_congruences, traldi_expand, CoefficientTable, Decomposition,
    PoleSeries, Provenance,
};

/// Memoizing skein engines shared by a batch of computations.
pub struct Engines {
    budget: usize,
    pub conway: SkeinEngine,
    pub homfly: SkeinEngine,
    pub dubrovnik: SkeinEngine,
}

impl Engines {
    pub fn new(budget: usize) -> Self {
        Engines {
            budget,
            conway: SkeinEngine::new(SkeinKind::Conway).with_budget(budget),
            homfly: SkeinEngine::new(SkeinKind::Homfly).with_budget(budget),
            dubrovnik: SkeinEngine::new(SkeinKind::Dubrovnik).with_budget(budget),
        }
    }
}

impl Engines {
    pub fn budget(&self) -> usize {
        self.budget
    }
}

impl Default for Engines {
    fn default() -> Self {
        Engines::new(DEFAULT_BUDGET)
    }
}

fn to_int(q: &BigRational) -> BigInt {
    assert!(q.is_integer(), "expected an integer, got {}", q);
    q.to_integer()
}

/// `c_0, c_1, ...` with `∇ = z^{m-1}(c_0 + c_1 z^2 + ...)`.
pub fn conway_coeffs(d: &LinkDiagram, e: &Engines) -> Result<Vec<BigInt>> {
    let nabla = e.conway.evaluate(d)?;
    Ok(split_conway(&nabla, d.component_count()))
}

fn split_conway(nabla: &LaurentPolynomial, m: usize) -> Vec<BigInt> {
    let base = m as i32 - 1;
    let mut out = Vec::new();
    for (ex, c) in nabla.terms() {
        let k = ex.first().copied().unwrap_or(0);
        assert!(k >= base && (k - base) % 2 == 0, "Conway polynomial {} is not of the form z^(m-1) f(z^2)", nabla);
        let i = ((k - base) / 2) as usize;
        if out.len() <= i {
            out.resize(i + 1, BigInt::zero());
        }
        out[i] = to_int(c);
    }
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    out
}

/// `∇* = ∇ / Π ∇_{K_j}(z)` to degree `cap`.
pub fn conway_star(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<TruncatedSeries> {
    let nabla = e.conway.evaluate(d)?;
    let s = TruncatedSeries::from_laurent(&nabla, cap)?;
    Ok(starred(&PoleSeries::plain(s), d, &e.conway, true)?.series)
}

/// `α_0, α_1, ...` read off `∇*`, cross-checked against the recursion
/// `α_i = c_i - (α_{i-1} b_1 + ... + α_0 b_i)`. Covers `z`-degrees up to
/// `cap`.
pub fn alpha_coeffs(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<Vec<BigInt>> {
    let m = d.component_count() as u32;
    let star = conway_star(d, e, cap)?;
    let count = if cap + 1 >= m { ((cap + 1 - m) / 2 + 1) as usize } else { 0 };
    let from_series: Vec<BigInt> = (0..count).map(|i| to_int(&star.coeff(&[m - 1 + 2 * i as u32]))).collect();

    // second route: recursion through the component product
    let c = conway_coeffs(d, e)?;
    let mut prod = LaurentPolynomial::one(&["z"]);
    for j in 0..d.component_count() {
        prod = &prod * &e.conway.evaluate(&d.sublink(&[j])?)?;
    }
    let b = |i: usize| to_int(&prod.coeff(&[2 * i as i32]));
    let mut rec: Vec<BigInt> = Vec::new();
    for i in 0..count {
        let mut v = c.get(i).cloned().unwrap_or_default();
        for j in 1..=i {
            v -= &rec[i - j] * b(j);
        }
        rec.push(v);
    }
    if rec != from_series {
        return Err(Error::BridgeMismatch(format!("α from ∇* {:?} differs from the recursion {:?}", from_series, rec)));
    }
    Ok(from_series)
}

/// Everything derived from the potential function of a colored link.
pub struct SeriesBundle {
    pub omega: PotentialFunction,
    pub mho: PoleSeries,
    pub mho_star: PoleSeries,
    pub decomposition: Option<Decomposition>,
    /// `∇̦`; for knots `z^-1 ∇`, stored as a pole series.
    pub nabla_bold: PoleSeries,
    pub nabla_bold_star: PoleSeries,
}

pub fn series_bundle(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<SeriesBundle> {
    let omega = potential_function_with(d, &e.conway)?;
    let mh = mho(&omega, cap);
    let mho_star = starred(&mh, d, &e.conway, false)?;
    let (decomposition, nbl) = if omega.pole {
        let nabla = e.conway.evaluate(d)?;
        let z = transforms::z_var(d.components()[0].color);
        let s = TruncatedSeries::from_laurent(&nabla.rename_vars(|_| z.clone()), cap + 1)?;
        (None, PoleSeries { series: s, pole: true })
    } else {
        let dec = decompose(&omega)?;
        let nb = nabla_bold(&dec);
        let s = TruncatedSeries::from_laurent(&nb, cap)?;
        (Some(dec), PoleSeries::plain(s))
    };
    let nabla_bold_star = starred(&nbl, d, &e.conway, false)?;
    Ok(SeriesBundle { omega, mho: mh, mho_star, decomposition, nabla_bold: nbl, nabla_bold_star })
}

/// A named check and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

fn check(out: &mut Vec<Check>, name: impl Into<String>, passed: bool) {
    out.push(Check { name: name.into(), passed });
}

/// `c_ij` (from ℧), `α_ij` (from ℧*) and `δ_ij` (from ∇̦*) for a link
/// colored with two colors.
pub struct TwoColorTables {
    pub c: CoefficientTable,
    pub alpha: CoefficientTable,
    pub delta: CoefficientTable,
    pub checks: Vec<Check>,
}

fn lk_total(d: &LinkDiagram) -> i64 {
    let lk = d.linking_matrix();
    let mut s = 0;
    for i in 0..lk.len() {
        for j in i + 1..lk.len() {
            s += lk[i][j];
        }
    }
    s
}

pub fn two_color_tables(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<TwoColorTables> {
    if d.color_count() != 2 {
        return Err(Error::ColoringArity { expected: 2, got: d.color_count() });
    }
    let b = series_bundle(d, e, cap)?;
    two_color_tables_from(d, &b)
}

pub fn two_color_tables_from(d: &LinkDiagram, b: &SeriesBundle) -> Result<TwoColorTables> {
    let c = CoefficientTable::from_pole_series(&b.mho, Provenance::Mho);
    let alpha = CoefficientTable::from_pole_series(&b.mho_star, Provenance::MhoStar);
    let delta = CoefficientTable::from_pole_series(&b.nabla_bold_star, Provenance::NablaBoldStar);
    let mut checks = Vec::new();
    let m = d.component_count();
    if m == 2 {
        let lk = rint(lk_total(d));
        check(&mut checks, "c00 = lk", c.get(&[0, 0]) == lk);
        check(&mut checks, "delta00 = lk", delta.get(&[0, 0]) == lk);
        check(&mut checks, "alpha00 = lk", alpha.get(&[0, 0]) == lk);
        let lk_par = lk_total(d).rem_euclid(2);
        let cap = delta.cap as i32;
        let mut odd_delta = true;
        let mut odd_alpha = true;
        let mut even = true;
        for i in 0..=cap {
            for j in 0..=(cap - i) {
                if (i + j) % 2 == 1 {
                    odd_delta &= delta.get(&[i, j]).is_zero();
                    odd_alpha &= alpha.get(&[i, j]).is_zero();
                } else if (i % 2) as i64 == lk_par && (j % 2) as i64 == lk_par {
                    let v = delta.get(&[i, j]);
                    even &= v.is_integer() && v.to_integer().is_even();
                }
            }
        }
        check(&mut checks, "delta_ij = 0 for odd i+j", odd_delta);
        check(&mut checks, "alpha_ij = 0 for odd i+j", odd_alpha);
        check(&mut checks, "delta_ij even when i, j, lk share parity", even);
        check(&mut checks, "delta integral", delta.is_integral());
    }
    if m == 3 {
        // K1 ∪ K1' of one color and K2 of the other
        let col = d.coloring();
        let lone = (0..3).find(|&i| col.iter().filter(|&&x| x == col[i]).count() == 1);
        if let Some(k2) = lone {
            let pair: Vec<usize> = (0..3).filter(|&i| i != k2).collect();
            let lk = d.linking_matrix();
            let expect = lk[pair[0]][pair[1]] * (lk[pair[0]][k2] + lk[pair[1]][k2]);
            let idx = if col[pair[0]] < col[k2] { [1, 0] } else { [0, 1] };
            check(&mut checks, "c10 = lk(K1,K1')(lk(K1,K2)+lk(K1',K2))", c.get(&idx) == rint(expect));
        }
    }
    Ok(TwoColorTables { c, alpha, delta, checks })
}

fn two_colored(d: &LinkDiagram) -> Result<LinkDiagram> {
    if d.component_count() != 2 {
        return Err(Error::Precondition(format!("expected 2 components, got {}", d.component_count())));
    }
    d.recolor(&[1, 2])
}

/// Which of the paired coefficients `(1, 2k-1)` and `(2k-1, 1)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

fn side_index(k: u32, side: Side) -> [i32; 2] {
    let a = 2 * k as i32 - 1;
    match side {
        Side::Plus => [1, a],
        Side::Minus => [a, 1],
    }
}

fn sign_k(k: u32) -> BigRational {
    if k % 2 == 1 {
        rint(1)
    } else {
        rint(-1)
    }
}

/// Cochran's derived invariant `β^k = (-1)^{k+1} δ_{1,2k-1}`; defined only
/// for linking number zero.
pub fn cochran_beta(d: &LinkDiagram, e: &Engines, k: u32, side: Side) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Precondition("k starts at 1".into()));
    }
    let d2 = two_colored(d)?;
    if lk_total(&d2) != 0 {
        return Err(Error::Undefined(format!("β^{} needs linking number 0", k)));
    }
    let t = two_color_tables(&d2, e, 2 * k)?;
    Ok(to_int(&(sign_k(k) * t.delta.get(&side_index(k, side)))))
}

/// `β̂^k = (-1)^{k+1} α_{1,2k-1}`, defined for every linking number.
pub fn beta_hat(d: &LinkDiagram, e: &Engines, k: u32, side: Side) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Precondition("k starts at 1".into()));
    }
    let d2 = two_colored(d)?;
    let t = two_color_tables(&d2, e, 2 * k)?;
    Ok(sign_k(k) * t.alpha.get(&side_index(k, side)))
}

/// `c_11`, the unoriented generalized Sato-Levine invariant.
pub fn unoriented_sl(d: &LinkDiagram, e: &Engines) -> Result<BigRational> {
    let t = two_color_tables(&two_colored(d)?, e, 2)?;
    Ok(t.c.get(&[1, 1]))
}

/// `2 c_11 / lk^2`.
pub fn casson_walker_surrogate(d: &LinkDiagram, e: &Engines) -> Result<BigRational> {
    let lk = lk_total(d);
    if lk == 0 {
        return Err(Error::Undefined("the surrogate needs nonzero linking number".into()));
    }
    Ok(unoriented_sl(d, e)? * rint(2) / rint(lk * lk))
}

/// `c_11(L) = (α_1(L) + α_1(L')) / 2` with `L'` the link with the second
/// component reversed. Returns both sides.
pub fn reversal_identity(d: &LinkDiagram, e: &Engines) -> Result<(BigRational, BigRational)> {
    let d2 = two_colored(d)?;
    let lhs = unoriented_sl(&d2, e)?;
    let a = alpha_coeffs(&d2, e, 3)?;
    let b = alpha_coeffs(&d2.reverse_component(1)?, e, 3)?;
    let rhs = BigRational::from_integer(&a[1] + &b[1]) / rint(2);
    Ok((lhs, rhs))
}

/// `γ(L) = α_1(L) - Σ α_0(L_0) α_1(L_1)` over ordered pairs of distinct
/// 2-component sublinks.
pub fn gamma3(d: &LinkDiagram, e: &Engines) -> Result<BigRational> {
    if d.component_count() != 3 {
        return Err(Error::Precondition(format!("expected 3 components, got {}", d.component_count())));
    }
    let a = alpha_coeffs(d, e, 4)?;
    let subs: Vec<Vec<BigInt>> = [[0, 1], [0, 2], [1, 2]]
        .iter()
        .map(|p| alpha_coeffs(&d.sublink(p)?, e, 3))
        .collect::<Result<_>>()?;
    let mut g = BigRational::from_integer(a[1].clone());
    for (i, s0) in subs.iter().enumerate() {
        for (j, s1) in subs.iter().enumerate() {
            if i != j {
                g -= BigRational::from_integer(&s0[0] * &s1[1]);
            }
        }
    }
    Ok(g)
}

/// One entry of the congruence report for `δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceEntry {
    pub i: i32,
    pub j: i32,
    pub delta: String,
    /// gcd of the `δ_kl` with `k <= i`, `l <= j`, `k + l < i + j`.
    pub modulus: String,
    pub residue: String,
    /// `δ_ij` is not divisible by the modulus.
    pub nonzero: bool,
    /// For unknotted components: `δ_ij` itself is nonzero.
    pub equality_failure: bool,
}

pub fn congruence_report_from(delta: &CoefficientTable, unknotted: bool) -> Result<Vec<CongruenceEntry>> {
    delta.require(Provenance::NablaBoldStar)?;
    let cap = delta.cap as i32;
    let mut out = Vec::new();
    for s in 0..=cap {
        for i in 0..=s {
            let j = s - i;
            let v = to_int(&delta.get(&[i, j]));
            let mut g = BigInt::zero();
            for k in 0..=i {
                for l in 0..=j {
                    if k + l < i + j {
                        g = g.gcd(&to_int(&delta.get(&[k, l])));
                    }
                }
            }
            let residue = if g.is_zero() { v.clone() } else { v.mod_floor(&g) };
            out.push(CongruenceEntry {
                i,
                j,
                delta: v.to_string(),
                modulus: g.to_string(),
                residue: residue.to_string(),
                nonzero: !residue.is_zero(),
                equality_failure: unknotted && !v.is_zero(),
            });
        }
    }
    Ok(out)
}

pub fn congruence_report(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<Vec<CongruenceEntry>> {
    let d2 = two_colored(d)?;
    let t = two_color_tables(&d2, e, cap)?;
    let unknotted = component_conways_trivial(&d2, e)?;
    congruence_report_from(&t.delta, unknotted)
}

fn component_conways_trivial(d: &LinkDiagram, e: &Engines) -> Result<bool> {
    Ok(transforms::component_conways(d, &e.conway)?.iter().all(|p| *p == LaurentPolynomial::one(&["z"])))
}

/// The chain `ℋ_n`: closure of `σ_1^{2n}`, two components with linking
/// number `n`, colored 1 and 2.
pub fn chain_link(n: u32) -> LinkDiagram {
    let word = vec![1i32; 2 * n as usize];
    let b = crate::diagram::BraidWord::new(2, word).unwrap();
    crate::diagram::braid_closure(&b, Some(&[1, 2])).unwrap().with_name(&format!("H{}", n))
}

fn render_table(t: &CoefficientTable) -> Vec<TableEntry> {
    t.entries.iter().map(|(k, v)| TableEntry { index: k.clone(), value: render_rational(v) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub index: Vec<i32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoColorReport {
    pub c: Vec<TableEntry>,
    pub alpha: Vec<TableEntry>,
    pub delta: Vec<TableEntry>,
    pub traldi: Vec<TableEntry>,
    pub unoriented_sato_levine: String,
    pub casson_walker_surrogate: Option<String>,
    pub beta: Option<Vec<String>>,
    pub beta_hat: Vec<String>,
    pub congruences: Vec<CongruenceEntry>,
    pub checks: Vec<Check>,
    /// Claimed relation of `δ_ij` to Milnor invariants; not computed here.
    pub mu_bar_note: String,
}

/// Full report on a colored link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub schema: String,
    pub name: Option<String>,
    pub key: String,
    pub components: usize,
    pub colors: Vec<u32>,
    pub linking_matrix: Vec<Vec<i64>>,
    pub conway: String,
    pub c: Vec<String>,
    pub alpha: Vec<String>,
    pub omega: String,
    pub omega_denominator: Option<String>,
    pub omega_sign: SignProvenance,
    pub mho: String,
    pub mho_star: String,
    pub decomposition: Vec<(String, String)>,
    pub nabla_bold: String,
    pub nabla_bold_star: String,
    pub homfly: String,
    pub kauffman: String,
    pub gamma: Option<String>,
    pub two_color: Option<TwoColorReport>,
}

pub const REPORT_SCHEMA: &str = "linkinv.report/1";

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn invariant_report(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<InvariantReport> {
    d.require_classical()?;
    let m = d.component_count();
    let conway = e.conway.evaluate(d)?;
    let c = split_conway(&conway, m);
    let alpha = alpha_coeffs(d, e, cap)?;
    let b = series_bundle(d, e, cap)?;
    let homfly = e.homfly.evaluate(d)?;
    let kauffman = crate::skein::kauffman_f_with(&e.dubrovnik, d)?;
    let gamma = if m == 3 { Some(render_rational(&gamma3(d, e)?)) } else { None };

    let two_color = if d.color_count() == 2 {
        let t = two_color_tables_from(d, &b)?;
        let mut checks = t.checks.clone();
        let lk = lk_total(d);
        let mut traldi = Vec::new();
        let mut beta = None;
        let mut beta_hat = Vec::new();
        let mut congruences = Vec::new();
        let mut surrogate = None;
        if m == 2 {
            let tr = traldi_expand(&b.omega, lk, cap)?;
            if let Some(dec) = &b.decomposition {
                let cong = traldi_congruences(&tr, dec)?;
                check(&mut checks, "traldi congruence", cong.iter().all(|x| x.2));
            }
            traldi = render_table(&tr);
            let kmax = (cap + 1) / 2;
            if lk == 0 {
                beta = Some((1..=kmax).map(|k| render_rational(&(sign_k(k) * t.delta.get(&side_index(k, Side::Plus))))).collect());
            }
            beta_hat = (1..=kmax).map(|k| render_rational(&(sign_k(k) * t.alpha.get(&side_index(k, Side::Plus))))).collect();
            congruences = congruence_report_from(&t.delta, component_conways_trivial(d, e)?)?;
            if lk != 0 {
                surrogate = Some(render_rational(&(t.c.get(&[1, 1]) * rint(2) / rint(lk * lk))));
            }
        }
        Some(TwoColorReport {
            c: render_table(&t.c),
            alpha: render_table(&t.alpha),
            delta: render_table(&t.delta),
            traldi,
            unoriented_sato_levine: render_rational(&t.c.get(&[1, 1])),
            casson_walker_surrogate: surrogate,
            beta,
            beta_hat,
            congruences,
            checks,
            mu_bar_note: "delta_ij is expected to lift (-1)^j mu(1..1 2..2) for even i+j; unverified".into(),
        })
    } else {
        None
    };

    let dec = match &b.decomposition {
        Some(dec) => dec
            .parts
            .iter()
            .map(|(s, p)| (format!("{{{}}}", strs(s).join(",")), p.render()))
            .collect(),
        None => Vec::new(),
    };
    let omega_denominator = if b.omega.pole {
        let v = b.omega.value.vars().first().cloned().unwrap_or_else(|| "x".into());
        Some(format!("{} - {}^-1", v, v))
    } else {
        None
    };
    Ok(InvariantReport {
        schema: REPORT_SCHEMA.into(),
        name: d.name().map(|s| s.to_string()),
        key: canonical_code(d, true),
        components: m,
        colors: d.coloring(),
        linking_matrix: d.linking_matrix(),
        conway: conway.render(),
        c: strs(&c),
        alpha: strs(&alpha),
        omega: b.omega.value.render(),
        omega_denominator,
        omega_sign: b.omega.sign,
        mho: b.mho.render(),
        mho_star: b.mho_star.render(),
        decomposition: dec,
        nabla_bold: b.nabla_bold.render(),
        nabla_bold_star: b.nabla_bold_star.render(),
        homfly: homfly.render(),
        kauffman: kauffman.render(),
        gamma,
        two_color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hopf_and_unlink_coefficients() {
        let e = Engines::default();
        let hopf = parse_diagram("braid(2): s1 s1").unwrap();
        assert_eq!(conway_coeffs(&hopf, &e).unwrap(), ints(&[1]));
        assert_eq!(alpha_coeffs(&hopf, &e, 5).unwrap(), ints(&[1, 0, 0]));
        let u = LinkDiagram::unlink(2);
        assert_eq!(alpha_coeffs(&u, &e, 5).unwrap(), ints(&[0, 0, 0]));
    }

    #[test]
    fn hopf_tables() {
        let e = Engines::default();
        let hopf = parse_diagram("braid(2): s1 s1 colors: [1,2]").unwrap();
        let t = two_color_tables(&hopf, &e, 6).unwrap();
        assert!(t.checks.iter().all(|c| c.passed), "{:?}", t.checks);
        assert_eq!(t.c.get(&[0, 0]), rint(1));
        assert!(matches!(cochran_beta(&hopf, &e, 1, Side::Plus), Err(Error::Undefined(_))));
        assert!(beta_hat(&hopf, &e, 1, Side::Plus).is_ok());
    }

    #[test]
    fn delta_patterns_on_small_links() {
        let e = Engines::default();
        let mut links: Vec<LinkDiagram> = (1..=4).map(chain_link).collect();
        links.push(parse_diagram("braid(3): s1 -s2 s1 -s2 -s2 colors: [1,2]").unwrap());
        for d in &links {
            let t = two_color_tables(d, &e, 8).unwrap();
            assert!(t.checks.iter().all(|c| c.passed), "{:?}: {:?}", d.name(), t.checks);
        }
    }

    #[test]
    fn chain_family_cubic_correction() {
        let e = Engines::default();
        for n in 1..=4 {
            let d = chain_link(n);
            let lk = n as i64;
            let c11 = unoriented_sl(&d, &e).unwrap();
            let a1 = BigRational::from_integer(alpha_coeffs(&d, &e, 3).unwrap()[1].clone());
            assert_eq!(c11, a1 - rint(lk * lk * lk - lk) / rint(12), "n = {}", n);
        }
    }
}
