//! Series and decomposition layer on top of the potential function:
//! the power series ℧, the brace decomposition into parts `P_S` and the
//! polynomial ∇̦, starred quotients, the `y = x^2 - 1` expansion for two
//! colors and the exponential expansions of HOMFLY and Kauffman.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alexander::{x_var, PotentialFunction};
use crate::algebra::{exp_series, rat, rint, x_minus_of_z, x_of_z, LaurentPolynomial, ParamSeries, TruncatedSeries};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::skein::SkeinEngine;

pub fn z_var(color: u32) -> String {
    format!("z{}", color)
}

/// Which root of `x - x^-1 = z` is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    /// `sqrt(1 + z^2/4) + z/2`
    Plus,
    /// `-sqrt(1 + z^2/4) + z/2`
    Minus,
}

/// A truncated power series, divided by its variable when `pole` is set.
/// Used for one-variable quantities of knots, such as `z^-1 ∇(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSeries {
    pub series: TruncatedSeries,
    pub pole: bool,
}

impl PoleSeries {
    pub fn plain(series: TruncatedSeries) -> Self {
        PoleSeries { series, pole: false }
    }

    /// Coefficient at the monomial with the given exponents (of the
    /// represented function, so `-1` is allowed when `pole` is set).
    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        let shift = self.pole as i32;
        let e: Option<Vec<u32>> = exps.iter().map(|&k| u32::try_from(k + shift).ok()).collect();
        match e {
            Some(e) => self.series.coeff(&e),
            None => BigRational::zero(),
        }
    }

    /// Highest total degree that is known exactly.
    pub fn known_degree(&self) -> i64 {
        self.series.cap() as i64 - self.pole as i64
    }

    pub fn render(&self) -> String {
        if !self.pole {
            return self.series.render();
        }
        let v = self.series.vars().first().cloned().unwrap_or_else(|| "z".into());
        let p = self.series.to_laurent();
        let shifted = &p * &LaurentPolynomial::monomial(&[v.as_str()], &[-1], rint(1));
        format!("{} + O({})", shifted.render(), self.series.cap())
    }
}

/// Substitutes `x_i -> x(z_i)`, `x_i^-1 -> x(z_i) - z_i` into a Laurent
/// polynomial in `x{c}` variables.
pub fn substitute_root(p: &LaurentPolynomial, cap: u32, root: Root) -> TruncatedSeries {
    let zvars: Vec<String> = p.vars().iter().map(|v| format!("z{}", &v[1..])).collect();
    let mut pos: Vec<Vec<TruncatedSeries>> = Vec::new();
    let mut neg: Vec<Vec<TruncatedSeries>> = Vec::new();
    for (i, zv) in zvars.iter().enumerate() {
        let (x, xinv) = match root {
            Root::Plus => x_of_z(zv, cap),
            Root::Minus => x_minus_of_z(zv, cap),
        };
        let (x, xinv) = (x.embed(&zvars), xinv.embed(&zvars));
        let (lo, hi) = p.degree_range(&p.vars()[i]).unwrap_or((0, 0));
        let mut pp = vec![TruncatedSeries::one(&zvars, cap)];
        for _ in 0..hi.max(0) {
            let next = pp.last().unwrap() * &x;
            pp.push(next);
        }
        let mut nn = vec![TruncatedSeries::one(&zvars, cap)];
        for _ in 0..(-lo).max(0) {
            let next = nn.last().unwrap() * &xinv;
            nn.push(next);
        }
        pos.push(pp);
        neg.push(nn);
    }
    let mut acc = TruncatedSeries::zero(&zvars, cap);
    for (e, c) in p.terms() {
        let mut t = TruncatedSeries::constant(&zvars, cap, c.clone());
        for (i, &k) in e.iter().enumerate() {
            let f = if k >= 0 { &pos[i][k as usize] } else { &neg[i][(-k) as usize] };
            t = &t * f;
        }
        acc = &acc + &t;
    }
    acc
}

/// The series ℧ with `℧(x_1 - x_1^-1, ...) = Ω(x_1, ...)`, to total
/// degree `cap`.
pub fn mho(omega: &PotentialFunction, cap: u32) -> PoleSeries {
    mho_with_root(omega, cap, Root::Plus)
}

pub fn mho_with_root(omega: &PotentialFunction, cap: u32, root: Root) -> PoleSeries {
    let inner = cap + omega.pole as u32;
    PoleSeries { series: substitute_root(&omega.value, inner, root), pole: omega.pole }
}

/// Brace decomposition `Ω = Σ_S {A_S} P_S({x_1}, ..., {x_n})` over even
/// subsets `S` of the colors, where `A_S = x_{i1} x_{i2}^-1 x_{i3} ...`
/// and `{1} = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    /// Keyed by sorted color lists; every even subset is present.
    pub parts: BTreeMap<Vec<u32>, LaurentPolynomial>,
}

fn even_subsets(n: usize) -> Vec<Vec<u32>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..n as u32).filter(|i| m & (1 << i) != 0).map(|i| i + 1).collect())
        .collect()
}

impl Decomposition {
    pub fn zero(n: usize) -> Self {
        let zv: Vec<String> = (1..=n as u32).map(z_var).collect();
        Decomposition { n, parts: even_subsets(n).into_iter().map(|s| (s, LaurentPolynomial::zero(&zv))).collect() }
    }

    pub fn part(&self, subset: &[u32]) -> &LaurentPolynomial {
        &self.parts[subset]
    }

    fn z_vars(&self) -> Vec<String> {
        (1..=self.n as u32).map(z_var).collect()
    }

    pub fn is_half_integral(&self) -> bool {
        self.parts.values().all(|p| p.is_half_integral())
    }

    pub fn render(&self) -> String {
        let mut out = Vec::new();
        for (s, p) in &self.parts {
            let name: String = s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            out.push(format!("P[{}] = {}", name, p.render()));
        }
        out.join("\n")
    }
}

type Parts = BTreeMap<u32, LaurentPolynomial>;

struct Reducer {
    n: usize,
    zvars: Vec<String>,
    memo: HashMap<Vec<i32>, Parts>,
}

fn add_parts(acc: &mut Parts, other: &Parts, factor: &LaurentPolynomial) {
    for (s, p) in other {
        let t = factor * p;
        let e = acc.entry(*s).or_insert_with(|| LaurentPolynomial::zero(p.vars()));
        *e = &*e + &t;
    }
}

impl Reducer {
    fn z(&self, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(&self.zvars, &self.zvars[i])
    }

    fn c(&self, q: BigRational) -> LaurentPolynomial {
        LaurentPolynomial::constant(&self.zvars, q)
    }

    /// Expresses the brace `{x^e}` in the basis `{A_S} · poly(z)`; parts
    /// are keyed by subset bitmasks.
    fn reduce(&mut self, e: &[i32]) -> Parts {
        if let Some(p) = self.memo.get(e) {
            return p.clone();
        }
        let out = self.reduce_uncached(e);
        self.memo.insert(e.to_vec(), out.clone());
        out
    }

    fn reduce_uncached(&mut self, e: &[i32]) -> Parts {
        let mut out = Parts::new();
        // exponents of size >= 2, through {x_i M} - {x_i^-1 M} = {x_i}{M}
        if let Some(i) = e.iter().position(|k| k.abs() >= 2) {
            let p = e[i];
            let step = p.signum();
            let mut a = e.to_vec();
            a[i] = p - 2 * step;
            let mut b = e.to_vec();
            b[i] = p - step;
            add_parts(&mut out, &self.reduce(&a), &self.c(rint(1)));
            add_parts(&mut out, &self.reduce(&b), &self.z(i).scale(&rint(step as i64)));
            return out;
        }
        let support: Vec<usize> = (0..self.n).filter(|&i| e[i] != 0).collect();
        if support.is_empty() {
            out.insert(0, self.c(rint(1)));
            return out;
        }
        // alternating signs +, -, +, ... along the support
        if let Some(j) = (0..support.len()).find(|&j| e[support[j]] != if j % 2 == 0 { 1 } else { -1 }) {
            let i = support[j];
            let mut flipped = e.to_vec();
            flipped[i] = -e[i];
            let mut rest = e.to_vec();
            rest[i] = 0;
            // {x_i^-1 M} = {x_i M} - {x_i}{M} and {x_i M} = {x_i^-1 M} + {x_i}{M}
            let sign = e[i] as i64;
            add_parts(&mut out, &self.reduce(&flipped), &self.c(rint(1)));
            add_parts(&mut out, &self.reduce(&rest), &self.z(i).scale(&rint(sign)));
            return out;
        }
        if support.len() % 2 == 0 {
            let mask = support.iter().fold(0u32, |m, &i| m | (1 << i));
            out.insert(mask, self.c(rint(1)));
            return out;
        }
        // odd alternating monomial: 2{A} = {A} - {A^-1}, telescoped one
        // sign flip at a time
        let mut cur = e.to_vec();
        for &i in &support {
            let sign = cur[i] as i64;
            let mut rest = cur.clone();
            rest[i] = 0;
            add_parts(&mut out, &self.reduce(&rest), &self.z(i).scale(&rat(sign, 2)));
            cur[i] = -cur[i];
        }
        out
    }
}

/// Decomposes a bar-invariant Laurent polynomial in `x1..xn`.
pub fn decompose_poly(omega: &LaurentPolynomial, n: usize) -> Result<Decomposition> {
    let xvars: Vec<String> = (1..=n as u32).map(x_var).collect();
    let full = &LaurentPolynomial::zero(&xvars) + omega;
    if full.vars().len() != n {
        return Err(Error::Precondition(format!("expected variables x1..x{}", n)));
    }
    if full.bar() != full {
        return Err(Error::NotBarInvariant);
    }
    let zvars: Vec<String> = (1..=n as u32).map(z_var).collect();
    let mut r = Reducer { n, zvars: zvars.clone(), memo: HashMap::new() };
    let mut acc = Parts::new();
    for (e, c) in full.terms() {
        let ne: Vec<i32> = e.iter().map(|k| -k).collect();
        let e = e.to_vec();
        // each pair {M, bar M} is handled once, from its larger member
        if ne > e {
            continue;
        }
        let coef = if ne == e { c / rint(2) } else { c.clone() };
        let red = r.reduce(&e);
        add_parts(&mut acc, &red, &LaurentPolynomial::constant(&zvars, coef));
    }
    let mut dec = Decomposition::zero(n);
    for (mask, p) in acc {
        if mask.count_ones() % 2 == 1 {
            return Err(Error::Precondition("odd subset survived the reduction".into()));
        }
        let key: Vec<u32> = (0..n as u32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        dec.parts.insert(key, p);
    }
    Ok(dec)
}

pub fn decompose(omega: &PotentialFunction) -> Result<Decomposition> {
    if omega.pole {
        return Err(Error::Precondition("decomposition needs at least two components".into()));
    }
    decompose_poly(&omega.value, omega.value.vars().len())
}

/// `{A_S}` for a subset, with `{1} = 2`.
fn brace_of_subset(s: &[u32], xvars: &[String]) -> LaurentPolynomial {
    let exps: Vec<i32> = xvars
        .iter()
        .map(|v| {
            let c: u32 = v[1..].parse().unwrap();
            match s.iter().position(|&k| k == c) {
                Some(p) if p % 2 == 0 => 1,
                Some(_) => -1,
                None => 0,
            }
        })
        .collect();
    LaurentPolynomial::monomial(xvars, &exps, rint(1)).brace()
}

/// Evaluates a polynomial in `z{c}` at `z_c = x_c - x_c^-1`.
pub fn eval_at_braces(p: &LaurentPolynomial, xvars: &[String]) -> LaurentPolynomial {
    let braces: Vec<LaurentPolynomial> = p
        .vars()
        .iter()
        .map(|v| {
            let x = format!("x{}", &v[1..]);
            &LaurentPolynomial::zero(xvars) + &LaurentPolynomial::brace_var(&x)
        })
        .collect();
    let mut acc = LaurentPolynomial::zero(xvars);
    for (e, c) in p.terms() {
        let mut t = LaurentPolynomial::constant(xvars, c.clone());
        for (i, &k) in e.iter().enumerate() {
            assert!(k >= 0, "negative power of z");
            t = &t * &braces[i].pow(k as u32);
        }
        acc = &acc + &t;
    }
    acc
}

pub fn reconstruct(dec: &Decomposition) -> LaurentPolynomial {
    let xvars: Vec<String> = (1..=dec.n as u32).map(x_var).collect();
    let mut acc = LaurentPolynomial::zero(&xvars);
    for (s, p) in &dec.parts {
        if p.is_zero() {
            continue;
        }
        acc = &acc + &(&brace_of_subset(s, &xvars) * &eval_at_braces(p, &xvars));
    }
    acc
}

/// `∇̦ = 2 Σ_S P_S`.
pub fn nabla_bold(dec: &Decomposition) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::zero(&dec.z_vars());
    for p in dec.parts.values() {
        acc = &acc + p;
    }
    acc.scale(&rint(2))
}

/// `(k_i + l_i) mod 2` per color, where `k_i` counts color-`i` components
/// and `l_i` sums linking numbers between color `i` and other colors.
pub fn color_parities(d: &LinkDiagram) -> Vec<u8> {
    let lk = d.linking_matrix();
    let col = d.coloring();
    d.colors()
        .iter()
        .map(|&c| {
            let mut s: i64 = 0;
            for (a, &ca) in col.iter().enumerate() {
                if ca != c {
                    continue;
                }
                s += 1;
                for (b, &cb) in col.iter().enumerate() {
                    if cb != c {
                        s += lk[a][b];
                    }
                }
            }
            s.rem_euclid(2) as u8
        })
        .collect()
}

/// Recovers the decomposition from ∇̦ by sorting every term into the part
/// selected by its parity signature: color `i` is in the subset iff the
/// `z_i`-degree differs in parity from `parities[i]`.
pub fn decomposition_from_nbl(nbl: &LaurentPolynomial, parities: &[u8], m: usize) -> Result<Decomposition> {
    let n = parities.len();
    let zvars: Vec<String> = (1..=n as u32).map(z_var).collect();
    let nbl = &LaurentPolynomial::zero(&zvars) + nbl;
    if nbl.vars().len() != n {
        return Err(Error::Precondition(format!("expected variables z1..z{}", n)));
    }
    let mut dec = Decomposition::zero(n);
    for (e, c) in nbl.terms() {
        let total: i32 = e.iter().sum();
        if (total - m as i32).rem_euclid(2) != 0 {
            return Err(Error::Precondition(format!("term of degree {} has the wrong parity", total)));
        }
        let s: Vec<u32> =
            (0..n).filter(|&i| (e[i].rem_euclid(2) as u8) != parities[i]).map(|i| i as u32 + 1).collect();
        if s.len() % 2 == 1 {
            return Err(Error::Precondition("parity signature matches no even subset".into()));
        }
        let t = LaurentPolynomial::monomial(&zvars, e, c / rint(2));
        let slot = dec.parts.get_mut(&s).unwrap();
        *slot = &*slot + &t;
    }
    Ok(dec)
}

pub fn omega_from_nbl(nbl: &LaurentPolynomial, parities: &[u8], m: usize) -> Result<LaurentPolynomial> {
    Ok(reconstruct(&decomposition_from_nbl(nbl, parities, m)?))
}

/// Conway polynomials of the individual components, in `z`.
pub fn component_conways(d: &LinkDiagram, engine: &SkeinEngine) -> Result<Vec<LaurentPolynomial>> {
    (0..d.component_count()).map(|j| engine.evaluate(&d.sublink(&[j])?)).collect()
}

/// Divides by `Π_j den_j`, each renamed from `z` to the given variable.
pub fn starred_with(numer: &PoleSeries, denominators: &[(LaurentPolynomial, String)]) -> Result<PoleSeries> {
    let cap = numer.series.cap();
    let mut den = TruncatedSeries::one(numer.series.vars(), cap);
    for (p, v) in denominators {
        let p = p.rename_vars(|_| v.clone());
        den = &den * &TruncatedSeries::from_laurent(&p, cap)?;
    }
    if !den.constant_term().is_one() {
        return Err(Error::NotInvertible);
    }
    let q = numer.series.divide(&den)?;
    let q = q.embed(&merge_vars(numer.series.vars(), q.vars()));
    Ok(PoleSeries { series: q.truncate(cap), pole: numer.pole })
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Divides by `Π_j ∇_{K_j}(z_{c(j)})`. With `monochromatic` all
/// denominators use the single variable `z`.
pub fn starred(numer: &PoleSeries, d: &LinkDiagram, engine: &SkeinEngine, monochromatic: bool) -> Result<PoleSeries> {
    let comps = component_conways(d, engine)?;
    let dens: Vec<(LaurentPolynomial, String)> = comps
        .into_iter()
        .zip(d.components())
        .map(|(p, c)| (p, if monochromatic { "z".to_string() } else { z_var(c.color) }))
        .collect();
    starred_with(numer, &dens)
}

/// Where a coefficient table was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConwayStar,
    Mho,
    MhoStar,
    NablaBold,
    NablaBoldStar,
    Traldi,
    HomflyExp,
    KauffmanExp,
    HomflyStarExp,
    KauffmanStarExp,
}

/// Coefficients of a series keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub provenance: Provenance,
    /// Largest total index known exactly.
    pub cap: i64,
    pub entries: BTreeMap<Vec<i32>, BigRational>,
}

impl CoefficientTable {
    pub fn from_pole_series(s: &PoleSeries, provenance: Provenance) -> Self {
        let shift = s.pole as i32;
        let entries = s
            .series
            .terms()
            .map(|(e, c)| (e.iter().map(|&k| k as i32 - shift).collect(), c.clone()))
            .collect();
        CoefficientTable { provenance, cap: s.known_degree(), entries }
    }

    /// Entries `[k, i]` for the coefficient of `h^k c^i`.
    pub fn from_param(s: &ParamSeries, provenance: Provenance) -> Self {
        let entries = s.terms().map(|(&(h, c), v)| (vec![h as i32, c as i32], v.clone())).collect();
        CoefficientTable { provenance, cap: s.cap() as i64, entries }
    }

    pub fn get(&self, idx: &[i32]) -> BigRational {
        self.entries.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn require(&self, provenance: Provenance) -> Result<&Self> {
        if self.provenance != provenance {
            return Err(Error::Precondition(format!(
                "table read from {:?} where {:?} was expected",
                self.provenance, provenance
            )));
        }
        Ok(self)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }
}

/// Expansion of `(x1 x2)^-λ Ω` in `y_i = x_i^2 - 1`, with `λ = 0` for odd
/// and `λ = 1` for even linking number.
pub fn traldi_expand(omega: &PotentialFunction, lk: i64, cap: u32) -> Result<CoefficientTable> {
    if omega.pole || omega.value.vars().len() != 2 {
        return Err(Error::Precondition("expansion needs a two-colored link".into()));
    }
    let lambda = if lk.rem_euclid(2) == 1 { 0 } else { 1 };
    let shifted = omega.value.mul_monomial(&[-lambda, -lambda], &rint(1));
    let yv = ["y1", "y2"];
    let mut acc = TruncatedSeries::zero(&yv, cap);
    let one = TruncatedSeries::one(&yv, cap);
    let base: Vec<TruncatedSeries> = yv.iter().map(|v| &one + &TruncatedSeries::var(&yv, cap, v)).collect();
    let inv: Vec<TruncatedSeries> = base.iter().map(|b| b.invert().unwrap()).collect();
    for (e, c) in shifted.terms() {
        let mut t = TruncatedSeries::constant(&yv, cap, c.clone());
        for i in 0..2 {
            if e[i] % 2 != 0 {
                return Err(Error::Precondition("odd exponent after the λ shift".into()));
            }
            let k = e[i] / 2;
            let f = if k >= 0 { base[i].pow(k as u32) } else { inv[i].pow((-k) as u32) };
            t = &t * &f;
        }
        acc = &acc + &t;
    }
    Ok(CoefficientTable::from_pole_series(&PoleSeries::plain(acc), Provenance::Traldi))
}

fn gcd_of(values: impl Iterator<Item = BigRational>) -> BigRational {
    values.fold(BigRational::zero(), |g, v| {
        let (a, b) = (g.to_integer(), v.to_integer());
        BigRational::from_integer(a.gcd(&b))
    })
}

/// Checks `e_ij ≡ 2(d'_ij + d''_ij) mod E_ij` for `i + j` even, where `d'`
/// and `d''` are the coefficients of `P` and `P_12` and `E_ij` is the gcd of
/// the `e_kl` with `(k, l) < (i, j)`. Returns `(i, j, holds)`.
pub fn traldi_congruences(table: &CoefficientTable, dec: &Decomposition) -> Result<Vec<(i32, i32, bool)>> {
    table.require(Provenance::Traldi)?;
    if dec.n != 2 {
        return Err(Error::Precondition("congruence needs two colors".into()));
    }
    let p = dec.part(&[]);
    let p12 = dec.part(&[1, 2]);
    let mut out = Vec::new();
    for s in (0..=table.cap as i32).step_by(2) {
        for i in 0..=s {
            let j = s - i;
            let e = table.get(&[i, j]);
            let modulus = gcd_of(
                (0..=i)
                    .flat_map(|k| (0..=j).map(move |l| (k, l)))
                    .filter(|&(k, l)| (k, l) != (i, j))
                    .map(|(k, l)| table.get(&[k, l])),
            );
            let rhs = (p.coeff(&[i, j]) + p12.coeff(&[i, j])) * rint(2);
            let diff = e - rhs;
            let holds = if !diff.is_integer() {
                false
            } else if modulus.is_zero() {
                diff.is_zero()
            } else {
                (diff.to_integer() % modulus.to_integer()).is_zero()
            };
            out.push((i, j, holds));
        }
    }
    Ok(out)
}

/// `e^{h/2} - e^{-h/2}` divided by `h`.
fn y_over_h(cap: u32) -> ParamSeries {
    let y = &exp_series(&rint(0), &rat(1, 2), cap + 1) - &exp_series(&rint(0), &rat(-1, 2), cap + 1);
    y.shift_down(1).unwrap().truncate(cap)
}

/// Substitutes `x -> X`, `x^-1 -> Xinv`, `y -> e^{h/2} - e^{-h/2}` into a
/// polynomial in `x`, `y`; negative powers of `y` are cleared through
/// the factor `h`.
fn exp_substitute(p: &LaurentPolynomial, cap: u32, a: BigRational, b: BigRational) -> ParamSeries {
    let xi = p.index_of("x");
    let yi = p.index_of("y");
    let ymin = yi.and_then(|i| p.terms().map(|(e, _)| e[i]).min()).unwrap_or(0).min(0);
    let s = (-ymin) as u32;
    let work = cap + s;
    let x = exp_series(&a, &b, work);
    let xinv = exp_series(&-a, &-b, work);
    let u = y_over_h(work);
    let powers = |base: &ParamSeries, n: u32| {
        let mut v = vec![ParamSeries::one(work)];
        for _ in 0..n {
            let next = v.last().unwrap() * base;
            v.push(next);
        }
        v
    };
    let (xlo, xhi) = xi.and_then(|i| p.degree_range(&p.vars()[i])).unwrap_or((0, 0));
    let ymax = yi.and_then(|i| p.terms().map(|(e, _)| e[i]).max()).unwrap_or(0).max(0);
    let xp = powers(&x, xhi.max(0) as u32);
    let xn = powers(&xinv, (-xlo).max(0) as u32);
    let up = powers(&u, ymax as u32 + s);
    let mut acc = ParamSeries::zero(work);
    for (e, c) in p.terms() {
        let kx = xi.map(|i| e[i]).unwrap_or(0);
        let ky = (yi.map(|i| e[i]).unwrap_or(0) + s as i32) as u32;
        let xf = if kx >= 0 { &xp[kx as usize] } else { &xn[(-kx) as usize] };
        // y^ky = h^ky u^ky
        let yf = &ParamSeries::monomial(work, ky, 0, c.clone()) * &up[ky as usize];
        acc = &acc + &(xf * &yf);
    }
    let shifted = acc.shift_down(s).expect("negative powers of y must cancel");
    let q = shifted.divide(&up[s as usize].truncate(shifted.cap())).unwrap();
    q.truncate(cap)
}

/// `H(e^{ch/2}, e^{h/2} - e^{-h/2})` to order `h^cap`.
pub fn homfly_exp(h: &LaurentPolynomial, cap: u32) -> ParamSeries {
    exp_substitute(h, cap, rat(1, 2), rint(0))
}

/// `F(e^{(c-1)h/2}, e^{h/2} - e^{-h/2})` to order `h^cap`.
pub fn kauffman_exp(f: &LaurentPolynomial, cap: u32) -> ParamSeries {
    exp_substitute(f, cap, rat(1, 2), rat(-1, 2))
}

pub fn exp_expand_homfly(h: &LaurentPolynomial, cap: u32) -> CoefficientTable {
    CoefficientTable::from_param(&homfly_exp(h, cap), Provenance::HomflyExp)
}

pub fn exp_expand_kauffman(f: &LaurentPolynomial, cap: u32) -> CoefficientTable {
    CoefficientTable::from_param(&kauffman_exp(f, cap), Provenance::KauffmanExp)
}

/// Quotient of the expanded link polynomial by the expanded polynomials
/// of its components.
pub fn exp_starred(link: &ParamSeries, components: &[ParamSeries]) -> Result<ParamSeries> {
    let mut den = ParamSeries::one(link.cap());
    for c in components {
        den = &den * c;
    }
    link.divide(&den)
}

/// `H*` after the exponential substitution.
pub fn homfly_star_exp(d: &LinkDiagram, engine: &SkeinEngine, cap: u32) -> Result<ParamSeries> {
    let h = engine.evaluate(d)?;
    let comps: Vec<ParamSeries> = (0..d.component_count())
        .map(|j| Ok(homfly_exp(&engine.evaluate(&d.sublink(&[j])?)?, cap)))
        .collect::<Result<_>>()?;
    exp_starred(&homfly_exp(&h, cap), &comps)
}

/// `F*` after the exponential substitution.
pub fn kauffman_star_exp(d: &LinkDiagram, engine: &SkeinEngine, cap: u32) -> Result<ParamSeries> {
    let f = crate::skein::kauffman_f_with(engine, d)?;
    let comps: Vec<ParamSeries> = (0..d.component_count())
        .map(|j| Ok(kauffman_exp(&crate::skein::kauffman_f_with(engine, &d.sublink(&[j])?)?, cap)))
        .collect::<Result<_>>()?;
    exp_starred(&kauffman_exp(&f, cap), &comps)
}

/// Rational with the absolute value used by parity checks.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::potential_function;
    use crate::diagram::parse_diagram;

    fn xs(n: usize) -> Vec<String> {
        (1..=n as u32).map(x_var).collect()
    }

    #[test]
    fn hopf_decomposition() {
        let omega = LaurentPolynomial::one(&xs(2));
        let d = decompose_poly(&omega, 2).unwrap();
        assert_eq!(d.part(&[]), &LaurentPolynomial::constant(&["z1", "z2"], rat(1, 2)));
        assert!(d.part(&[1, 2]).is_zero());
        assert_eq!(reconstruct(&d), omega);
        assert_eq!(nabla_bold(&d), LaurentPolynomial::one(&["z1", "z2"]));
    }

    #[test]
    fn borromean_decomposition() {
        let x = xs(3);
        let omega = &(&LaurentPolynomial::brace_var("x1") * &LaurentPolynomial::brace_var("x2"))
            * &LaurentPolynomial::brace_var("x3");
        let d = decompose_poly(&omega, 3).unwrap();
        let z = ["z1", "z2", "z3"];
        assert_eq!(d.part(&[]), &LaurentPolynomial::monomial(&z, &[1, 1, 1], rat(1, 2)));
        for s in [[1u32, 2], [1, 3], [2, 3]] {
            assert!(d.part(&s).is_zero());
        }
        assert_eq!(reconstruct(&d), &LaurentPolynomial::zero(&x) + &omega);
    }

    #[test]
    fn odd_and_high_powers_round_trip() {
        let x = xs(3);
        for e in [[3, 0, 0], [1, 1, 1], [2, -1, 0], [1, 1, -2], [0, 0, 0], [-1, 2, 3]] {
            let m = LaurentPolynomial::monomial(&x, &e, rint(1)).brace();
            let d = decompose_poly(&m, 3).unwrap();
            assert_eq!(reconstruct(&d), m, "{:?}", e);
            assert!(d.is_half_integral());
        }
        assert!(matches!(decompose_poly(&LaurentPolynomial::var(&x, "x1"), 3), Err(Error::NotBarInvariant)));
    }

    #[test]
    fn mho_examples() {
        let tref = potential_function(&parse_diagram("braid(2): s1 s1 s1").unwrap()).unwrap();
        let m = mho(&tref, 6);
        assert_eq!(m.coeff(&[-1]), rint(1));
        assert_eq!(m.coeff(&[1]), rint(1));
        assert_eq!(m.coeff(&[3]), rint(0));
        assert_eq!(m, mho_with_root(&tref, 6, Root::Minus));
        let borr = potential_function(&parse_diagram("braid(3): s1 -s2 s1 -s2 s1 -s2 colors: [1,2,3]").unwrap()).unwrap();
        let m = mho(&borr, 6);
        assert_eq!(m.series.to_laurent(), LaurentPolynomial::monomial(&["z1", "z2", "z3"], &[1, 1, 1], rint(1)));
    }

    #[test]
    fn exp_expansions_of_trivial_links() {
        let one = LaurentPolynomial::one(&["x", "y"]);
        let t = exp_expand_homfly(&one, 4);
        assert_eq!(t.get(&[0, 0]), rint(1));
        assert_eq!(t.entries.len(), 1);
        // two-component unlink: (x - x^-1)/y
        let u2 = LaurentPolynomial::from_terms(&["x", "y"], [(vec![1, -1], rint(1)), (vec![-1, -1], rint(-1))]);
        let t = exp_expand_homfly(&u2, 4);
        assert_eq!(t.get(&[0, 1]), rint(1));
        assert_eq!(t.get(&[0, 0]), rint(0));
    }

    #[test]
    fn hopf_traldi() {
        let h = potential_function(&parse_diagram("braid(2): s1 s1 colors: [1,2]").unwrap()).unwrap();
        let t = traldi_expand(&h, 1, 6).unwrap();
        assert_eq!(t.get(&[0, 0]), rint(1));
        assert_eq!(t.entries.len(), 1);
        let d = decompose(&h).unwrap();
        assert!(traldi_congruences(&t, &d).unwrap().iter().all(|c| c.2));
    }
}
