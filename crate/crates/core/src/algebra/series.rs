//! Multivariate power series truncated at a total-degree bound.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::laurent::{render_terms, rint, union_vars, LaurentPolynomial};
use crate::error::{Error, Result};

pub type SExps = SmallVec<[u32; 4]>;

/// Default total-degree cap for series computations.
pub const DEFAULT_CAP: u32 = 12;

/// A power series in named variables, known up to and including total
/// degree `cap`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    cap: u32,
    terms: BTreeMap<SExps, BigRational>,
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl TruncatedSeries {
    pub fn zero<S: AsRef<str>>(vars: &[S], cap: u32) -> Self {
        TruncatedSeries {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S], cap: u32) -> Self {
        Self::constant(vars, cap, BigRational::one())
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], cap: u32, c: BigRational) -> Self {
        let mut s = Self::zero(vars, cap);
        let e: SExps = SmallVec::from_elem(0, s.vars.len());
        s.add_term(e, c);
        s
    }

    pub fn var<S: AsRef<str>>(vars: &[S], cap: u32, name: &str) -> Self {
        let mut s = Self::zero(vars, cap);
        let idx = s.vars.iter().position(|v| v == name).expect("variable not in list");
        let mut e: SExps = SmallVec::from_elem(0, s.vars.len());
        e[idx] = 1;
        s.add_term(e, BigRational::one());
        s
    }

    /// Univariate series from a coefficient list `c_0, c_1, ...`.
    pub fn from_coeffs(var: &str, cap: u32, coeffs: &[BigRational]) -> Self {
        let mut s = Self::zero(&[var], cap);
        for (k, c) in coeffs.iter().enumerate() {
            s.add_term(SmallVec::from_elem(k as u32, 1), c.clone());
        }
        s
    }

    /// Truncates a Laurent polynomial with non-negative exponents.
    pub fn from_laurent(p: &LaurentPolynomial, cap: u32) -> Result<Self> {
        let mut s = Self::zero(p.vars(), cap);
        for (e, c) in p.terms() {
            if e.iter().any(|&k| k < 0) {
                return Err(Error::Precondition(format!("negative exponent in {}", p)));
            }
            s.add_term(e.iter().map(|&k| k as u32).collect(), c.clone());
        }
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SExps, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient at a monomial given as `(variable, exponent)` pairs.
    pub fn coeff_of(&self, mono: &[(&str, u32)]) -> BigRational {
        let mut e = vec![0u32; self.vars.len()];
        for (name, k) in mono {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] = *k,
                None if *k == 0 => {}
                None => return BigRational::zero(),
            }
        }
        self.coeff(&e)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub(crate) fn add_term(&mut self, e: SExps, c: BigRational) {
        if c.is_zero() || deg(&e) > self.cap {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn embed(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embedding must be into a superset"))
            .collect();
        let mut out = Self::zero(vars, self.cap);
        for (e, c) in &self.terms {
            let mut ne: SExps = SmallVec::from_elem(0, vars.len());
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let cap = a.cap.min(b.cap);
        let (mut a, mut b) = if a.vars == b.vars {
            (a.clone(), b.clone())
        } else {
            let u = union_vars(&a.vars, &b.vars);
            (a.embed(&u), b.embed(&u))
        };
        a = a.truncate(cap);
        b = b.truncate(cap);
        (a, b)
    }

    /// Drops every term above total degree `cap` (and lowers the cap).
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        TruncatedSeries {
            vars: self.vars.clone(),
            cap,
            terms: self.terms.iter().filter(|(e, _)| deg(e) <= cap).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        }
        out
    }

    /// Substitutes `factor * v` for each variable `v`.
    pub fn scale_vars(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * num_traits::pow(factor.clone(), deg(e) as usize));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars, self.cap);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse up to the cap.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.recip();
        // s = c0 (1 + r), 1/s = (1/c0) * sum (-r)^k
        let mut minus_r = self.scale(&-&inv_c0);
        let zero: SExps = SmallVec::from_elem(0, self.vars.len());
        minus_r.terms.remove(&zero);
        let mut acc = Self::one(&self.vars, self.cap);
        let mut power = Self::one(&self.vars, self.cap);
        for _ in 0..self.cap {
            power = &power * &minus_r;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv_c0))
    }

    /// `self / other`, requiring an invertible constant term in `other`.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Converts to a Laurent polynomial, forgetting the cap.
    pub fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, c)| (e.iter().map(|&k| k as i32).collect(), c.clone())),
        )
    }

    /// Same ordering and format as [`LaurentPolynomial::render`], followed
    /// by an `O(N)` marker giving the first unknown degree.
    pub fn render(&self) -> String {
        let mut keys: Vec<(&SExps, &BigRational)> = self.terms.iter().collect();
        keys.sort_by(|a, b| deg(a.0).cmp(&deg(b.0)).then_with(|| a.0.cmp(b.0)));
        let monos: Vec<(Vec<(String, i64)>, &BigRational)> = keys
            .into_iter()
            .map(|(e, c)| {
                let m = self
                    .vars
                    .iter()
                    .zip(e.iter())
                    .filter(|(_, &k)| k != 0)
                    .map(|(v, &k)| (v.clone(), k as i64))
                    .collect();
                (m, c)
            })
            .collect();
        format!("{} + O({})", render_terms(&monos), self.cap + 1)
    }
}

impl PartialEq for TruncatedSeries {
    /// Equality up to the smaller of the two caps.
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (mut a, b) = TruncatedSeries::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (mut a, b) = TruncatedSeries::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (a, b) = TruncatedSeries::aligned(self, rhs);
        let cap = a.cap;
        let mut out = TruncatedSeries::zero(&a.vars, cap);
        let bt: Vec<(&SExps, u32, &BigRational)> = b.terms.iter().map(|(e, c)| (e, deg(e), c)).collect();
        for (ea, ca) in &a.terms {
            let da = deg(ea);
            for (eb, db, cb) in &bt {
                if da + db > cap {
                    continue;
                }
                let e: SExps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * *cb);
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&rint(-1))
    }
}

super::laurent::owned_ops!(TruncatedSeries);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::rat;

    #[test]
    fn truncation_discards_high_terms() {
        let z = TruncatedSeries::var(&["z"], 1, "z");
        let s = &TruncatedSeries::one(&["z"], 1) + &z;
        let sq = &s * &s;
        assert_eq!(sq, TruncatedSeries::from_coeffs("z", 1, &[rint(1), rint(2)]));
    }

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::from_coeffs("z", 8, &[rint(1), rint(0), rint(1)]);
        let inv = s.invert().unwrap();
        let expect: Vec<BigRational> = (0..=8).map(|k| if k % 2 == 1 { rint(0) } else if k % 4 == 0 { rint(1) } else { rint(-1) }).collect();
        assert_eq!(inv, TruncatedSeries::from_coeffs("z", 8, &expect));
        assert_eq!(&inv * &s, TruncatedSeries::one(&["z"], 8));
        assert_eq!(TruncatedSeries::one(&["z"], 5).invert().unwrap(), TruncatedSeries::one(&["z"], 5));
    }

    #[test]
    fn zero_constant_term_is_not_invertible() {
        let z = TruncatedSeries::var(&["z"], 4, "z");
        assert_eq!(z.invert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn cap_is_min_of_operands() {
        let a = TruncatedSeries::one(&["z"], 3);
        let b = TruncatedSeries::constant(&["z"], 7, rat(1, 3));
        assert_eq!((&a + &b).cap(), 3);
        assert_eq!((&a * &b).cap(), 3);
    }
}
