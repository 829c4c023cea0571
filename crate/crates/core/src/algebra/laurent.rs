//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial; entries may be negative.
pub type Exps = SmallVec<[i32; 4]>;

/// An exact Laurent polynomial in named variables.
///
/// Terms with zero coefficient are never stored and every exponent vector
/// has one entry per variable. Binary operations on polynomials over
/// different variable lists first embed both operands into the union of
/// the two lists, sorted lexicographically.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Exps, BigRational>,
}

pub(crate) fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let set: BTreeSet<&String> = a.iter().chain(b.iter()).collect();
    set.into_iter().cloned().collect()
}

impl LaurentPolynomial {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        LaurentPolynomial {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        let e: Exps = SmallVec::from_elem(0, p.vars.len());
        p.add_term(e, c);
        p
    }

    /// The single variable `name` as a polynomial in `vars`.
    ///
    /// Panics if `name` is not one of `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name).expect("variable not in list");
        let mut e: Exps = SmallVec::from_elem(0, p.vars.len());
        e[idx] = 1;
        p.add_term(e, BigRational::one());
        p
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[i32], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent arity mismatch");
        p.add_term(Exps::from_slice(exps), c);
        p
    }

    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(Exps::from_vec(e), c);
        }
        p
    }

    /// `x - x^-1` in the single variable `name`.
    pub fn brace_var(name: &str) -> Self {
        Self::from_terms(&[name], [(vec![1], rint(1)), (vec![-1], rint(-1))])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs;
    /// unnamed variables have exponent zero.
    pub fn coeff_of(&self, mono: &[(&str, i32)]) -> BigRational {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in mono {
            match self.index_of(name) {
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

    pub(crate) fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
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

    /// Re-expresses `self` over `vars`, which must contain every variable
    /// of `self`.
    pub fn embed(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embedding must be into a superset"))
            .collect();
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne: Exps = SmallVec::from_elem(0, vars.len());
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            (a.clone(), b.clone())
        } else {
            let u = union_vars(&a.vars, &b.vars);
            (a.embed(&u), b.embed(&u))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[i32], c: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, k) in &self.terms {
            let ne: Exps = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f(x_1, ..., x_n) -> f(-x_1^-1, ..., -x_n^-1)`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let deg: i32 = e.iter().sum();
            let ne: Exps = e.iter().map(|k| -k).collect();
            let c = if deg.rem_euclid(2) == 1 { -c } else { c.clone() };
            out.terms.insert(ne, c);
        }
        out
    }

    /// `f + bar(f)`.
    pub fn brace(&self) -> Self {
        self + &self.bar()
    }

    /// `f - bar(f)`.
    pub fn bracket(&self) -> Self {
        self - &self.bar()
    }

    /// `f(x_1, ..., x_n) -> f(x_1^-1, ..., x_n^-1)`.
    pub fn invert_vars(&self) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|k| -k).collect(), c.clone()))
                .collect(),
        }
    }

    /// Renames variables; variables mapped to the same name are identified
    /// (their exponents add). The result's variables are sorted.
    pub fn rename_vars<F: Fn(&str) -> String>(&self, f: F) -> Self {
        let names: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        let target: Vec<String> = names.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let map: Vec<usize> = names
            .iter()
            .map(|n| target.iter().position(|t| t == n).unwrap())
            .collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut ne: Exps = SmallVec::from_elem(0, target.len());
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Multiplies every exponent by `k` (for instance `t -> x^2`).
    pub fn scale_exponents(&self, k: i32) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| a * k).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `value` for variable `name` and drops it from the
    /// variable list. Only `value = 1` or `-1` keeps integer exponents
    /// meaningful; any rational is accepted.
    pub fn substitute_const(&self, name: &str, value: &BigRational) -> Self {
        let Some(idx) = self.index_of(name) else {
            return self.clone();
        };
        let vars: Vec<String> = self.vars.iter().filter(|v| v.as_str() != name).cloned().collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            let k = e[idx];
            let factor = rpow(value, k);
            let ne: Exps = e.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, &a)| a).collect();
            out.add_term(ne, c * factor);
        }
        out
    }

    /// Minimum and maximum exponent of `name` among the terms.
    pub fn degree_range(&self, name: &str) -> Option<(i32, i32)> {
        let idx = self.index_of(name)?;
        let mut it = self.terms.keys().map(|e| e[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    pub fn total_degree_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    /// Removes variables that appear with exponent zero in every term.
    pub fn drop_unused_vars(&self) -> Self {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            out.terms.insert(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every coefficient lies in `1/2 Z`.
    pub fn is_half_integral(&self) -> bool {
        let two = rint(2);
        self.terms.values().all(|c| (c * &two).is_integer())
    }

    /// Exact quotient `self / d`, failing if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (f, d) = Self::aligned(self, d);
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if f.is_zero() {
            return Ok(Self::zero(&f.vars));
        }
        let n = f.vars.len();
        let mut lo = vec![0i32; n];
        let mut hi = vec![0i32; n];
        for i in 0..n {
            let (fl, fh) = f.degree_range(&f.vars[i].clone()).unwrap();
            let (dl, dh) = d.degree_range(&d.vars[i].clone()).unwrap();
            lo[i] = fl - dl;
            hi[i] = fh - dh;
            if lo[i] > hi[i] {
                return Err(Error::InexactDivision(format!("degree box empty in {}", f.vars[i])));
            }
        }
        let (lt_d, lc_d) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = f.clone();
        let mut q = Self::zero(&f.vars);
        while let Some((lt_r, lc_r)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exps = lt_r.iter().zip(lt_d.iter()).map(|(a, b)| a - b).collect();
            if qe.iter().enumerate().any(|(i, &k)| k < lo[i] || k > hi[i]) {
                return Err(Error::InexactDivision(format!("{} does not divide {}", d, f)));
            }
            let qc = lc_r / &lc_d;
            let sub = d.mul_monomial(&qe, &qc);
            r = &r - &sub;
            q.add_term(qe, qc);
        }
        Ok(q)
    }

    /// Canonical text rendering: terms by total degree, then exponent
    /// vector lexicographically; coefficients as integers or `p/q`.
    pub fn render(&self) -> String {
        let mut keys: Vec<(&Exps, &BigRational)> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        });
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
        render_terms(&monos)
    }
}

pub(crate) fn render_terms(terms: &[(Vec<(String, i64)>, &BigRational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono_s: Vec<String> = mono
            .iter()
            .map(|(v, k)| if *k == 1 { v.clone() } else { format!("{}^{}", v, k) })
            .collect();
        if mono_s.is_empty() {
            out.push_str(&render_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&render_rational(&abs));
                out.push('*');
            }
            out.push_str(&mono_s.join("*"));
        }
    }
    out
}

pub fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Integer as a rational.
pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a canonical rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rpow(v: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow(v.clone(), k as usize)
    } else {
        num_traits::pow(v.recip(), (-k) as usize)
    }
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            let (a, b) = Self::aligned(self, other);
            a.terms == b.terms
        }
    }
}

impl Eq for LaurentPolynomial {}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (mut a, b) = LaurentPolynomial::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (mut a, b) = LaurentPolynomial::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (a, b) = LaurentPolynomial::aligned(self, rhs);
        let mut out = LaurentPolynomial::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&rint(-1))
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(LaurentPolynomial);

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPolynomial {
        LaurentPolynomial::var(&["x"], "x")
    }

    fn xinv() -> LaurentPolynomial {
        LaurentPolynomial::monomial(&["x"], &[-1], rint(1))
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() - &xinv()) * &(&x() + &xinv());
        let expect = LaurentPolynomial::from_terms(&["x"], [(vec![2], rint(1)), (vec![-2], rint(-1))]);
        assert_eq!(p, expect);
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = &x() + &LaurentPolynomial::constant(&["x"], rat(3, 2));
        assert_eq!(&f + &LaurentPolynomial::zero(&["x"]), f);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(x().bar(), -&xinv());
        let b = LaurentPolynomial::brace_var("x");
        assert_eq!(b.bar(), b);
        let xy = LaurentPolynomial::monomial(&["x", "y"], &[1, -1], rint(1));
        assert_eq!(xy.bar(), LaurentPolynomial::monomial(&["x", "y"], &[-1, 1], rint(1)));
    }

    #[test]
    fn brace_and_bracket_examples() {
        assert_eq!(x().brace(), LaurentPolynomial::brace_var("x"));
        assert_eq!(LaurentPolynomial::one(&["x"]).brace(), LaurentPolynomial::constant(&["x"], rint(2)));
        assert!(LaurentPolynomial::brace_var("x").bracket().is_zero());
    }

    #[test]
    fn alignment_by_name() {
        let a = LaurentPolynomial::var(&["y"], "y");
        let b = LaurentPolynomial::var(&["x"], "x");
        let s = &a + &b;
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s.coeff(&[1, 0]), rint(1));
        assert_eq!(LaurentPolynomial::one(&["x"]), LaurentPolynomial::one(&["x", "y"]));
    }

    #[test]
    fn exact_division() {
        let t = LaurentPolynomial::var(&["t"], "t");
        let one = LaurentPolynomial::one(&["t"]);
        let f = &(&t - &one) * &(&(&t * &t) - &t);
        let q = f.exact_div(&(&t - &one)).unwrap();
        assert_eq!(q, &(&t * &t) - &t);
        assert!(t.exact_div(&(&t - &one)).is_err());
        let y = LaurentPolynomial::var(&["x", "y"], "y");
        let g = LaurentPolynomial::monomial(&["x", "y"], &[3, -2], rint(5));
        assert_eq!(g.exact_div(&y).unwrap(), LaurentPolynomial::monomial(&["x", "y"], &[3, -3], rint(5)));
    }

    #[test]
    fn render_order_and_format() {
        let p = LaurentPolynomial::from_terms(
            &["x"],
            [(vec![2], rint(1)), (vec![0], rint(-1)), (vec![-2], rint(1))],
        );
        assert_eq!(p.render(), "x^-2 - 1 + x^2");
        let q = LaurentPolynomial::monomial(&["z1", "z2", "z3"], &[1, 1, 1], rat(1, 2));
        assert_eq!(q.render(), "1/2*z1*z2*z3");
        assert_eq!(LaurentPolynomial::zero(&["z"]).render(), "0");
    }

    #[test]
    fn substitute_and_rename() {
        let p = LaurentPolynomial::from_terms(&["x1", "x2"], [(vec![1, -1], rint(1)), (vec![-1, 1], rint(1))]);
        assert_eq!(p.rename_vars(|_| "x".into()), LaurentPolynomial::constant(&["x"], rint(2)));
        let s = p.substitute_const("x1", &rint(1));
        assert_eq!(s.vars(), &["x2".to_string()]);
        assert_eq!(s.coeff(&[1]), rint(1));
        assert_eq!(s.coeff(&[-1]), rint(1));
    }
}
