//! Skein-theoretic evaluation of the Conway, HOMFLY and Dubrovnik
//! polynomials.
//!
//! The evaluator walks components in order from their first edge and
//! looks for a crossing that is first reached along its under-strand.
//! If there is none the diagram is descending, hence a split unlink, and
//! a closed form applies. Otherwise the crossing is switched (one fewer
//! bad crossing) and smoothed (one fewer crossing) and the skein relation
//! combines the branches. Values are memoized on the uncolored canonical
//! code of each diagram.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rint, LaurentPolynomial};
use crate::diagram::{canonical_code, LinkDiagram};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkeinKind {
    /// `∇(L+) - ∇(L-) = z ∇(L0)`, in the variable `z`.
    Conway,
    /// `x H(L+) - x^-1 H(L-) = y H(L0)`, in `x`, `y`.
    Homfly,
    /// Regular-isotopy Dubrovnik polynomial, `D(L+) - D(L-) = y (D(L0) - D(L∞))`.
    Dubrovnik,
}

/// How a memoized diagram was resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Descending diagram evaluated in closed form.
    Base { components: usize, writhe: i64 },
    /// Skein step at the given crossing of the given sign.
    Skein { crossing: usize, sign: i8 },
}

/// One memo entry: the diagram key, how it was resolved, and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinNode {
    pub key: String,
    pub resolution: Resolution,
    pub value: LaurentPolynomial,
}

/// A memoizing evaluator for one polynomial.
pub struct SkeinEngine {
    kind: SkeinKind,
    budget: usize,
    rng: Option<Mutex<ChaCha8Rng>>,
    memo: Mutex<HashMap<String, SkeinNode>>,
    evaluated: AtomicUsize,
}

impl SkeinEngine {
    pub fn new(kind: SkeinKind) -> Self {
        SkeinEngine {
            kind,
            budget: DEFAULT_BUDGET,
            rng: None,
            memo: Mutex::new(HashMap::new()),
            evaluated: AtomicUsize::new(0),
        }
    }

    /// Maximum number of distinct diagrams to evaluate.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Picks the resolved crossing at random (seeded) among all crossings
    /// that violate the descending condition, instead of the first one.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng = Some(Mutex::new(ChaCha8Rng::seed_from_u64(seed)));
        self
    }

    pub fn kind(&self) -> SkeinKind {
        self.kind
    }

    /// Number of distinct diagrams evaluated so far.
    pub fn evaluated(&self) -> usize {
        self.evaluated.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> Vec<SkeinNode> {
        let memo = self.memo.lock().unwrap();
        let mut v: Vec<SkeinNode> = memo.values().cloned().collect();
        v.sort_by(|a, b| a.key.cmp(&b.key));
        v
    }

    pub fn evaluate(&self, d: &LinkDiagram) -> Result<LaurentPolynomial> {
        d.require_classical()?;
        self.eval(d)
    }

    fn eval(&self, d: &LinkDiagram) -> Result<LaurentPolynomial> {
        let key = canonical_code(d, false);
        if let Some(n) = self.memo.lock().unwrap().get(&key) {
            return Ok(n.value.clone());
        }
        if self.evaluated.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let bad = descent_violations(d);
        let (value, resolution) = if bad.is_empty() {
            let m = d.component_count();
            let w = d.writhe();
            (self.base(m, w), Resolution::Base { components: m, writhe: w })
        } else {
            let c = match &self.rng {
                Some(rng) => bad[rng.lock().unwrap().gen_range(0..bad.len())],
                None => bad[0],
            };
            let sign = d.crossings()[c].sign;
            (self.step(d, c, sign)?, Resolution::Skein { crossing: c, sign })
        };
        let mut memo = self.memo.lock().unwrap();
        let node = memo.entry(key.clone()).or_insert(SkeinNode { key, resolution, value: value.clone() });
        debug_assert_eq!(node.value, value);
        Ok(value)
    }

    fn base(&self, m: usize, w: i64) -> LaurentPolynomial {
        let k = (m - 1) as u32;
        match self.kind {
            SkeinKind::Conway => {
                let v = if m == 1 { 1 } else { 0 };
                LaurentPolynomial::constant(&["z"], rint(v))
            }
            SkeinKind::Homfly => homfly_unknot_ratio().pow(k),
            SkeinKind::Dubrovnik => {
                let delta = &LaurentPolynomial::one(&["x", "y"]) + &homfly_unknot_ratio();
                &LaurentPolynomial::monomial(&["x", "y"], &[w as i32, 0], rint(1)) * &delta.pow(k)
            }
        }
    }

    fn step(&self, d: &LinkDiagram, c: usize, sign: i8) -> Result<LaurentPolynomial> {
        let sw = self.eval(&d.switch(c)?)?;
        let sm = self.eval(&d.smooth_oriented(c)?)?;
        let xy = |a: i32, b: i32, k: i64| LaurentPolynomial::monomial(&["x", "y"], &[a, b], rint(k));
        Ok(match (self.kind, sign > 0) {
            (SkeinKind::Conway, pos) => {
                let z = LaurentPolynomial::var(&["z"], "z");
                let t = &z * &sm;
                if pos {
                    &sw + &t
                } else {
                    &sw - &t
                }
            }
            (SkeinKind::Homfly, true) => &(&xy(-2, 0, 1) * &sw) + &(&xy(-1, 1, 1) * &sm),
            (SkeinKind::Homfly, false) => &(&xy(2, 0, 1) * &sw) - &(&xy(1, 1, 1) * &sm),
            (SkeinKind::Dubrovnik, pos) => {
                let inf = self.eval(&d.smooth_infinity(c)?)?;
                let t = &xy(0, 1, 1) * &(&sm - &inf);
                if pos {
                    &sw + &t
                } else {
                    &sw - &t
                }
            }
        })
    }
}

/// `(x - x^-1) / y`, the HOMFLY value of the 2-component unlink.
fn homfly_unknot_ratio() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(&["x", "y"], [(vec![1, -1], rint(1)), (vec![-1, -1], rint(-1))])
}

/// Crossings first reached along their under-strand, in traversal order
/// (components in order, each from its first edge).
pub fn descent_violations(d: &LinkDiagram) -> Vec<usize> {
    let mut seen = vec![false; d.crossing_count()];
    let mut bad = Vec::new();
    for comp in d.components() {
        for &e in &comp.edges {
            if let Some(h) = d.edges()[e].head {
                if !seen[h.crossing] {
                    seen[h.crossing] = true;
                    if h.slot == 0 {
                        bad.push(h.crossing);
                    }
                }
            }
        }
    }
    bad
}

pub fn conway(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    SkeinEngine::new(SkeinKind::Conway).evaluate(d)
}

pub fn homfly(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    SkeinEngine::new(SkeinKind::Homfly).evaluate(d)
}

pub fn dubrovnik(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    SkeinEngine::new(SkeinKind::Dubrovnik).evaluate(d)
}

/// The ambient-isotopy invariant `F = x^{-w} D`.
pub fn kauffman_f(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    kauffman_f_with(&SkeinEngine::new(SkeinKind::Dubrovnik), d)
}

/// [`kauffman_f`] using a caller-supplied Dubrovnik engine.
pub fn kauffman_f_with(engine: &SkeinEngine, d: &LinkDiagram) -> Result<LaurentPolynomial> {
    assert_eq!(engine.kind(), SkeinKind::Dubrovnik, "engine must evaluate the Dubrovnik polynomial");
    let dv = engine.evaluate(d)?;
    Ok(&LaurentPolynomial::monomial(&["x", "y"], &[-(d.writhe() as i32), 0], rint(1)) * &dv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_braid, parse_pd};

    fn z_poly(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(&["z"], c.iter().enumerate().map(|(k, &v)| (vec![k as i32], rint(v))))
    }

    #[test]
    fn small_conway_values() {
        assert_eq!(conway(&LinkDiagram::unknot()).unwrap(), z_poly(&[1]));
        let hopf = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(conway(&hopf).unwrap(), z_poly(&[0, 1]));
        let tref = braid_closure(&parse_braid("braid(2): s1 s1 s1").unwrap(), None).unwrap();
        assert_eq!(conway(&tref).unwrap(), z_poly(&[1, 0, 1]));
        assert_eq!(conway(&LinkDiagram::unlink(2)).unwrap(), z_poly(&[0]));
    }

    #[test]
    fn unknot_values() {
        let u = LinkDiagram::unknot();
        assert_eq!(homfly(&u).unwrap(), LaurentPolynomial::one(&["x", "y"]));
        assert_eq!(kauffman_f(&u).unwrap(), LaurentPolynomial::one(&["x", "y"]));
        // one-crossing kink
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(kink.component_count(), 1);
        assert_eq!(kauffman_f(&kink).unwrap(), LaurentPolynomial::one(&["x", "y"]));
        assert_eq!(dubrovnik(&kink).unwrap().terms().count(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let tref = braid_closure(&parse_braid("braid(2): s1 s1 s1").unwrap(), None).unwrap();
        let e = SkeinEngine::new(SkeinKind::Conway).with_budget(1);
        assert_eq!(e.evaluate(&tref), Err(Error::BudgetExceeded(1)));
    }
}
