//! Multivariable Alexander polynomial through Fox calculus on the
//! Wirtinger presentation, and its normalization to the Conway potential
//! function.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::algebra::{rint, LaurentPolynomial};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::skein;

/// Wirtinger presentation: one generator per over-arc, one relation per
/// crossing. A relation is a word of `(generator, ±1)` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generator_colors: Vec<u32>,
    pub generator_components: Vec<usize>,
    pub relations: Vec<Vec<(usize, i8)>>,
    /// Generator of every edge of the diagram.
    pub edge_generator: Vec<usize>,
}

pub fn t_var(color: u32) -> String {
    format!("t{}", color)
}

pub fn x_var(color: u32) -> String {
    format!("x{}", color)
}

/// Generators are ordered by their lowest edge id. At a positive crossing
/// with over-arc `b`, incoming under-arc `a` and outgoing under-arc `c`
/// the relation is `c b a^-1 b^-1`; at a negative one `c b^-1 a^-1 b`.
pub fn wirtinger(d: &LinkDiagram) -> WirtingerPresentation {
    let ne = d.edges().len();
    let mut parent: Vec<usize> = (0..ne).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for x in d.crossings() {
        let (a, b) = (find(&mut parent, x.slots[1]), find(&mut parent, x.slots[3]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut gen_of_root = BTreeMap::new();
    let mut edge_generator = vec![0; ne];
    let mut generator_colors = Vec::new();
    let mut generator_components = Vec::new();
    for e in 0..ne {
        let r = find(&mut parent, e);
        let g = *gen_of_root.entry(r).or_insert_with(|| {
            let comp = d.edges()[e].component;
            generator_colors.push(d.components()[comp].color);
            generator_components.push(comp);
            generator_colors.len() - 1
        });
        edge_generator[e] = g;
    }
    let relations = d
        .crossings()
        .iter()
        .map(|x| {
            let a = edge_generator[x.slots[0]];
            let c = edge_generator[x.slots[2]];
            let b = edge_generator[x.slots[1]];
            if x.sign > 0 {
                vec![(c, 1), (b, 1), (a, -1), (b, -1)]
            } else {
                vec![(c, 1), (b, -1), (a, -1), (b, 1)]
            }
        })
        .collect();
    WirtingerPresentation { generator_colors, generator_components, relations, edge_generator }
}

impl WirtingerPresentation {
    pub fn variables(&self) -> Vec<String> {
        let mut colors = self.generator_colors.clone();
        colors.sort();
        colors.dedup();
        colors.into_iter().map(t_var).collect()
    }

    fn monomial(&self, vars: &[String], exps: &BTreeMap<u32, i32>) -> LaurentPolynomial {
        let e: Vec<i32> = vars
            .iter()
            .map(|v| {
                let c: u32 = v[1..].parse().unwrap();
                exps.get(&c).copied().unwrap_or(0)
            })
            .collect();
        LaurentPolynomial::monomial(vars, &e, rint(1))
    }

    /// Abelianized Fox derivative of a relation with respect to a generator.
    pub fn fox_derivative(&self, relation: usize, generator: usize) -> LaurentPolynomial {
        let vars = self.variables();
        let mut acc = LaurentPolynomial::zero(&vars);
        let mut prefix: BTreeMap<u32, i32> = BTreeMap::new();
        for &(g, e) in &self.relations[relation] {
            let col = self.generator_colors[g];
            if g == generator {
                if e > 0 {
                    acc = &acc + &self.monomial(&vars, &prefix);
                } else {
                    let mut p = prefix.clone();
                    *p.entry(col).or_default() -= 1;
                    acc = &acc - &self.monomial(&vars, &p);
                }
            }
            *prefix.entry(col).or_default() += e as i32;
        }
        acc
    }

    /// Rows are relations, columns generators.
    pub fn fox_matrix(&self) -> Vec<Vec<LaurentPolynomial>> {
        (0..self.relations.len())
            .map(|r| (0..self.generator_colors.len()).map(|g| self.fox_derivative(r, g)).collect())
            .collect()
    }

    /// `Σ_g (∂r/∂g)(t_g - 1)` for every relation; all zero for a valid
    /// presentation.
    pub fn fundamental_identity_residues(&self) -> Vec<LaurentPolynomial> {
        let vars = self.variables();
        let m = self.fox_matrix();
        m.iter()
            .map(|row| {
                let mut acc = LaurentPolynomial::zero(&vars);
                for (g, entry) in row.iter().enumerate() {
                    let t = LaurentPolynomial::var(&vars, &t_var(self.generator_colors[g]));
                    acc = &acc + &(entry * &(&t - &LaurentPolynomial::one(&vars)));
                }
                acc
            })
            .collect()
    }
}

/// Determinant by expansion over column subsets; cheap for the sparse
/// matrices produced by Fox calculus.
pub fn determinant(m: &[Vec<LaurentPolynomial>], vars: &[String]) -> LaurentPolynomial {
    let k = m.len();
    if k == 0 {
        return LaurentPolynomial::one(vars);
    }
    assert!(k <= 63, "matrix too large");
    let mut layer: HashMap<u64, LaurentPolynomial> = HashMap::new();
    layer.insert(0, LaurentPolynomial::one(vars));
    for row in m {
        let mut next: HashMap<u64, LaurentPolynomial> = HashMap::new();
        for (mask, val) in &layer {
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1 << j) != 0 {
                    continue;
                }
                let inversions = (mask >> (j + 1)).count_ones();
                let mut term = val * entry;
                if inversions % 2 == 1 {
                    term = -term;
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| LaurentPolynomial::zero(vars));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    layer.remove(&((1u64 << k) - 1)).unwrap_or_else(|| LaurentPolynomial::zero(vars))
}

fn has_overpass_only_component(d: &LinkDiagram) -> bool {
    let mut has_under = vec![false; d.component_count()];
    for x in d.crossings() {
        has_under[d.edges()[x.slots[0]].component] = true;
    }
    has_under.iter().any(|h| !h)
}

/// Alexander polynomial in `t{color}` variables, defined up to `±t^a`.
/// Deletes the last generator column and last relation row.
pub fn alexander_poly(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    let w = wirtinger(d);
    let g = w.generator_colors.len();
    let r = w.relations.len();
    alexander_poly_with(d, g.saturating_sub(1), r.saturating_sub(1))
}

/// As [`alexander_poly`] with a chosen deleted generator and relation.
pub fn alexander_poly_with(d: &LinkDiagram, drop_generator: usize, drop_relation: usize) -> Result<LaurentPolynomial> {
    d.require_classical()?;
    let w = wirtinger(d);
    let vars = w.variables();
    let m = d.component_count();
    if has_overpass_only_component(d) {
        // a component lying entirely above the rest splits off
        let v = if m == 1 { 1 } else { 0 };
        return Ok(LaurentPolynomial::constant(&vars, rint(v)));
    }
    let fox = w.fox_matrix();
    let n = fox.len();
    if drop_generator >= n || drop_relation >= n {
        return Err(Error::IndexOutOfRange { index: drop_generator.max(drop_relation), limit: n });
    }
    let minor: Vec<Vec<LaurentPolynomial>> = fox
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != drop_relation)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != drop_generator).map(|(_, e)| e.clone()).collect())
        .collect();
    let det = determinant(&minor, &vars);
    if m == 1 {
        return Ok(det);
    }
    let col = w.generator_colors[drop_generator];
    let t = LaurentPolynomial::var(&vars, &t_var(col));
    det.exact_div(&(&t - &LaurentPolynomial::one(&vars)))
}

/// True if `a = ±t^k b` for some monomial `t^k`.
pub fn equal_up_to_units(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    if a.len() != b.len() {
        return false;
    }
    let (ea, ca) = a.terms().last().map(|(e, c)| (e.to_vec(), c.clone())).unwrap();
    let (eb, cb) = b.terms().last().map(|(e, c)| (e.to_vec(), c.clone())).unwrap();
    let u = union_exps(a, b);
    let shift: Vec<i32> = {
        let ea = align(a, &ea, &u);
        let eb = align(b, &eb, &u);
        ea.iter().zip(&eb).map(|(x, y)| x - y).collect()
    };
    let scale = ca / cb;
    if !(scale.is_one() || (-scale.clone()).is_one()) {
        return false;
    }
    let bb = LaurentPolynomial::zero(&u) + b.clone();
    &bb.mul_monomial(&shift, &scale) == a
}

fn union_exps(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Vec<String> {
    let mut v: Vec<String> = a.vars().iter().chain(b.vars()).cloned().collect();
    v.sort();
    v.dedup();
    v
}

fn align(p: &LaurentPolynomial, e: &[i32], u: &[String]) -> Vec<i32> {
    u.iter().map(|v| p.index_of(v).map(|i| e[i]).unwrap_or(0)).collect()
}

/// How the overall sign of a potential function was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignProvenance {
    ViaConway,
    ViaSublink,
    Ambiguous,
}

/// The Conway potential function in variables `x{color}`.
///
/// For a knot (`pole`) the function is `value / (x - x^-1)` with `x` the
/// knot's color variable; otherwise it is `value` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialFunction {
    pub value: LaurentPolynomial,
    pub pole: bool,
    /// `(color, λ)` pairs.
    pub lambda: Vec<(u32, i32)>,
    pub sign: SignProvenance,
    pub components: usize,
}

impl PotentialFunction {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `(x - x^-1) Ω(x, ..., x)` as a polynomial in `x`.
    pub fn monochromatic_numerator(&self) -> LaurentPolynomial {
        let v = self.value.rename_vars(|_| "x".into());
        if self.pole {
            v
        } else {
            &LaurentPolynomial::brace_var("x") * &v
        }
    }
}

/// Data for fixing the sign through the component-deletion formula:
/// `Ω_L(x_color = 1) = factor · Ω_{L'}`.
#[derive(Clone, Debug)]
pub struct DeletionData {
    pub color: u32,
    pub factor: LaurentPolynomial,
    pub sublink: PotentialFunction,
}

/// `∇(x - x^-1)` for a polynomial in `z`.
pub fn conway_at_brace(nabla: &LaurentPolynomial) -> LaurentPolynomial {
    let zx = LaurentPolynomial::brace_var("x");
    let mut acc = LaurentPolynomial::zero(&["x"]);
    for (e, c) in nabla.terms() {
        let k = e.first().copied().unwrap_or(0);
        assert!(k >= 0, "Conway polynomial has a negative power");
        acc = &acc + &zx.pow(k as u32).scale(c);
    }
    acc
}

/// Normalizes an Alexander polynomial (in `t{color}`) into a potential
/// function. `nabla` and `deletions` are the available sign oracles,
/// tried in that order.
pub fn normalize_potential(
    delta: &LaurentPolynomial,
    m: usize,
    colors: &[u32],
    nabla: Option<&LaurentPolynomial>,
    deletions: &[DeletionData],
) -> Result<PotentialFunction> {
    let xvars: Vec<String> = colors.iter().map(|&c| x_var(c)).collect();
    let pole = m == 1;
    if delta.is_zero() {
        return Ok(PotentialFunction {
            value: LaurentPolynomial::zero(&xvars),
            pole,
            lambda: colors.iter().map(|&c| (c, 0)).collect(),
            sign: SignProvenance::ViaConway,
            components: m,
        });
    }
    let q = delta.rename_vars(|v| format!("x{}", &v[1..])).scale_exponents(2);
    let q = &LaurentPolynomial::zero(&xvars) + &q;
    let mut lambda = Vec::new();
    let mut shift = Vec::new();
    for v in q.vars() {
        let (lo, hi) = q.degree_range(v).unwrap();
        let l = -(lo + hi) / 2;
        shift.push(l);
        lambda.push((v[1..].parse::<u32>().unwrap(), l));
    }
    let q = q.mul_monomial(&shift, &rint(1));
    let parity = if pole || m % 2 == 0 { rint(1) } else { rint(-1) };
    if q.invert_vars() != q.scale(&parity) {
        return Err(Error::NoSymmetrizingShift);
    }
    let mut pf = PotentialFunction { value: q, pole, lambda, sign: SignProvenance::Ambiguous, components: m };

    if let Some(nabla) = nabla {
        let lhs = pf.monochromatic_numerator();
        let rhs = conway_at_brace(nabla);
        if !lhs.is_zero() || !rhs.is_zero() {
            if lhs == rhs {
                pf.sign = SignProvenance::ViaConway;
                return Ok(pf);
            }
            if -&lhs == rhs {
                pf.value = -&pf.value;
                pf.sign = SignProvenance::ViaConway;
                return Ok(pf);
            }
            return Err(Error::BridgeMismatch(format!("(x-x^-1)Ω(x,..,x) = {} but ∇(x-x^-1) = {}", lhs, rhs)));
        }
    }
    for del in deletions {
        let lhs = pf.value.substitute_const(&x_var(del.color), &rint(1));
        let mut rhs = &del.factor * &del.sublink.value;
        let mut lhs = lhs;
        if del.sublink.pole && !pf.pole {
            // clear the knot denominator on the left instead
            let c = del.sublink.value.vars().first().cloned().unwrap_or_else(|| "x".into());
            lhs = &lhs * &LaurentPolynomial::brace_var(&c);
        }
        if del.sublink.sign == SignProvenance::Ambiguous || lhs.is_zero() || rhs.is_zero() {
            continue;
        }
        rhs = &LaurentPolynomial::zero(lhs.vars()) + &rhs;
        if lhs == rhs {
            pf.sign = SignProvenance::ViaSublink;
            return Ok(pf);
        }
        if -&lhs == rhs {
            pf.value = -&pf.value;
            pf.sign = SignProvenance::ViaSublink;
            return Ok(pf);
        }
        return Err(Error::BridgeMismatch(format!("deletion formula fails for color {}", del.color)));
    }
    Ok(pf)
}

/// `x^l - x^-l` for the monomial `Π x_c^{l_c}`.
pub fn deletion_factor(lk_by_color: &[(u32, i64)]) -> LaurentPolynomial {
    let vars: Vec<String> = lk_by_color.iter().map(|(c, _)| x_var(*c)).collect();
    let e: Vec<i32> = lk_by_color.iter().map(|(_, l)| *l as i32).collect();
    let ne: Vec<i32> = e.iter().map(|k| -k).collect();
    &LaurentPolynomial::monomial(&vars, &e, rint(1)) - &LaurentPolynomial::monomial(&vars, &ne, rint(1))
}

/// Linking numbers of component `i` summed per color of the other
/// components.
pub fn linking_by_color(d: &LinkDiagram, i: usize) -> Vec<(u32, i64)> {
    let lk = d.linking_matrix();
    let mut by: BTreeMap<u32, i64> = BTreeMap::new();
    for (j, c) in d.components().iter().enumerate() {
        if j != i {
            *by.entry(c.color).or_default() += lk[i][j];
        }
    }
    by.into_iter().collect()
}

/// Components that are alone in their color.
fn solitary_components(d: &LinkDiagram) -> Vec<usize> {
    let col = d.coloring();
    (0..col.len()).filter(|&i| col.iter().filter(|&&c| c == col[i]).count() == 1).collect()
}

/// The Conway potential function of a colored diagram.
pub fn potential_function(d: &LinkDiagram) -> Result<PotentialFunction> {
    potential_function_with(d, &skein::SkeinEngine::new(skein::SkeinKind::Conway))
}

/// As [`potential_function`] with a caller-supplied Conway engine.
pub fn potential_function_with(d: &LinkDiagram, conway: &skein::SkeinEngine) -> Result<PotentialFunction> {
    let delta = alexander_poly(d)?;
    let nabla = conway.evaluate(d)?;
    let m = d.component_count();
    let colors = d.colors();
    let pf = normalize_potential(&delta, m, &colors, Some(&nabla), &[])?;
    if pf.sign != SignProvenance::Ambiguous {
        return Ok(pf);
    }
    let mut deletions = Vec::new();
    for i in solitary_components(d) {
        let sub = d.delete_component(i)?;
        let sub_pf = potential_function_with(&sub, conway)?;
        deletions.push(DeletionData {
            color: d.components()[i].color,
            factor: deletion_factor(&linking_by_color(d, i)),
            sublink: sub_pf,
        });
    }
    normalize_potential(&delta, m, &colors, Some(&nabla), &deletions)
}

/// The deletion formula `Ω_L(x_i = 1) = (x^l - x^-l) Ω_{L'}` for a
/// component alone in its color.
pub fn deletion_check(omega: &PotentialFunction, d: &LinkDiagram, i: usize) -> Result<bool> {
    d.check_component(i)?;
    if !solitary_components(d).contains(&i) {
        return Err(Error::Precondition(format!("component {} shares its color", i)));
    }
    if omega.pole {
        return Err(Error::Precondition("deletion formula needs at least two components".into()));
    }
    let sub = potential_function(&d.delete_component(i)?)?;
    let color = d.components()[i].color;
    let mut lhs = omega.value.substitute_const(&x_var(color), &rint(1));
    let factor = deletion_factor(&linking_by_color(d, i));
    if sub.pole {
        let c = x_var(d.delete_component(i)?.components()[0].color);
        lhs = &lhs * &LaurentPolynomial::brace_var(&c);
    }
    Ok(lhs == &factor * &sub.value)
}

/// Connected-sum formula `Ω_{L #_i L'} = (x_i - x_i^-1) Ω_L Ω_{L'}`, for
/// the band sum of component `a` of `da` with component `b` of `db`.
pub fn connected_sum_check(da: &LinkDiagram, db: &LinkDiagram, a: usize, b: usize) -> Result<bool> {
    let color = da.components()[a].color;
    let sum = da.connected_sum(db, a, b)?;
    let db = {
        let mut col = db.coloring();
        col[b] = color;
        db.relabel_colors(&col)
    };
    let (o, oa, ob) = (potential_function(&sum)?, potential_function(da)?, potential_function(&db)?);
    // compare numerators with every knot denominator cleared
    let brace = LaurentPolynomial::brace_var(&x_var(color));
    let mut lhs = o.value.clone();
    if o.pole {
        lhs = lhs.scale(&rint(1));
    }
    let mut rhs = &(&brace * &oa.value) * &ob.value;
    let poles = oa.pole as u32 + ob.pole as u32;
    let sum_pole = o.pole as u32;
    // Ω_sum * brace^{poles} == brace * Na * Nb * brace^{sum_pole}
    lhs = &lhs * &brace.pow(poles);
    rhs = &rhs * &brace.pow(sum_pole);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, parse_pd};

    fn t(e: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(&["t1"], e.iter().map(|&(k, c)| (vec![k], rint(c))))
    }

    #[test]
    fn trefoil_alexander() {
        let d = parse_diagram("braid(2): s1 s1 s1").unwrap();
        let w = wirtinger(&d);
        assert_eq!(w.generator_colors, vec![1, 1, 1]);
        assert_eq!(w.relations.len(), 3);
        assert!(w.fundamental_identity_residues().iter().all(|r| r.is_zero()));
        let a = alexander_poly(&d).unwrap();
        assert!(equal_up_to_units(&a, &t(&[(2, 1), (1, -1), (0, 1)])), "{}", a);
        assert!(equal_up_to_units(&a, &alexander_poly_with(&d, 0, 1).unwrap()));
    }

    #[test]
    fn fox_derivative_examples() {
        let d = parse_diagram("braid(2): s1 s1 s1").unwrap();
        let w = wirtinger(&d);
        // c b a^-1 b^-1, derivative in a is -c b a^-1 -> -t
        let rel = &w.relations[0];
        let a = rel[2].0;
        if a != rel[0].0 && a != rel[1].0 {
            assert_eq!(w.fox_derivative(0, a), t(&[(1, -1)]));
        }
    }

    #[test]
    fn hopf_and_unlink_potentials() {
        let h = parse_pd("X[1,3,2,4] X[3,1,4,2] colors: [1,2]").unwrap();
        let p = potential_function(&h).unwrap();
        assert_eq!(p.value, LaurentPolynomial::one(&["x1", "x2"]));
        assert_eq!(p.sign, SignProvenance::ViaConway);
        let u = LinkDiagram::unlink(2).recolor(&[1, 2]).unwrap();
        assert!(potential_function(&u).unwrap().is_zero());
        assert!(deletion_check(&p, &h, 1).unwrap());
        assert!(deletion_check(&p, &h, 0).unwrap());
    }

    #[test]
    fn trefoil_potential() {
        let d = parse_diagram("braid(2): s1 s1 s1").unwrap();
        let p = potential_function(&d).unwrap();
        assert!(p.pole);
        let expect = LaurentPolynomial::from_terms(&["x1"], [(vec![2], rint(1)), (vec![0], rint(-1)), (vec![-2], rint(1))]);
        assert_eq!(p.value, expect);
    }

    #[test]
    fn ambiguity_is_flagged_on_synthetic_input() {
        // Δ = (t1 - 1)(t2 - 1) has vanishing monochromatic image when the
        // Conway oracle is silent and there is no deletion data.
        let d = LaurentPolynomial::from_terms(
            &["t1", "t2"],
            [(vec![1, 1], rint(1)), (vec![1, 0], rint(-1)), (vec![0, 1], rint(-1)), (vec![0, 0], rint(1))],
        );
        let p = normalize_potential(&d, 2, &[1, 2], None, &[]).unwrap();
        assert_eq!(p.sign, SignProvenance::Ambiguous);
        let zero = LaurentPolynomial::zero(&["z"]);
        let p = normalize_potential(&d, 2, &[1, 2], Some(&zero), &[]).unwrap_err();
        assert!(matches!(p, Error::BridgeMismatch(_)));
    }
}
