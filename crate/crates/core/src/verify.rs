//! Verification suites over a corpus. Each suite returns one record per
//! elementary check so failures can be traced to an entry.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::alexander::{conway_at_brace, potential_function_with, PotentialFunction};
use crate::algebra::{render_rational, rint, LaurentPolynomial, TruncatedSeries};
use crate::corpus::{Corpus, CorpusEntry, FamilyKind};
use crate::diagram::{parse_diagram, LinkDiagram, SingularLink};
use crate::error::{Error, Result};
use crate::finitetype::{alpha2_jump_value, extend, is_signed_power_of_two, leibniz_sides, InvariantFunction};
use crate::invariants::{
    alpha_coeffs, chain_link, conway_star, reversal_identity, series_bundle, two_color_tables_from, unoriented_sl,
    Engines,
};
use crate::skein::{kauffman_f_with, SkeinEngine, SkeinKind};
use crate::transforms::{
    color_parities, decompose, decompose_poly, exp_expand_homfly, exp_expand_kauffman, homfly_star_exp,
    kauffman_star_exp, mho, nabla_bold, omega_from_nbl, reconstruct, traldi_congruences, traldi_expand, z_var,
    Decomposition, PoleSeries,
};

pub const SUITES: &[&str] = &[
    "corpus-values",
    "skein-relations",
    "lemma41",
    "decomposition-roundtrip",
    "starred-pl-isotopy",
    "congruences",
    "finite-type-evidence",
    "finite-type-witnesses",
];

pub const SUMMARY_SCHEMA: &str = "linkinv.verify/1";

/// One elementary check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub entry: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub schema: String,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

impl Summary {
    pub fn from_results(results: Vec<CheckResult>) -> Self {
        let passed = results.iter().filter(|r| r.passed).count();
        Summary { schema: SUMMARY_SCHEMA.into(), passed, failed: results.len() - passed, results }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Recorder<'a> {
    suite: &'a str,
    out: Vec<CheckResult>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'a str) -> Self {
        Recorder { suite, out: Vec::new() }
    }

    fn check(&mut self, entry: &str, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckResult {
            suite: self.suite.into(),
            entry: entry.into(),
            check: check.into(),
            passed,
            detail: if passed { String::new() } else { detail.into() },
        });
    }

    /// Records a computation that failed outright.
    fn result<T>(&mut self, entry: &str, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(entry, check, false, e.to_string());
                None
            }
        }
    }
}

/// Runs one suite by name.
pub fn run_suite(name: &str, corpus: &Corpus, engines: &Arc<Engines>) -> Result<Vec<CheckResult>> {
    Ok(match name {
        "corpus-values" => corpus_values(corpus, engines),
        "skein-relations" => skein_relations(corpus, engines),
        "lemma41" => lemma41(corpus, engines),
        "decomposition-roundtrip" => decomposition_roundtrip(corpus, engines),
        "starred-pl-isotopy" => starred_pl_isotopy(corpus, engines),
        "congruences" => congruences(corpus, engines),
        "finite-type-evidence" => finite_type_evidence(corpus, engines),
        "finite-type-witnesses" => finite_type_witnesses(corpus, engines),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

pub fn run_all(corpus: &Corpus, engines: &Arc<Engines>) -> Summary {
    let mut all = Vec::new();
    for s in SUITES {
        all.extend(run_suite(s, corpus, engines).expect("suite names are known"));
    }
    Summary::from_results(all)
}

/// Classical corpus links with their stored coloring and, when that has
/// more than one color, the one-color variant.
fn colored_variants(corpus: &Corpus, rec: &mut Recorder) -> Vec<(String, LinkDiagram)> {
    let mut out = Vec::new();
    for e in corpus.links() {
        if let Some(d) = rec.result(&e.name, "load", e.diagram()) {
            if d.color_count() > 1 {
                out.push((format!("{} (one color)", e.name), d.monochromatic()));
            }
            out.push((e.name.clone(), d));
        }
    }
    out
}

fn links(corpus: &Corpus, rec: &mut Recorder) -> Vec<(String, LinkDiagram)> {
    corpus
        .links()
        .filter_map(|e| rec.result(&e.name, "load", e.diagram()).map(|d| (e.name.clone(), d)))
        .collect()
}

fn total_lk(d: &LinkDiagram) -> i64 {
    let lk = d.linking_matrix();
    (0..lk.len()).flat_map(|i| (i + 1..lk.len()).map(move |j| (i, j))).map(|(i, j)| lk[i][j]).sum()
}

// ---------------------------------------------------------------------------
// expected values

/// Evaluates one expected-value key on a corpus entry.
pub fn evaluate_key(entry: &CorpusEntry, key: &str, e: &Engines) -> Result<String> {
    if let Some(f) = key.strip_prefix("extend:") {
        let s = entry.singular()?;
        let chi = named_function(f, e)?;
        return Ok(render_rational(&extend(&chi, &s)?));
    }
    let d = entry.diagram()?;
    let cap = 12;
    Ok(match key {
        "conway" => e.conway.evaluate(&d)?.render(),
        "homfly" => e.homfly.evaluate(&d)?.render(),
        "kauffman" => kauffman_f_with(&e.dubrovnik, &d)?.render(),
        "lk" => total_lk(&d).to_string(),
        "omega" => {
            let om = potential_function_with(&d, &e.conway)?;
            if om.pole {
                format!("({}) / {{x{}}}", om.value.render(), d.components()[0].color)
            } else {
                om.value.render()
            }
        }
        "nabla_bold" => {
            let om = potential_function_with(&d, &e.conway)?;
            nabla_bold(&decompose(&om)?).render()
        }
        "decomposition" => decompose(&potential_function_with(&d, &e.conway)?)?.render(),
        "mho" => mho(&potential_function_with(&d, &e.conway)?, 6).render(),
        "c" => join(&crate::invariants::conway_coeffs(&d, e)?),
        "alpha" => join(&alpha_coeffs(&d, e, d.component_count() as u32 + 3)?),
        "c11" => render_rational(&unoriented_sl(&d, e)?),
        "gamma" => render_rational(&crate::invariants::gamma3(&d, e)?),
        _ => {
            let (table, idx) = parse_indexed(key)?;
            let b = series_bundle(&d, e, cap)?;
            let t = two_color_tables_from(&d, &b)?;
            let v = match table {
                "c" => t.c.get(&idx),
                "alpha" => t.alpha.get(&idx),
                "delta" => t.delta.get(&idx),
                _ => return Err(Error::Precondition(format!("unknown key {}", key))),
            };
            render_rational(&v)
        }
    })
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn parse_indexed(key: &str) -> Result<(&str, Vec<i32>)> {
    let bad = || Error::Precondition(format!("unknown key {}", key));
    let open = key.find('[').ok_or_else(bad)?;
    let inner = key[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let idx = inner.split(',').map(|s| s.trim().parse::<i32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
    Ok((&key[..open], idx))
}

/// Invariant functions addressable by name in corpus keys.
pub fn named_function(name: &str, e: &Engines) -> Result<InvariantFunction> {
    let shared = Arc::new(Engines::new(e.budget()));
    Ok(match name {
        "lk" => InvariantFunction::linking_number(),
        "parity" => InvariantFunction::lk_parity(),
        "alpha2" => InvariantFunction::alpha(2, shared),
        "alpha1" => InvariantFunction::alpha(1, shared),
        "c0" => InvariantFunction::conway_coeff(0, shared),
        "c1" => InvariantFunction::conway_coeff(1, shared),
        "c2" => InvariantFunction::conway_coeff(2, shared),
        _ => return Err(Error::Precondition(format!("unknown invariant {}", name))),
    })
}

fn corpus_values(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("corpus-values");
    for entry in &corpus.entries {
        for (key, exp) in &entry.expected {
            match evaluate_key(entry, key, e) {
                Ok(v) => {
                    let ok = v == exp.value;
                    rec.check(&entry.name, key, ok, format!("expected {}, computed {}", exp.value, v))
                }
                Err(err) => rec.check(&entry.name, key, false, err.to_string()),
            }
        }
    }
    rec.out
}

// ---------------------------------------------------------------------------
// skein relations

fn z() -> LaurentPolynomial {
    LaurentPolynomial::var(&["z"], "z")
}

fn xy(a: i32, b: i32) -> LaurentPolynomial {
    LaurentPolynomial::monomial(&["x", "y"], &[a, b], rint(1))
}

/// `(x_c - x_c^-1) Ω`, which has no denominator for any link.
fn omega_times_brace(om: &PotentialFunction, color: u32) -> LaurentPolynomial {
    if om.pole {
        om.value.clone()
    } else {
        &LaurentPolynomial::brace_var(&crate::alexander::x_var(color)) * &om.value
    }
}

/// `z_c ℧` as a series with cap `cap`.
fn mho_times_z(s: &PoleSeries, color: u32, cap: u32) -> TruncatedSeries {
    let v = z_var(color);
    let t = if s.pole { s.series.clone() } else { &TruncatedSeries::var(&[v.as_str()], cap + 1, &v) * &s.series };
    t.truncate(cap)
}

fn skein_relations(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("skein-relations");
    for (name, d) in colored_variants(corpus, &mut rec) {
        let uncolored = !name.contains("one color");
        for c in 0..d.crossing_count() {
            let sign = d.crossings()[c].sign;
            let (plus, minus) = if sign > 0 {
                (d.clone(), d.switch(c).expect("valid crossing"))
            } else {
                (d.switch(c).expect("valid crossing"), d.clone())
            };
            let zero = d.smooth_oriented(c).expect("valid crossing");
            let tag = |s: &str| format!("{} at crossing {}", s, c);
            if uncolored {
                let r = (|| -> Result<bool> {
                    let (a, b, z0) = (e.conway.evaluate(&plus)?, e.conway.evaluate(&minus)?, e.conway.evaluate(&zero)?);
                    Ok(&a - &b == &z() * &z0)
                })();
                if let Some(ok) = rec.result(&name, &tag("conway"), r) {
                    rec.check(&name, tag("conway"), ok, "∇+ - ∇- ≠ z ∇0");
                }
                let r = (|| -> Result<bool> {
                    let (a, b, z0) = (e.homfly.evaluate(&plus)?, e.homfly.evaluate(&minus)?, e.homfly.evaluate(&zero)?);
                    Ok(&(&xy(1, 0) * &a) - &(&xy(-1, 0) * &b) == &xy(0, 1) * &z0)
                })();
                if let Some(ok) = rec.result(&name, &tag("homfly"), r) {
                    rec.check(&name, tag("homfly"), ok, "x H+ - x^-1 H- ≠ y H0");
                }
                let r = (|| -> Result<bool> {
                    let inf = d.smooth_infinity(c)?;
                    let f = |l: &LinkDiagram| kauffman_f_with(&e.dubrovnik, l);
                    let shift = (inf.writhe() - zero.writhe()) as i32;
                    let lhs = &(&xy(1, 0) * &f(&plus)?) - &(&xy(-1, 0) * &f(&minus)?);
                    let rhs = &xy(0, 1) * &(&f(&zero)? - &(&xy(shift, 0) * &f(&inf)?));
                    Ok(lhs == rhs)
                })();
                if let Some(ok) = rec.result(&name, &tag("kauffman"), r) {
                    rec.check(&name, tag("kauffman"), ok, "x F+ - x^-1 F- ≠ y (F0 - x^(w∞-w0) F∞)");
                }
            }
            let (u, o) = d.strand_components(c);
            let color = d.components()[u].color;
            if color != d.components()[o].color {
                continue;
            }
            let r = (|| -> Result<(bool, bool)> {
                let om = |l: &LinkDiagram| potential_function_with(l, &e.conway);
                let (a, b, z0) = (om(&plus)?, om(&minus)?, om(&zero)?);
                let brace = LaurentPolynomial::brace_var(&crate::alexander::x_var(color));
                let lhs = &omega_times_brace(&a, color) - &omega_times_brace(&b, color);
                let rhs = &brace * &omega_times_brace(&z0, color);
                let cap = 8;
                let (ma, mb, m0) = (mho(&a, cap), mho(&b, cap), mho(&z0, cap));
                let zc = z_var(color);
                let mlhs = &mho_times_z(&ma, color, cap) - &mho_times_z(&mb, color, cap);
                let mrhs = (&TruncatedSeries::var(&[zc.as_str()], cap, &zc) * &mho_times_z(&m0, color, cap)).truncate(cap);
                Ok((lhs == rhs, mlhs.truncate(cap) == mrhs))
            })();
            if let Some((ok, mok)) = rec.result(&name, &tag("omega"), r) {
                rec.check(&name, tag("omega"), ok, "Ω+ - Ω- ≠ (x_i - x_i^-1) Ω0");
                rec.check(&name, tag("mho"), mok, "℧+ - ℧- ≠ z_i ℧0");
            }
        }
    }
    rec.out
}

// ---------------------------------------------------------------------------
// parity properties

fn lemma41(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("lemma41");
    for (name, d) in colored_variants(corpus, &mut rec) {
        let Some(om) = rec.result(&name, "omega", potential_function_with(&d, &e.conway)) else { continue };
        let m = d.component_count();
        rec.check(&name, "bar invariance", om.value.bar() == om.value, om.value.render());
        if m > 1 {
            let ok = om.value.terms().all(|(ex, _)| (ex.iter().sum::<i32>() - m as i32).rem_euclid(2) == 0);
            rec.check(&name, "total degree parity", ok, om.value.render());
            let par = color_parities(&d);
            let vars = om.value.vars().to_vec();
            let ok = om.value.terms().all(|(ex, _)| {
                ex.iter().zip(&vars).all(|(k, v)| {
                    let color: usize = v[1..].parse().expect("variables are x<color>");
                    (k.rem_euclid(2) as u8) == par[color - 1]
                })
            });
            rec.check(&name, "color degree parity", ok, om.value.render());
        }
        let ms = mho(&om, 8);
        let shift = om.pole as i32;
        let ok = ms.series.terms().all(|(ex, _)| (ex.iter().map(|&k| k as i32).sum::<i32>() - shift - m as i32).rem_euclid(2) == 0);
        rec.check(&name, "mho total degree parity", ok, ms.render());
        if !om.pole {
            let four = ms.series.scale_vars(&rint(4));
            rec.check(&name, "mho(4y) integral", four.is_integral(), ms.render());
        }
        if om.pole || om.is_zero() {
            continue;
        }
        let Some(dec) = rec.result(&name, "decompose", decompose(&om)) else { continue };
        let par = color_parities(&d);
        let mut ok_i = true;
        let mut ok_ii = true;
        for (s, p) in &dec.parts {
            for (ex, _) in p.terms() {
                ok_i &= (ex.iter().sum::<i32>() - m as i32).rem_euclid(2) == 0;
                for (k, v) in ex.iter().zip(p.vars()) {
                    let color: u32 = v[1..].parse().expect("variables are z<color>");
                    let in_s = s.contains(&color);
                    let matches = (k.rem_euclid(2) as u8) == par[color as usize - 1];
                    ok_ii &= matches != in_s;
                }
                // colors absent from the variable list have degree 0
                for color in 1..=dec.n as u32 {
                    if !p.vars().iter().any(|v| *v == z_var(color)) {
                        let matches = par[color as usize - 1] == 0;
                        ok_ii &= matches != s.contains(&color);
                    }
                }
            }
        }
        rec.check(&name, "part degree parity", ok_i, dec.render());
        rec.check(&name, "part color parity", ok_ii, dec.render());
    }
    rec.out
}

// ---------------------------------------------------------------------------
// decomposition, bridge and abstract identities

fn decomposition_roundtrip(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("decomposition-roundtrip");
    // an independent Conway engine with a different resolution order
    let seeded = SkeinEngine::new(SkeinKind::Conway).with_seed(7);
    for (name, d) in colored_variants(corpus, &mut rec) {
        let Some(om) = rec.result(&name, "omega", potential_function_with(&d, &e.conway)) else { continue };
        let Some(nab) = rec.result(&name, "conway", seeded.evaluate(&d)) else { continue };
        rec.check(
            &name,
            "bridge identity",
            om.monochromatic_numerator() == conway_at_brace(&nab),
            format!("(x - x^-1) Ω(x..x) = {}, ∇(x - x^-1) = {}", om.monochromatic_numerator(), conway_at_brace(&nab)),
        );
        if om.pole {
            continue;
        }
        let Some(dec) = rec.result(&name, "decompose", decompose(&om)) else { continue };
        rec.check(&name, "round trip", reconstruct(&dec) == om.value, dec.render());
        rec.check(&name, "half-integral parts", dec.is_half_integral(), dec.render());
        if dec.n % 2 == 0 {
            let full: Vec<u32> = (1..=dec.n as u32).collect();
            rec.check(&name, "full-set part integral", dec.part(&full).is_integral(), dec.render());
        }
        let nb = nabla_bold(&dec);
        rec.check(&name, "nabla-bold integral", nb.is_integral(), nb.render());
        let back = omega_from_nbl(&nb, &color_parities(&d), d.component_count());
        let ok = matches!(&back, Ok(b) if *b == om.value);
        rec.check(&name, "nabla-bold two-way", ok, format!("{:?}", back.map(|b| b.render())));
        let diag = nb.rename_vars(|_| "z".into());
        let zn = &z() * &diag;
        rec.check(&name, "∇ = z ∇̦(z,…,z)", zn == nab, format!("z ∇̦(z..z) = {}, ∇ = {}", zn, nab));
    }
    for n in 1..=3 {
        let zero = LaurentPolynomial::zero(&(1..=n).map(crate::alexander::x_var).collect::<Vec<_>>());
        let ok = matches!(decompose_poly(&zero, n as usize), Ok(d) if d == Decomposition::zero(n as usize));
        rec.check("zero", format!("decompose(0) = 0, n = {}", n), ok, "");
    }
    rec.out
}

// ---------------------------------------------------------------------------
// PL isotopy

/// All starred quantities of a link, rendered, to `cap`.
fn starred_all(d: &LinkDiagram, e: &Engines, cap: u32) -> Result<Vec<(String, String)>> {
    let b = series_bundle(d, e, cap)?;
    Ok(vec![
        ("∇*".into(), conway_star(d, e, cap)?.render()),
        ("℧*".into(), b.mho_star.render()),
        ("∇̦*".into(), b.nabla_bold_star.render()),
        ("H*".into(), homfly_star_exp(d, &e.homfly, cap)?.render()),
        ("F*".into(), kauffman_star_exp(d, &e.dubrovnik, cap)?.render()),
    ])
}

pub fn local_knots() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("trefoil", parse_diagram("braid(2): s1 s1 s1").expect("valid braid")),
        ("figure-eight", parse_diagram("braid(3): s1 -s2 s1 -s2").expect("valid braid")),
    ]
}

fn starred_pl_isotopy(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("starred-pl-isotopy");
    let cap = 12;
    for entry in corpus.links().filter(|x| x.has_tag("pl-probe")) {
        let Some(d) = rec.result(&entry.name, "load", entry.diagram()) else { continue };
        let Some(base) = rec.result(&entry.name, "starred", starred_all(&d, e, cap)) else { continue };
        for (kname, k) in local_knots() {
            for i in 0..d.component_count() {
                let tag = format!("{} tied into component {}", kname, i + 1);
                let r = d.tie_local_knot(i, &k).and_then(|t| starred_all(&t, e, cap));
                let Some(tied) = rec.result(&entry.name, &tag, r) else { continue };
                for ((q, a), (_, b)) in base.iter().zip(&tied) {
                    rec.check(&entry.name, format!("{} unchanged, {}", q, tag), a == b, format!("{} vs {}", a, b));
                }
            }
        }
    }
    rec.out
}

// ---------------------------------------------------------------------------
// coefficient identities

fn congruences(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("congruences");
    let cap = 12;
    for (name, d) in links(corpus, &mut rec) {
        let m = d.component_count();
        // H(1, z) = ∇(z)
        let r = (|| -> Result<(LaurentPolynomial, LaurentPolynomial)> {
            let h = e.homfly.evaluate(&d)?.substitute_const("x", &BigRational::one());
            Ok((h.rename_vars(|_| "z".into()), e.conway.evaluate(&d)?))
        })();
        if let Some((h, nab)) = rec.result(&name, "H(1,z) = ∇", r) {
            rec.check(&name, "H(1,z) = ∇", h == nab, format!("{} vs {}", h, nab));
        }
        if (1..=3).contains(&m) {
            let r = (|| -> Result<bool> {
                let p = exp_expand_homfly(&e.homfly.evaluate(&d)?, 2);
                let q = exp_expand_kauffman(&kauffman_f_with(&e.dubrovnik, &d)?, 2);
                let mut ok = true;
                for i in 0..=(m as i32 + 1) {
                    let want = if i == m as i32 - 1 { rint(1) } else { BigRational::zero() };
                    ok &= p.get(&[0, i]) == want && q.get(&[0, i]) == want;
                }
                Ok(ok)
            })();
            if let Some(ok) = rec.result(&name, "p0i = q0i = Kronecker delta", r) {
                rec.check(&name, "p0i = q0i = Kronecker delta", ok, "");
            }
        }
        if d.color_count() != 2 {
            continue;
        }
        let Some(b) = rec.result(&name, "series", series_bundle(&d, e, cap)) else { continue };
        let Some(t) = rec.result(&name, "tables", two_color_tables_from(&d, &b)) else { continue };
        for c in &t.checks {
            rec.check(&name, c.name.clone(), c.passed, "");
        }
        if m != 2 {
            continue;
        }
        let lk = total_lk(&d);
        if let Some((l, r)) = rec.result(&name, "reversal identity", reversal_identity(&d, e)) {
            rec.check(&name, "c11 = (α1(L) + α1(L')) / 2", l == r, format!("{} vs {}", l, r));
        }
        if let Some(dec) = &b.decomposition {
            let r = traldi_expand(&b.omega, lk, cap).and_then(|tr| traldi_congruences(&tr, dec));
            if let Some(v) = rec.result(&name, "traldi congruence", r) {
                let bad: Vec<_> = v.iter().filter(|x| !x.2).map(|x| (x.0, x.1)).collect();
                rec.check(&name, "traldi congruence", bad.is_empty(), format!("fails at {:?}", bad));
            }
        }
        // ∇* = z ∇̦*(z, z): α_k is the sum of δ_ij with i + j = 2k
        let r = alpha_coeffs(&d, e, cap + 1);
        if let Some(alpha) = rec.result(&name, "α from δ", r) {
            let ok = alpha.iter().enumerate().all(|(k, a)| {
                let s: BigRational = (0..=2 * k as i32).map(|i| t.delta.get(&[i, 2 * k as i32 - i])).sum();
                s == BigRational::from_integer(a.clone())
            });
            rec.check(&name, "α_k = Σ_{i+j=2k} δ_ij", ok, "");
        }
    }
    for n in 1..=4u32 {
        let d = chain_link(n);
        let lk = n as i64;
        let r = (|| -> Result<bool> {
            let c11 = unoriented_sl(&d, e)?;
            let a1 = BigRational::from_integer(alpha_coeffs(&d, e, 3)?[1].clone());
            Ok(c11 == a1 - rint(lk * lk * lk - lk) / rint(12))
        })();
        let tag = "c11 = α1 - (lk^3 - lk)/12";
        if let Some(ok) = rec.result(&format!("H{}", n), tag, r) {
            rec.check(&format!("H{}", n), tag, ok, "");
        }
    }
    rec.out
}

// ---------------------------------------------------------------------------
// finite type

fn fixtures(corpus: &Corpus, kind: FamilyKind, rec: &mut Recorder) -> Vec<(String, SingularLink)> {
    corpus
        .families(kind)
        .filter_map(|e| rec.result(&e.name, "load", e.singular()).map(|s| (e.name.clone(), s)))
        .collect()
}

fn finite_type_evidence(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("finite-type-evidence");
    let shared = Arc::new(Engines::new(e.budget()));
    for (name, s) in fixtures(corpus, FamilyKind::Kl, &mut rec) {
        let r = s.points().len();
        if r % 2 == 1 {
            let k = (r - 1) / 2;
            let chi = InvariantFunction::conway_coeff(k, shared.clone());
            if let Some(v) = rec.result(&name, &format!("c{} on {} points", k, r), extend(&chi, &s)) {
                rec.check(&name, format!("c{} vanishes on {} points", k, r), v.is_zero(), render_rational(&v));
            }
        }
    }
    let mut mono = fixtures(corpus, FamilyKind::Mono, &mut rec);
    mono.extend(fixtures(corpus, FamilyKind::Kl, &mut rec).into_iter().map(|(n, s)| {
        let d = s.base().monochromatic();
        (format!("{} (one color)", n), SingularLink::new(d))
    }));
    for (name, s) in &mono {
        let r = s.points().len() as i32;
        let m = s.base().component_count();
        // ℧ at total degree n = r - 2
        let n = r - 2;
        if n >= -1 {
            let chi = InvariantFunction::mho_degree(n, shared.clone());
            if let Some(v) = rec.result(name, &format!("mho degree {}", n), extend(&chi, s)) {
                rec.check(name, format!("mho degree {} vanishes on {} points", n, r), v.is_zero(), render_rational(&v));
            }
        }
        // p_ki, q_ki with k = r - 1
        let k = r - 1;
        for i in 0..=(k + m as i32 - 1) {
            for chi in [InvariantFunction::homfly_p(k, i, shared.clone()), InvariantFunction::kauffman_q(k, i, shared.clone())] {
                let tag = format!("{} vanishes on {} points", chi.name(), r);
                if let Some(v) = rec.result(name, &tag, extend(&chi, s)) {
                    rec.check(name, tag, v.is_zero(), render_rational(&v));
                }
            }
        }
    }
    rec.out
}

fn finite_type_witnesses(corpus: &Corpus, e: &Arc<Engines>) -> Vec<CheckResult> {
    let mut rec = Recorder::new("finite-type-witnesses");
    let v = InvariantFunction::lk_parity();
    for (name, s) in fixtures(corpus, FamilyKind::Parity, &mut rec) {
        let k = s.points().len() as u32;
        if let Some(val) = rec.result(&name, "parity", extend(&v, &s)) {
            rec.check(&name, format!("(-1)^lk jumps by ±2^{}", k), is_signed_power_of_two(&val, k), render_rational(&val));
        }
    }
    let a2 = InvariantFunction::alpha(2, Arc::new(Engines::new(e.budget())));
    for entry in corpus.families(FamilyKind::Jump) {
        let Some(s) = rec.result(&entry.name, "load", entry.singular()) else { continue };
        let Some(params) = entry.tags.iter().find_map(|t| t.strip_prefix("abcd=")) else {
            rec.check(&entry.name, "parameters", false, "missing abcd= tag");
            continue;
        };
        let p: Vec<i64> = params.split(',').filter_map(|x| x.parse().ok()).collect();
        if p.len() != 4 {
            rec.check(&entry.name, "parameters", false, params);
            continue;
        }
        let want = rint(alpha2_jump_value(p[0], p[1], p[2], p[3]));
        if let Some(val) = rec.result(&entry.name, "α2 jump", extend(&a2, &s)) {
            rec.check(&entry.name, format!("α2 jump = {}", want), val == want, render_rational(&val));
        }
    }
    // product rule on one-point fixtures
    let lk = InvariantFunction::linking_number();
    let c1 = InvariantFunction::conway_coeff(1, Arc::new(Engines::new(e.budget())));
    for (name, s) in fixtures(corpus, FamilyKind::Mono, &mut rec) {
        if s.points().len() != 1 {
            continue;
        }
        for (a, b) in [(&lk, &lk), (&lk, &c1), (&c1, &v)] {
            let tag = format!("product rule for {} and {}", a.name(), b.name());
            if let Some((l, r)) = rec.result(&name, &tag, leibniz_sides(a, b, &s)) {
                rec.check(&name, tag, l == r, format!("{} vs {}", l, r));
            }
        }
    }
    rec.out
}
