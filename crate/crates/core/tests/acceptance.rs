//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

use num_traits::Signed;

use linkinv::alexander::potential_function_with;
use linkinv::algebra::LaurentPolynomial;
use linkinv::corpus::Corpus;
use linkinv::diagram::{parse_diagram, LinkDiagram};
use linkinv::finitetype::{alpha2_jump_witness, extend, torus_family, InvariantFunction};
use linkinv::invariants::{alpha_coeffs, series_bundle, two_color_tables_from, Engines};
use linkinv::transforms::{decompose, mho, nabla_bold};
use linkinv::verify::{run_suite, CheckResult};

struct Ctx {
    corpus: Corpus,
    engines: Arc<Engines>,
}

impl Ctx {
    fn suite(&self, name: &str) -> Vec<CheckResult> {
        run_suite(name, &self.corpus, &self.engines).expect("known suite")
    }

    fn link(&self, name: &str) -> LinkDiagram {
        self.corpus.get(name).unwrap_or_else(|| panic!("corpus has {}", name)).diagram().unwrap()
    }
}

type Outcome = Result<String, String>;

fn all_pass(results: &[CheckResult], what: &str) -> Outcome {
    if results.is_empty() {
        return Err(format!("no {} checks ran", what));
    }
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .take(5)
        .map(|r| format!("{}: {} ({})", r.entry, r.check, r.detail))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} {} checks", results.len(), what))
    } else {
        Err(failed.join("; "))
    }
}

fn only(results: Vec<CheckResult>, pred: impl Fn(&CheckResult) -> bool) -> Vec<CheckResult> {
    results.into_iter().filter(|r| pred(r)).collect()
}

fn braces(vars: &[&str]) -> LaurentPolynomial {
    vars.iter().fold(LaurentPolynomial::one(vars), |acc, v| &acc * &LaurentPolynomial::brace_var(v))
}

fn criterion_1(c: &Ctx) -> Outcome {
    let om = |n: &str| potential_function_with(&c.link(n), &c.engines.conway).map_err(|e| e.to_string());
    let checks = [
        ("unlink2", om("unlink2")?.value.is_zero()),
        ("unlink3", om("unlink3")?.value.is_zero()),
        ("hopf-pos", om("hopf-pos")?.value == LaurentPolynomial::one(&["x1", "x2"])),
        ("borromean", om("borromean")?.value == braces(&["x1", "x2", "x3"])),
    ];
    match checks.iter().find(|x| !x.1) {
        None => Ok("unlinks 0, Hopf 1, Borromean {x1}{x2}{x3}".into()),
        Some((n, _)) => Err(format!("{} has the wrong potential function", n)),
    }
}

fn criterion_2(c: &Ctx) -> Outcome {
    let r = c.suite("skein-relations");
    for kind in ["conway", "omega", "homfly", "kauffman"] {
        if !r.iter().any(|x| x.check.starts_with(kind)) {
            return Err(format!("no {} skein checks", kind));
        }
    }
    all_pass(&r, "skein")
}

fn criterion_3(c: &Ctx) -> Outcome {
    all_pass(&only(c.suite("decomposition-roundtrip"), |r| r.check == "bridge identity"), "bridge identity")
}

fn criterion_4(c: &Ctx) -> Outcome {
    let names = ["round trip", "half-integral parts", "full-set part integral", "nabla-bold two-way", "nabla-bold integral"];
    let r = only(c.suite("decomposition-roundtrip"), |r| {
        names.contains(&r.check.as_str()) || r.check.starts_with("decompose(0)") || r.check == "decompose"
    });
    for n in names {
        if !r.iter().any(|x| x.check == n) {
            return Err(format!("no `{}` checks", n));
        }
    }
    all_pass(&r, "decomposition")
}

fn criterion_5(c: &Ctx) -> Outcome {
    all_pass(&only(c.suite("decomposition-roundtrip"), |r| r.check.starts_with("∇ = z")), "diagonal identity")
}

fn criterion_6(c: &Ctx) -> Outcome {
    let r = c.suite("lemma41");
    for n in ["bar invariance", "total degree parity", "color degree parity", "part degree parity", "part color parity"] {
        if !r.iter().any(|x| x.check.starts_with(n)) {
            return Err(format!("no `{}` checks", n));
        }
    }
    all_pass(&r, "parity")
}

fn criterion_7(c: &Ctx) -> Outcome {
    let r = only(c.suite("congruences"), |r| {
        !r.check.starts_with("H(1,z)") && !r.check.starts_with("p0i") && !r.check.starts_with("traldi")
    });
    for n in ["c00 = lk", "delta00 = lk", "c11 = α1 - (lk^3 - lk)/12", "c11 = (α1(L) + α1(L')) / 2", "delta_ij = 0 for odd i+j"] {
        if !r.iter().any(|x| x.check == n) {
            return Err(format!("no `{}` checks", n));
        }
    }
    let chains = r.iter().filter(|x| x.check.starts_with("c11 = α1 -")).count();
    if chains < 4 {
        return Err("chain family incomplete".into());
    }
    all_pass(&r, "coefficient identity")
}

fn criterion_8(c: &Ctx) -> Outcome {
    let r = c.suite("starred-pl-isotopy");
    let links: BTreeSet<&str> = r.iter().map(|x| x.entry.as_str()).collect();
    if links.len() < 6 {
        return Err(format!("only {} links probed", links.len()));
    }
    all_pass(&r, &format!("invariance ({} links)", links.len()))
}

fn criterion_9(c: &Ctx) -> Outcome {
    let r = only(c.suite("congruences"), |r| r.check.starts_with("H(1,z)") || r.check.starts_with("p0i"));
    let mut sizes = BTreeSet::new();
    for x in r.iter().filter(|x| x.check.starts_with("p0i")) {
        sizes.insert(c.link(&x.entry).component_count());
    }
    if sizes != BTreeSet::from([1, 2, 3]) {
        return Err(format!("component counts covered: {:?}", sizes));
    }
    all_pass(&r, "expansion")
}

fn criterion_10(c: &Ctx) -> Outcome {
    let v = InvariantFunction::lk_parity();
    for k in 0..=4 {
        let s = torus_family(4, k).map_err(|e| e.to_string())?;
        let val = extend(&v, &s).map_err(|e| e.to_string())?;
        if val.abs() != linkinv::algebra::rint(1 << k) {
            return Err(format!("parity jump {} on {} points", val, k));
        }
    }
    let (s, _) = alpha2_jump_witness(1, 2, -3, 0).map_err(|e| e.to_string())?;
    let a2 = InvariantFunction::alpha(2, c.engines.clone());
    let val = extend(&a2, &s).map_err(|e| e.to_string())?;
    if val != linkinv::algebra::rint(14) {
        return Err(format!("α2 jump is {}, expected 14", val));
    }
    let mut r = c.suite("finite-type-witnesses");
    r.extend(c.suite("finite-type-evidence"));
    all_pass(&r, "finite-type").map(|s| format!("±2^k for k ≤ 4, α2 jump 14, {}", s))
}

fn criterion_11(c: &Ctx) -> Outcome {
    let z = |s: &str| -> LaurentPolynomial {
        let zz = LaurentPolynomial::var(&["z"], "z");
        s.split('+').fold(LaurentPolynomial::zero(&["z"]), |acc, t| {
            let t = t.trim();
            let (sign, t) = if let Some(r) = t.strip_prefix('-') { (-1, r) } else { (1, t) };
            let k: u32 = t.strip_prefix("z^").map(|e| e.parse().unwrap()).unwrap_or(if t == "z" { 1 } else { 0 });
            &acc + &zz.pow(k).scale(&linkinv::algebra::rint(sign))
        })
    };
    let expected = [
        ("trefoil-right", z("1 + z^2")),
        ("figure-eight", z("1 + -z^2")),
        ("borromean", z("z^4")),
        ("whitehead", z("z^3")),
    ];
    for (name, want) in &expected {
        let d = c.link(name);
        let skein = c.engines.conway.evaluate(&d).map_err(|e| e.to_string())?;
        let om = potential_function_with(&d, &c.engines.conway).map_err(|e| e.to_string())?;
        let alex = if om.pole {
            mho(&om, 12).series.to_laurent().rename_vars(|_| "z".into())
        } else {
            let nb = nabla_bold(&decompose(&om).map_err(|e| e.to_string())?);
            &LaurentPolynomial::var(&["z"], "z") * &nb.rename_vars(|_| "z".into())
        };
        if skein != *want || alex != *want {
            return Err(format!("{}: skein {}, Alexander route {}", name, skein, alex));
        }
    }
    // Whitehead tables: δ from the potential function, α from the skein route
    let d = c.link("whitehead");
    let b = series_bundle(&d, &c.engines, 12).map_err(|e| e.to_string())?;
    let t = two_color_tables_from(&d, &b).map_err(|e| e.to_string())?;
    let alpha = alpha_coeffs(&d, &c.engines, 13).map_err(|e| e.to_string())?;
    for (k, a) in alpha.iter().enumerate() {
        let s: num_rational::BigRational = (0..=2 * k as i32).map(|i| t.delta.get(&[i, 2 * k as i32 - i])).sum();
        if s != num_rational::BigRational::from_integer(a.clone()) {
            return Err(format!("whitehead α{} = {} but δ sum is {}", k, a, s));
        }
    }
    if t.delta.get(&[0, 0]) != linkinv::algebra::rint(0) || t.delta.get(&[1, 1]) != linkinv::algebra::rint(1) {
        return Err("whitehead δ00 / δ11".into());
    }
    let r = c.suite("corpus-values");
    all_pass(&r, "frozen value").map(|s| format!("four Conway polynomials and Whitehead tables by two routes, {}", s))
}

fn main() -> ExitCode {
    let start = std::time::Instant::now();
    let ctx = Ctx { corpus: Corpus::bundled(), engines: Arc::new(Engines::default()) };
    let _ = parse_diagram("braid(2): s1 s1").expect("parser works");
    let criteria: [(&str, fn(&Ctx) -> Outcome); 11] = [
        ("potential function values", criterion_1),
        ("skein relations at every eligible crossing", criterion_2),
        ("bridge identity", criterion_3),
        ("decomposition round trip and integrality", criterion_4),
        ("Conway polynomial from the reduced polynomial", criterion_5),
        ("parity properties", criterion_6),
        ("coefficient identities", criterion_7),
        ("invariance under tying local knots", criterion_8),
        ("exponential expansions", criterion_9),
        ("finite-type witnesses and evidence", criterion_10),
        ("oracle cross-checks", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&ctx) {
            Ok(msg) => println!("criterion {:>2} PASS  {}: {}", i + 1, name, msg),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {}", i + 1, name, msg)
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
