use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use linkinv::corpus::Corpus;
use linkinv::diagram::{parse_diagram, LinkDiagram};
use linkinv::invariants::{invariant_report, Engines, InvariantReport};
use linkinv::skein::DEFAULT_BUDGET;
use linkinv::verify::{run_suite, Summary, SUITES};
use linkinv::{alexander, skein, transforms, Error};

#[derive(Parser)]
#[command(name = "linkinv", version, about = "Exact link invariants: Conway, potential function, HOMFLY, Kauffman and their series")]
struct Cli {
    /// Maximum number of distinct diagrams a skein evaluation may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one link.
    Invariants {
        /// PD or braid file, a bundled corpus name, or literal diagram text.
        input: String,
        /// Coloring, one color per component, e.g. 1,2,1.
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
        /// Truncation degree of all series.
        #[arg(long, default_value_t = 12)]
        cap: u32,
    },
    /// Run verification suites over a corpus.
    Verify {
        /// Directory holding corpus.json; the bundled corpus by default.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Suite to run (repeatable); all suites by default.
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Decomposition of the potential function into the parts P_S.
    Decompose {
        input: String,
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
    },
    /// A single polynomial.
    Polys {
        input: String,
        #[arg(long, value_enum, default_value_t = Which::Conway)]
        which: Which,
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Conway,
    Homfly,
    Kauffman,
    Omega,
    Nbl,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::Parse { .. }
        | Error::InvalidDiagram(_)
        | Error::ColoringArity { .. }
        | Error::IndexOutOfRange { .. }
        | Error::ColorViolation(_)
        | Error::UnknownSuite(_)
        | Error::Precondition(_)
        | Error::Undefined(_) => 2,
        _ => 1,
    }
}

fn load(input: &str, colors: Option<&[u32]>) -> Result<LinkDiagram, Error> {
    let path = std::path::Path::new(input);
    let d = if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidDiagram(format!("cannot read {}: {}", input, e)))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(input).to_string();
        parse_diagram(&text)?.with_name(&name)
    } else if let Some(entry) = Corpus::bundled().get(input) {
        entry.diagram()?
    } else {
        parse_diagram(input)?
    };
    match colors {
        Some(c) => d.recolor(c),
        None => Ok(d),
    }
}

fn print_report(r: &InvariantReport) {
    if let Some(n) = &r.name {
        println!("link: {}", n);
    }
    println!("components: {}", r.components);
    println!("colors: {:?}", r.colors);
    println!("linking matrix: {:?}", r.linking_matrix);
    println!("conway: {}", r.conway);
    println!("c: [{}]", r.c.join(", "));
    println!("alpha: [{}]", r.alpha.join(", "));
    match &r.omega_denominator {
        Some(den) => println!("omega: ({}) / ({})", r.omega, den),
        None => println!("omega: {}", r.omega),
    }
    println!("omega sign: {:?}", r.omega_sign);
    println!("mho: {}", r.mho);
    println!("mho*: {}", r.mho_star);
    for (s, p) in &r.decomposition {
        println!("P{}: {}", s, p);
    }
    println!("nabla-bold: {}", r.nabla_bold);
    println!("nabla-bold*: {}", r.nabla_bold_star);
    println!("homfly: {}", r.homfly);
    println!("kauffman: {}", r.kauffman);
    if let Some(g) = &r.gamma {
        println!("gamma: {}", g);
    }
    if let Some(t) = &r.two_color {
        let table = |name: &str, v: &[linkinv::invariants::TableEntry]| {
            let cells: Vec<String> = v.iter().map(|e| format!("{:?}={}", e.index, e.value)).collect();
            println!("{}: {}", name, cells.join(" "));
        };
        table("c_ij", &t.c);
        table("alpha_ij", &t.alpha);
        table("delta_ij", &t.delta);
        if !t.traldi.is_empty() {
            table("traldi e_ij", &t.traldi);
        }
        println!("unoriented Sato-Levine c11: {}", t.unoriented_sato_levine);
        if let Some(s) = &t.casson_walker_surrogate {
            println!("2 c11 / lk^2: {}", s);
        }
        if let Some(b) = &t.beta {
            println!("beta^k: [{}]", b.join(", "));
        }
        if !t.beta_hat.is_empty() {
            println!("beta-hat^k: [{}]", t.beta_hat.join(", "));
        }
        let flagged: Vec<String> = t
            .congruences
            .iter()
            .filter(|c| c.nonzero || c.equality_failure)
            .map(|c| format!("({},{})", c.i, c.j))
            .collect();
        if !t.congruences.is_empty() {
            println!("congruence flags: {}", if flagged.is_empty() { "none".into() } else { flagged.join(" ") });
        }
        for c in &t.checks {
            println!("check {}: {}", c.name, if c.passed { "ok" } else { "FAILED" });
        }
        println!("note: {}", t.mu_bar_note);
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let engines = Arc::new(Engines::new(cli.budget));
    match cli.command {
        Command::Invariants { input, colors, cap } => {
            let d = load(&input, colors.as_deref())?;
            let r = invariant_report(&d, &engines, cap)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                print_report(&r);
            }
            Ok(0)
        }
        Command::Verify { corpus, suite } => {
            let corpus = match corpus {
                Some(dir) => Corpus::load(&dir)?,
                None => Corpus::bundled(),
            };
            let names: Vec<String> = if suite.is_empty() { SUITES.iter().map(|s| s.to_string()).collect() } else { suite };
            let mut results = Vec::new();
            for s in &names {
                results.extend(run_suite(s, &corpus, &engines)?);
            }
            let summary = Summary::from_results(results);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                for s in &names {
                    let (p, f) = summary.results.iter().filter(|r| &r.suite == s).fold((0, 0), |(p, f), r| {
                        if r.passed {
                            (p + 1, f)
                        } else {
                            (p, f + 1)
                        }
                    });
                    println!("{}: {} passed, {} failed", s, p, f);
                }
                for r in summary.results.iter().filter(|r| !r.passed) {
                    println!("FAIL [{}] {}: {} {}", r.suite, r.entry, r.check, r.detail);
                }
            }
            Ok(if summary.ok() { 0 } else { 1 })
        }
        Command::Decompose { input, colors } => {
            let d = load(&input, colors.as_deref())?;
            let om = alexander::potential_function_with(&d, &engines.conway)?;
            let dec = transforms::decompose(&om)?;
            if cli.json {
                let parts: serde_json::Map<String, serde_json::Value> =
                    dec.parts.iter().map(|(s, p)| (format!("{:?}", s), p.render().into())).collect();
                let v = serde_json::json!({ "schema": "linkinv.decomposition/1", "n": dec.n, "parts": parts });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                println!("{}", dec.render());
            }
            Ok(0)
        }
        Command::Polys { input, which, colors } => {
            let d = load(&input, colors.as_deref())?;
            let (name, text) = match which {
                Which::Conway => ("conway", engines.conway.evaluate(&d)?.render()),
                Which::Homfly => ("homfly", engines.homfly.evaluate(&d)?.render()),
                Which::Kauffman => ("kauffman", skein::kauffman_f_with(&engines.dubrovnik, &d)?.render()),
                Which::Omega => {
                    let om = alexander::potential_function_with(&d, &engines.conway)?;
                    let t = if om.pole {
                        format!("({}) / (x{c} - x{c}^-1)", om.value.render(), c = d.components()[0].color)
                    } else {
                        om.value.render()
                    };
                    ("omega", t)
                }
                Which::Nbl => {
                    let om = alexander::potential_function_with(&d, &engines.conway)?;
                    if om.pole {
                        return Err(Error::Precondition("the reduced polynomial is defined for links, not knots".into()));
                    }
                    ("nbl", transforms::nabla_bold(&transforms::decompose(&om)?).render())
                }
            };
            if cli.json {
                let v = serde_json::json!({ "schema": "linkinv.polynomial/1", "which": name, "value": text });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                println!("{}", text);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
