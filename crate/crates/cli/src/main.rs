use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qchar_core::cartan::{build_cartan, CartanData, LieType, WeightVector};
use qchar_core::characters::{
    decompose_with, fm_qcharacter, specialize, Status, DEFAULT_MAX_ITERATIONS,
};
use qchar_core::classical::{frobenius_pullback_char, irr_epschar, PullbackInput, Strategy};
use qchar_core::drinfeld::parse_drinfeld;
use qchar_core::error::Error;
use qchar_core::format::{
    cartan_to_json, decomposition_to_json, lattice_to_json, parse_monomial, polynomial_from_json,
    polynomial_to_json, report_to_json,
};
use qchar_core::params::{lattice_data, Mode, SpectralParameter};
use qchar_core::verify::run_suite;

#[derive(Parser)]
#[command(name = "qchar", version, about = "q-characters and eps-characters of quantum affine algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Algebra {
    /// Lie type, A..G
    #[arg(long = "type")]
    lie_type: Option<LieType>,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Clone)]
struct Output {
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Budget {
    #[arg(long, env = "QCHAR_MAX_ITER", default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Fallback,
    Fm,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Fallback => Strategy::FallbackOnly,
            StrategyArg::Fm => Strategy::FmOnly,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, r_i, o, psi and theta
    Cartan {
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        output: Output,
    },
    /// Lattice data at a primitive s-th root of unity
    Lattice {
        #[arg(long)]
        s: i64,
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        output: Output,
    },
    /// Frenkel-Mukhin closure from a dominant monomial
    Fm {
        #[command(flatten)]
        algebra: Algebra,
        /// Node of a fundamental monomial Y[node,base,k]
        #[arg(long)]
        node: Option<usize>,
        #[arg(long, default_value = "a")]
        base: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        /// Explicit dominant monomial, e.g. "Y[1,a,0]*Y[2,a,3]"
        #[arg(long, conflicts_with = "node")]
        monomial: Option<String>,
        /// generic or s=N
        #[arg(long, default_value = "generic")]
        mode: Mode,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Specialize a generic character at q = eps
    Specialize {
        #[arg(long)]
        s: i64,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Decompose an eps-character into irreducible ones
    Decompose {
        #[arg(long)]
        s: i64,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Character of the irreducible module with given Drinfeld data
    Irr {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        s: i64,
        /// e.g. "1:(a@0),(c@0)^2; 2:"
        #[arg(long)]
        drinfeld: String,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Frobenius pullback of an evaluation eps*-character
    Frob {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        s: i64,
        /// Highest weight, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "input")]
        lambda: Option<Vec<i64>>,
        #[arg(long, default_value = "b")]
        base: String,
        /// Sign exponent of the evaluation point
        #[arg(long, default_value_t = 0)]
        t: i64,
        /// An eps*-character document instead of an evaluation module
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Name used for the l-th root of the base
        #[arg(long)]
        root_name: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suites and print a pass/fail table
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        cases: usize,
    },
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(_) => Failure::Inconclusive(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = std::result::Result<bool, Failure>;

fn algebra(a: &Algebra) -> std::result::Result<CartanData, Failure> {
    let (Some(t), Some(n)) = (a.lie_type, a.rank) else {
        return Err(Failure::Input("--type and --rank are required".into()));
    };
    Ok(build_cartan(t, n)?)
}

fn algebra_json(cd: &CartanData) -> Value {
    json!({ "type": cd.lie_type.to_string(), "rank": cd.rank })
}

/// Uses the flags, or else the `algebra` recorded in the input document.
fn algebra_or_doc(a: &Algebra, doc: &Value) -> std::result::Result<CartanData, Failure> {
    if a.lie_type.is_some() || a.rank.is_some() {
        return algebra(a);
    }
    let rec = doc
        .get("algebra")
        .ok_or_else(|| Failure::Input("--type and --rank are required".into()))?;
    let t = rec
        .get("type")
        .and_then(Value::as_str)
        .and_then(|t| t.parse::<LieType>().ok());
    let n = rec.get("rank").and_then(Value::as_u64);
    match (t, n) {
        (Some(t), Some(n)) => Ok(build_cartan(t, n as usize)?),
        _ => Err(Failure::Input("malformed `algebra` in input".into())),
    }
}

fn read_json(path: &PathBuf) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(v: &Value, out: &Output) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json") + "\n";
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_algebra(mut v: Value, cd: &CartanData) -> Value {
    if let Value::Object(o) = &mut v {
        o.insert("algebra".into(), algebra_json(cd));
    }
    v
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Cartan { algebra: a, output } => {
            let cd = algebra(&a)?;
            emit(&cartan_to_json(&cd), &output)?;
            Ok(true)
        }
        Command::Lattice { s, algebra: a, output } => {
            let cd = algebra(&a)?;
            emit(&lattice_to_json(&lattice_data(s, &cd)?), &output)?;
            Ok(true)
        }
        Command::Fm { algebra: a, node, base, k, monomial, mode, budget, output } => {
            let cd = algebra(&a)?;
            let m = match (node, monomial) {
                (_, Some(text)) => parse_monomial(&text, mode)?,
                (Some(i), None) => {
                    if i == 0 {
                        return Err(Failure::Input("nodes are numbered from 1".into()));
                    }
                    cd.check_node(i - 1)?;
                    qchar_core::ypoly::YMonomial::var(i - 1, SpectralParameter::new(&base, k, mode))
                }
                (None, None) => return Err(Failure::Input("give --node or --monomial".into())),
            };
            if let Some(n) = m.max_node() {
                cd.check_node(n)?;
            }
            let report = fm_qcharacter(&m, &cd, mode, budget.max_iter)?;
            emit(&with_algebra(report_to_json(&report), &cd), &output)?;
            Ok(report.is_certified())
        }
        Command::Specialize { s, input, output } => {
            let doc = read_json(&input)?;
            let p = polynomial_from_json(&doc)?;
            let sp = specialize(&p, s)?;
            let mut v = polynomial_to_json(&sp);
            if let (Value::Object(o), Some(alg)) = (&mut v, doc.get("algebra")) {
                o.insert("algebra".into(), alg.clone());
            }
            emit(&v, &output)?;
            Ok(true)
        }
        Command::Decompose { s, input, algebra: a, strategy, budget, output } => {
            let doc = read_json(&input)?;
            let cd = algebra_or_doc(&a, &doc)?;
            let r = lattice_data(s, &cd)?;
            let mut p = polynomial_from_json(&doc)?;
            if p.mode() == Mode::Generic {
                p = specialize(&p, s)?;
            }
            let dec = decompose_with(&p, &r, &cd, strategy.into(), budget.max_iter)?;
            emit(&with_algebra(decomposition_to_json(&dec), &cd), &output)?;
            Ok(true)
        }
        Command::Irr { algebra: a, s, drinfeld, strategy, budget, output } => {
            let cd = algebra(&a)?;
            let r = lattice_data(s, &cd)?;
            let d = parse_drinfeld(&drinfeld, cd.rank, r.mode())?;
            let report = irr_epschar(&d, &r, &cd, strategy.into(), budget.max_iter)?;
            emit(&with_algebra(report_to_json(&report), &cd), &output)?;
            Ok(report.status == Status::Certified)
        }
        Command::Frob { algebra: a, s, lambda, base, t, input, root_name, output } => {
            let cd = algebra(&a)?;
            let r = lattice_data(s, &cd)?;
            r.require_coprime()?;
            let pullback = match (lambda, input) {
                (Some(lam), None) => PullbackInput::Evaluation {
                    lambda: WeightVector(lam),
                    base: SpectralParameter::new(&base, t, r.star_mode()),
                },
                (None, Some(path)) => PullbackInput::Character(polynomial_from_json(&read_json(&path)?)?),
                _ => return Err(Failure::Input("give --lambda or --in".into())),
            };
            let ch = frobenius_pullback_char(&pullback, &r, &cd, root_name.as_deref())?;
            let mut v = polynomial_to_json(&ch);
            if let Value::Object(o) = &mut v {
                o.insert("algebra".into(), algebra_json(&cd));
                o.insert("l".into(), json!(r.l));
                o.insert("monomials".into(), json!(ch.len()));
                o.insert("text".into(), json!(ch.to_string()));
            }
            emit(&v, &output)?;
            Ok(true)
        }
        Command::Verify { seed, cases } => {
            let rows = run_suite(seed, cases)?;
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for row in &rows {
                let tag = if row.passed { "PASS" } else { "FAIL" };
                println!("{tag}  {:width$}  {}", row.name, row.detail);
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            println!("{} checks, {failed} failed", rows.len());
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
