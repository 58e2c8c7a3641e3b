//! `sixvertex`: checks, composes and samples six-vertex Yang-Baxter solutions.
//!
//! Matrices are read as JSON objects `{"a1":…, "a2":…, "b1":…, "b2":…,
//! "c1":…, "c2":…}` from a file or stdin; results go to stdout as JSON.
//! Exit status is 0 for an affirmative answer, 1 for a well-formed negative
//! or undefined one, and 2 for bad input.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sixvertex::families::{
    asm_matrix, five_vertex, quantum_r, r_family, tau, tl_generator, FamilyParams, FamilyRequest, FiveVertexSide,
    GL2GL1Element, GroupElem3,
};
use sixvertex::groupoid::{associativity_fuzz, axiom_suite, sample_composable, FuzzReport, Strategy};
use sixvertex::ybe::component_residuals;
use sixvertex::{
    is_yb_solution, solve_u, solve_v, solve_w, Error, Kind, Scalar, ScalarMode, SixVertexMatrix, SquareMatrix, YbTriple,
};

#[derive(Parser)]
#[command(name = "sixvertex", version, about = "Six-vertex solutions of the Yang-Baxter equation")]
struct Cli {
    /// Scalar mode for inputs without an explicit one: `exact`, `float` or `float:<eps>`.
    #[arg(long, global = true, env = "SIXVERTEX_MODE", default_value = "exact", value_parser = parse_mode)]
    mode: ScalarMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Checks a triple `{"u","w","v"}` and prints the component residuals.
    Verify { input: Option<PathBuf> },
    /// Solves for the missing matrix of a triple.
    Compose {
        /// Which matrix to solve for; the input holds the other two.
        #[arg(long, value_enum, default_value = "w")]
        case: Case,
        input: Option<PathBuf>,
    },
    /// Prints the class flags of a matrix.
    Classify { input: Option<PathBuf> },
    /// Prints the dual matrix `(a1*, a2*, -b1, -b2, c2, c1)`.
    Dual { input: Option<PathBuf> },
    /// Builds a member of one of the parametrized families.
    Family(FamilyArgs),
    /// Samples composable chains and checks associativity.
    Fuzz {
        #[arg(long, default_value = "family_exact", value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Samples composable chains and checks the groupoid axioms.
    Axioms {
        #[arg(long, default_value = "family_exact", value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    U,
    W,
    V,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Tau,
    Cf,
    Ff,
    FiveVertex,
    Quantum,
    Asm,
    Tl,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family to build. Without it a JSON request
    /// `{"kind":"cf"|"ff","q1":…,"q2":…,"beta":…,"z1":…,"z2":…,"w":…}` is read.
    #[arg(long, value_enum)]
    kind: Option<FamilyKind>,
    /// JSON request file (stdin when absent or `-`).
    #[arg(long)]
    input: Option<PathBuf>,
    /// `cf` or `ff`, for the five-vertex and quantum families.
    #[arg(long, default_value = "cf")]
    variant: String,
    /// `b1_zero` or `b2_zero`, for the five-vertex family.
    #[arg(long)]
    side: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Tensor length for `tl`.
    #[arg(long)]
    n: Option<usize>,
    /// Generator position for `tl`, `1 <= k < n`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    m11: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m12: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m21: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m22: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

/// What to print and how to exit.
enum Outcome {
    Yes(Value),
    No(Value),
}

/// Bad input: message for stderr, exit status 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<Outcome, InputError>;

fn parse_mode(s: &str) -> Result<ScalarMode, String> {
    ScalarMode::parse(s).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.mode) {
        Ok(outcome) => {
            let (value, code) = match outcome {
                Outcome::Yes(v) => (v, 0),
                Outcome::No(v) => (v, 1),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
            ExitCode::from(code)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, mode: ScalarMode) -> Run {
    match command {
        Command::Verify { input } => verify(&read_json(input)?, mode),
        Command::Compose { case, input } => compose(&read_json(input)?, case, mode),
        Command::Classify { input } => {
            let m = SixVertexMatrix::from_json(&read_json(input)?, mode)?;
            Ok(Outcome::Yes(serde_json::to_value(m.classify()).expect("flags serialize")))
        }
        Command::Dual { input } => {
            let m = SixVertexMatrix::from_json(&read_json(input)?, mode)?;
            match m.dual() {
                Ok(d) => Ok(Outcome::Yes(d.to_json())),
                Err(e) => Ok(Outcome::No(json!({ "result": "undefined", "reason": e.to_string() }))),
            }
        }
        Command::Family(args) => family(&args, mode),
        Command::Fuzz { strategy, seed, trials } => Ok(report(associativity_fuzz(strategy, seed, trials))),
        Command::Axioms { strategy, seed, samples } => match sample_composable(strategy, seed, samples) {
            Ok(chains) => Ok(report(axiom_suite(&chains))),
            Err(e) => Ok(Outcome::No(json!({ "result": "undefined", "reason": e.to_string() }))),
        },
    }
}

fn read_json(path: Option<PathBuf>) -> Result<Value, InputError> {
    let text = match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => fs::read_to_string(&p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| InputError(format!("malformed JSON: {e}")))
}

fn matrix_field(v: &Value, key: &str, mode: ScalarMode) -> Result<SixVertexMatrix, InputError> {
    let x = v.get(key).ok_or_else(|| InputError(format!("missing `{key}` in input")))?;
    Ok(SixVertexMatrix::from_json(x, mode)?)
}

fn verify(v: &Value, mode: ScalarMode) -> Run {
    let t = YbTriple::from_json(v, mode)?;
    let residuals: Vec<Value> = component_residuals(&t).iter().map(Scalar::to_json).collect();
    let solved = is_yb_solution(&t);
    let body = json!({
        "verdict": if solved { "solution" } else { "not a solution" },
        "residuals": residuals,
    });
    Ok(if solved { Outcome::Yes(body) } else { Outcome::No(body) })
}

fn compose(v: &Value, case: Case, mode: ScalarMode) -> Run {
    let (name, solved) = match case {
        Case::W => ("w", solve_w(&matrix_field(v, "u", mode)?, &matrix_field(v, "v", mode)?)),
        Case::U => ("u", solve_u(&matrix_field(v, "w", mode)?, &matrix_field(v, "v", mode)?)),
        Case::V => ("v", solve_v(&matrix_field(v, "u", mode)?, &matrix_field(v, "w", mode)?)),
    };
    match solved {
        Ok(m) => Ok(Outcome::Yes(json!({ "case": name, "result": m.to_json() }))),
        Err(Error::Undefined(cond)) => Ok(Outcome::No(json!({
            "case": name,
            "result": "undefined",
            "reason": "consistency conditions fail",
            "conditions": serde_json::to_value(&*cond).expect("conditions serialize"),
        }))),
        Err(Error::DegenerateProduct(vanishing)) => Ok(Outcome::No(json!({
            "case": name,
            "result": "undefined",
            "reason": "degenerate product",
            "vanishing": vanishing,
        }))),
        Err(e) => Err(e.into()),
    }
}

fn report(r: FuzzReport) -> Outcome {
    let passed = r.all_passed();
    let v = serde_json::to_value(r).expect("report serializes");
    if passed {
        Outcome::Yes(v)
    } else {
        Outcome::No(v)
    }
}

fn family(args: &FamilyArgs, mode: ScalarMode) -> Run {
    let scalar = |flag: &str, value: &Option<String>, default: Option<i64>| -> Result<Scalar, InputError> {
        match (value, default) {
            (Some(text), _) => Ok(Scalar::parse(text, mode)?),
            (None, Some(d)) => Ok(mode.int(d)),
            (None, None) => Err(InputError(format!("--{flag} is required for this family"))),
        }
    };
    let variant = || Kind::parse(&args.variant);
    let matrix = match args.kind {
        None => FamilyRequest::from_json(&read_json(args.input.clone())?, mode)?.build()?,
        Some(kind @ (FamilyKind::Cf | FamilyKind::Ff)) => {
            let p = FamilyParams::new(
                scalar("q1", &args.q1, None)?,
                scalar("q2", &args.q2, None)?,
                scalar("beta", &args.beta, Some(1))?,
            )?;
            let g = GroupElem3::new(scalar("z1", &args.z1, None)?, scalar("z2", &args.z2, None)?, scalar("w", &args.w, Some(1))?)?;
            r_family(&p, if matches!(kind, FamilyKind::Cf) { Kind::Cf } else { Kind::Ff }, &g)?
        }
        Some(FamilyKind::Tau) => tau(&GL2GL1Element::new(
            scalar("m11", &args.m11, None)?,
            scalar("m12", &args.m12, None)?,
            scalar("m21", &args.m21, None)?,
            scalar("m22", &args.m22, None)?,
            scalar("c", &args.c, None)?,
        )?)?,
        Some(FamilyKind::FiveVertex) => {
            let side = args.side.as_deref().ok_or_else(|| InputError("--side is required for five-vertex".into()))?;
            let g = GroupElem3::new(scalar("z1", &args.z1, None)?, scalar("z2", &args.z2, None)?, scalar("w", &args.w, Some(1))?)?;
            five_vertex(variant()?, FiveVertexSide::parse(side)?, &g, &scalar("beta", &args.beta, Some(1))?)?
        }
        Some(FamilyKind::Quantum) => quantum_r(&scalar("q", &args.q, None)?, &scalar("z", &args.z, None)?, variant()?)?,
        Some(FamilyKind::Asm) => asm_matrix(),
        Some(FamilyKind::Tl) => {
            let n = args.n.ok_or_else(|| InputError("--n is required for tl".into()))?;
            let k = args.k.ok_or_else(|| InputError("--k is required for tl".into()))?;
            let op = tl_generator(&scalar("q", &args.q, None)?, n, k)?;
            return Ok(Outcome::Yes(json!({ "n": op.n, "k": op.k, "entries": rows(&op.entries) })));
        }
    };
    Ok(Outcome::Yes(matrix.to_json()))
}

fn rows(m: &SquareMatrix) -> Value {
    Value::Array(m.rows().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
}
