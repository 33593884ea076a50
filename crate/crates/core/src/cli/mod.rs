//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for unreadable input or usage errors.

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::document::InputDocument;
use crate::error::Error;
use crate::linalg::{format_rational, Matrix};
use crate::report::Report;

/// Embedded fixture documents by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("f0", include_str!("../../fixtures/f0.json")),
    ("f1", include_str!("../../fixtures/f1.json")),
    ("f2", include_str!("../../fixtures/f2.json")),
    ("f3", include_str!("../../fixtures/f3.json")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, t)| *t)
}

#[derive(Parser, Debug)]
#[command(name = "rinehart", version, about = "Exact computations with left-symmetric Rinehart algebras")]
pub struct Cli {
    /// Emit a key-sorted JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the embedded fixture documents, or print one.
    Fixtures { name: Option<String> },
    /// Validate the algebra and every declared representation, subspace,
    /// morphism and deformation.
    Validate(Source),
    /// Dimensions of cochains, coboundary ranks and cohomology up to a degree.
    Cohomology {
        #[command(flatten)]
        source: Source,
        /// Representation name, or `adjoint`.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Formal deformations.
    Deform {
        #[arg(value_enum)]
        action: DeformAction,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        deformation: Option<String>,
        #[arg(long)]
        automorphism: Option<String>,
        /// Nijenhuis operator for `trivial`.
        #[arg(long)]
        operator: Option<String>,
    },
    /// Nijenhuis, Rota-Baxter and O-operators.
    Operators {
        #[arg(value_enum)]
        action: OperatorAction,
        #[command(flatten)]
        args: OperatorArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Input document (JSON).
    pub path: Option<PathBuf>,
    /// Use an embedded fixture document instead of a file.
    #[arg(long, conflicts_with = "path")]
    pub fixture: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeformAction {
    Check,
    Infinitesimal,
    Obstruction,
    Extend,
    Equiv,
    Trivial,
    Rigidity,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorAction {
    Nijenhuis,
    RotaBaxter,
    OOperator,
    Compat,
    Lift,
    Search,
    Deformed,
    Polynomial,
    Quotient,
    Compose,
    Induced,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Nijenhuis,
    RotaBaxter,
    OOperator,
}

#[derive(Args, Debug, Clone)]
pub struct OperatorArgs {
    #[command(flatten)]
    pub source: Source,
    /// Operator name; defaults to the only declared operator.
    #[arg(long)]
    pub operator: Option<String>,
    /// Second operator for `compat` and `quotient`.
    #[arg(long)]
    pub second: Option<String>,
    /// Nijenhuis operator for `compose`.
    #[arg(long)]
    pub nijenhuis: Option<String>,
    /// Representation name, or `adjoint`.
    #[arg(long)]
    pub rep: Option<String>,
    /// Rota-Baxter weight (a rational).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub weight: String,
    /// Entry bound for `search`.
    #[arg(long, default_value_t = 1)]
    pub entries_bound: u32,
    /// Identity searched for by `search`.
    #[arg(long, value_enum, default_value_t = Identity::Nijenhuis)]
    pub identity: Identity,
    /// Highest power for `deformed`.
    #[arg(long, default_value_t = 2)]
    pub k_max: u32,
    /// Lowest power for `polynomial`.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lowest: i32,
    /// Comma-separated coefficients for `polynomial`.
    #[arg(long, default_value = "1")]
    pub coeffs: String,
    /// Work on the sub-adjacent Lie-Rinehart algebra.
    #[arg(long)]
    pub lie: bool,
}

/// Result of one command before rendering.
#[derive(Default)]
pub(crate) struct Outcome {
    pub reports: Vec<Report>,
    pub results: BTreeMap<String, serde_json::Value>,
    pub text: Vec<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }
}

#[derive(Serialize)]
struct Output<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    input_digest: &'a str,
    passed: bool,
    reports: &'a [Report],
    results: &'a BTreeMap<String, serde_json::Value>,
}

/// Input failures exit with 2, mathematical ones with 1.
pub(crate) fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Invalid { .. } | Error::Precondition(_) => 1,
        Error::Dimension { .. } | Error::KindMismatch(_) | Error::Parse { .. } | Error::Internal(_) => 2,
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(format_rational).collect()).collect()
}

pub(crate) fn load(source: &Source) -> Result<(InputDocument, Vec<u8>), Error> {
    let bytes = match (&source.path, &source.fixture) {
        (_, Some(name)) => fixture_text(name)
            .ok_or_else(|| Error::parse("--fixture", format!("unknown fixture {name:?}")))?
            .as_bytes()
            .to_vec(),
        (Some(path), None) => {
            std::fs::read(path).map_err(|e| Error::parse(path.display().to_string(), e))?
        }
        (None, None) => return Err(Error::parse("input", "give a document path or --fixture NAME")),
    };
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::parse("input", e))?;
    Ok((InputDocument::parse(text)?, bytes))
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Fixtures { .. } => "fixtures".into(),
        Command::Validate(_) => "validate".into(),
        Command::Cohomology { .. } => "cohomology".into(),
        Command::Deform { action, .. } => format!("deform {}", action.to_possible_value().unwrap().get_name()),
        Command::Operators { action, .. } => format!("operators {}", action.to_possible_value().unwrap().get_name()),
    }
}

/// Runs the CLI on the given arguments and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Command::Fixtures { name } = &cli.command {
        return commands::fixtures(name.as_deref());
    }
    let name = command_name(&cli.command);
    let (outcome, digest) = match commands::dispatch(&cli.command) {
        Ok(pair) => pair,
        Err(err) => {
            eprintln!("error: {err}");
            return exit_code_for(&err);
        }
    };
    let passed = outcome.passed();
    let mut text = String::new();
    if cli.json {
        let out = Output {
            tool: "rinehart",
            version: env!("CARGO_PKG_VERSION"),
            command: &name,
            input_digest: &digest,
            passed,
            reports: &outcome.reports,
            results: &outcome.results,
        };
        let value = serde_json::to_value(&out).expect("reports serialize");
        text = serde_json::to_string_pretty(&value).expect("reports serialize");
        text.push('\n');
    } else {
        for r in &outcome.reports {
            text.push_str(&format!("{r}\n"));
        }
        for line in &outcome.text {
            text.push_str(line);
            text.push('\n');
        }
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if passed {
        0
    } else {
        1
    }
}
