//! Command-line front end.
//!
//! Every command reads and writes JSON. Exit codes: 0 success, 1
//! mathematical failure, 2 I/O or parse failure, 3 inconclusive.

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cayley::mult_table;
use crate::decompose::{decompose, Pair, Tolerances, DEFAULT_RESIDUAL_TOL};
use crate::error::Error;
use crate::groups::{classify, random_element, GroupTag, MembershipReport, DEFAULT_MEMBERSHIP_TOL};
use crate::json::{matrix_from_json, matrix_to_json, to_json};
use crate::linalg::CMatrix;
use crate::pairs::AlgebraTag;
use crate::visible::{real_form_report, run_visible};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "octocartan", version, about = "Octonions, G2, Spin(7) and Cartan decompositions")]
pub struct Cli {
    /// Tolerance for membership and rank decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMBERSHIP_TOL)]
    pub tol_membership: f64,
    /// Tolerance for decomposition residuals.
    #[arg(long, global = true, default_value_t = DEFAULT_RESIDUAL_TOL)]
    pub tol_residual: f64,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the octonion multiplication table.
    Table,
    /// Report group membership of a matrix.
    Check {
        /// Matrix JSON file, or - for stdin.
        file: String,
        #[arg(long)]
        group: GroupTag,
    },
    /// Decompose a matrix as k · a_θ · h.
    Decompose {
        /// Matrix JSON file, or - for stdin.
        file: String,
        #[arg(long)]
        pair: Pair,
        /// Overrides --tol-residual.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print a seeded random group element.
    Random {
        #[arg(long)]
        group: GroupTag,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Certify the strongly visible action on random samples.
    Visible {
        #[arg(long)]
        pair: Pair,
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
    /// Report invariants of the σ0-fixed real form.
    Realform {
        #[arg(long)]
        algebra: AlgebraTag,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::UnknownTag(_) | Error::NonFinite => EXIT_INPUT,
        _ => EXIT_MATH,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(error_code(&e), format!("error: {e}\n"))
}

fn read_matrix(file: &str, stdin: &mut dyn Read) -> Result<CMatrix, Outcome> {
    let mut text = String::new();
    let read = if file == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: cannot read {file}: {e}\n")))?;
    matrix_from_json(&text).map_err(from_error)
}

#[derive(Serialize)]
struct CheckOutput {
    group: GroupTag,
    member: bool,
    residual: f64,
    report: MembershipReport,
}

fn line<T: Serialize>(value: &T) -> String {
    to_json(value) + "\n"
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_INPUT, text) } else { Outcome::ok(text) };
        }
    };
    execute(&cli, stdin)
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let mut tol = Tolerances { membership: cli.tol_membership, residual: cli.tol_residual };
    if let Command::Decompose { tol: Some(t), .. } = cli.command {
        tol.residual = t;
    }
    if !(tol.membership > 0.0 && tol.residual > 0.0) {
        return Outcome::fail(EXIT_INPUT, "error: tolerances must be positive\n".into());
    }
    match &cli.command {
        Command::Table => Outcome::ok(line(mult_table().entries())),
        Command::Check { file, group } => {
            let g = match read_matrix(file, stdin) {
                Ok(g) => g,
                Err(o) => return o,
            };
            let report = classify(&g, tol.membership);
            let out = CheckOutput {
                group: *group,
                member: report.member_of(*group),
                residual: report.residual_for(*group),
                report,
            };
            Outcome { code: if out.member { EXIT_OK } else { EXIT_MATH }, stdout: line(&out), stderr: String::new() }
        }
        Command::Decompose { file, pair, .. } => {
            let g = match read_matrix(file, stdin) {
                Ok(g) => g,
                Err(o) => return o,
            };
            match decompose(*pair, &g, &tol) {
                Ok(f) => Outcome::ok(line(&f)),
                Err(e) => from_error(e),
            }
        }
        Command::Random { group, scale } => match random_element(*group, cli.seed, *scale) {
            Ok(g) => Outcome::ok(matrix_to_json(&g) + "\n"),
            Err(e) => from_error(e),
        },
        Command::Visible { pair, samples } => match run_visible(*pair, *samples, cli.seed, &tol) {
            Ok(r) => {
                Outcome { code: if r.passed { EXIT_OK } else { EXIT_MATH }, stdout: line(&r), stderr: String::new() }
            }
            Err(e) => from_error(e),
        },
        Command::Realform { algebra } => match real_form_report(*algebra) {
            Ok(r) => Outcome {
                code: if r.inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK },
                stdout: line(&r),
                stderr: String::new(),
            },
            Err(e) => from_error(e),
        },
    }
}
