//! Command-line front end for `pellform`.
//!
//! [`run`] parses arguments and returns everything the process would print,
//! so the commands can be tested without spawning the binary.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use pellform::sweep::{verify, Fault, VerifyOptions};
use pellform::{
    enumerate_family, expand_sqrt, membership, solve_fundamental, solve_pell_minus,
    solve_pell_plus, Error, FamilyEntry, PellSolution,
};

pub mod tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pellform",
    version,
    about = "Continued fractions of sqrt(d) and the Fermat-Pell equations x^2 - d y^2 = +-1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the periodic continued fraction of sqrt(d)
    Expand { d: BigUint },
    /// Smallest positive solution of x^2 - d y^2 = +-1
    Solve {
        d: BigUint,
        #[command(flatten)]
        mode: SolveMode,
    },
    /// Members of the family sqrt(d) = [e; k, ..., k, 2e] with period j
    Family {
        j: usize,
        k: BigUint,
        #[arg(long, default_value_t = 5)]
        ell_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recover (j, k, ell, e) for d if sqrt(d) has the uniform shape
    Member { d: BigUint },
    /// Print a reference table: intro-j2, intro-j3, fn, main
    Table {
        name: String,
        /// Evaluate the fn table at this k instead of printing polynomials
        #[arg(long)]
        k: Option<BigUint>,
    },
    /// Cross-check closed forms and the generic solver against brute force
    Verify {
        #[arg(long, default_value_t = 10_000)]
        dmax: u64,
        #[arg(long, default_value_t = 6)]
        jmax: usize,
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        /// Cutoff on y for the brute-force Pell search
        #[arg(long, default_value_t = 100_000)]
        ymax: u64,
        /// Worker threads (defaults to the number of CPUs)
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct SolveMode {
    /// Fundamental solution of x^2 - d y^2 = (-1)^period (default)
    #[arg(long)]
    pub fundamental: bool,
    /// Smallest solution of x^2 - d y^2 = 1
    #[arg(long)]
    pub plus: bool,
    /// Smallest solution of x^2 - d y^2 = -1
    #[arg(long)]
    pub minus: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InjectedFault {
    FlipSign,
}

/// One output row. Integers are kept as full decimal strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_m_minus_1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<String>,
}

impl From<&FamilyEntry> for OutputRecord {
    fn from(e: &FamilyEntry) -> Self {
        OutputRecord {
            d: Some(e.d.to_string()),
            e: Some(e.e.to_string()),
            j: Some(e.params.j.to_string()),
            k: Some(e.params.k.to_string()),
            m: Some(e.params.m.to_string()),
            ell: Some(e.params.ell.to_string()),
            case: Some(e.case.to_string()),
            x: Some(e.x.to_string()),
            y: Some(e.y.to_string()),
            sign: Some(e.sign.to_i8().to_string()),
            f_m: Some(e.f_m.to_string()),
            f_m_minus_1: Some(e.f_m_minus_1.to_string()),
            period: Some(e.params.j.to_string()),
        }
    }
}

/// What a command printed and the exit code it asks for.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn domain(err: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_DOMAIN,
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_DOMAIN
            } else {
                EXIT_OK
            };
            let text = err.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

fn show_solution(s: &PellSolution) -> String {
    format!("x={} y={} sign={}\n", s.x, s.y, s.sign.to_i8())
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Expand { d } => match expand_sqrt(&d) {
            Ok(cf) => Outcome::ok(format!("{cf}\n")),
            Err(err) => Outcome::domain(err),
        },
        Command::Solve { d, mode } => solve(&d, &mode),
        Command::Family {
            j,
            k,
            ell_max,
            format,
        } => family(j, &k, ell_max, format),
        Command::Member { d } => member(&d),
        Command::Table { name, k } => match tables::table(&name, k.as_ref()) {
            Some(Ok(text)) => Outcome::ok(text),
            Some(Err(err)) => Outcome::domain(err),
            None => Outcome::domain(format!(
                "unknown table {name:?}; expected one of {}",
                tables::TABLE_NAMES.join(", ")
            )),
        },
        Command::Verify {
            dmax,
            jmax,
            kmax,
            ymax,
            threads,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                d_max: dmax,
                j_max: jmax,
                k_max: kmax,
                y_max: ymax,
                fault: inject_fault.map(|InjectedFault::FlipSign| Fault::FlipSign),
            };
            run_verify(&opts, threads)
        }
    }
}

fn solve(d: &BigUint, mode: &SolveMode) -> Outcome {
    let result = if mode.plus {
        solve_pell_plus(d).map(Some)
    } else if mode.minus {
        solve_pell_minus(d)
    } else {
        solve_fundamental(d).map(Some)
    };
    match result {
        Ok(Some(s)) => Outcome::ok(show_solution(&s)),
        Ok(None) => {
            let j = expand_sqrt(d).map(|cf| cf.j()).unwrap_or_default();
            Outcome::ok(format!("unsolvable (period {j} is even)\n"))
        }
        Err(err) => Outcome::domain(err),
    }
}

fn family(j: usize, k: &BigUint, ell_max: u64, format: Format) -> Outcome {
    let fam = match enumerate_family(j, k, ell_max) {
        Ok(fam) => fam,
        Err(err) => return Outcome::domain(err),
    };
    if let Some(reason) = fam.reason {
        let text = match format {
            Format::Json => format!(
                "{}\n",
                serde_json::json!({
                    "j": j.to_string(),
                    "k": k.to_string(),
                    "reason": reason.code(),
                })
            ),
            Format::Text | Format::Csv => format!("no solutions: {reason}\n"),
        };
        return Outcome::ok(text);
    }
    let mut out = String::new();
    match format {
        Format::Text => {
            if let Some(first) = fam.entries.first() {
                let _ = writeln!(
                    out,
                    "# j={j} k={k} {} f_m={} f_(m-1)={} sign={}",
                    first.case,
                    first.f_m,
                    first.f_m_minus_1,
                    first.sign.to_i8()
                );
            }
            let _ = writeln!(out, "ell e d x y");
            for e in &fam.entries {
                let _ = writeln!(out, "{} {} {} {} {}", e.params.ell, e.e, e.d, e.x, e.y);
            }
        }
        Format::Csv => {
            out.push_str("e,d,x,y\n");
            for e in &fam.entries {
                let _ = writeln!(out, "{},{},{},{}", e.e, e.d, e.x, e.y);
            }
        }
        Format::Json => {
            for e in &fam.entries {
                let record = OutputRecord::from(e);
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&record).expect("records always serialize")
                );
            }
        }
    }
    Outcome::ok(out)
}

fn member(d: &BigUint) -> Outcome {
    match membership(d) {
        Ok(Some(m)) => Outcome::ok(format!(
            "d={d} j={} k={} ell={} e={}\n",
            m.j, m.k, m.ell, m.e
        )),
        Ok(None) => {
            let cf = expand_sqrt(d).expect("membership already expanded d");
            Outcome::ok(format!("d={d}: no uniform pattern ({cf})\n"))
        }
        Err(err @ Error::Invariant(_)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_VERIFY,
        },
        Err(err) => Outcome::domain(err),
    }
}

fn run_verify(opts: &VerifyOptions, threads: Option<usize>) -> Outcome {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let reports = match builder.build() {
        Ok(pool) => pool.install(|| verify(opts)),
        Err(err) => return Outcome::domain(format!("cannot start worker pool: {err}")),
    };
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    let names: Vec<&str> = reports.iter().map(|r| r.name).collect();
    match reports.iter().find(|r| !r.passed()) {
        None => {
            let _ = writeln!(out, "PASS: {}", names.join(", "));
            Outcome::ok(out)
        }
        Some(bad) => {
            let _ = writeln!(
                out,
                "FAIL: {}: {}",
                bad.name,
                bad.failure.as_deref().unwrap_or_default()
            );
            Outcome {
                stdout: out,
                stderr: String::new(),
                code: EXIT_VERIFY,
            }
        }
    }
}
