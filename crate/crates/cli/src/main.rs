//! `emergent`: batch front-end for the emergent-core computations.
//!
//! Exit codes: 0 success, 1 property violation, 2 input error, 3 resource
//! limit.

mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emergent_core::process::Bound;
use emergent_core::quantum::parse_decomposition;
use emergent_core::{lattice, suites, Error};
use serde::Serialize;

use input::{Loaded, TheorySpec};

#[derive(Parser)]
#[command(
    name = "emergent",
    version,
    about = "Subsystem structure of finite reversible theories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the self-bicommutant lattice.
    Lattice {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List every system and the pairwise compatibility matrix.
    Systems {
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Run a property suite; violations are listed in the report.
    Check {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Cap on system-environment pair objects in the process suites.
        #[arg(long, default_value_t = 20, conflicts_with = "all_objects")]
        max_objects: usize,
        /// Build the process theories over every unital system.
        #[arg(long)]
        all_objects: bool,
        /// Seed for the sampled exchange-law checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sector-decomposition calculus, e.g. "2x1+1x3".
    Quantum {
        #[arg(long)]
        decomposition: String,
    },
    /// Count product and non-product states over every lattice node.
    ScanMixed {
        #[command(flatten)]
        theory: TheoryArgs,
    },
}

#[derive(Args)]
struct TheoryArgs {
    /// Theory document in JSON.
    #[arg(long)]
    input: PathBuf,
    /// Overrides the document's group-order cap.
    #[arg(long)]
    max_order: Option<usize>,
}

impl TheoryArgs {
    fn load(&self) -> Result<Loaded, Error> {
        TheorySpec::read(&self.input)?.load(self.max_order)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lattice,
    States,
    Systems,
    Processes,
    Pmcat,
    All,
}

#[derive(Serialize)]
struct CheckReport {
    passed: bool,
    reports: Vec<suites::SuiteReport>,
}

enum Output {
    Json(serde_json::Value),
    Text(String),
}

fn json(v: &impl Serialize) -> Output {
    Output::Json(serde_json::to_value(v).expect("reports serialise"))
}

fn check(l: &Loaded, suite: Suite, bound: Bound, seed: u64) -> Result<CheckReport, Error> {
    let t = &l.theory;
    let lat = lattice::enumerate_self_bicommutant(t)?;
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut reports = Vec::new();
    if !l.named.is_empty() {
        reports.push(report::named_suite(t, &l.named)?);
    }
    if want(Suite::Lattice) {
        reports.push(suites::lattice_suite(t, &lat)?);
        reports.push(suites::transformation_suite(t, &lat, seed)?);
    }
    if want(Suite::States) {
        reports.push(suites::states_suite(t, &lat)?);
    }
    if want(Suite::Systems) {
        reports.push(suites::systems_suite(t, &lat)?);
    }
    if want(Suite::Processes) {
        reports.push(suites::processes_suite(t, &lat, bound)?);
    }
    if want(Suite::Pmcat) {
        reports.push(suites::pmcat_suite(t, &lat, bound)?);
    }
    Ok(CheckReport {
        passed: reports.iter().all(|r| r.passed()),
        reports,
    })
}

/// Runs a command, returning its output and whether every property held.
fn run(command: &Command) -> Result<(Output, bool), Error> {
    Ok(match command {
        Command::Lattice { theory, format } => {
            let l = theory.load()?;
            let lat = lattice::enumerate_self_bicommutant(&l.theory)?;
            match format {
                Format::Json => (json(&report::lattice_report(&l.theory, &lat, &l.named)?), true),
                Format::Dot => (Output::Text(report::lattice_dot(&lat)), true),
            }
        }
        Command::Systems { theory } => {
            let l = theory.load()?;
            let lat = lattice::enumerate_self_bicommutant(&l.theory)?;
            (json(&report::systems_report(&l.theory, &lat)?), true)
        }
        Command::Check {
            theory,
            suite,
            max_objects,
            all_objects,
            seed,
        } => {
            let bound = if *all_objects {
                Bound::All
            } else {
                Bound::ObjectCap(*max_objects)
            };
            let r = check(&theory.load()?, *suite, bound, *seed)?;
            let ok = r.passed;
            (json(&r), ok)
        }
        Command::Quantum { decomposition } => {
            let d = parse_decomposition(decomposition)?;
            (json(&report::quantum_report(&d)?), true)
        }
        Command::ScanMixed { theory } => {
            let l = theory.load()?;
            let lat = lattice::enumerate_self_bicommutant(&l.theory)?;
            (json(&suites::scan_mixed(&l.theory, &lat)?), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((out, ok)) => {
            let text = match out {
                Output::Json(v) => {
                    let mut s = serde_json::to_string_pretty(&v).expect("values serialise");
                    s.push('\n');
                    s
                }
                Output::Text(s) => s,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit { .. } => 3,
                _ => 2,
            })
        }
    }
}
