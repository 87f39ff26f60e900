//! `ordercone`: command-line front end for the ordercone library.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::report::Failure;

#[derive(Parser, Debug)]
#[command(name = "ordercone", version, about = "Exact queries on polyhedral ordered vector spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print wall time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run independent work items on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

/// Where the ordered space comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SpaceArg {
    /// Builtin space: four-ray, pentagon or simplex:<n>.
    #[arg(long, value_name = "NAME")]
    pub example: Option<String>,
    /// JSON file with `name`, `dim` and `generators` and/or `facets`.
    #[arg(long, value_name = "FILE")]
    pub space: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice, pervasiveness, fordability, weak pervasiveness and RDP flags.
    Classify {
        #[command(flatten)]
        space: SpaceArg,
        /// Also look for x with 0 < Fx <= (Fb)^+ for this b.
        #[arg(long, value_name = "VECTOR")]
        probe: Option<String>,
    },
    /// Atoms of the space; with a vector, its atom/discreteness status and
    /// image in the cover.
    Atoms {
        #[command(flatten)]
        space: SpaceArg,
        x: Option<String>,
    },
    /// Disjointness of two vectors by both oracles.
    Disjoint {
        #[command(flatten)]
        space: SpaceArg,
        x: String,
        y: String,
    },
    /// Disjoint complement of the span of the given vectors.
    Dcomp {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Principal band of a vector.
    Band {
        #[command(flatten)]
        space: SpaceArg,
        a: String,
        /// Test membership of this vector in the principal ideal of `a`.
        #[arg(long, value_name = "VECTOR")]
        member: Option<String>,
    },
    /// Every band, by exhaustive search over zero sets.
    Bands {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Order projections; with `--split`, the ideal decomposition check.
    Projections {
        #[command(flatten)]
        space: SpaceArg,
        /// Two JSON lists of vectors spanning complementary subspaces B and D.
        #[arg(long, num_args = 2, value_names = ["B", "D"])]
        split: Option<Vec<String>>,
    },
    /// Largest multiple of an atom below x.
    Lambda {
        #[command(flatten)]
        space: SpaceArg,
        x: String,
        a: String,
    },
    /// Splits x into a multiple of an atom and a disjoint remainder.
    Decompose {
        #[command(flatten)]
        space: SpaceArg,
        x: String,
        a: String,
    },
    /// Looks for z1 + z2 = z with 0 <= z1 <= x1, 0 <= z2 <= x2.
    Rdp {
        #[command(flatten)]
        space: SpaceArg,
        x1: String,
        x2: String,
        z: String,
    },
    /// Supremum of a finite set.
    Sup {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Smallest extension of the band spanned by the given vectors.
    Extend {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Restriction of the coordinate band with the given 1-based support.
    Restrict {
        #[command(flatten)]
        space: SpaceArg,
        support: Vec<usize>,
    },
    /// The sequence-space counterexample.
    SeqDemo {
        /// Decompose this sequence (JSON) instead of the built-in sample.
        #[arg(long, value_name = "JSON")]
        member: Option<String>,
    },
    /// Runs the property and golden suites.
    Selftest {
        /// Suite name or number.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = ordercone::selftest::Options::default().seed)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_facets: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = commands::execute(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("reports serialize"));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
