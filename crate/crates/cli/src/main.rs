//! Command-line front door: parse inputs, dispatch to the library, emit
//! deterministic JSON/CSV reports, and run the verification suites.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gateswitch::budget::Budget;

#[derive(Parser)]
#[command(
    name = "gateswitch",
    version,
    about = "Switch counts in circular sequences, polytope diameters, and planar k-set counts"
)]
struct Cli {
    /// Output format; csv is available for tabular commands (ksets, verify,
    /// diameter-spectrum).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print only the headline value or verdict.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(flatten)]
    budget: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BudgetArgs {
    /// Vertex-count cap for skeleton searches; GATESWITCH_BUDGET sets the
    /// default.
    #[arg(long, global = true)]
    vertex_budget: Option<u64>,

    /// Word-size cap for the shortest-path oracle (state space n!).
    #[arg(long, global = true)]
    oracle_max_n: Option<u8>,

    /// Word-size cap for exhaustive sequence enumeration.
    #[arg(long, global = true)]
    enumerate_max_n: Option<u8>,

    /// Word-size cap for the all-pairs diameter oracle.
    #[arg(long, global = true)]
    all_pairs_max_n: Option<u8>,

    /// Word-size cap for emitting the inequality description.
    #[arg(long, global = true)]
    hrep_max_n: Option<u8>,
}

impl BudgetArgs {
    fn resolve(&self) -> Budget {
        let mut budget = Budget::from_env();
        if let Some(v) = self.vertex_budget {
            budget.max_vertices = v;
        }
        if let Some(v) = self.oracle_max_n {
            budget.oracle_max_n = v;
        }
        if let Some(v) = self.enumerate_max_n {
            budget.enumerate_max_n = v;
        }
        if let Some(v) = self.all_pairs_max_n {
            budget.all_pairs_max_n = v;
        }
        if let Some(v) = self.hrep_max_n {
            budget.hrep_max_n = v;
        }
        budget
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gate distances, left/right split, and bounds on the minimum
    /// gate-switch count.
    Bounds {
        /// Word size.
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
        /// Comma-separated 1-based gate positions, e.g. 1,4,6,7.
        #[arg(short = 'y', long = "gates")]
        gates: String,
    },

    /// Build the two-phase sequence for a gate set and tally its switches.
    Construct {
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
        #[arg(short = 'y', long = "gates")]
        gates: String,
    },

    /// Skeleton diameter of the polytope of a composition.
    Diameter {
        /// Comma-separated parts, e.g. 1,3,2,1,1.
        #[arg(short = 'c', long = "composition")]
        composition: String,
        /// Include the derived-gate bounds.
        #[arg(long)]
        bounds: bool,
        /// Include the closed form (two or three parts).
        #[arg(long)]
        closed_form: bool,
        /// Cross-check against the all-pairs BFS oracle.
        #[arg(long)]
        oracle: bool,
    },

    /// Full inequality description of the polytope of a composition.
    Hrep {
        #[arg(short = 'c', long = "composition")]
        composition: String,
        /// Strictly increasing block values, one per part (defaults to
        /// 1,2,..).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<i64>>,
    },

    /// Brute-force ground-truth engines.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },

    /// K-set counts of a points file, with optional left/right selection
    /// and the two-sided diameter check.
    Ksets {
        /// Points file: one point per line, two exact rationals.
        #[arg(long)]
        points: PathBuf,
        /// Comma-separated k values counted as left k-sets.
        #[arg(short = 'L', long = "left", alias = "L", value_name = "K,K,..")]
        left: Option<String>,
        /// Comma-separated k values counted as right k-sets.
        #[arg(short = 'R', long = "right", alias = "R", value_name = "K,K,..")]
        right: Option<String>,
        /// Check the two-sided diameter bound for the selection.
        #[arg(long)]
        sandwich: bool,
    },

    /// Generate an extremal configuration: a (2k+1)-gon with the remaining
    /// points near its center.
    Gon {
        #[arg(short = 'k', long)]
        k: u8,
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
        /// Also write a loadable points file.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },

    /// Deterministically perturb a points file into general position and
    /// re-validate.
    Perturb {
        #[arg(long)]
        points: PathBuf,
        /// Perturbation magnitude is below 1/q.
        #[arg(short = 'q', long, default_value_t = 1_000_003)]
        q: u64,
        /// Also write the perturbed points file.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },

    /// Run a cross-validation suite (theorem1, construction, bridge,
    /// farthest, closed-form, permutohedron, enumeration, fixture,
    /// all-pairs, ksets, sandwich, gon, all).
    Verify {
        suite: String,
        /// Largest word size, where the suite takes one.
        #[arg(long)]
        max_n: Option<u8>,
        /// Number of seeded random configurations, where applicable.
        #[arg(long)]
        seeds: Option<u64>,
        /// Random word samples per composition, where applicable.
        #[arg(long)]
        samples: Option<u64>,
        /// Base seed for the deterministic generators.
        #[arg(long, default_value_t = 0x0413)]
        seed: u64,
    },

    /// Achieved diameters over all compositions of n, with witnesses.
    #[command(name = "diameter-spectrum")]
    DiameterSpectrum {
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Exact minimum gate-switch count by layered 0/1 shortest path.
    MinSwitches {
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
        #[arg(short = 'y', long = "gates")]
        gates: String,
    },
    /// Exhaustively enumerate circular sequences.
    Enumerate {
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
        /// Report the count only.
        #[arg(long)]
        count_only: bool,
    },
    /// Count circular sequences by the layered recursion.
    Count {
        #[arg(short = 'N', long = "size", value_name = "N")]
        n: u8,
    },
    /// Diameter by all-pairs BFS over the full skeleton.
    AllPairs {
        #[arg(short = 'c', long = "composition")]
        composition: String,
    },
    /// Brute-force k-set counts by the exact separability predicate.
    Ksets {
        #[arg(long)]
        points: PathBuf,
        #[arg(short = 'k', long)]
        k: u8,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.resolve();
    let ctx = commands::Context {
        format: cli.format,
        quiet: cli.quiet,
        budget,
    };
    match commands::run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code() as u8)
        }
    }
}
