//! `fairsched`: solve, check and enumerate fair assignments of weighted
//! players to identical resources.
//!
//! Exit codes: 0 found or satisfied, 1 infeasible or violated, 2 usage or
//! input error, 3 refused by the enumeration cap.

mod commands;
mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fairsched::{Weight, DEFAULT_ENUM_CAP};

use commands::{BenchArgs, BenchSolver, Exit, GenArgs, SolveArgs};
use docs::{to_json, AssignmentDoc, InstanceDoc};

const CAP_VAR: &str = "FAIRSCHED_ENUM_CAP";

#[derive(Parser)]
#[command(name = "fairsched", version, about = "Fair and credible assignments on identical resources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an assignment satisfying a property set, optionally within a makespan threshold.
    Solve {
        /// Instance document: {"weights": [...], "m": ..., "t": ... | null}.
        input: PathBuf,
        /// Atoms Cr, Eq, EF, WOE, OE, SM, WM, M or TOP joined by `+`.
        #[arg(short, long)]
        property: String,
        /// Makespan threshold; overrides the instance's `t`.
        #[arg(short, long)]
        threshold: Option<Weight>,
        /// Find the least makespan instead of any feasible one.
        #[arg(long)]
        minimize: bool,
    },
    /// Check an assignment against a property set.
    Check {
        input: PathBuf,
        /// Assignment document: {"a": [...]} with one-based resources.
        assignment: PathBuf,
        #[arg(short, long)]
        property: String,
    },
    /// List every load distribution, or those satisfying a property set.
    Enumerate {
        input: PathBuf,
        #[arg(short, long)]
        property: Option<String>,
        #[arg(short, long)]
        threshold: Option<Weight>,
    },
    /// Build the two-resource instance for a Partition instance.
    Reduce {
        /// The Partition values.
        #[arg(required = true, value_delimiter = ',')]
        values: Vec<Weight>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        min_weight: Weight,
        #[arg(long, default_value_t = 10)]
        max_weight: Weight,
        /// Probability that a player copies an earlier player's weight.
        #[arg(long, default_value_t = 0.0)]
        dup_bias: f64,
        #[arg(short, long)]
        threshold: Option<Weight>,
    },
    /// Time one solver over a ladder of instance sizes and print CSV.
    Bench {
        /// lpt, single, ef, ef-cr, sca-<props> or solve-<props>, e.g. sca-woe-cr.
        #[arg(long)]
        solver: String,
        /// Comma-separated sizes, e.g. 1e3,1e4,1e5.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<String>,
        /// Resources per instance; defaults to n / 1000, at least 2.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_weight: Weight,
        #[arg(long, default_value_t = 0.0)]
        dup_bias: f64,
        /// Threshold as a multiple of the average load W / m.
        #[arg(long)]
        threshold_factor: Option<f64>,
    },
}

fn enum_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CAP_VAR}={v} is not a count")),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn run(cli: Cli) -> Result<Exit> {
    let cap = enum_cap()?;
    match cli.command {
        Command::Solve { input, property, threshold, minimize } => {
            let doc = InstanceDoc::read(&input)?;
            let args = SolveArgs { property: commands::parse_property(&property)?, threshold, minimize, cap };
            let (out, code) = commands::solve_cmd(&doc, &args)?;
            if out.solver.as_deref() == Some("brute-force") {
                eprintln!("note: exhaustive search, exponential in the number of players (cap {cap})");
            }
            print!("{}", to_json(&out));
            Ok(code)
        }
        Command::Check { input, assignment, property } => {
            let doc = InstanceDoc::read(&input)?;
            let a = AssignmentDoc::read(&assignment)?.assignment(&doc.instance()?)?;
            let (out, code) = commands::check_cmd(&doc, &a, commands::parse_property(&property)?)?;
            print!("{}", to_json(&out));
            Ok(code)
        }
        Command::Enumerate { input, property, threshold } => {
            let doc = InstanceDoc::read(&input)?;
            let property = property.as_deref().map(commands::parse_property).transpose()?;
            let out = commands::enumerate_cmd(&doc, property, threshold, cap)?;
            print!("{}", to_json(&out));
            Ok(Exit::Ok)
        }
        Command::Reduce { values } => {
            print!("{}", to_json(&commands::reduce_cmd(values)?));
            Ok(Exit::Ok)
        }
        Command::Gen { seed, n, m, min_weight, max_weight, dup_bias, threshold } => {
            let args = GenArgs { seed, n, m, min_weight, max_weight, dup_bias, threshold };
            print!("{}", serde_json::to_string(&commands::gen_cmd(&args)?)? + "\n");
            Ok(Exit::Ok)
        }
        Command::Bench { solver, sizes, m, seed, max_weight, dup_bias, threshold_factor } => {
            let args = BenchArgs {
                solver: BenchSolver::parse(&solver)?,
                sizes: sizes.iter().map(|s| commands::parse_size(s)).collect::<Result<_>>()?,
                m,
                seed,
                max_weight,
                dup_bias,
                threshold_factor,
                cap,
            };
            print!("{}", commands::bench_cmd(&args)?);
            Ok(Exit::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let refused = e
                .downcast_ref::<fairsched::Error>()
                .is_some_and(|e| matches!(e, fairsched::Error::EnumerationCap { .. }));
            ExitCode::from(if refused { Exit::Refused } else { Exit::Usage } as u8)
        }
    }
}
