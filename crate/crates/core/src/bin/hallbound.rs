use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hallbound::commands::{self, Outcome, ScanOptions, SearchOptions};
use hallbound::group::spec::Caps;
use hallbound::group::{DEFAULT_DEGREE_CAP, DEFAULT_ORDER_CAP};

#[derive(Parser)]
#[command(name = "hallbound", version, about = "Check nilpotency class bounds on finite groups")]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the semilattice axioms of a lattice fixture or of a group's normal subgroups.
    Axioms {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Check the class bound for every normal subgroup, or for one given by generators.
    Verify {
        group: PathBuf,
        /// Generators of N, e.g. `--normal "(1 3)(2 4)" --normal "(1 2 3 4)"`.
        #[arg(long)]
        normal: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Check the bound over a corpus manifest (the built-in one by default).
    Scan {
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        max_order: Option<usize>,
        /// Also run the derivation inequalities on groups up to this order.
        #[arg(long, default_value_t = 0)]
        suite_max_order: usize,
    },
    /// Print the descent chain for one normal subgroup.
    Trace {
        group: PathBuf,
        #[arg(long, required = true)]
        normal: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Sample random commutator semilattices and look for failing inequalities.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long)]
        drop_jacobi: bool,
        /// Keep at most this many findings.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn caps(max_order: usize) -> Caps {
    Caps { max_order, max_degree: DEFAULT_DEGREE_CAP }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome: Outcome = match cli.command {
        Command::Axioms { input, max_order } => commands::cmd_axioms(&input, caps(max_order)),
        Command::Verify { group, normal, max_order } => {
            let normal = (!normal.is_empty()).then_some(normal.as_slice());
            commands::cmd_verify(&group, normal, caps(max_order))
        }
        Command::Scan { manifest, jobs, max_order, suite_max_order } => {
            commands::cmd_scan(manifest.as_deref(), ScanOptions { jobs, max_order, suite_max_order })
        }
        Command::Trace { group, normal, max_order } => commands::cmd_trace(&group, &normal, caps(max_order)),
        Command::Search { seed, size, iters, drop_jacobi, cap, jobs } => {
            commands::cmd_search(SearchOptions { seed, size, iters, drop_jacobi, cap, jobs })
        }
    };
    if cli.output.pretty {
        print!("{}", outcome.to_pretty());
    } else {
        println!("{}", outcome.to_json());
    }
    ExitCode::from(outcome.code() as u8)
}
