//! `fairshare` command-line tool. JSON results go to stdout, a one-line
//! summary to stderr. Exit status 0 on success, 1 on a domain error (with a
//! JSON error object on stdout), 2 on a usage error.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "fairshare",
    version,
    about = "Exact APS and MMS computation with certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Maximin share of one agent, with a partition attaining it.
    Mms {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        agent: usize,
    },
    /// Any price share of one agent.
    Aps {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        agent: usize,
        /// Include the weighted sets proving the lower bound.
        #[arg(long)]
        witness: bool,
        /// Include the price vector proving the upper bound.
        #[arg(long)]
        certificate: bool,
    },
    /// Property report for every agent's valuation.
    Check { file: PathBuf },
    /// Balanced MMS allocation, its prices and the certified APS bound for a binary XOS agent.
    XosBalance {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        agent: usize,
    },
    /// Complete allocation for agents sharing one matroid rank valuation.
    MrfAllocate { file: PathBuf },
    /// Best bundle affordable at the given prices.
    Demand {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        agent: usize,
        /// JSON array of price strings, or an object with a "prices" array.
        #[arg(long)]
        prices: PathBuf,
        /// Budget as a rational such as 1/3; defaults to 1/n.
        #[arg(long)]
        budget: Option<String>,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check the 3DM reduction on a source instance `{"m3":..,"triples":[..]}`.
    #[command(name = "verify-3dm")]
    Verify3dm { file: PathBuf },
}

#[derive(Subcommand)]
pub enum GenKind {
    /// Three agents, six goods, family {{g1,g2,g3},{g4,g5,g6}}.
    XosLb,
    /// Random binary XOS valuations.
    Xos {
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        families: usize,
        /// Chance in percent that a good joins a family set.
        #[arg(long, default_value_t = 50)]
        density: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One random matroid rank valuation shared by all agents.
    Matroid {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// uniform, partition, graphic or linear; random when omitted.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random additive valuations.
    Additive {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random 3DM source instance with `k` distinct triples.
    #[command(name = "3dm")]
    ThreeDm {
        #[arg(long, default_value_t = 2)]
        m3: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

// A closed stdout (e.g. piped into `head`) is not worth a panic.
fn emit(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON output");
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let work_bound = match commands::work_bound_from_env() {
        Ok(bound) => bound,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match commands::run(cli.command, work_bound) {
        Ok(out) => {
            emit(&out.json);
            eprintln!("{}", out.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            emit(&body);
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
