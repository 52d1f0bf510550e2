//! `wapkit`: membership checks, enumeration, gadget demos, claim
//! verification and limit construction.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wapkit::classes::CycleLengths;
use wapkit::ClassId;

#[derive(Parser, Debug)]
#[command(name = "wapkit", version, about = "Bounded amalgamation checks for small classes of finite structures")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest member size examined (enumeration cap, claim size).
    #[arg(long, global = true, env = "WAPKIT_CAP_N")]
    pub cap_n: Option<usize>,
    /// Oracle cap on |X| + |Y| - |Z|.
    #[arg(long, global = true, env = "WAPKIT_CAP_SUM")]
    pub cap_sum: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Membership of a JSON structure, with the violated conditions.
    Check {
        /// k5, p, g, pzk or ga:<l1>,<l2>,...
        #[arg(value_parser = parse_class)]
        class: ClassId,
        file: PathBuf,
    },
    /// Members of size exactly n, one per isomorphism class.
    Enumerate {
        #[arg(value_parser = parse_class)]
        class: ClassId,
        n: usize,
        /// Write the representatives as a JSON array.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The CAP counterexample span of a class and the oracle's verdict on it.
    Demo {
        gadget: Gadget,
        /// Cycle lengths for the ga gadget.
        #[arg(long, value_parser = parse_lengths)]
        set: Option<CycleLengths>,
        /// Base member as a JSON structure (default: one vertex, or one edge for g and ga).
        #[arg(long)]
        member: Option<PathBuf>,
    },
    /// Runs the checks behind a catalog claim.
    Verify {
        /// Claim id; `list` prints the catalog.
        claim: String,
        #[arg(long, value_parser = parse_lengths)]
        set_a: Option<CycleLengths>,
        #[arg(long, value_parser = parse_lengths)]
        set_b: Option<CycleLengths>,
        /// Extension depth for WAP samples.
        #[arg(long)]
        ext: Option<usize>,
    },
    /// Finite approximations of generic limits.
    Limit {
        #[command(subcommand)]
        kind: LimitKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum LimitKind {
    /// The subdivided tree approximating the limit of g.
    Tree {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        branching: usize,
        /// DOT output path (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the tree as a JSON structure.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// A greedy chain of members.
    Chain {
        #[arg(long, value_parser = parse_class)]
        class: ClassId,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Size cap of the chain.
        #[arg(long, default_value_t = 30)]
        cap: usize,
        /// Steps whose vertices must end determined (k5 and p).
        #[arg(long, default_value_t = 25)]
        horizon: usize,
        /// Final structure as JSON (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Obligation log as JSON.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Steps to snapshot, comma separated.
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
        /// Directory for `step-<t>.json` snapshots.
        #[arg(long)]
        snapshot_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Gadget {
    K5,
    P,
    G,
    Ga,
}

fn parse_class(s: &str) -> Result<ClassId, String> {
    s.parse().map_err(|e: wapkit::Error| e.to_string())
}

fn parse_lengths(s: &str) -> Result<CycleLengths, String> {
    match format!("ga:{s}").parse::<ClassId>() {
        Ok(ClassId::Ga(a)) => Ok(a),
        Ok(_) => unreachable!("ga prefix"),
        Err(e) => Err(e.to_string()),
    }
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
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => match e.downcast_ref::<std::io::Error>() {
            Some(io) if io.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            _ => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
