//! Command-line frontend: `ffreach solve` and `ffreach gen-walk`.
//!
//! Exit codes: 0 reachable (or success), 1 proven unreachable, 2 search
//! exhausted, 64 usage error, 65 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::heuristics::HeuristicKind;
use crate::instance::{parse_instance, serialize_instance, Instance, TargetSpec};
use crate::ratlp::DEFAULT_NODE_BUDGET;
use crate::report::{solve, SolveConfig, SolveReport};
use crate::search::{Strategy, Verdict};
use crate::walk::random_walk;

pub const EXIT_REACHABLE: i32 = 0;
pub const EXIT_UNREACHABLE: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "ffreach", version, about = "Petri net reachability by directed search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the target of an instance is reachable.
    Solve(SolveArgs),
    /// Write an instance whose target is the end of a seeded random walk.
    GenWalk(GenWalkArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::AStar)]
    strategy: Strategy,
    #[arg(long, value_enum, default_value_t = HeuristicKind::Q)]
    heuristic: HeuristicKind,
    /// Skip the sign-analysis pre-pass.
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    ilp_node_budget: u64,
    #[arg(long)]
    max_expansions: Option<u64>,
    #[arg(long)]
    max_time_ms: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct GenWalkArgs {
    file: PathBuf,
    #[arg(long)]
    length: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Start every upward-closed place with this many tokens.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    init_tokens: Option<u64>,
}

fn load(path: &Path) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the CLI with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Solve(args) => cmd_solve(&args, out, err),
        Command::GenWalk(args) => cmd_genwalk(&args, err),
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let inst = match load(&args.file) {
        Ok(inst) => inst,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_DATA;
        }
    };
    let cfg = SolveConfig {
        strategy: args.strategy,
        heuristic: args.heuristic,
        prune: !args.no_prune,
        ilp_node_budget: args.ilp_node_budget as usize,
        max_expansions: args.max_expansions,
        max_time_ms: args.max_time_ms,
    };
    let solution = solve(&inst, &cfg);
    let report = SolveReport::new(&solution, &cfg, args.timing);
    let rendered = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let _ = out.write_all(rendered.as_bytes());
    match solution.verdict {
        Verdict::Reachable { .. } => EXIT_REACHABLE,
        Verdict::Unreachable => EXIT_UNREACHABLE,
        Verdict::Exhausted(reason) => {
            let _ = writeln!(err, "search exhausted: {reason}");
            EXIT_EXHAUSTED
        }
    }
}

/// The instance written by `gen-walk`, with its header comment.
pub fn walk_instance(inst: &Instance, length: usize, seed: u64, init_tokens: Option<u64>) -> String {
    let mut inst = inst.clone();
    if let Some(k) = init_tokens {
        for &p in &inst.init_upward {
            inst.init.0[p] = k;
        }
    }
    let (end, walk) = random_walk(&inst.net, &inst.init, length, seed);
    inst.target = TargetSpec::exact(&end);
    format!(
        "# gen-walk: length={length} seed={seed} steps={}\n{}",
        walk.len(),
        serialize_instance(&inst)
    )
}

fn cmd_genwalk(args: &GenWalkArgs, err: &mut dyn Write) -> i32 {
    let inst = match load(&args.file) {
        Ok(inst) => inst,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_DATA;
        }
    };
    let text = walk_instance(&inst, args.length, args.seed, args.init_tokens);
    if let Err(e) = std::fs::write(&args.out, text) {
        let _ = writeln!(err, "error: {}: {e}", args.out.display());
        return EXIT_DATA;
    }
    0
}
