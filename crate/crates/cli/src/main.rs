use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use syzlab_cli::{execute, BudgetLevel, Format, Options, Overrides, Task};
use syzlab_core::GeneratorMode;

#[derive(Parser)]
#[command(name = "syzlab", version, about = "Invariant rings, Koszul syzygies and syzygy-degree bound audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, classes, catalog validation and m² ≤ ng.
    Group(Args),
    /// Molien series, minimal generator degrees and β(V).
    Invariants(Args),
    /// The Noether number β(G).
    Noether(Args),
    /// Tor table and syzygy degrees.
    Syzygies(Args),
    /// Syzygy degrees against the conjectured and proven bounds.
    Bounds(Args),
    /// The universal representation W_p.
    Universal(Args),
    /// Row bounds, Cauchy checks, Lemma-1 comparisons and tableau counts.
    Schur(Args),
    /// Exhaustive check of the scalar bound inequalities.
    Chain(Args),
    /// Run the task named in the document.
    Run(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Minimal,
    Full,
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    p_max: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    #[arg(long, value_enum, default_value = "default")]
    budget_level: BudgetLevel,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (task, args) = match cli.command {
        Command::Group(a) => (Some(Task::Group), a),
        Command::Invariants(a) => (Some(Task::Invariants), a),
        Command::Noether(a) => (Some(Task::Noether), a),
        Command::Syzygies(a) => (Some(Task::Syzygies), a),
        Command::Bounds(a) => (Some(Task::Bounds), a),
        Command::Universal(a) => (Some(Task::Universal), a),
        Command::Schur(a) => (Some(Task::Schur), a),
        Command::Chain(a) => (Some(Task::Chain), a),
        Command::Run(a) => (None, a),
    };
    if let Some(n) = args.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("syzlab: usage error: --jobs must be a positive thread count");
            return ExitCode::from(1);
        }
    }
    let opts = Options {
        task,
        input: args.input,
        overrides: Overrides {
            p: args.p,
            p_max: args.p_max,
            mode: args.mode.map(|m| match m {
                Mode::Minimal => GeneratorMode::Minimal,
                Mode::Full => GeneratorMode::Full,
            }),
        },
        format: args.format,
        cache_dir: args.cache_dir,
        no_cache: args.no_cache,
        budget: args.budget_level,
    };
    match execute(&opts) {
        Ok(run) => {
            for w in &run.warnings {
                eprintln!("syzlab: warning: {w}");
            }
            if let Some(p) = &run.findings_path {
                eprintln!("syzlab: conjecture findings written to {}", p.display());
            }
            print!("{}", run.output);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("syzlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
