use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use szlob_core::market::{Side, TradingPhase};
use szlob_core::stats::{ContextKey, VOLATILITY_WINDOW};
use szlob_core::synth::PhaseCounts;

mod commands;
mod files;

/// Replay, measure and simulate order flow on a three-phase exchange with
/// daily price limits.
#[derive(Debug, Parser)]
#[command(name = "szlob", version)]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a flow file through the exchange and write trades, quotes and
    /// virtual prices.
    Replay(ReplayArgs),
    /// Relative-price samples and densities per phase and side, pooling
    /// every stock of every input file.
    Analyze(AnalyzeArgs),
    /// Power-law fit of a samples file over a range of |x|.
    Fit(FitArgs),
    /// Densities conditioned on spread or volatility, with pairwise KS tests.
    Condition(ConditionArgs),
    /// Write a synthetic flow file and its `.meta` sidecar.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct ReplayArgs {
    flow: PathBuf,
    /// Previous close in ticks; read from `<flow>.meta` when omitted.
    #[arg(long)]
    prev_close: Option<u32>,
    /// Output directory.
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(required = true)]
    flows: Vec<PathBuf>,
    /// Previous close in ticks for every input; otherwise each file's sidecar.
    #[arg(long)]
    prev_close: Option<u32>,
    /// Output directory.
    #[arg(long, short)]
    out: PathBuf,
    /// Mid-price returns per volatility estimate.
    #[arg(long, default_value_t = VOLATILITY_WINDOW)]
    window: usize,
}

#[derive(Debug, Args)]
struct FitArgs {
    samples: PathBuf,
    #[arg(long, default_value_t = 0.003)]
    xlo: f64,
    #[arg(long, default_value_t = 0.04)]
    xhi: f64,
    #[arg(long, value_enum, default_value_t = PhaseArg::Cda)]
    phase: PhaseArg,
    /// Both sides when omitted.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Both signs of x when omitted.
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
    #[arg(long, default_value_t = 20)]
    bins_per_decade: usize,
    /// Also write the fit table here.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConditionArgs {
    samples: PathBuf,
    #[arg(long, value_enum)]
    key: KeyArg,
    #[arg(long, default_value_t = 4)]
    groups: usize,
    #[arg(long, value_enum, default_value_t = PhaseArg::Cda)]
    phase: PhaseArg,
    /// Both sides when omitted.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// KS significance level.
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Output directory for the group densities and the KS table.
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Generator config (`key = value` lines); built-in defaults otherwise.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Flow file to write.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    prev_close: u32,
    #[arg(long, default_value_t = 1)]
    stocks: usize,
    /// Placements per stock as `call,cool,cda`; overrides the config.
    #[arg(long)]
    counts: Option<PhaseCounts>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PhaseArg {
    Call,
    Cool,
    Cda,
}

impl From<PhaseArg> for TradingPhase {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::Call => TradingPhase::OpeningCallAuction,
            PhaseArg::Cool => TradingPhase::CoolPeriod,
            PhaseArg::Cda => TradingPhase::ContinuousAuction,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Buy,
    Sell,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Buy => Side::Buy,
            SideArg::Sell => Side::Sell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KeyArg {
    Spread,
    Volatility,
}

impl From<KeyArg> for ContextKey {
    fn from(k: KeyArg) -> Self {
        match k {
            KeyArg::Spread => ContextKey::Spread,
            KeyArg::Volatility => ContextKey::Volatility,
        }
    }
}

/// Bad or missing command-line input discovered after parsing.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Replay(a) => commands::replay(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Fit(a) => commands::fit(&a),
        Command::Condition(a) => commands::condition(&a),
        Command::Simulate(a) => commands::simulate(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
