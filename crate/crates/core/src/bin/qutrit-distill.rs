use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qutrit_distill::report::{cmd_analyze, cmd_sample, cmd_sweep, cmd_verify, VerifyConfig};

#[derive(Parser)]
#[command(version, about = "Witnesses, filters and noise thresholds for Bell-diagonal qutrit pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a coefficient table and, if NPT, build witness and filters.
    Analyze {
        /// JSON file `{"d": 3, "c": [[...], ...]}`
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant battery on random NPT states.
    Verify {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads, 0 for all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Tabulate witness value and filtered-state negativity against white noise.
    Sweep {
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw random coefficient tables.
    Sample {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        npt_only: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // exit code 2 is reserved for non-NPT input
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Analyze { input, output } => cmd_analyze(&input, output.as_deref()),
        Command::Verify { count, seed, jobs } => {
            let mut cfg = VerifyConfig::new(count, seed);
            cfg.jobs = jobs;
            cmd_verify(&cfg)
        }
        Command::Sweep { input, p_min, p_max, steps, output } => {
            cmd_sweep(&input, p_min, p_max, steps, output.as_deref())
        }
        Command::Sample { count, seed, npt_only, output } => cmd_sample(count, seed, npt_only, output.as_deref()),
    };
    ExitCode::from(outcome.code() as u8)
}
