use std::path::PathBuf;

use clap::{Parser, Subcommand};
use vouch_cli::config::CliOverrides;

#[derive(Parser)]
#[command(name = "vouch", version, about = "Witness-based event verification simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write results.csv plus a resolved-config echo
    Run {
        /// Config file (flat `key = value` lines); defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory, created if missing
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override sim.seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the model x hop-limit x malicious-ratio grid and write raw/summary CSVs
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override sweep.master_seed
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 0 picks automatically
        #[arg(long, default_value_t = 0)]
        parallelism: usize,
        /// Override sweep.repetitions
        #[arg(long)]
        repetitions: Option<usize>,
    },
    /// Print the scripted five-device protocol trace (real group crypto)
    Demo {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Brute-force a vote identifier back to the id it was issued to
    Recover {
        /// Vote identifier (64 hex chars)
        #[arg(long)]
        upsilon: String,
        /// Report hash h(M) (64 hex chars)
        #[arg(long)]
        report_hash: String,
        /// Identity-server secret (64 hex chars)
        #[arg(long)]
        k_is: String,
        /// Id range to scan, e.g. 0..100000
        #[arg(long)]
        ids: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let outcome = match cli.command {
        Command::Run { config, out, seed } => vouch_cli::cmd_run(
            config.as_deref(),
            &out,
            CliOverrides { seed, repetitions: None },
        ),
        Command::Sweep { config, out, seed, parallelism, repetitions } => vouch_cli::cmd_sweep(
            config.as_deref(),
            &out,
            parallelism,
            CliOverrides { seed, repetitions },
        ),
        Command::Demo { seed } => vouch_cli::cmd_demo(seed, &mut stdout),
        Command::Recover { upsilon, report_hash, k_is, ids } => {
            vouch_cli::cmd_recover(&upsilon, &report_hash, &k_is, &ids, &mut stdout)
        }
    };
    if let Err(err) = outcome {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
