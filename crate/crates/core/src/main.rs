use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fuzzy_wsn::io::{self, IoError};
use fuzzy_wsn::protocols::ProtocolKind;
use fuzzy_wsn::sim::{compare_runs, run_simulation};

/// Cluster-head election simulator for wireless sensor networks.
///
/// Exit codes: 0 success, 1 internal error, 2 usage error, 3 file not
/// found, 4 malformed document, 5 unknown config key, 6 value out of range,
/// 7 I/O error, 8 invalid rule base. Set NO_COLOR to any value for plain
/// diagnostics.
#[derive(Debug, Parser)]
#[command(name = "fuzzy-wsn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one simulation and write metrics, resolved config and rule base.
    Run {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override a config key, e.g. `--set rounds=10`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every protocol on consecutive seeds starting at the config seed.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// Number of seeds.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that every controller in a rule-base file is a complete,
    /// duplicate-free grid.
    ValidateFis {
        #[arg(long)]
        rulebase: PathBuf,
    },
    /// Write the built-in rule base of a fuzzy protocol.
    EmitRulebase {
        #[arg(long)]
        protocol: FuzzyProtocol,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FuzzyProtocol {
    Eeds,
    F3n,
}

impl From<FuzzyProtocol> for ProtocolKind {
    fn from(p: FuzzyProtocol) -> Self {
        match p {
            FuzzyProtocol::Eeds => ProtocolKind::Eeds,
            FuzzyProtocol::F3n => ProtocolKind::F3n,
        }
    }
}

fn execute(cli: Cli) -> Result<(), IoError> {
    match cli.command {
        Command::Run {
            config,
            overrides,
            out,
        } => {
            let config = io::parse_config(&config, &overrides)?;
            let run = run_simulation(&config)?;
            for path in io::emit_run(&run, &out)? {
                println!("wrote {}", path.display());
            }
            let l = run.lifetime;
            let show = |v: Option<u64>| v.map_or("-".to_string(), |r| r.to_string());
            println!(
                "{} seed {}: FND {} HND {} LND {}",
                config.protocol,
                config.seed,
                l.fnd,
                show(l.hnd),
                show(l.lnd)
            );
        }
        Command::Compare {
            config,
            seeds,
            overrides,
            out,
        } => {
            let base = io::parse_config(&config, &overrides)?;
            let (protocols, seeds) = io::compare_plan(&base, seeds)?;
            let cmp = compare_runs(&base, &protocols, &seeds)?;
            for path in io::emit_comparison(&cmp, &out)? {
                println!("wrote {}", path.display());
            }
            println!();
            print!("{}", cmp.to_text());
        }
        Command::ValidateFis { rulebase } => {
            for (name, report) in io::validate_rulebase_file(&rulebase)? {
                print!("{name}: {report}");
            }
        }
        Command::EmitRulebase { protocol, out } => {
            let path = io::emit_rulebase(protocol.into(), &out)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let plain = std::env::var_os("NO_COLOR").is_some() || !std::io::stderr().is_terminal();
            if plain {
                eprintln!("error: {e}");
            } else {
                eprintln!("\x1b[1;31merror:\x1b[0m {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
