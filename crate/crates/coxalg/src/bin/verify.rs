use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coxalg::checks::{run_all, run_check, CheckParams, RunConfig, DEFAULT_SEED, REGISTRY};

/// Batch verifier for the identities implemented in `coxalg`.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check (or those selected by a JSON config).
    All {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the registered check ids.
    List,
    #[command(external_subcommand)]
    Check(Vec<String>),
}

#[derive(Parser)]
#[command(name = "verify <check-id>", no_binary_name = true)]
struct CheckCli {
    id: String,
    #[command(flatten)]
    opts: CheckOpts,
}

#[derive(Args)]
struct CheckOpts {
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    system: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Instance count for randomized checks.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Braid word file (`s0 s1^-1 ...`).
    #[arg(long)]
    word_file: Option<PathBuf>,
    /// Factorization file: root tuples per line, or `± bits` twists.
    #[arg(long)]
    fact_file: Option<PathBuf>,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verify: {msg}");
    ExitCode::from(2)
}

fn write_json(path: Option<&PathBuf>, text: &str) -> Result<(), ExitCode> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::List => {
            for id in REGISTRY {
                println!("{id}");
            }
            ExitCode::SUCCESS
        }
        Command::All { config, seed, json } => {
            let mut cfg = match &config {
                Some(path) => match std::fs::read_to_string(path) {
                    Ok(text) => match RunConfig::parse(&text) {
                        Ok(c) => c,
                        Err(e) => return usage(e),
                    },
                    Err(e) => return usage(format!("{}: {e}", path.display())),
                },
                None => RunConfig::full(DEFAULT_SEED),
            };
            if let Some(s) = seed {
                cfg.seed = s;
                for (_, p) in &mut cfg.checks {
                    p.seed = s;
                }
            }
            let summary = match run_all(&cfg) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            for r in &summary.reports {
                println!("{} {} ({} ms)", status(r.pass), r.check_id, r.runtime_ms);
            }
            println!("{}/{} passed", summary.passed, summary.total);
            let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
            if let Err(code) = write_json(json.as_ref(), &text) {
                return code;
            }
            ExitCode::from(u8::from(!summary.pass))
        }
        Command::Check(args) => {
            let parsed = match CheckCli::try_parse_from(&args) {
                Ok(c) => c,
                Err(e) => {
                    let _ = e.print();
                    return if e.use_stderr() {
                        ExitCode::from(2)
                    } else {
                        ExitCode::SUCCESS
                    };
                }
            };
            let o = parsed.opts;
            let path_string = |p: Option<PathBuf>| p.map(|p| p.to_string_lossy().into_owned());
            let params = CheckParams {
                g: o.g,
                system: o.system,
                seed: o.seed,
                n: o.n,
                word_file: path_string(o.word_file),
                fact_file: path_string(o.fact_file),
            };
            let report = match run_check(&parsed.id, &params) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            println!(
                "{} {} ({} ms)",
                status(report.pass),
                report.check_id,
                report.runtime_ms
            );
            if let Some(note) = &report.note {
                println!("  note: {note}");
            }
            if let Err(code) = write_json(o.json.as_ref(), &report.to_json()) {
                return code;
            }
            ExitCode::from(u8::from(!report.pass))
        }
    }
}
