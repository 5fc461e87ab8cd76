use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use evolving_cli::verify::{verify, Check};
use evolving_cli::{exit, input, report, CliError};
use evolving_groups::{catalog, Caps};

#[derive(Parser)]
#[command(name = "evolving", version, about = "Analyze finite permutation groups for the evolving property")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one group: a spec file or catalog:NAME.
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = Caps::default().subgroups)]
        subgroup_cap: usize,
        #[arg(long, default_value_t = Caps::default().closure)]
        closure_cap: usize,
    },
    /// Run one check over the catalog: A, B, C, D, lemma22, prop61 or gamma.
    Verify {
        check: String,
        #[arg(long, default_value_t = 200)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names, orders and expected verdicts.
    List {
        #[arg(long)]
        json: bool,
    },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "?",
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze {
            input,
            json,
            subgroup_cap,
            closure_cap,
        } => {
            let caps = Caps {
                subgroups: subgroup_cap,
                closure: closure_cap,
                ..Caps::default()
            };
            let loaded = input::load(&input, &caps)?;
            let r = report::analyze(&loaded.name, &loaded.group, &caps)?;
            if json {
                emit(&format!("{}\n", report::to_json(&r)));
            } else {
                emit(&report::to_text(&r));
            }
            Ok(exit::OK)
        }
        Command::Verify {
            check,
            max_order,
            jobs,
            json,
        } => {
            let check: Check = check.parse()?;
            let summary = verify(check, max_order, jobs, &Caps::default())?;
            if json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&summary).expect("summary serializes")));
            } else {
                emit(&summary.to_text());
            }
            Ok(if summary.failures() == 0 { exit::OK } else { exit::FAILED })
        }
        Command::Catalog {
            action: CatalogCommand::List { json },
        } => {
            if json {
                emit(catalog::manifest_json());
            } else {
                let mut text = String::new();
                for e in catalog::entries() {
                    text.push_str(&format!(
                        "{:<12} order {:<4} evolving={:<5} supersolvable={:<5} {}\n",
                        e.name,
                        e.order,
                        verdict(e.expected_verdicts.evolving),
                        verdict(e.expected_verdicts.supersolvable),
                        e.constructor
                    ));
                }
                emit(&text);
            }
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(exit::INPUT);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
