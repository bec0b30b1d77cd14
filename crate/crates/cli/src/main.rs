mod args;
mod experiment;
mod output;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use crate::args::Cli;
use crate::experiment::{ExperimentConfig, OutputFormat};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    let print_config = cli.print_config;
    let experiment = match (cli.command.take(), cli.config.take()) {
        (Some(_), Some(_)) => return usage("give either a subcommand or --config, not both"),
        (Some(command), None) => cli.experiment(command.resolve()),
        (None, Some(path)) => {
            let parsed = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|text| serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| e.to_string()));
            match parsed {
                Ok(experiment) => experiment,
                Err(e) => return usage(&format!("cannot load {}: {e}", path.display())),
            }
        }
        (None, None) => {
            let _ = Cli::command().print_help();
            return ExitCode::from(EXIT_USAGE);
        }
    };

    if print_config {
        println!("{}", serde_json::to_string_pretty(&experiment).expect("config serializes"));
        return ExitCode::SUCCESS;
    }

    match run::run(&experiment) {
        Ok(outcome) => {
            let text = match experiment.format {
                OutputFormat::Csv => outcome.csv(),
                OutputFormat::Json => outcome.json(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_CHECK_FAILED);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(acor::Error::Cache(e)) => {
            eprintln!("error: cache: {e}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(e) => usage(&e.to_string()),
    }
}
