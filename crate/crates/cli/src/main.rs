mod args;
mod commands;
mod error;
mod io;

use args::Cli;
use clap::error::ErrorKind;
use clap::Parser;
use error::{CliError, EXIT_USAGE};
use isoterm_core::decide::Config;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

fn config(cli: &Cli) -> Config {
    let mut cfg = Config::default();
    if let Some(n) = cli.node_cap {
        cfg.node_cap = n;
    }
    if let Some(n) = cli.space_cap {
        cfg.space_cap = n;
    }
    cfg.parallel = cli.workers != Some(1);
    cfg
}

fn run(argv: Vec<String>) -> Result<u8, CliError> {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(0);
        }
        Err(e) => {
            let _ = e.print();
            return Ok(EXIT_USAGE);
        }
    };
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    let cfg = config(&cli);
    let json_path = cli.json.clone();
    let outcome = commands::dispatch(cli.command, &cfg)?;
    let to_stdout = json_path.as_deref() == Some(std::path::Path::new("-"));
    if !to_stdout {
        let mut out = std::io::stdout().lock();
        out.write_all(outcome.text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?;
    }
    if let Some(path) = json_path {
        let mut bounds = outcome.bounds;
        bounds.insert("node_cap".into(), cfg.node_cap.into());
        bounds.insert("space_cap".into(), cfg.space_cap.into());
        bounds.insert("workers".into(), rayon::current_num_threads().into());
        let report = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command_line": argv,
            "bounds": Value::Object(bounds),
            "exit_code": outcome.exit,
            "result": outcome.result,
        });
        let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        io::write_output(&path, &body)?;
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
