use std::io::Write;
use std::process::ExitCode;

use cavsim_cli::{run, Cli, CliError, ExperimentConfig};
use clap::Parser;

fn execute() -> Result<Vec<String>, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            e.print()?;
            return Ok(Vec::new());
        }
        Err(e) => {
            return Err(CliError::Validation(
                e.render().to_string().trim_end().to_owned(),
            ))
        }
    };
    let cfg = ExperimentConfig::from_cli(&cli)?;
    let report = run(&cfg)?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, &report.body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(report.failures)
}

fn main() -> ExitCode {
    match execute() {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{} point(s) failed:", failures.len());
            for f in &failures {
                eprintln!("  {f}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
