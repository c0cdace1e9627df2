mod args;
mod commands;
mod table;
mod verify;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde_json::Value;

use args::{Cli, CommandKind, Output, RunConfig};
use table::Table;

enum Report {
    Table(Table),
    Verify { table: Table, json: Value, passed: bool },
}

fn build(cfg: &RunConfig) -> anyhow::Result<Report> {
    let table = match cfg.command {
        CommandKind::Spectrum => commands::spectrum(cfg)?,
        CommandKind::Wavefunction => commands::wavefunction(cfg)?,
        CommandKind::Pollaczek => commands::pollaczek(cfg)?,
        CommandKind::Coeffs => commands::coeffs(cfg)?,
        CommandKind::Converge => commands::converge(cfg)?,
        CommandKind::Verify => {
            let checks = verify::run_checks(cfg)?;
            let diagnostics = verify::diagnostics(cfg)?;
            return Ok(Report::Verify {
                table: verify::report_table(&checks, &diagnostics),
                passed: checks.iter().all(|c| c.passed),
                json: verify::report_json(cfg, &checks, diagnostics),
            });
        }
    };
    Ok(Report::Table(table))
}

fn write_report(cfg: &RunConfig, report: &Report, out: impl Write) -> anyhow::Result<()> {
    let mut out = BufWriter::new(out);
    match (report, cfg.output) {
        (Report::Table(t) | Report::Verify { table: t, .. }, Output::Csv) => t.write_csv(&mut out)?,
        (Report::Table(t), Output::Json) => write_json(&t.to_json(), &mut out)?,
        (Report::Verify { json, .. }, Output::Json) => write_json(json, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn write_json(value: &Value, out: &mut impl Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = RunConfig::from_cli(cli)?;
    let report = build(&cfg)?;
    match &cfg.out_path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_report(&cfg, &report, file)?;
        }
        None => write_report(&cfg, &report, io::stdout().lock())?,
    }
    Ok(match report {
        Report::Verify { passed, .. } => passed,
        Report::Table(_) => true,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verify: one or more checks failed");
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
