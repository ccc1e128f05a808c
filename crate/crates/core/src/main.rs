// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rydberg_singlet::config::{load_config, RunConfig};
use rydberg_singlet::sweep::{gamma_scan, run_single, sweep_grid, PointStatus, SweepResult};
use rydberg_singlet::validate::validate_suite;
use rydberg_singlet::Error;

#[derive(Parser)]
#[command(name = "rydberg-singlet", version, about = "Three-atom singlet preparation by blockade-assisted adiabatic passage")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// `key = value` configuration file; missing keys take defaults
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides `output_dir`)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (overrides `parallelism`)
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
    /// Store every integrator step instead of the sampled subset
    #[arg(long, global = true)]
    full_dump: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one protocol run and write timeseries.csv
    Run,
    /// Final fidelity over one or two parameter axes
    Sweep,
    /// Final fidelity versus spontaneous emission rate
    GammaScan,
    /// Run the built-in consistency checks and print a JSON report
    Validate,
}

fn load(opts: &Options) -> Result<RunConfig, Error> {
    let mut cfg = match &opts.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &opts.out {
        cfg.output_dir = Some(out.clone());
    }
    if let Some(n) = opts.parallel {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "--parallel".into(),
                reason: "must be at least 1".into(),
            });
        }
        cfg.parallelism = Some(n);
    }
    cfg.full_dump |= opts.full_dump;
    Ok(cfg)
}

fn out_dir(cfg: &RunConfig) -> PathBuf {
    cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
}

fn report_sweep(result: &SweepResult, dir: &Path) {
    let aborted = result
        .points
        .iter()
        .filter(|p| matches!(p.status, PointStatus::Aborted(_)))
        .count();
    println!(
        "{} points written to {}{}",
        result.points.len(),
        dir.join("sweep.csv").display(),
        if aborted > 0 {
            format!(" ({aborted} aborted, see sweep_flags.csv)")
        } else {
            String::new()
        }
    );
}

fn execute(cli: &Cli) -> Result<(), Error> {
    let cfg = load(&cli.opts)?;
    let dir = out_dir(&cfg);
    match cli.command {
        Command::Run => {
            let out = run_single(&cfg, &dir)?;
            let s = &out.summary;
            println!("final fidelity {:.6}", s.final_fidelity);
            println!(
                "final P1 P3 P7 {:.6} {:.6} {:.6}",
                s.final_populations[0], s.final_populations[2], s.final_populations[6]
            );
            println!("norm drift {:.2e}", s.norm_drift);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Sweep => report_sweep(&sweep_grid(&cfg, &dir)?, &dir),
        Command::GammaScan => report_sweep(&gamma_scan(&cfg, &dir)?, &dir),
        Command::Validate => unreachable!(),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Validate = cli.command {
        let report = validate_suite();
        let json = report.to_json();
        println!("{json}");
        if let Some(dir) = &cli.opts.out {
            if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(dir.join("validation.json"), &json)) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
        return if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match (&cli.command, &e) {
                (Command::Run, Error::IntegratorAbort { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
