use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qgroup_frt::config::{parse_cell, parse_checks, parse_config};
use qgroup_frt::report::Status;
use qgroup_frt::run::{run, RunOptions};

#[derive(Parser)]
#[command(
    name = "qgroup-frt",
    version,
    about = "Exact checks for the multiparameter FRT quantum groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks for a parameter configuration.
    Check {
        /// JSON config, e.g. {"n":3,"m":7,"r":1,"p":{"1,2":2,"2,3":2,"1,3":-1}}
        config: PathBuf,
        /// Comma-separated subset of ybe, relations, cartan, group, pairing, all.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Word-length cutoff for identities between functionals.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the R matrix in the ybe section.
        #[arg(long)]
        dump_r: bool,
        /// Add one to R_ij^kl, given 1-based as i,j,k,l.
        #[arg(long, hide = true)]
        corrupt_r: Option<String>,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn main() -> ExitCode {
    let Command::Check {
        config,
        checks,
        max_degree,
        seed,
        out,
        dump_r,
        corrupt_r,
    } = Cli::parse().command;
    match check(config, &checks, max_degree, seed, out, dump_r, corrupt_r) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn check(
    config: PathBuf,
    checks: &str,
    max_degree: usize,
    seed: u64,
    out: Option<PathBuf>,
    dump_r: bool,
    corrupt_r: Option<String>,
) -> Result<bool> {
    let text =
        fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
    let cfg = parse_config(&text).with_context(|| format!("in {}", config.display()))?;
    let corrupt_r = corrupt_r.map(|c| parse_cell(&c, cfg.n)).transpose()?;
    let opts = RunOptions {
        checks: parse_checks(checks)?,
        max_degree,
        seed,
        dump_r,
        corrupt_r,
    };
    let report = run(&cfg, &opts);
    for check in &opts.checks {
        let name = check.name();
        let s = &report.sections[name];
        let status = match s.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a",
        };
        println!("{name:<10} {status}");
        for f in &s.failures {
            println!("  failed: {} {}", f.check, f.witness);
        }
        for note in &s.notes {
            println!("  note: {note}");
        }
    }
    println!(
        "{}",
        if report.passed {
            "all requested checks passed"
        } else {
            "some checks failed"
        }
    );
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report)?;
        fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.passed)
}
