use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use elliptic_lax::config::{ConfigError, RunConfig};
use elliptic_lax::correspondence::{self, NegativeControl, VerificationReport};
use elliptic_lax::report;

#[derive(Parser)]
#[command(version, about = "Elliptic Painlevé Lax equation vs van Diejen's operator")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; built-in defaults when absent.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Machine-readable report (TOML), or CSV for `sweep`.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Overrides one tolerance; repeatable.
    #[arg(long = "tolerance", global = true, value_name = "NAME=VALUE")]
    tolerances: Vec<String>,

    /// Runs `verify` with a deliberately wrong pipeline (k-pq, evolution-perturbed).
    #[arg(long, global = true, value_name = "NAME")]
    negative_control: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Shift identities, additive constancy, eigenvalue and residue checks.
    Verify,
    /// Difference equations and bridges of the theta kernel.
    Selfcheck,
    /// E as a function of phi1.
    Sweep {
        /// LO:HI:N, overriding the [sweep] section.
        #[arg(long, value_name = "LO:HI:N", allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Contour residues against their closed forms.
    Residues,
}

enum Failure {
    Config(String),
    Checks,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))
}

fn parse_range(spec: &str) -> Result<(f64, f64, usize), Failure> {
    let bad = || Failure::Config(format!("--range: expected LO:HI:N, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi && n >= 1) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

fn emit(command: &str, rep: &VerificationReport, cfg: &RunConfig, tols: Vec<(String, f64)>, out: Option<PathBuf>) -> Result<(), Failure> {
    print!("{}", report::summary_table(rep));
    if let Some(path) = out.or_else(|| cfg.output.report.clone()) {
        write_out(&path, &report::report_toml(command, rep, &tols))?;
    }
    if rep.all_pass() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    for t in &cli.tolerances {
        cfg.override_tolerance(t)?;
    }
    let control = match &cli.negative_control {
        Some(name) => {
            if !matches!(cli.command, Command::Verify) {
                return Err(Failure::Config("--negative-control applies to `verify` only".into()));
            }
            Some(name.parse::<NegativeControl>().map_err(|e| Failure::Config(e.to_string()))?)
        }
        None => None,
    };

    match cli.command {
        Command::Selfcheck => {
            let mp = cfg.modular_params()?;
            let tols = cfg.tolerance_map()?;
            let rep = correspondence::selfcheck(&mp, &tols);
            let list = tols.iter().map(|(k, v)| (k.to_string(), v)).collect();
            emit("selfcheck", &rep, &cfg, list, cli.out)
        }
        Command::Verify => {
            let cc = cfg.correspondence()?;
            let rep = correspondence::verify(&cc, control).map_err(|e| Failure::Config(e.to_string()))?;
            let list = cc.tolerances.iter().map(|(k, v)| (k.to_string(), v)).collect();
            emit("verify", &rep, &cfg, list, cli.out)
        }
        Command::Residues => {
            let cc = cfg.correspondence()?;
            let (table, checks) = correspondence::residue_checks(&cc).map_err(|e| Failure::Config(e.to_string()))?;
            print!("{}", report::residue_table(&table));
            println!();
            let rep = VerificationReport {
                checks,
                e_extracted: None,
                e_from_xs: None,
                echo: correspondence::ParameterEcho {
                    mp: cc.mp,
                    couplings: Some(cc.couplings),
                    grid: Some(cc.grid),
                    negative_control: None,
                },
            };
            let list = cc.tolerances.iter().map(|(k, v)| (k.to_string(), v)).collect();
            emit("residues", &rep, &cfg, list, cli.out)
        }
        Command::Sweep { range } => {
            let cc = cfg.correspondence()?;
            let (lo, hi, n) = match range {
                Some(r) => parse_range(&r)?,
                None => (cfg.sweep.phi1_min, cfg.sweep.phi1_max, cfg.sweep.n_points),
            };
            let s = correspondence::sweep_report(&cc, &correspondence::phi1_values(lo, hi, n));
            let mut buf = Vec::new();
            report::write_sweep_csv(&mut buf, &s.rows).map_err(|e| Failure::Config(e.to_string()))?;
            let csv = String::from_utf8(buf).expect("csv output is utf-8");
            match cli.out.or_else(|| cfg.output.sweep_csv.clone()) {
                Some(path) => {
                    write_out(&path, &csv)?;
                    print!("{}", report::sweep_table(&s));
                }
                None => print!("{csv}"),
            }
            if s.checks.iter().all(|c| c.pass) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
