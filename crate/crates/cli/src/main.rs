use clap::{Parser, Subcommand};
use kzosc::config::{ConfigFile, OutputFormat};
use kzosc::output::{RunManifest, Table};
use kzosc::{runs, selftest, CliError};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "kzosc", version, about = "Driven Landau-Zener and Ising-chain defect solvers")]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// output file (stdout when omitted); a .manifest.json sidecar is
    /// written next to it
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// worker threads for parameter sweeps (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// two-level sweep: TDSE vs closed forms
    Twolevel,
    /// Ising-chain density sweeps and mode dumps
    Ising,
    /// non-perturbative density term scans
    NfpScan,
    /// run the property suites and emit a report
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Twolevel => "twolevel",
            Command::Ising => "ising",
            Command::NfpScan => "nfp-scan",
            Command::Selftest => "selftest",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kzosc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let (cfg, raw) = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => (ConfigFile::default(), serde_json::Value::Null),
    };
    // flag > config > default precedence
    let out = cli.out.clone().or(cfg.out.clone());
    let workers = cli.workers.or(cfg.workers);
    let format = cli.format.or(cfg.format).unwrap_or(OutputFormat::Csv);

    if let Some(k) = workers {
        if k == 0 {
            return Err(CliError::Config("--workers must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    }

    if cli.command == Command::Selftest {
        let strict = std::env::var("KZOSC_SELFTEST_STRICT").is_ok_and(|v| v == "1");
        let report = selftest::run(strict);
        eprint!("{}", report.human_readable());
        emit(&report.to_json(), &out, cli, &raw, workers, format, started)?;
        return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    let table: Table = match cli.command {
        Command::Twolevel => {
            let c = cfg.twolevel.as_ref().ok_or_else(|| {
                CliError::Config("config has no \"twolevel\" section".into())
            })?;
            runs::run_twolevel(c)?
        }
        Command::Ising => {
            let c = cfg
                .ising
                .as_ref()
                .ok_or_else(|| CliError::Config("config has no \"ising\" section".into()))?;
            runs::run_ising(c)?
        }
        Command::NfpScan => {
            let c = cfg.nfp_scan.as_ref().ok_or_else(|| {
                CliError::Config("config has no \"nfp_scan\" section".into())
            })?;
            runs::run_nfp_scan(c)?
        }
        Command::Selftest => unreachable!(),
    };
    emit(&table.render(format), &out, cli, &raw, workers, format, started)?;
    Ok(ExitCode::SUCCESS)
}

fn emit(
    payload: &str,
    out: &Option<PathBuf>,
    cli: &Cli,
    raw_config: &serde_json::Value,
    workers: Option<usize>,
    format: OutputFormat,
    started: Instant,
) -> Result<(), CliError> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, payload)?;
            let mut params = BTreeMap::new();
            params.insert("config".to_string(), raw_config.clone());
            params.insert(
                "format".to_string(),
                serde_json::json!(match format {
                    OutputFormat::Csv => "csv",
                    OutputFormat::Json => "json",
                }),
            );
            if let Some(k) = workers {
                params.insert("workers".to_string(), serde_json::json!(k));
            }
            let mut manifest = RunManifest::new(cli.command.name(), params);
            manifest.wall_time_seconds = started.elapsed().as_secs_f64();
            std::fs::write(RunManifest::path_for(path), manifest.to_json())?;
            Ok(())
        }
    }
}
