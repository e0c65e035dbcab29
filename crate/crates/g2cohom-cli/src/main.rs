use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g2cohom::obstruction::{scan_alpha, scan_beta, verdict, write_scan_csv, Verdict};
use g2cohom::scalar::NumberMode;
use g2cohom::suites::{run, RunConfig, Suite};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "g2cohom", version, about = "Verification suites for the SO(2) x G2 cohomogeneity-one models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Run the curvature obstruction for one k.
    Obstruction {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate the obstruction quantities over beta or alpha.
    Scan {
        target: ScanTarget,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Output path; stdout when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanTarget {
    Beta,
    Alpha,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Float,
    Exact,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// `key = value` defaults, overridden by flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Curvature coefficient table replacing the built-in one.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<g2cohom::Error> for Failure {
    fn from(e: g2cohom::Error) -> Self {
        match e {
            g2cohom::Error::Io(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))
}

fn config_from(a: &VerifyArgs) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &a.config {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
        cfg.apply_kv(&text)?;
    }
    if let Some(k) = a.k {
        cfg.k = k;
    }
    if let Some(n) = a.samples {
        cfg.samples = n;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(m) = a.mode {
        cfg.mode = match m {
            ModeArg::Float => NumberMode::Float,
            ModeArg::Exact => NumberMode::Exact,
        };
    }
    if let Some(t) = a.tol {
        cfg.tol = t;
    }
    if let Some(s) = a.step {
        cfg.step = s;
    }
    if let Some(j) = a.jobs {
        cfg.jobs = Some(j);
    }
    if let Some(t) = &a.table {
        cfg.table = Some(t.clone());
    }
    if let Some(t) = &cfg.table {
        if !t.is_file() {
            return Err(Failure::Usage(format!("table {} is not a readable file", t.display())));
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(a: &VerifyArgs) -> Result<bool, Failure> {
    let cfg = config_from(a)?;
    let report = run(a.suite, &cfg)?;
    let mut out = io::stdout().lock();
    for c in &report.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{tag}] {}: residual {:.3e} {}", c.name, c.residual, c.detail);
    }
    let s = &report.summary;
    let _ = writeln!(out, "{}: {}/{} checks passed", report.suite, s.passed, s.total);
    if let Some(path) = &a.json {
        write_file(path, &(report.to_json() + "\n"))?;
    }
    Ok(report.pass())
}

fn obstruction(k: u32, step: f64, json: Option<&Path>) -> Result<bool, Failure> {
    if k % 2 == 0 {
        return Err(Failure::Usage(format!("k = {k} must be odd")));
    }
    let r = verdict(k, step)?;
    let label = match r.verdict {
        Verdict::Infeasible => "infeasible",
        Verdict::NoContradiction => "no contradiction",
    };
    println!("k = {k}: {label}");
    println!("  min Psi2(x_alpha) over alpha in [{}, {}]: {:.6e}", r.alpha_grid.start, r.alpha_grid.end, r.min_psi2_at_q_alpha);
    println!("  chained bound: k <= {}", r.chained_bound.k_bound);
    println!("  short bound max: {:.6} (rules out k: {})", r.short_bound.max, r.short_bound.rules_out_k);
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&r).map_err(|e| Failure::Runtime(e.to_string()))?;
        write_file(path, &(text + "\n"))?;
    }
    Ok(true)
}

fn scan(target: ScanTarget, step: f64, csv: Option<&Path>) -> Result<bool, Failure> {
    let rows = match target {
        ScanTarget::Beta => scan_beta(step)?,
        ScanTarget::Alpha => scan_alpha(step)?,
    };
    match csv {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::Runtime(format!("creating {}: {e}", path.display())))?;
            write_scan_csv(&rows, file)?;
        }
        None => write_scan_csv(&rows, io::stdout().lock())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Obstruction { k, step, json } => obstruction(*k, *step, json.as_deref()),
        Command::Scan { target, step, csv } => scan(*target, *step, csv.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
