use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use onemedian::generators::{gen_lb_instance, gen_tight_sa, Family, GenSpec};
use onemedian::harness::{
    export_report, run_suite_with, summarize, HarnessError, ReportFormat, SuiteConfig,
};
use onemedian::io::{format_real, instance_to_string, load_instance};
use onemedian::solvers::{solve_with, Algorithm, DEFAULT_ORACLE_CAP};
use onemedian::verify::verify_instance;
use onemedian::{Execution, Instance};

const ORACLE_CAP_VAR: &str = "ONEMEDIAN_ORACLE_CAP";

#[derive(Parser)]
#[command(name = "onemedian", version, about = "1-median solvers, generators and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in the text format.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file with one algorithm.
    Solve {
        path: PathBuf,
        #[arg(long, value_parser = Algorithm::from_str)]
        algo: Algorithm,
        /// Print one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run every algorithm and the oracle on one instance and check invariants.
    Verify {
        /// Instance file; alternatively generate one with --family.
        #[arg(conflicts_with = "family", required_unless_present = "family")]
        path: Option<PathBuf>,
        #[command(flatten)]
        gen: OptGenArgs,
    },
    /// Run a suite config and write summary.csv and summary.json.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; defaults to the paths in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Leave the timing columns empty so reports are reproducible byte for byte.
        #[arg(long)]
        omit_timing: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum FamilyArg {
    Random(Family),
    TightSa,
    LowerBound,
}

fn parse_family(s: &str) -> Result<FamilyArg, String> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "tight-sa" => Ok(FamilyArg::TightSa),
        "lower-bound" | "lb" => Ok(FamilyArg::LowerBound),
        _ => Family::from_str(s)
            .map(FamilyArg::Random)
            .map_err(|e| format!("{e}; or tight-sa, lower-bound")),
    }
}

#[derive(Args)]
struct GenArgs {
    /// RRU, RRW, RNU, RDU, GNU, GDU, tight-sa or lower-bound.
    #[arg(long, value_parser = parse_family)]
    family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Perturbation of the adversarial families.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct OptGenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 0, requires = "family")]
    n: usize,
    #[arg(long, requires = "family")]
    m: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "family")]
    seed: u64,
    #[arg(long, requires = "family")]
    epsilon: Option<f64>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate { gen, out } => generate(gen, out),
        Command::Solve { path, algo, json } => solve(&path, algo, json),
        Command::Verify { path, gen } => verify(path, gen),
        Command::Bench { config, out, threads, omit_timing } => bench(&config, out, threads, omit_timing),
    }
}

fn build(gen: &GenArgs) -> Result<(String, Instance), Failure> {
    match gen.family {
        FamilyArg::Random(family) => {
            let instance = GenSpec::new(family, gen.n, gen.m, gen.seed).generate()?;
            Ok((family.name().to_string(), instance))
        }
        FamilyArg::TightSa => Ok(("tight-sa".into(), gen_tight_sa(gen.m, gen.epsilon.unwrap_or(1e-6))?)),
        FamilyArg::LowerBound => Ok(("lower-bound".into(), gen_lb_instance(gen.epsilon.unwrap_or(1e-3))?)),
    }
}

fn generate(gen: GenArgs, out: Option<PathBuf>) -> Result<(), Failure> {
    let (name, instance) = build(&gen)?;
    let summary = format!(
        "{name} {} {} {} {}",
        instance.node_count(),
        instance.customer_count(),
        instance.graph().edge_count(),
        gen.seed
    );
    let text = instance_to_string(&instance);
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{summary}");
        }
        None => {
            match io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
                r => r?,
            }
            eprintln!("{summary}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveOutput {
    algorithm: Algorithm,
    facility: usize,
    exact_value: f64,
    estimated_value: f64,
    candidate_count: usize,
    settled_total: usize,
    wall_ms: f64,
}

fn load(path: &Path) -> Result<Instance, Failure> {
    load_instance(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn solve(path: &Path, algo: Algorithm, json: bool) -> Result<(), Failure> {
    let instance = load(path)?;
    let r = solve_with(&instance, algo, Execution::Sequential);
    let out = SolveOutput {
        algorithm: r.algorithm,
        facility: r.facility,
        exact_value: r.exact_value,
        estimated_value: r.estimated_value,
        candidate_count: r.candidate_count,
        settled_total: r.settled_total,
        wall_ms: r.wall_time.as_secs_f64() * 1e3,
    };
    if json {
        println!("{}", serde_json::to_string(&out)?);
    } else {
        println!("algorithm {}", out.algorithm);
        println!("facility {}", out.facility);
        println!("exact_value {}", format_real(out.exact_value));
        println!("estimated_value {}", format_real(out.estimated_value));
        println!("candidate_count {}", out.candidate_count);
        println!("settled_total {}", out.settled_total);
        println!("wall_ms {:.3}", out.wall_ms);
    }
    Ok(())
}

fn oracle_cap() -> Result<usize, Failure> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{ORACLE_CAP_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn verify(path: Option<PathBuf>, gen: OptGenArgs) -> Result<(), Failure> {
    let cap = oracle_cap()?;
    let instance = match (path, gen.family) {
        (Some(path), _) => load(&path)?,
        (None, Some(family)) => {
            let m = match (family, gen.m) {
                (FamilyArg::LowerBound, m) => m.unwrap_or(4),
                (_, Some(m)) => m,
                (_, None) => return Err(Failure::Usage("--m is required with --family".into())),
            };
            let args = GenArgs { family, n: gen.n, m, seed: gen.seed, epsilon: gen.epsilon };
            build(&args)?.1
        }
        (None, None) => unreachable!("clap requires a path or --family"),
    };
    let v = verify_instance(&instance, cap)?;

    let mut out = io::stdout().lock();
    writeln!(out, "n {} m {} optimum {} (node {})", instance.node_count(), instance.customer_count(),
        format_real(v.optimum), v.oracle_facility)?;
    for r in &v.results {
        writeln!(out, "{:<16} facility {:<8} value {:<24} ratio {:.9}", r.algorithm.name(), r.facility,
            format_real(r.exact_value), v.ratio(r.algorithm).unwrap_or(f64::NAN))?;
    }
    for c in &v.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "{status} {}", c.name)?;
        } else {
            writeln!(out, "{status} {}: {}", c.name, c.detail)?;
        }
    }
    if v.passed() {
        writeln!(out, "PASS")?;
        Ok(())
    } else {
        writeln!(out, "FAIL")?;
        Err(Failure::Domain("invariant check failed".into()))
    }
}

fn bench(config_path: &Path, out: Option<PathBuf>, threads: Option<usize>, omit_timing: bool) -> Result<(), Failure> {
    let config = SuiteConfig::load(config_path).map_err(|e| match e {
        HarnessError::Config(msg) => Failure::Usage(format!("{}: {msg}", config_path.display())),
        other => Failure::Domain(format!("{}: {other}", config_path.display())),
    })?;
    let (csv_path, json_path) = match out {
        Some(dir) => {
            fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            (Some(dir.join("summary.csv")), Some(dir.join("summary.json")))
        }
        None => (config.output.csv.clone(), config.output.json.clone()),
    };
    if csv_path.is_none() && json_path.is_none() {
        return Err(Failure::Usage("no output: pass --out or set output paths in the config".into()));
    }

    let exec = execution(threads)?;
    let cells = config.cells().len();
    let records = run_suite_with(&config, exec, |i, cell, recs| {
        let subopt: usize = recs.iter().flat_map(|r| &r.trials).filter(|t| t.suboptimal).count();
        eprintln!("[{}/{cells}] {} n={} m={}: {} instances, {subopt} suboptimal trials", i + 1, cell.family,
            cell.n, cell.m, recs.len());
    })?;
    let mut summary = summarize(&records)?;
    if omit_timing {
        summary = summary.without_timing();
    }
    if let Some(path) = csv_path {
        export_report(&summary, ReportFormat::Csv, &path).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = json_path {
        export_report(&summary, ReportFormat::Json, &path).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn execution(threads: Option<usize>) -> Result<Execution, Failure> {
    if let Some(k) = threads {
        if k == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(Execution::Parallel)
}

#[cfg(not(feature = "parallel"))]
fn execution(threads: Option<usize>) -> Result<Execution, Failure> {
    if threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    Ok(Execution::Sequential)
}
