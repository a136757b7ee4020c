use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kepler_core::ktype::Partition;
use kepler_core::report::{Report, Status};
use kepler_core::suites::{decompose_checks, fiber_checks, run_suite, Suite, SuiteOptions};
use kepler_core::{parse_triple, JordanTriple, Poly};

#[derive(Parser)]
#[command(name = "kepler", version, about = "Exact computations on hermitian Jordan triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print invariants, basis labels and the standard frame.
    Info {
        /// matrix:RxS, sym:N, asym:N or spin:D.
        #[arg(long)]
        triple: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Split a polynomial into its K-type components.
    Decompose {
        #[arg(long)]
        triple: String,
        /// Polynomial in z0, z1, ...
        poly: String,
        #[command(flatten)]
        out: Output,
    },
    /// Fiber dimensions of a partition ideal across the rank strata.
    Fibers {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        partition: Partition,
        /// Truncation degree; defaults to |λ| + 3.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification suites.
    Verify {
        /// Repeat to verify several triples in one report.
        #[arg(long, required = true)]
        triple: Vec<String>,
        /// jordan, ktype, ideals, localize, kernels or all.
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Restrict the partition-driven checks to this partition.
        #[arg(long)]
        partition: Option<Partition>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Treat needs-higher-degree as failure.
    #[arg(long)]
    strict: bool,
}

fn triple(desc: &str) -> Result<std::sync::Arc<JordanTriple>> {
    parse_triple(desc).with_context(|| format!("invalid triple '{desc}'"))
}

fn info(t: &JordanTriple) -> serde_json::Value {
    let (a, b) = t.multiplicities();
    json!({
        "triple": t.descriptor(),
        "d": t.dim(),
        "r": t.rank(),
        "a": a,
        "b": b,
        "genus": t.genus(),
        "tube": t.is_tube(),
        "basis": t.labels(),
        "frame": t.frame_vectors().iter().map(|e| e.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn emit(report: &Report, out: &Output) -> Result<ExitCode> {
    let text = report.to_json();
    match &out.json {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            for c in &report.checks {
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<20} {:<26} {}", status_word(c.status), c.name, params.join(" "));
            }
        }
        None => println!("{text}"),
    }
    if report.any_needs_higher_degree() {
        eprintln!("warning: some checks need a higher truncation degree (--degree)");
    }
    let fail = report.any_failed() || (out.strict && report.any_needs_higher_degree());
    Ok(if fail { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
        Status::NeedsHigherDegree => "needs-higher-degree",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info { triple: desc, json } => {
            let t = triple(&desc)?;
            let v = info(&t);
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")?;
            }
            println!("{}  d={} r={} a={} b={} genus={}", v["triple"].as_str().unwrap_or_default(), v["d"], v["r"], v["a"], v["b"], v["genus"]);
            println!("basis: {}", t.labels().join(" "));
            for (i, e) in t.frame_vectors().iter().enumerate() {
                let coords: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                println!("e{} = ({})", i + 1, coords.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { triple: desc, poly, out } => {
            let t = triple(&desc)?;
            let f = Poly::parse(&poly, t.dim()).context("parsing polynomial")?;
            let checks = decompose_checks(&t, &f)?;
            emit(&Report::new("decompose", vec![t.descriptor()], 0, checks), &out)
        }
        Command::Fibers { triple: desc, partition, degree, seed, out } => {
            let t = triple(&desc)?;
            let n = degree.unwrap_or(partition.size() + 3);
            let checks = fiber_checks(&t, &partition, n, seed)?;
            emit(&Report::new("fibers", vec![t.descriptor()], seed, checks), &out)
        }
        Command::Verify { triple: descs, suite, partition, degree, seed, out } => {
            let opts = SuiteOptions { partition, degree, seed };
            let mut checks = Vec::new();
            let mut names = Vec::new();
            for desc in &descs {
                let t = triple(desc)?;
                names.push(t.descriptor());
                checks.extend(run_suite(&t, suite, &opts));
            }
            emit(&Report::new(suite.name(), names, seed, checks), &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
