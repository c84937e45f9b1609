//! `qnk`: evaluate theta functions, relation spaces and Hilbert series, and
//! run the verification checks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qnk_core::hilbert::{graded_dims, GradedDims};
use qnk_core::sampling::GenericTauSampler;
use qnk_core::tensor::{relation_space_tol, AlgebraParams};
use qnk_core::theta::theta_alpha;
use qnk_core::{LatticeData, C64};
use qnk_verify::{
    run_all, run_check, CheckResult, Report, RunConfig, Status, Summary, VerifyError,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "qnk",
    version,
    about = "Elliptic algebras Q_{n,k}(E, tau): evaluation and verification"
)]
struct Cli {
    /// Lattice modulus as `RE,IM`.
    #[arg(long, global = true, value_parser = parse_complex)]
    eta: Option<C64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Number of generic parameters drawn per sampled check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Worker threads for `verify --all` and `report`.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// TOML or JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Theta functions.
    #[command(subcommand)]
    Theta(ThetaCommand),
    /// Relation spaces.
    #[command(subcommand)]
    Rel(RelCommand),
    /// Graded dimensions of the quadratic algebra.
    Hilbert {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        /// Print `degree,dim,polynomial` rows instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Run one named check, or all of them.
    Verify {
        #[arg(required_unless_present_any = ["all", "list"], conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// List the registered check ids.
        #[arg(long)]
        list: bool,
        /// Print results as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run all checks and write the JSON report.
    Report {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ThetaCommand {
    /// Evaluate `theta_alpha(z)` of order `n`.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum RelCommand {
    /// Rank and spectrum of the relation space.
    Dim {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Parameter as `RE,IM`; a seeded generic value is drawn if omitted.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "torsion")]
    tau: Option<C64>,
    /// Torsion parameter `(a + b eta)/n`, given as `a,b`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    torsion: Option<(i64, i64)>,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(C64::new(parse(re)?, parse(im)?))
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected a,b, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Failure of a subcommand, mapped to the exit code.
enum Failure {
    Config(String),
    Numeric(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<qnk_core::Error> for Failure {
    fn from(e: qnk_core::Error) -> Self {
        match e {
            qnk_core::Error::InvalidLattice(_) | qnk_core::Error::InvalidParams(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(eta) = cli.eta {
        cfg.eta = eta;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = cli.tol {
        cfg.tolerances.rank = tol;
    }
    if let Some(samples) = cli.samples {
        cfg.tau_samples = samples;
    }
    if let Some(workers) = cli.workers {
        cfg.workers = workers;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Numeric(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn algebra_params(
    cfg: &RunConfig,
    a: &AlgebraArgs,
) -> Result<(AlgebraParams, Option<u64>), Failure> {
    let lat = LatticeData::with_order(cfg.eta, a.n)?;
    let (tau, seed) = match (a.tau, a.torsion) {
        (Some(t), _) => (t, None),
        (None, Some((x, y))) => (
            lat.point(x as f64 / a.n as f64, y as f64 / a.n as f64),
            None,
        ),
        (None, None) => (
            GenericTauSampler::new(lat, cfg.seed).sample(),
            Some(cfg.seed),
        ),
    };
    Ok((AlgebraParams::with_lattice(a.n, a.k, tau, lat)?, seed))
}

#[derive(Serialize)]
struct ThetaOutput {
    n: usize,
    alpha: i64,
    z: C64,
    eta: C64,
    value: C64,
    tail_bound: f64,
}

#[derive(Serialize)]
struct RelOutput {
    n: usize,
    k: usize,
    k_prime: usize,
    tau: C64,
    eta: C64,
    torsion: bool,
    seed: Option<u64>,
    rank: usize,
    expected_rank: usize,
    svd_gap: f64,
    singular_values: Vec<f64>,
}

#[derive(Serialize)]
struct HilbertOutput {
    n: usize,
    k: usize,
    tau: C64,
    seed: Option<u64>,
    dims: Vec<usize>,
    polynomial: Vec<usize>,
}

fn print_results(results: &[CheckResult], json: bool) -> Result<(), Failure> {
    if json {
        return print_json(&results);
    }
    for r in results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Ambiguous => "AMBIGUOUS",
        };
        println!("{status:<9} {:<22} {:>7} ms", r.check_id, r.runtime_ms);
        for (name, m) in &r.metrics {
            let limit = m
                .threshold
                .map(|t| format!(" (limit {t:.1e})"))
                .unwrap_or_default();
            println!("          {name} = {:.3e}{limit}", m.value);
        }
        if let Some(e) = &r.error {
            println!("          error: {e}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Theta(ThetaCommand::Eval { alpha, z, n }) => {
            let lat = LatticeData::with_order(cfg.eta, *n)?;
            let v = theta_alpha(*alpha, *z, &lat)?;
            print_json(&ThetaOutput {
                n: *n,
                alpha: *alpha,
                z: *z,
                eta: cfg.eta,
                value: v.value,
                tail_bound: v.tail_bound,
            })?;
            Ok(0)
        }
        Command::Rel(RelCommand::Dim { algebra }) => {
            let (p, seed) = algebra_params(&cfg, algebra)?;
            let rel = relation_space_tol(&p, cfg.tolerances.rank)?;
            let expected_rank = p.n() * (p.n() - 1) / 2;
            print_json(&RelOutput {
                n: p.n(),
                k: p.k(),
                k_prime: p.k_prime(),
                tau: p.tau(),
                eta: p.eta(),
                torsion: p.is_torsion(),
                seed,
                rank: rel.rank,
                expected_rank,
                svd_gap: rel.svd_gap,
                singular_values: rel.singular_values.clone(),
            })?;
            Ok(0)
        }
        Command::Hilbert { algebra, dmax, csv } => {
            let (p, seed) = algebra_params(&cfg, algebra)?;
            let rel = relation_space_tol(&p, cfg.tolerances.rank)?;
            let dims = graded_dims(&rel, *dmax)?;
            let poly = GradedDims::polynomial(p.n(), *dmax);
            if *csv {
                println!("degree,dim,polynomial");
                for (d, (a, b)) in dims.dims.iter().zip(&poly.dims).enumerate() {
                    println!("{d},{a},{b}");
                }
            } else {
                print_json(&HilbertOutput {
                    n: p.n(),
                    k: p.k(),
                    tau: p.tau(),
                    seed,
                    dims: dims.dims,
                    polynomial: poly.dims,
                })?;
            }
            Ok(0)
        }
        Command::Verify { list: true, .. } => {
            for spec in qnk_verify::REGISTRY.iter() {
                println!("{:<22} {}", spec.id, spec.summary);
            }
            Ok(0)
        }
        Command::Verify { id, all, json, .. } => {
            let results = if *all {
                run_all(&cfg)?
            } else {
                let id = id.as_deref().expect("clap requires an id without --all");
                vec![run_check(id, &cfg)?]
            };
            print_results(&results, *json)?;
            let summary = Summary::of(&results);
            if !json {
                println!(
                    "{} passed, {} failed, {} ambiguous",
                    summary.passed, summary.failed, summary.ambiguous
                );
            }
            Ok(summary.exit_code())
        }
        Command::Report { out } => {
            let results = run_all(&cfg)?;
            let report = Report::new(cfg, results)?;
            let text = report.to_json()?;
            std::fs::write(out, text + "\n")
                .map_err(|e| Failure::Config(format!("cannot write {}: {e}", out.display())))?;
            let s = report.summary;
            println!(
                "{} checks: {} passed, {} failed, {} ambiguous; digest {}; written to {}",
                report.results.len(),
                s.passed,
                s.failed,
                s.ambiguous,
                report.digest,
                out.display()
            );
            Ok(s.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
