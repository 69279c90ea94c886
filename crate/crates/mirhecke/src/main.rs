//! Command-line front end: one subcommand per verification suite, JSON report
//! files, exit status 0 only when every assertion passed.

use clap::{Parser, Subcommand};
use mirhecke::combinatorics::{Bipartition, Partition};
use mirhecke::report::Report;
use mirhecke::suites;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mirhecke",
    about = "Exact verification suites for the mirabolic Hecke algebra",
    version
)]
struct Cli {
    /// Flat key=value config file; command-line flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Rank n of the algebra.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Field size q (prime power, 2..=4).
    #[arg(long, global = true)]
    q: Option<u32>,

    /// Truncation bound for the fock suite.
    #[arg(long = "N", global = true)]
    truncation: Option<usize>,

    /// Shape as nested arrays, e.g. "[[1],[2]]" (cellular-search).
    #[arg(long, global = true)]
    shape: Option<String>,

    /// Seed for the randomized word samples.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for module-internal parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Directory for JSON/CSV reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for the orbit-atlas cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic-q presentation plus defining relations of every irreducible.
    Relations,
    /// Dimension formulas and squared-dimension identities.
    Dims,
    /// Build all irreducibles, verify them, and dump matrices as JSON.
    Irreps,
    /// Restriction/induction against the one-box branching formulas.
    Branching,
    /// Center: scalar action, separation, spectrum recovery.
    Center,
    /// Truncated branching-operator model and its commutation structure.
    Fock,
    /// Cellularity verification: basis rank, star axiom, straightening.
    CellularVerify,
    /// Expansion certificates for shapes outside the column family.
    CellularSearch,
    /// Finite-field orbit atlas: counts, presentation, star, constants.
    Convolution,
    /// Trace comparison between the two models on random words.
    CrossValidate,
}

#[derive(Debug, Default)]
struct Config {
    n: Option<usize>,
    q: Option<u32>,
    truncation: Option<usize>,
    shape: Option<String>,
    seed: Option<u64>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    cache: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn load_config(path: &PathBuf) -> Result<Config, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {:?}: {}", path, e))?;
    let mut cfg = Config::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {} is not key=value", lineno + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| format!("config line {}: {}", lineno + 1, e);
        match key {
            "n" => {
                cfg.n = Some(
                    value
                        .parse()
                        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                )
            }
            "q" => {
                cfg.q = Some(
                    value
                        .parse()
                        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                )
            }
            "N" => {
                cfg.truncation = Some(
                    value
                        .parse()
                        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                )
            }
            "shape" => cfg.shape = Some(value.to_string()),
            "seed" => {
                cfg.seed = Some(
                    value
                        .parse()
                        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                )
            }
            "jobs" => {
                cfg.jobs = Some(
                    value
                        .parse()
                        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                )
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            "cache" => cfg.cache = Some(PathBuf::from(value)),
            other => {
                return Err(format!(
                    "config line {}: unknown key '{}'",
                    lineno + 1,
                    other
                ))
            }
        }
    }
    Ok(cfg)
}

fn parse_shape(text: &str) -> Result<Bipartition, String> {
    let arrays: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| format!("bad shape {:?}: {}", text, e))?;
    if arrays.len() != 2 {
        return Err("shape must be two nested arrays like [[2,1],[1]]".into());
    }
    let first = Partition::new(arrays[0].clone()).map_err(|e| e.to_string())?;
    let second = Partition::new(arrays[1].clone()).map_err(|e| e.to_string())?;
    Ok(Bipartition::new(first, second))
}

fn emit(report: &mut Report, started: Instant, out: &Option<PathBuf>) -> Result<bool, String> {
    report.elapsed_ms = started.elapsed().as_millis();
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| format!("cannot create output directory {:?}: {}", dir, e))?;
        let path = dir.join(format!("report_{}.json", report.suite));
        std::fs::write(&path, &text)
            .map_err(|e| format!("cannot write report {:?}: {}", path, e))?;
    }
    println!("{}", text);
    for a in &report.assertions {
        if !a.passed() {
            eprintln!("FAIL {}: {}", a.id, a.detail);
        }
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => return usage_error(&e),
        },
        None => Config::default(),
    };
    // flags override the config file
    cfg.n = cli.n.or(cfg.n);
    cfg.q = cli.q.or(cfg.q);
    cfg.truncation = cli.truncation.or(cfg.truncation);
    cfg.shape = cli.shape.clone().or(cfg.shape);
    cfg.seed = cli.seed.or(cfg.seed);
    cfg.jobs = cli.jobs.or(cfg.jobs);
    cfg.out = cli.out.clone().or(cfg.out);
    cfg.cache = cli.cache.clone().or(cfg.cache);

    let jobs = cfg.jobs.unwrap_or(1);
    if jobs == 0 {
        return usage_error("--jobs must be at least 1");
    }
    // a failure here just means a pool already exists; that is fine
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();

    let n = cfg.n.unwrap_or(2);
    if n == 0 || n > 6 {
        return usage_error("--n must be between 1 and 6 at desk scale");
    }
    let seed = cfg.seed.unwrap_or(0x5eed_cafe);
    let started = Instant::now();

    let report = match &cli.command {
        Command::Relations => {
            if n > 5 {
                return usage_error("relations: --n is capped at 5");
            }
            Ok(suites::relations_suite(n))
        }
        Command::Dims => Ok(suites::dims_suite(n)),
        Command::Irreps => {
            if n > 5 {
                return usage_error("irreps: --n is capped at 5");
            }
            suites::irreps_suite(n, cfg.out.as_deref()).map_err(|e| e.to_string())
        }
        Command::Branching => {
            if n > 5 {
                return usage_error("branching: --n is capped at 5");
            }
            Ok(suites::branching_suite(n))
        }
        Command::Center => {
            if n > 4 {
                return usage_error("center: --n is capped at 4");
            }
            Ok(suites::center_suite(n))
        }
        Command::Fock => {
            let trunc = cfg.truncation.unwrap_or(6);
            if !(2..=8).contains(&trunc) {
                return usage_error("fock: --N must be between 2 and 8");
            }
            Ok(suites::fock_suite(trunc))
        }
        Command::CellularVerify => {
            if n > 3 {
                return usage_error("cellular-verify: --n is capped at 3");
            }
            Ok(suites::cellular_verify_suite(n))
        }
        Command::CellularSearch => {
            if n > 4 {
                return usage_error("cellular-search: --n is capped at 4");
            }
            let shape = match &cfg.shape {
                Some(text) => match parse_shape(text) {
                    Ok(s) => {
                        if s.size() != n {
                            return usage_error("shape size does not match --n");
                        }
                        if s.is_second_column() {
                            return usage_error(
                                "shape is inside the column family; nothing to expand",
                            );
                        }
                        Some(s)
                    }
                    Err(e) => return usage_error(&e),
                },
                None => None,
            };
            suites::cellular_search_suite(n, shape.as_ref(), cfg.out.as_deref())
                .map_err(|e| e.to_string())
        }
        Command::Convolution => {
            let q = cfg.q.unwrap_or(2);
            suites::convolution_suite(n, q, cfg.cache.as_deref(), cfg.out.as_deref())
                .map_err(|e| e.to_string())
        }
        Command::CrossValidate => {
            let q = cfg.q.unwrap_or(2);
            suites::cross_validate_suite(n, q, 50, seed, cfg.cache.as_deref())
                .map_err(|e| e.to_string())
        }
    };

    match report {
        Ok(mut report) => match emit(&mut report, started, &cfg.out) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => usage_error(&e),
        },
        Err(e) => usage_error(&e),
    }
}
