//! Command line front end. Every command is a pure function of its files,
//! flags, and seed: JSON goes to stdout with fixed key order and floats in
//! 17-significant-digit scientific notation, bulk numeric output goes to
//! CSV files, and timing goes to stderr so byte-identical reruns stay
//! byte-identical.
//!
//! Exit codes: 0 success (verify: suite passed), 1 suite failure, 2 bad
//! usage or unreadable/malformed input, 3 structurally valid input that
//! fails a domain invariant.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperchron::chronometry::{causal_classify, chronometric_form, proper_time, CausalLabel};
use hyperchron::jsonio::{
    broken_event_from_json, candidate_from_json, class_report, event_from_json, event_to_json,
    falsification_to_json, to_canonical_json, LoadError,
};
use hyperchron::projection::project_candidate;
use hyperchron::sample::{random_hermitian, rng_for_trial};
use hyperchron::suites::{
    run_cone, run_dimension, run_invariance, run_killing, run_mechanics, run_projection,
};
use hyperchron::symmetry::geodesic_between;
use hyperchron::Tolerance;

#[derive(Parser)]
#[command(name = "hyperchron", version, about = "Causal geometry of hyperspin space-times")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the causal type of an event.
    Classify {
        /// Event JSON file.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Comparison scale: sets rel_eps, with abs_eps a factor 1e-3 below.
        #[arg(long, env = "HYPERCHRON_TOL", value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Run a seeded verification suite and report pass/fail.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Matrix dimension, for every suite except projection.
        #[arg(long, value_name = "R")]
        r: Option<usize>,
        /// Internal dimension, projection suite only.
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "HYPERCHRON_SEED", default_value_t = 0)]
        seed: u64,
        /// State file for the projection suite; defaults to the maximally
        /// mixed state. A non-PSD state fails with a counterexample file.
        #[arg(long, value_name = "FILE")]
        rho: Option<PathBuf>,
        #[arg(long, env = "HYPERCHRON_TOL", value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Sample the affine geodesic between two events into a CSV file.
    Geodesic {
        /// Start event JSON file.
        #[arg(long, value_name = "FILE")]
        from: PathBuf,
        /// Target event JSON file; the separation must be future timelike.
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, env = "HYPERCHRON_TOL", value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Proper time between two events with timelike separation.
    Propertime {
        #[arg(long, value_name = "FILE")]
        x: PathBuf,
        #[arg(long, value_name = "FILE")]
        y: PathBuf,
        #[arg(long, env = "HYPERCHRON_TOL", value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Project a composite event through a state down to a 2x2 event.
    Project {
        /// State JSON file (Hermitian, unit trace).
        #[arg(long, value_name = "FILE")]
        rho: PathBuf,
        /// Composite event JSON file.
        #[arg(long, value_name = "FILE")]
        event: PathBuf,
        #[arg(long, env = "HYPERCHRON_TOL", value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Sample random events and histogram their causal strata.
    SampleCone {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "HYPERCHRON_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Invariance,
    Killing,
    Cone,
    Projection,
    Mechanics,
    Dimension,
}

struct CliError {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> CliError {
        CliError { code: e.exit_code(), message: e.to_string() }
    }
}

impl From<hyperchron::Error> for CliError {
    fn from(e: hyperchron::Error) -> CliError {
        CliError { code: 3, message: e.to_string() }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn tolerance(eps: Option<f64>) -> Result<Tolerance, CliError> {
    match eps {
        None => Ok(Tolerance::default()),
        Some(e) if e.is_finite() && e > 0.0 => Ok(Tolerance::new(1e-3 * e, e)),
        Some(e) => Err(usage(format!("tolerance must be positive and finite, got {e}"))),
    }
}

#[derive(Serialize)]
struct TauReport {
    tau: f64,
}

#[derive(Serialize)]
struct GeodesicSummary {
    tau: f64,
    samples: usize,
}

#[derive(Serialize)]
struct Stratum {
    label: String,
    count: usize,
}

#[derive(Serialize)]
struct ConeHistogram {
    r: usize,
    trials: usize,
    seed: u64,
    strata: Vec<Stratum>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Classify { input, tol } => classify(&input, tol),
        Command::Verify { suite, r, n, trials, seed, rho, tol } => {
            verify(suite, r, n, trials, seed, rho.as_deref(), tol)
        }
        Command::Geodesic { from, to, samples, out, tol } => {
            geodesic(&from, &to, samples, &out, tol)
        }
        Command::Propertime { x, y, tol } => propertime(&x, &y, tol),
        Command::Project { rho, event, tol } => project(&rho, &event, tol),
        Command::SampleCone { r, trials, seed, out } => sample_cone(r, trials, seed, &out),
    }
}

fn classify(input: &Path, tol: Option<f64>) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let event = event_from_json(&read_file(input)?, &tol)?;
    let class = causal_classify(&event, &tol);
    let delta = chronometric_form(&event);
    println!("{}", to_canonical_json(&class_report(&class, delta)));
    Ok(0)
}

fn verify(
    suite: SuiteName,
    r: Option<usize>,
    n: Option<usize>,
    trials: usize,
    seed: u64,
    rho: Option<&Path>,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let (mut report, falsification) = match suite {
        SuiteName::Projection => {
            if r.is_some() {
                return Err(usage("the projection suite is sized by --n, not --r"));
            }
            let n = n.unwrap_or(2);
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let state = match rho {
                Some(path) => Some(candidate_from_json(&read_file(path)?, &tolerance(tol)?)?),
                None => None,
            };
            run_projection(n, trials, seed, state.as_ref())
        }
        _ => {
            if n.is_some() {
                return Err(usage("only the projection suite takes --n"));
            }
            if rho.is_some() {
                return Err(usage("only the projection suite takes --rho"));
            }
            let r = r.unwrap_or(2);
            if r < 2 {
                return Err(usage("--r must be at least 2"));
            }
            let report = match suite {
                SuiteName::Invariance => run_invariance(r, trials, seed),
                SuiteName::Killing => run_killing(r, trials, seed),
                SuiteName::Cone => run_cone(r, trials, seed),
                SuiteName::Mechanics => run_mechanics(r, trials, seed),
                SuiteName::Dimension => run_dimension(r, trials, seed),
                SuiteName::Projection => unreachable!("handled above"),
            };
            (report, None)
        }
    };

    if let Some(f) = falsification {
        let path = rho
            .expect("a falsification needs a loaded state, so --rho was given")
            .with_extension("counterexample.json");
        write_file(&path, &(falsification_to_json(&f) + "\n"))?;
        report.counterexample = Some(path.display().to_string());
    }

    println!("{}", to_canonical_json(&report));
    eprintln!("wall_time_seconds: {:.3}", started.elapsed().as_secs_f64());
    Ok(if report.pass { 0 } else { 1 })
}

fn geodesic(
    from: &Path,
    to: &Path,
    samples: usize,
    out: &Path,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let tol = tolerance(tol)?;
    let z = event_from_json(&read_file(from)?, &tol)?;
    let y = event_from_json(&read_file(to)?, &tol)?;
    let curve = geodesic_between(&y, &z, &tol)?;
    let (a, b) = curve.span();
    let r = z.dim();

    let mut csv = String::from("s");
    for i in 0..r {
        for j in 0..r {
            csv.push_str(&format!(",re_{i}_{j},im_{i}_{j}"));
        }
    }
    csv.push('\n');
    for k in 0..samples {
        let s = a + (b - a) * k as f64 / (samples - 1) as f64;
        let point = curve.eval(s);
        csv.push_str(&format!("{s:.16e}"));
        for i in 0..r {
            for j in 0..r {
                let v = point.matrix()[(i, j)];
                csv.push_str(&format!(",{:.16e},{:.16e}", v.re, v.im));
            }
        }
        csv.push('\n');
    }
    write_file(out, &csv)?;
    println!("{}", to_canonical_json(&GeodesicSummary { tau: b, samples }));
    Ok(0)
}

fn propertime(x: &Path, y: &Path, tol: Option<f64>) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let x = event_from_json(&read_file(x)?, &tol)?;
    let y = event_from_json(&read_file(y)?, &tol)?;
    let tau = proper_time(&x, &y, &tol)?;
    println!("{}", to_canonical_json(&TauReport { tau }));
    Ok(0)
}

fn project(rho: &Path, event: &Path, tol: Option<f64>) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let cand = candidate_from_json(&read_file(rho)?, &tol)?;
    let x = broken_event_from_json(&read_file(event)?, &tol)?;
    let image = project_candidate(&cand, &x)?;
    println!("{}", event_to_json(&image));
    Ok(0)
}

fn sample_cone(r: usize, trials: usize, seed: u64, out: &Path) -> Result<i32, CliError> {
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    let tol = Tolerance::default();
    let mut counts = [0usize; CausalLabel::ALL.len()];
    let mut csv = String::from("trial,label,rank,p,q,delta\n");
    for trial in 0..trials {
        let mut rng = rng_for_trial(seed, trial as u64);
        let v = random_hermitian(&mut rng, r);
        let class = causal_classify(&v, &tol);
        let delta = chronometric_form(&v);
        let slot = CausalLabel::ALL
            .iter()
            .position(|l| *l == class.label)
            .expect("every label is listed");
        counts[slot] += 1;
        csv.push_str(&format!(
            "{trial},{},{},{},{},{delta:.16e}\n",
            class.label.as_str(),
            class.rank,
            class.plus,
            class.minus
        ));
    }
    write_file(out, &csv)?;
    let strata = CausalLabel::ALL
        .iter()
        .zip(counts)
        .map(|(label, count)| Stratum { label: label.as_str().to_string(), count })
        .collect();
    println!("{}", to_canonical_json(&ConeHistogram { r, trials, seed, strata }));
    Ok(0)
}
