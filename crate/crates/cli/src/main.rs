#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quartic_well::dynamics::SEPARATRIX_WINDOW;
use quartic_well::verify::{run_suite, Suite, VerifyOptions};
use quartic_well::{make_potential, period, phase_portrait, Anchor, Error, LevelData, Orbit, Period, PotentialSpec};

use output::{Cell, Format, Report};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "quartic-well", version, about = "Closed-form orbits and periods in the quartic double well")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DeltaArg {
    /// Asymmetry δ, |δ| < 1.
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extrema of the potential and the critical energies.
    Extrema(DeltaArg),
    /// The four turning points at one energy.
    TurningPoints {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long, allow_negative_numbers = true)]
        eps: f64,
    },
    /// Period against energy, one row per level.
    PeriodScan {
        #[command(flatten)]
        delta: DeltaArg,
        /// Explicit energies; overrides the range flags.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        eps_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        eps_max: Option<f64>,
        #[arg(long)]
        eps_step: Option<f64>,
    },
    /// One period of x(t) and v(t) released from a turning point.
    Orbit {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long, default_value = "xi4")]
        anchor: Anchor,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Closed phase curves at a list of energies.
    PhasePortrait {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Cross-check closed forms against the quadrature and ODE oracles.
    Verify {
        /// Suites to run; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<Suite>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Relative perturbation applied to closed-form values (harness self-test).
        #[arg(long, hide = true, default_value_t = 0.0)]
        inject_fault: f64,
    },
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (report, verified) = match &cli.command {
        Command::Extrema(d) => (cmd_extrema(d.delta)?, true),
        Command::TurningPoints { delta, eps } => (cmd_turning_points(delta.delta, *eps)?, true),
        Command::PeriodScan {
            delta,
            eps,
            eps_min,
            eps_max,
            eps_step,
        } => {
            let levels = if eps.is_empty() {
                eps_range(*eps_min, *eps_max, *eps_step)?
            } else {
                eps.clone()
            };
            (cmd_period_scan(delta.delta, &levels)?, true)
        }
        Command::Orbit {
            delta,
            eps,
            anchor,
            samples,
        } => (cmd_orbit(delta.delta, *eps, *anchor, *samples)?, true),
        Command::PhasePortrait { delta, eps, samples } => (cmd_phase_portrait(delta.delta, eps, *samples)?, true),
        Command::Verify {
            suite,
            seed,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                seed: *seed,
                perturbation: *inject_fault,
            };
            cmd_verify(suite, &opts)
        }
    };

    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    report.write(cli.format, &mut out)?;
    out.flush()?;
    if verified {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn potential(delta: f64) -> Result<PotentialSpec, Failure> {
    Ok(make_potential(delta)?)
}

/// `eps_min, eps_min + step, …` up to `eps_max` inclusive.
fn eps_range(min: Option<f64>, max: Option<f64>, step: Option<f64>) -> Result<Vec<f64>, Failure> {
    let (Some(min), Some(max), Some(step)) = (min, max, step) else {
        return Err(Failure::Domain(
            "period-scan needs --eps or all of --eps-min, --eps-max, --eps-step".into(),
        ));
    };
    if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
        return Err(Failure::Domain(format!(
            "invalid range: need eps-min <= eps-max and eps-step > 0 (got {min}, {max}, {step})"
        )));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| min + step * i as f64).collect())
}

fn cmd_extrema(delta: f64) -> Result<Report, Failure> {
    let s = potential(delta)?;
    let mut r = Report::new(
        "extrema",
        vec!["delta", "x_a", "x_b", "x_c", "eps_a", "eps_b", "eps_c", "eps_delta"],
    );
    r.push(
        [delta, s.x_a, s.x_b, s.x_c, s.eps_a, s.eps_b, s.eps_c, s.eps_delta]
            .map(Cell::Num)
            .to_vec(),
    );
    Ok(r)
}

fn cmd_turning_points(delta: f64, eps: f64) -> Result<Report, Failure> {
    let s = potential(delta)?;
    let level = LevelData::new(eps, &s)?;
    let mut r = Report::new("turning-points", vec!["index", "re", "im", "real"]);
    r.meta("delta", delta);
    r.meta("eps", eps);
    r.meta("region", level.region.as_str());
    for (k, z) in level.xi.iter().enumerate() {
        r.push(vec![
            Cell::Int(k as u64 + 1),
            Cell::Num(z.re),
            Cell::Num(z.im),
            Cell::Bool(z.im == 0.0),
        ]);
    }
    Ok(r)
}

fn cmd_period_scan(delta: f64, levels: &[f64]) -> Result<Report, Failure> {
    let s = potential(delta)?;
    let mut r = Report::new("period-scan", vec!["eps", "period", "region", "error"]);
    r.meta("delta", delta);
    for &eps in levels {
        let row = LevelData::new(eps, &s).and_then(|l| Ok((l.region, period(eps, &s)?)));
        r.push(match row {
            Ok((region, t)) => vec![Cell::Num(eps), Cell::Period(t), region.as_str().into(), Cell::Empty],
            Err(e) => vec![Cell::Num(eps), Cell::Empty, Cell::Empty, e.to_string().into()],
        });
    }
    Ok(r)
}

fn cmd_orbit(delta: f64, eps: f64, anchor: Anchor, samples: usize) -> Result<Report, Failure> {
    let s = potential(delta)?;
    let orbit = Orbit::new(eps, &s, anchor)?;
    let trajectory = match orbit.period {
        Period::Finite(_) => orbit.sample_period(samples)?,
        // The separatrix is sampled from the anchor out to the window edge.
        Period::Unbounded => orbit.sample(0.0, SEPARATRIX_WINDOW * s.harmonic_period_shallow(), samples)?,
    };
    let mut r = Report::new("orbit", vec!["t", "x", "v"]);
    r.meta("delta", delta);
    r.meta("eps", eps);
    r.meta("anchor", anchor.as_str());
    r.meta("region", orbit.level.region.as_str());
    r.meta("period", orbit.period);
    r.meta(
        "turning_points",
        Cell::List(orbit.level.xi.iter().map(|&z| Cell::Complex(z)).collect()),
    );
    r.meta("truncated", Cell::Bool(!orbit.period.is_finite()));
    for (t, x, v) in trajectory.rows() {
        r.push(vec![Cell::Num(t), Cell::Num(x), Cell::Num(v)]);
    }
    Ok(r)
}

fn cmd_phase_portrait(delta: f64, levels: &[f64], samples: usize) -> Result<Report, Failure> {
    let s = potential(delta)?;
    let mut r = Report::new(
        "phase-portrait",
        vec!["curve_id", "eps", "anchor", "truncated", "t", "x", "v"],
    );
    r.meta("delta", delta);
    r.meta("samples", Cell::Int(samples as u64));
    let mut id = 0u64;
    for (&eps, curves) in levels.iter().zip(phase_portrait(levels, &s, samples)) {
        let curves = curves.map_err(|e| Failure::Domain(format!("eps = {eps}: {e}")))?;
        for curve in curves {
            let anchor = curve.meta.anchor.map_or("", Anchor::as_str);
            for (t, x, v) in curve.rows() {
                r.push(vec![
                    Cell::Int(id),
                    Cell::Num(eps),
                    anchor.into(),
                    Cell::Bool(curve.meta.truncated),
                    Cell::Num(t),
                    Cell::Num(x),
                    Cell::Num(v),
                ]);
            }
            id += 1;
        }
    }
    Ok(r)
}

fn cmd_verify(suites: &[Suite], opts: &VerifyOptions) -> (Report, bool) {
    let suites = if suites.is_empty() { &Suite::ALL[..] } else { suites };
    let mut r = Report::new(
        "verify",
        vec!["suite", "status", "checks", "failures", "worst_ratio", "first_failure"],
    );
    r.meta("seed", Cell::Int(opts.seed));
    if opts.perturbation != 0.0 {
        r.meta("injected_perturbation", opts.perturbation);
    }
    let mut all_passed = true;
    for &suite in suites {
        let rep = run_suite(suite, opts);
        all_passed &= rep.passed();
        eprintln!(
            "{suite}: {} ({} checks, {} failures)",
            if rep.passed() { "PASS" } else { "FAIL" },
            rep.checks,
            rep.failures.len()
        );
        r.push(vec![
            suite.as_str().into(),
            if rep.passed() { "pass" } else { "fail" }.into(),
            Cell::Int(rep.checks as u64),
            Cell::Int(rep.failures.len() as u64),
            Cell::Num(rep.worst_ratio),
            rep.failures.first().map_or(Cell::Empty, |f| f.clone().into()),
        ]);
    }
    (r, all_passed)
}
