//! Self-checks that pit the closed forms against the oracles on seeded
//! random samples. Each suite reports how many comparisons it made and
//! which ones failed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::solve_weierstrass_cubic;
use crate::dynamics::{period, symmetric_orbit, Anchor, Orbit, Period};
use crate::elliptic::{WeierstrassData, WeierstrassP};
use crate::error::{Error, Result};
use crate::levels::{make_potential, turning_points, PotentialSpec, Region, EPS_EQUIANHARMONIC};
use crate::oracle::{default_well, measure_period, quadrature_period, rf_quadrature, Well};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Cubic,
    TurningPoints,
    Weierstrass,
    PeriodEquality,
    Oracle,
    Symmetric,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Cubic,
        Suite::TurningPoints,
        Suite::Weierstrass,
        Suite::PeriodEquality,
        Suite::Oracle,
        Suite::Symmetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Cubic => "cubic",
            Suite::TurningPoints => "turning-points",
            Suite::Weierstrass => "weierstrass",
            Suite::PeriodEquality => "period-equality",
            Suite::Oracle => "oracle",
            Suite::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown verification suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Relative error injected into every closed-form value before it is
    /// compared. Non-zero values exercise the failure path.
    pub perturbation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x5eed,
            perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Largest observed error relative to its tolerance.
    pub worst_ratio: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    report: SuiteReport,
    perturbation: f64,
}

impl Checker {
    fn new(suite: Suite, opts: &VerifyOptions) -> Self {
        Checker {
            report: SuiteReport {
                suite,
                checks: 0,
                failures: Vec::new(),
                worst_ratio: 0.0,
            },
            perturbation: opts.perturbation,
        }
    }

    /// Records `|got·(1 + p) − want| ≤ tol`.
    fn close(&mut self, label: impl FnOnce() -> String, got: f64, want: f64, tol: f64) {
        let got = got * (1.0 + self.perturbation) + self.perturbation;
        self.bounded(label, (got - want).abs(), tol);
    }

    fn bounded(&mut self, label: impl FnOnce() -> String, err: f64, tol: f64) {
        self.report.checks += 1;
        let ratio = if err.is_nan() { f64::INFINITY } else { err / tol };
        self.report.worst_ratio = self.report.worst_ratio.max(ratio);
        if !(err <= tol) {
            self.report
                .failures
                .push(format!("{}: error {err:e} exceeds {tol:e}", label()));
        }
    }

    fn error(&mut self, label: impl FnOnce() -> String, e: Error) {
        self.report.checks += 1;
        self.report.worst_ratio = f64::INFINITY;
        self.report.failures.push(format!("{}: {e}", label()));
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

/// Energy drawn from the interior of `region`, `u ∈ (0, 1)`.
pub fn energy_in_region(spec: &PotentialSpec, region: Region, u: f64) -> Option<f64> {
    let (lo, hi) = match region {
        Region::I => (spec.eps_deep(), spec.eps_shallow()),
        Region::IIa => (spec.eps_shallow(), spec.eps_delta),
        Region::IIb => (spec.eps_delta, spec.eps_b),
        Region::III => (spec.eps_b, EPS_EQUIANHARMONIC),
        Region::IV => (EPS_EQUIANHARMONIC, EPS_EQUIANHARMONIC + 2.0),
        _ => return None,
    };
    (hi - lo > 1e-6).then_some(lo + (hi - lo) * (0.05 + 0.9 * u))
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ suite as u64);
    let mut c = Checker::new(suite, opts);
    match suite {
        Suite::Cubic => cubic_suite(&mut c, &mut rng),
        Suite::TurningPoints => turning_point_suite(&mut c, &mut rng),
        Suite::Weierstrass => weierstrass_suite(&mut c, &mut rng),
        Suite::PeriodEquality => period_equality_suite(&mut c),
        Suite::Oracle => oracle_suite(&mut c, &mut rng),
        Suite::Symmetric => symmetric_suite(&mut c),
    }
    c.finish()
}

pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}

fn cubic_suite(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for _ in 0..1000 {
        let (g2, g3) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let r = solve_weierstrass_cubic(g2, g3);
        let scale = 1f64.max(g2.abs()).max(g3.abs());
        for e in r.as_array() {
            let res = (4.0 * e * e * e - g2 * e - g3).norm();
            let res = res * (1.0 + c.perturbation) + c.perturbation;
            c.bounded(|| format!("residual ({g2}, {g3})"), res, 1e-9 * scale);
        }
        let sum = (r.e1 + r.e2 + r.e3).norm();
        c.bounded(|| format!("root sum ({g2}, {g3})"), sum + c.perturbation, 1e-12);
    }
}

fn turning_point_suite(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for _ in 0..500 {
        let delta = rng.gen_range(-0.99..0.99);
        let spec = make_potential(delta).expect("|delta| < 1");
        let eps = rng.gen_range(spec.eps_c..3.0);
        let xi = match turning_points(eps, &spec) {
            Ok(xi) => xi,
            Err(e) => {
                c.error(|| format!("turning points ({eps}, {delta})"), e);
                continue;
            }
        };
        for z in xi {
            let res = (z.powi(4) - 1.5 * z * z - delta * z - 9.0 * eps / 16.0).norm();
            c.bounded(|| format!("quartic residual ({eps}, {delta})"), res + c.perturbation, 1e-9);
        }
        let [a, b, cc, d] = xi;
        let e1 = a + b + cc + d;
        let e2 = a * b + a * cc + a * d + b * cc + b * d + cc * d;
        let e3 = a * b * cc + a * b * d + a * cc * d + b * cc * d;
        let e4 = a * b * cc * d;
        let p = c.perturbation;
        c.bounded(|| format!("sum ({eps}, {delta})"), e1.norm() + p, 1e-9);
        c.bounded(|| format!("pairs ({eps}, {delta})"), (e2 + 1.5).norm() + p, 1e-9);
        c.bounded(|| format!("triples ({eps}, {delta})"), (e3 - delta).norm() + p, 1e-9);
        c.bounded(|| format!("product ({eps}, {delta})"), (e4 + 9.0 * eps / 16.0).norm() + p, 1e-9);
    }
}

fn weierstrass_suite(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for _ in 0..200 {
        let (g2, g3) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let w = WeierstrassP::new(g2, g3);
        let Some(half) = w.half_period else {
            c.error(|| format!("({g2}, {g3})"), Error::InfinitePeriod { g2, g3 });
            continue;
        };
        match w.p(half) {
            Ok(p) => c.close(|| format!("minimum at half period ({g2}, {g3})"), p, w.e_real, 1e-9),
            Err(e) => c.error(|| format!("({g2}, {g3})"), e),
        }
        for k in 1..=20 {
            let t = 2.0 * half * k as f64 / 21.0;
            // Step proportional to the distance from the nearest pole.
            let h = 1e-3 * t.min(2.0 * half - t);
            let f = |s: f64| w.p(s).unwrap_or(f64::NAN);
            let dp = (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
            let p = f(t) * (1.0 + c.perturbation);
            let res = (dp * dp - w.cubic(p)).abs();
            let scale = 1.0 + 4.0 * p.abs().powi(3) + (g2 * p).abs() + g3.abs();
            c.bounded(|| format!("ODE residual ({g2}, {g3}) t={t}"), res, 1e-6 * scale);
        }
        if let Ok(data) = WeierstrassData::new(g2, g3) {
            let roots = data.roots;
            let quad = rf_quadrature(roots.e1 - roots.e2, roots.e1 - roots.e3);
            match quad {
                Ok(q) => c.bounded(
                    || format!("omega1 quadrature ({g2}, {g3})"),
                    (data.omega1 * (1.0 + c.perturbation) - q).norm(),
                    1e-8 * q.norm(),
                ),
                Err(e) => c.error(|| format!("omega1 quadrature ({g2}, {g3})"), e),
            }
        }
    }
    let w = WeierstrassP::new(3.0, 1.0);
    for i in 1..100 {
        let t = 0.025 * i as f64;
        let s = (1.5f64.sqrt() * t).sin();
        let want = -0.5 + 1.5 / (s * s);
        if let Ok(p) = w.p(t) {
            c.close(|| format!("(3, 1) closed form t={t}"), p, want, 1e-9 * want.abs().max(1.0));
        }
    }
}

fn period_equality_suite(c: &mut Checker) {
    for delta in [0.2, FRAC_1_SQRT_2, 0.95] {
        let spec = make_potential(delta).expect("|delta| < 1");
        for i in 1..=10 {
            let eps = spec.eps_a + (spec.eps_b - spec.eps_a) * i as f64 / 11.0;
            let (t12, t34) = match (
                quadrature_period(eps, &spec, Well::Shallow),
                quadrature_period(eps, &spec, Well::Deep),
            ) {
                (Ok(a), Ok(b)) => (a.value, b.value),
                (Err(e), _) | (_, Err(e)) => {
                    c.error(|| format!("quadrature ({eps}, {delta})"), e);
                    continue;
                }
            };
            c.bounded(|| format!("T12 vs T34 ({eps}, {delta})"), (t12 - t34).abs(), 1e-8 * t34);
            match period(eps, &spec) {
                Ok(Period::Finite(t)) => {
                    c.close(|| format!("period vs T12 ({eps}, {delta})"), t, t12, 1e-8 * t12);
                    c.close(|| format!("period vs T34 ({eps}, {delta})"), t, t34, 1e-8 * t34);
                }
                Ok(Period::Unbounded) => c.error(
                    || format!("period ({eps}, {delta})"),
                    Error::Numerical("unexpected unbounded period".into()),
                ),
                Err(e) => c.error(|| format!("period ({eps}, {delta})"), e),
            }
        }
    }
}

fn oracle_suite(c: &mut Checker, rng: &mut ChaCha8Rng) {
    let regions = [Region::I, Region::IIa, Region::IIb, Region::III, Region::IV];
    for k in 0..50 {
        let delta = rng.gen_range(-0.95..0.95);
        let spec = make_potential(delta).expect("|delta| < 1");
        let region = regions[k % regions.len()];
        let Some(eps) = energy_in_region(&spec, region, rng.gen()) else {
            continue;
        };
        let closed = match period(eps, &spec) {
            Ok(Period::Finite(t)) => t,
            other => {
                c.error(
                    || format!("period ({eps}, {delta})"),
                    other.err().unwrap_or(Error::Numerical("unbounded".into())),
                );
                continue;
            }
        };
        let well = default_well(eps, &spec).unwrap_or(Well::Deep);
        match quadrature_period(eps, &spec, well) {
            Ok(q) => c.close(|| format!("quadrature ({eps}, {delta})"), closed, q.value, 1e-7 * q.value),
            Err(e) => c.error(|| format!("quadrature ({eps}, {delta})"), e),
        }
        // The integrator starts from whichever outer turning point is real.
        let anchor = match Orbit::new(eps, &spec, Anchor::Xi4) {
            Ok(o) => Ok(o),
            Err(_) => Orbit::new(eps, &spec, Anchor::Xi1),
        };
        match anchor.and_then(|o| measure_period(o.xi, 0.0, delta, 1e-12, 3.0 * closed)) {
            Ok(t) => c.close(|| format!("integrated period ({eps}, {delta})"), closed, t, 1e-7 * t),
            Err(e) => c.error(|| format!("integrated period ({eps}, {delta})"), e),
        }
    }
}

fn symmetric_suite(c: &mut Checker) {
    match period(-1.0, &make_potential(0.0).expect("delta = 0")) {
        Ok(t) => c.close(|| "T(-1)".into(), t.value(), 2.0 * PI / 6f64.sqrt(), 1e-10),
        Err(e) => c.error(|| "T(-1)".into(), e),
    }
    for i in 0..=100 {
        let t = 0.05 * i as f64;
        let want = 1.5f64.sqrt() / (3f64.sqrt() * t).cosh();
        match symmetric_orbit(t, 0.0) {
            Ok(x) => c.close(|| format!("sech orbit t={t}"), x, want, 1e-9),
            Err(e) => c.error(|| format!("sech orbit t={t}"), e),
        }
    }
    let spec = make_potential(0.0).expect("delta = 0");
    for eps in [-0.7, -0.2, 0.5, 3.0] {
        let orbit = match Orbit::new(eps, &spec, Anchor::Xi4) {
            Ok(o) => o,
            Err(e) => {
                c.error(|| format!("orbit eps={eps}"), e);
                continue;
            }
        };
        for i in 0..40 {
            let t = 0.1 * i as f64;
            match (orbit.position(t), symmetric_orbit(t, eps)) {
                (Ok(a), Ok(b)) => c.close(|| format!("Jacobi vs Weierstrass eps={eps} t={t}"), a, b, 1e-9),
                (Err(e), _) | (_, Err(e)) => c.error(|| format!("orbit eps={eps}"), e),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let opts = VerifyOptions::default();
        for s in [Suite::Cubic, Suite::TurningPoints, Suite::Symmetric] {
            let r = run_suite(s, &opts);
            assert!(r.passed(), "{s}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let opts = VerifyOptions {
            perturbation: 1e-6,
            ..VerifyOptions::default()
        };
        assert!(!run_suite(Suite::Symmetric, &opts).passed());
    }

    #[test]
    fn region_energies_land_in_region() {
        let spec = make_potential(0.4).unwrap();
        for region in [Region::I, Region::IIa, Region::IIb, Region::III, Region::IV] {
            let eps = energy_in_region(&spec, region, 0.5).unwrap();
            assert_eq!(crate::levels::classify_region(eps, &spec).unwrap(), region);
        }
    }
}
