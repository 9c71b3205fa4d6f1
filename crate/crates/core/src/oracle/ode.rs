//! Adaptive Dormand–Prince 5(4) integration of `ẍ − 3x + 4x³ = δ(t)`.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::{Trajectory, TrajectoryMeta, TrajectorySource};
use crate::elliptic::jacobi_snc;
use crate::error::{Error, Result};
use crate::levels::{eps_from_energy, eval_dv, eval_v};

pub const MIN_TOL: f64 = 1e-13;
pub const MAX_TOL: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_STEPS: usize = 5_000_000;
const CROSSING_TIME_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DrivingKind {
    /// `δ(t) = δ₀`
    Constant,
    /// `δ(t) = δ₀ cos(ω₀t)`
    Sinusoidal,
    /// `δ(t) = δ₀ cn(ω₀t | m₀)`
    EllipticCn,
}

impl fmt::Display for DrivingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DrivingKind::Constant => "constant",
            DrivingKind::Sinusoidal => "sinusoidal",
            DrivingKind::EllipticCn => "elliptic-cn",
        })
    }
}

impl FromStr for DrivingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(DrivingKind::Constant),
            "sinusoidal" => Ok(DrivingKind::Sinusoidal),
            "elliptic-cn" => Ok(DrivingKind::EllipticCn),
            other => Err(Error::domain(format!("unknown driving kind '{other}'"))),
        }
    }
}

/// Time-dependent asymmetry `δ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivingSpec {
    pub kind: DrivingKind,
    pub delta0: f64,
    pub omega0: f64,
    pub m0: f64,
}

impl DrivingSpec {
    pub fn constant(delta: f64) -> Self {
        DrivingSpec {
            kind: DrivingKind::Constant,
            delta0: delta,
            omega0: 0.0,
            m0: 0.0,
        }
    }

    pub fn sinusoidal(delta0: f64, omega0: f64) -> Self {
        DrivingSpec {
            kind: DrivingKind::Sinusoidal,
            delta0,
            omega0,
            m0: 0.0,
        }
    }

    pub fn elliptic_cn(delta0: f64, omega0: f64, m0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m0) {
            return Err(Error::domain(format!("drive modulus must lie in [0, 1], got {m0}")));
        }
        Ok(DrivingSpec {
            kind: DrivingKind::EllipticCn,
            delta0,
            omega0,
            m0,
        })
    }

    pub fn delta_at(&self, t: f64) -> f64 {
        match self.kind {
            DrivingKind::Constant => self.delta0,
            DrivingKind::Sinusoidal => self.delta0 * (self.omega0 * t).cos(),
            DrivingKind::EllipticCn => {
                // m₀ is validated on construction.
                let j = jacobi_snc(self.omega0 * t, self.m0).expect("m0 in [0, 1]");
                self.delta0 * j.cn
            }
        }
    }
}

/// `½v² + V(x)` in the units where `E = 9ε/16`.
pub fn energy_of(x: f64, v: f64, delta: f64) -> f64 {
    0.5 * v * v + eval_v(x, delta)
}

type State = [f64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One Dormand–Prince integrator for a fixed drive and tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub driving: DrivingSpec,
    pub tol: f64,
}

impl Dopri5 {
    pub fn new(driving: DrivingSpec, tol: f64) -> Result<Self> {
        if !(MIN_TOL..=MAX_TOL).contains(&tol) {
            return Err(Error::domain(format!(
                "integrator tolerance must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {tol:e}"
            )));
        }
        Ok(Dopri5 { driving, tol })
    }

    fn rhs(&self, t: f64, y: &State) -> State {
        let delta = self.driving.delta_at(t);
        [y[1], -eval_dv(y[0], delta)]
    }

    /// One step of size `h`; returns the new state and the scaled error.
    fn step(&self, t: f64, y: &State, h: f64) -> (State, f64) {
        let mut k = [[0.0; 2]; 7];
        k[0] = self.rhs(t, y);
        for s in 1..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = self.rhs(t + C[s] * h, &ys);
        }
        let mut y_new = *y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            // Row 6 of A holds the fifth-order weights; stage 7 has weight 0.
            let b = if s < 6 { A[6][s] } else { 0.0 };
            for i in 0..2 {
                y_new[i] += h * b * k[s][i];
                err[i] += h * E[s] * k[s][i];
            }
        }
        let norm = (0..2)
            .map(|i| err[i].abs() / (self.tol + self.tol * y[i].abs().max(y_new[i].abs())))
            .fold(0.0, f64::max);
        (y_new, norm)
    }

    fn initial_step(&self, span: f64) -> f64 {
        (0.01 * span.abs()).clamp(1e-6, 0.05)
    }

    /// Integrates from `(t0, y0)` to `t1`, handing every accepted step to
    /// `visit(t_prev, y_prev, t, y, h)`. Returning `false` stops early.
    fn drive<F>(&self, t0: f64, y0: State, t1: f64, mut visit: F) -> Result<(f64, State)>
    where
        F: FnMut(f64, &State, f64, &State, f64) -> bool,
    {
        let dir = if t1 >= t0 { 1.0 } else { -1.0 };
        let mut t = t0;
        let mut y = y0;
        let mut h = dir * self.initial_step(t1 - t0);
        for _ in 0..MAX_STEPS {
            if (t1 - t) * dir <= 0.0 {
                return Ok((t, y));
            }
            let last = (t + h - t1) * dir >= 0.0;
            let h_try = if last { t1 - t } else { h };
            let (y_new, err) = self.step(t, &y, h_try);
            if !err.is_finite() {
                h *= 0.1;
                continue;
            }
            if err <= 1.0 {
                let t_new = if last { t1 } else { t + h_try };
                let go_on = visit(t, &y, t_new, &y_new, h_try);
                t = t_new;
                y = y_new;
                if !go_on {
                    return Ok((t, y));
                }
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if !last || err > 1.0 {
                h = h_try * factor;
            }
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepFailure { t, h });
            }
        }
        Err(Error::StepFailure { t, h })
    }

    /// State at time `t_target` reached by a single step from `(t, y)`.
    fn restep(&self, t: f64, y: &State, t_target: f64) -> State {
        if t_target == t {
            *y
        } else {
            self.step(t, y, t_target - t).0
        }
    }
}

/// Integrates `ẍ = 3x − 4x³ + δ(t)` from `(x0, v0)` over `t_span`, recording
/// every accepted step. `t_span.1 < t_span.0` integrates backward.
pub fn integrate_motion(
    x0: f64,
    v0: f64,
    driving: DrivingSpec,
    t_span: (f64, f64),
    tol: f64,
) -> Result<Trajectory> {
    let solver = Dopri5::new(driving, tol)?;
    let (t0, t1) = t_span;
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(Error::domain("time span must be finite"));
    }
    let delta0 = driving.delta_at(t0);
    let mut tr = Trajectory {
        times: vec![t0],
        positions: vec![x0],
        velocities: vec![v0],
        meta: TrajectoryMeta {
            eps: eps_from_energy(energy_of(x0, v0, delta0)),
            delta: delta0,
            anchor: None,
            region: None,
            period: None,
            source: TrajectorySource::Integrator,
            truncated: false,
        },
    };
    solver.drive(t0, [x0, v0], t1, |_, _, t, y, _| {
        tr.times.push(t);
        tr.positions.push(y[0]);
        tr.velocities.push(y[1]);
        true
    })?;
    Ok(tr)
}

/// Final state `(x, v)` after integrating over `t_span` without recording.
pub fn propagate(x0: f64, v0: f64, driving: DrivingSpec, t_span: (f64, f64), tol: f64) -> Result<(f64, f64)> {
    let solver = Dopri5::new(driving, tol)?;
    let (_, y) = solver.drive(t_span.0, [x0, v0], t_span.1, |_, _, _, _, _| true)?;
    Ok((y[0], y[1]))
}

/// Period of free motion (`δ` constant) measured as the time between two
/// successive sign changes of `ẋ` in the same direction, i.e. two returns
/// to the same turning point. Each crossing is refined by bisection on a
/// single step from the enclosing step's start.
pub fn measure_period(x0: f64, v0: f64, delta: f64, tol: f64, max_time: f64) -> Result<f64> {
    let solver = Dopri5::new(DrivingSpec::constant(delta), tol)?;
    let mut crossings: Vec<(f64, bool)> = Vec::new();
    let mut found = None;
    solver.drive(0.0, [x0, v0], max_time, |t_prev, y_prev, t, y, _| {
        let (a, b) = (y_prev[1], y[1]);
        let changes = (a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0);
        if !changes {
            return true;
        }
        let falling = a > 0.0;
        let (mut lo, mut hi) = (t_prev, t);
        while hi - lo > CROSSING_TIME_TOL * t.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            let v = solver.restep(t_prev, y_prev, mid)[1];
            if (v > 0.0) == (a > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let tc = 0.5 * (lo + hi);
        if let Some(&(t_first, _)) = crossings.iter().find(|c| c.1 == falling) {
            found = Some(tc - t_first);
            return false;
        }
        crossings.push((tc, falling));
        true
    })?;
    found.ok_or_else(|| {
        Error::Numerical(format!("no complete oscillation within t = {max_time}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::make_potential;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn equilibrium_stays_put() {
        let s = make_potential(FRAC_1_SQRT_2).unwrap();
        let tr = integrate_motion(s.x_c, 0.0, DrivingSpec::constant(s.delta), (0.0, 20.0), 1e-12).unwrap();
        for x in &tr.positions {
            assert!((x - s.x_c).abs() <= 1e-10);
        }
    }

    #[test]
    fn harmonic_limit_period() {
        let s = make_potential(FRAC_1_SQRT_2).unwrap();
        let t = measure_period(s.x_c + 1e-4, 0.0, s.delta, 1e-12, 50.0).unwrap();
        let want = s.harmonic_period_deep();
        assert!((t - want).abs() < 1e-5 * want);
    }

    #[test]
    fn energy_is_conserved() {
        let delta = 0.3;
        let tr = integrate_motion(1.2, 0.0, DrivingSpec::constant(delta), (0.0, 30.0), 1e-12).unwrap();
        let e0 = energy_of(1.2, 0.0, delta);
        let drift = tr
            .rows()
            .map(|(_, x, v)| (energy_of(x, v, delta) - e0).abs())
            .fold(0.0, f64::max);
        assert!(drift < 1e-9, "drift {drift:e}");
    }

    #[test]
    fn time_reversal() {
        let d = DrivingSpec::constant(0.4);
        let (x, v) = propagate(0.3, 0.8, d, (0.0, 7.0), 1e-12).unwrap();
        let (xb, vb) = propagate(x, v, d, (7.0, 0.0), 1e-12).unwrap();
        assert!((xb - 0.3).abs() < 1e-10 && (vb - 0.8).abs() < 1e-10);
    }

    #[test]
    fn cn_drive_with_zero_modulus_is_cosine() {
        let a = DrivingSpec::sinusoidal(0.2, 1.3);
        let b = DrivingSpec::elliptic_cn(0.2, 1.3, 0.0).unwrap();
        for t in [0.0, 0.7, 5.1] {
            assert_eq!(a.delta_at(t), b.delta_at(t));
        }
        let ta = propagate(0.5, 0.0, a, (0.0, 10.0), 1e-12).unwrap();
        let tb = propagate(0.5, 0.0, b, (0.0, 10.0), 1e-12).unwrap();
        assert_eq!(ta, tb);
    }

    #[test]
    fn tolerance_range_is_enforced() {
        let d = DrivingSpec::constant(0.0);
        assert!(integrate_motion(0.0, 0.0, d, (0.0, 1.0), 1e-14).is_err());
        assert!(integrate_motion(0.0, 0.0, d, (0.0, 1.0), 1e-5).is_err());
        assert!(DrivingSpec::elliptic_cn(0.1, 1.0, 1.5).is_err());
    }

    #[test]
    fn energy_at_turning_point() {
        let s = make_potential(FRAC_1_SQRT_2).unwrap();
        assert!((energy_of(2f64.sqrt(), 0.0, s.delta) - 0.0).abs() < 1e-15);
        assert!((energy_of(s.x_c, 0.0, s.delta) - 9.0 * s.eps_c / 16.0).abs() < 1e-15);
    }
}
