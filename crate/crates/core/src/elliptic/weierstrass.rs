//! Weierstrass `℘(t; g₂, g₃)` for real invariants on the real axis, and the
//! half-periods of its lattice.
//!
//! `℘` is evaluated from its Laurent expansion at a point `t/2ⁿ` close to
//! the origin and brought back to `t` by `n` applications of the
//! duplication formula
//!
//! ```text
//! ℘(2z) = ((℘² + g₂/4)² + 2g₃℘) / (4℘³ − g₂℘ − g₃)
//! ```
//!
//! Before that the argument is reduced into `[0, T/2]`, where `T` is the
//! real period, so the number of doublings stays small.

use num_complex::Complex64;

use crate::cubic::{discriminant, solve_weierstrass_cubic, CubicRoots};
use crate::elliptic::carlson::carlson_rf;
use crate::error::{Error, Result};

/// Distance from a lattice point below which `℘` reports a pole.
pub const POLE_TOL: f64 = 1e-9;

const LAURENT_TERMS: usize = 24;
/// Largest `|z|·s` at which the Laurent series is summed, with
/// `s = max(|g₂|^{1/4}, |g₃|^{1/6})`.
const LAURENT_RADIUS: f64 = 0.35;

/// Shape of the period lattice, fixed by the sign of `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// `Δ > 0`: three real roots, `ω₁` real and `ω₃` imaginary.
    Rectangular,
    /// `Δ < 0`: one real root and a conjugate pair.
    Rhombic,
    /// `Δ = 0` with `g₃ > 0`: the imaginary period is infinite.
    Degenerate,
}

/// Evaluator for `℘` and `℘′` on the real axis with fixed invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassP {
    pub g2: f64,
    pub g3: f64,
    /// Largest real root of `4x³ − g₂x − g₃`; the minimum of `℘` on the axis.
    pub e_real: f64,
    /// Real half-period, `None` when `℘` is not periodic on the axis.
    pub half_period: Option<f64>,
    roots: [Complex64; 3],
    coeffs: [f64; LAURENT_TERMS],
    scale: f64,
}

impl WeierstrassP {
    pub fn new(g2: f64, g3: f64) -> Self {
        let roots = solve_weierstrass_cubic(g2, g3);
        let e_real = roots.largest_real();
        let half_period = real_half_period(&roots, e_real);

        // ℘(z) = 1/z² + Σ_{k≥2} c_k z^{2k−2}
        let mut c = [0.0; LAURENT_TERMS];
        c[2] = g2 / 20.0;
        c[3] = g3 / 28.0;
        for k in 4..LAURENT_TERMS {
            let s: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
            c[k] = 3.0 * s / (((2 * k + 1) * (k - 3)) as f64);
        }
        let scale = g2.abs().powf(0.25).max(g3.abs().powf(1.0 / 6.0));

        WeierstrassP {
            g2,
            g3,
            e_real,
            half_period,
            roots: roots.as_array(),
            coeffs: c,
            scale,
        }
    }

    /// Real period, `+∞` when there is none.
    pub fn period(&self) -> f64 {
        self.half_period.map_or(f64::INFINITY, |h| 2.0 * h)
    }

    /// `4w³ − g₂w − g₃`.
    pub fn cubic(&self, w: f64) -> f64 {
        4.0 * w * w * w - self.g2 * w - self.g3
    }

    /// Maps `t` to `τ ∈ [0, T/2]` with `℘(t) = ℘(τ)`; the second value is
    /// the sign of `℘′(t)`.
    fn reduce(&self, t: f64) -> Result<(f64, f64)> {
        if !t.is_finite() {
            return Err(Error::domain(format!("time must be finite, got {t}")));
        }
        let (tau, sign) = match self.half_period {
            Some(h) => {
                let period = 2.0 * h;
                let r = t.rem_euclid(period);
                if r <= h {
                    (r, -1.0)
                } else {
                    (period - r, 1.0)
                }
            }
            None => (t.abs(), if t >= 0.0 { -1.0 } else { 1.0 }),
        };
        if tau < POLE_TOL {
            return Err(Error::Pole { t, distance: tau });
        }
        Ok((tau, sign))
    }

    fn laurent(&self, z: f64) -> f64 {
        let z2 = z * z;
        let mut acc = 0.0;
        for k in (2..LAURENT_TERMS).rev() {
            acc = acc * z2 + self.coeffs[k];
        }
        1.0 / z2 + acc * z2
    }

    /// `4(w − e₁)(w − e₂)(w − e₃)`, accurate near a root where the expanded
    /// cubic cancels.
    fn cubic_factored(&self, w: f64) -> f64 {
        let [a, b, c] = self.roots;
        (4.0 * (w - a) * (w - b) * (w - c)).re
    }

    /// With a double root `e > 0` and no real period,
    /// `℘ = e + 3e/sinh²(√(3e)τ)` and its derivative in closed form.
    fn separatrix(&self, tau: f64) -> Option<(f64, f64)> {
        if self.half_period.is_some() || self.e_real <= 0.0 {
            return None;
        }
        let e = self.e_real;
        let k = (3.0 * e).sqrt();
        let (sh, ch) = ((k * tau).sinh(), (k * tau).cosh());
        Some((e + 3.0 * e / (sh * sh), -6.0 * e * k * ch / (sh * sh * sh)))
    }

    fn eval_reduced(&self, tau: f64) -> f64 {
        if let Some((p, _)) = self.separatrix(tau) {
            return p;
        }
        let mut z = tau;
        let mut doublings = 0;
        while z * self.scale > LAURENT_RADIUS {
            z *= 0.5;
            doublings += 1;
        }
        let mut p = self.laurent(z);
        let (g2, g3) = (self.g2, self.g3);
        for _ in 0..doublings {
            let q = p * p + 0.25 * g2;
            p = (q * q + 2.0 * g3 * p) / self.cubic(p);
        }
        p.max(self.e_real)
    }

    /// `℘(t)`.
    pub fn p(&self, t: f64) -> Result<f64> {
        let (tau, _) = self.reduce(t)?;
        Ok(self.eval_reduced(tau))
    }

    /// `(℘(t), ℘′(t))`. The derivative is the signed square root of the
    /// differential equation `℘′² = 4℘³ − g₂℘ − g₃`, negative on `(0, T/2)`.
    pub fn p_and_prime(&self, t: f64) -> Result<(f64, f64)> {
        let (tau, sign) = self.reduce(t)?;
        if let Some((p, dp)) = self.separatrix(tau) {
            return Ok((p, -sign * dp));
        }
        let p = self.eval_reduced(tau);
        let dp = sign * self.cubic_factored(p).max(0.0).sqrt();
        Ok((p, dp))
    }

    pub fn p_prime(&self, t: f64) -> Result<f64> {
        self.p_and_prime(t).map(|(_, d)| d)
    }
}

/// `∫_{e_r}^∞ dx / √(4x³ − g₂x − g₃)` as `R_F(0, e_r − e_a, e_r − e_b)`.
fn real_half_period(roots: &CubicRoots, e_real: f64) -> Option<f64> {
    let all = roots.as_array();
    let r = Complex64::new(e_real, 0.0);
    let i = all
        .iter()
        .position(|e| e.im == 0.0 && e.re == e_real)
        .unwrap_or(0);
    let others: Vec<Complex64> = (0..3).filter(|&j| j != i).map(|j| r - all[j]).collect();
    let h = carlson_rf(Complex64::new(0.0, 0.0), others[0], others[1]).ok()?;
    (h.re.is_finite() && h.re > 0.0).then_some(h.re)
}

/// `℘(t; g₂, g₃)` for real `t`.
pub fn weierstrass_p(t: f64, g2: f64, g3: f64) -> Result<f64> {
    WeierstrassP::new(g2, g3).p(t)
}

/// Invariants, roots and half-periods of one lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassData {
    pub g2: f64,
    pub g3: f64,
    pub delta: f64,
    pub roots: CubicRoots,
    /// `R_F(0, e₁ − e₂, e₁ − e₃)`.
    pub omega1: Complex64,
    /// `i·R_F(0, e₂ − e₃, e₁ − e₃)`; imaginary part `+∞` when `Δ = 0`.
    pub omega3: Complex64,
    /// Period of `℘` along the real axis. Equals `2ω₁` on a rectangular
    /// lattice; on a rhombic lattice with complex `e₁` it is the sum of the
    /// two primitive periods.
    pub t_real: f64,
    pub lattice: LatticeKind,
}

impl WeierstrassData {
    pub fn new(g2: f64, g3: f64) -> Result<Self> {
        let delta = discriminant(g2, g3);
        let roots = solve_weierstrass_cubic(g2, g3);
        let evaluator = WeierstrassP::new(g2, g3);
        let half = evaluator
            .half_period
            .ok_or(Error::InfinitePeriod { g2, g3 })?;

        let zero = Complex64::new(0.0, 0.0);
        let (e1, e2, e3) = (roots.e1, roots.e2, roots.e3);
        let omega1 = carlson_rf(zero, e1 - e2, e1 - e3).map_err(|_| Error::InfinitePeriod { g2, g3 })?;
        let omega3 = match carlson_rf(zero, e2 - e3, e1 - e3) {
            Ok(v) => Complex64::new(0.0, 1.0) * v,
            Err(_) => Complex64::new(0.0, f64::INFINITY),
        };
        let lattice = if delta > 0.0 {
            LatticeKind::Rectangular
        } else if delta < 0.0 {
            LatticeKind::Rhombic
        } else {
            LatticeKind::Degenerate
        };
        Ok(WeierstrassData {
            g2,
            g3,
            delta,
            roots,
            omega1,
            omega3,
            t_real: 2.0 * half,
            lattice,
        })
    }

    pub fn evaluator(&self) -> WeierstrassP {
        WeierstrassP::new(self.g2, self.g3)
    }
}

/// `(ω₁, ω₃)` of the lattice with invariants `(g₂, g₃)`.
///
/// Fails with [`Error::InfinitePeriod`] when the real period is infinite
/// (`Δ = 0` with `g₃ < 0`, or `g₂ = g₃ = 0`).
pub fn half_periods(g2: f64, g3: f64) -> Result<(Complex64, Complex64)> {
    let w = WeierstrassData::new(g2, g3)?;
    Ok((w.omega1, w.omega3))
}
