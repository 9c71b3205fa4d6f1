use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::elliptic::{complete_k, complete_k_real, WeierstrassP};
use crate::error::Result;
use crate::levels::{classify_region, level_invariants, sqrt_nu, PotentialSpec, Region};

/// Oscillation period, with the separatrix kept distinct from any float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Period {
    Finite(f64),
    Unbounded,
}

impl Period {
    /// The period as a float, `+∞` when unbounded.
    pub fn value(self) -> f64 {
        match self {
            Period::Finite(t) => t,
            Period::Unbounded => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Period::Finite(t) => Some(t),
            Period::Unbounded => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Period::Finite(_))
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(t) => write!(f, "{t:?}"),
            Period::Unbounded => f.write_str("inf"),
        }
    }
}

/// Jacobi data of one level: `κ² = e₁ − e₃`, `m = (e₂ − e₃)/(e₁ − e₃)` and
/// the region phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPeriodData {
    pub eps: f64,
    pub region: Region,
    pub kappa2: Complex64,
    pub m: Complex64,
    pub m_prime: Complex64,
    /// `θ_I`, `θ_III` or `θ_IV`; `π/3` at the equianharmonic level.
    pub theta: Option<f64>,
    /// `φ_I`, `φ_III` or `φ_IV`, the hyperbolic part of `ψ`.
    pub phi_branch: Option<f64>,
    /// `2·Re[K(m)/κ]`, `None` where `K(m)` diverges.
    pub k_route: Option<f64>,
    /// Physical period of the level.
    pub period: Period,
}

fn theta_tan_half(phi: f64) -> f64 {
    2.0 * ((phi / 3.0).tanh() / 3f64.sqrt()).atan()
}

pub fn jacobi_connection(eps: f64, spec: &PotentialSpec) -> Result<JacobiPeriodData> {
    let region = classify_region(eps, spec)?;
    let inv = level_invariants(eps, spec);

    let (kappa2, m, theta, phi_branch) = match inv.psi {
        None => {
            let s = spec.sin_phi().powf(2.0 / 3.0);
            let kappa2 = Complex64::new(0.0, 0.75f64.sqrt() * s);
            (kappa2, Complex64::from_polar(1.0, PI / 3.0), Some(PI / 3.0), None)
        }
        Some(psi) => {
            let third = psi / 3.0;
            let lead = (third + PI / 3.0).sin();
            let kappa2 = sqrt_nu(0.75 * inv.nu) * lead;
            let m = third.sin() / lead;
            let (theta, phi_branch) = match region {
                Region::I | Region::DeepMinimum => (Some(theta_tan_half(psi.im)), Some(psi.im)),
                Region::III => (Some(theta_tan_half(-psi.im)), Some(-psi.im)),
                Region::IV => {
                    let t = (3f64.sqrt() * (psi.im / 3.0).tanh()).atan();
                    (Some(t), Some(psi.im))
                }
                _ => (None, None),
            };
            (kappa2, m, theta, phi_branch)
        }
    };

    let k_route = complete_k(m)
        .ok()
        .map(|k| 2.0 * (k / kappa2.sqrt()).re)
        .filter(|t| t.is_finite());

    let period = match region {
        Region::Separatrix => Period::Unbounded,
        Region::DeepMinimum => Period::Finite(spec.harmonic_period_deep()),
        Region::ShallowMinimum => Period::Finite(spec.harmonic_period_shallow()),
        Region::Lemniscatic => {
            Period::Finite(2.0 * complete_k_real(0.5)? / spec.sin_phi().sqrt())
        }
        _ => match k_route {
            // Above the barrier the lattice is rhombic and the real period
            // spans two primitive half-periods.
            Some(t) if region.above_barrier() => Period::Finite(2.0 * t),
            Some(t) => Period::Finite(t),
            None => Period::Unbounded,
        },
    };

    Ok(JacobiPeriodData {
        eps,
        region,
        kappa2,
        m,
        m_prime: 1.0 - m,
        theta,
        phi_branch,
        k_route,
        period,
    })
}

/// Period of motion at energy `eps`.
pub fn period(eps: f64, spec: &PotentialSpec) -> Result<Period> {
    Ok(jacobi_connection(eps, spec)?.period)
}

/// Period from the real half-period of `℘`, `2R_F(0, e_r − e_a, e_r − e_b)`,
/// independent of the Jacobi route. Used as a cross-check.
pub fn weierstrass_period(eps: f64, spec: &PotentialSpec) -> Result<Period> {
    let region = classify_region(eps, spec)?;
    if region == Region::Separatrix {
        return Ok(Period::Unbounded);
    }
    let inv = level_invariants(eps, spec);
    let wp = WeierstrassP::new(0.75 * inv.nu, inv.mu / 8.0);
    Ok(wp.half_period.map_or(Period::Unbounded, |h| Period::Finite(2.0 * h)))
}
