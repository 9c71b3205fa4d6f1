//! The asymmetric double well `V(x) = x⁴ − (3/2)x² − δx`, its extrema, and
//! the turning points of motion at a given energy.
//!
//! Energies are carried in the normalized form `ε = 16E/9`, in which the
//! critical levels of the well take simple closed forms.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `ε` at which `ν = 1 − 3ε` vanishes (equianharmonic level, `g₂ = 0`).
pub const EPS_EQUIANHARMONIC: f64 = 1.0 / 3.0;

/// Half-width of the band around a critical energy that is reported as the
/// boundary itself.
pub const BOUNDARY_TOL: f64 = 1e-12;

const SIGMA_MIN: f64 = 1e-8;

pub fn eval_v(x: f64, delta: f64) -> f64 {
    let x2 = x * x;
    x2 * x2 - 1.5 * x2 - delta * x
}

pub fn eval_dv(x: f64, delta: f64) -> f64 {
    4.0 * x * x * x - 3.0 * x - delta
}

pub fn eval_d2v(x: f64, _delta: f64) -> f64 {
    12.0 * x * x - 3.0
}

pub fn eval_d3v(x: f64, _delta: f64) -> f64 {
    24.0 * x
}

/// Converts the normalized energy `ε` to `E = 9ε/16`.
pub fn energy_from_eps(eps: f64) -> f64 {
    9.0 * eps / 16.0
}

pub fn eps_from_energy(energy: f64) -> f64 {
    16.0 * energy / 9.0
}

/// A double well with asymmetry `δ = cos φ`, `|δ| < 1`.
///
/// `x_a < x_b < x_c` are the left minimum, the barrier top and the right
/// minimum. For `δ > 0` the right well is the deeper one; for `δ < 0` the
/// roles swap, see [`PotentialSpec::eps_shallow`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub delta: f64,
    pub phi: f64,
    pub x_a: f64,
    pub x_b: f64,
    pub x_c: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub eps_c: f64,
    /// Level at which `g₃ = 0` (lemniscatic case).
    pub eps_delta: f64,
}

/// Builds the potential for asymmetry `delta`.
pub fn make_potential(delta: f64) -> Result<PotentialSpec> {
    PotentialSpec::new(delta)
}

impl PotentialSpec {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta.abs() < 1.0) {
            return Err(Error::domain(format!(
                "asymmetry |delta| must be < 1, got {delta}"
            )));
        }
        let phi = delta.acos();
        let x_a = -((PI - phi) / 3.0).cos();
        let x_b = -((PI + phi) / 3.0).cos();
        let x_c = (phi / 3.0).cos();
        // V at an extremum, using x³ = (3x + δ)/4.
        let crit = |x: f64| 16.0 / 9.0 * (-0.75 * x * (x + delta));
        Ok(PotentialSpec {
            delta,
            phi,
            x_a,
            x_b,
            x_c,
            eps_a: crit(x_a),
            eps_b: crit(x_b),
            eps_c: crit(x_c),
            eps_delta: (4.0 * delta * delta - 1.0) / 9.0,
        })
    }

    pub fn v(&self, x: f64) -> f64 {
        eval_v(x, self.delta)
    }

    pub fn dv(&self, x: f64) -> f64 {
        eval_dv(x, self.delta)
    }

    pub fn d2v(&self, x: f64) -> f64 {
        eval_d2v(x, self.delta)
    }

    pub fn d3v(&self, x: f64) -> f64 {
        eval_d3v(x, self.delta)
    }

    /// `sin φ = √(1 − δ²)`.
    pub fn sin_phi(&self) -> f64 {
        (1.0 - self.delta * self.delta).sqrt()
    }

    /// Bottom of the shallower well (`ε_a` for `δ ≥ 0`).
    pub fn eps_shallow(&self) -> f64 {
        self.eps_a.max(self.eps_c)
    }

    /// Bottom of the deeper well (`ε_c` for `δ ≥ 0`); no motion below it.
    pub fn eps_deep(&self) -> f64 {
        self.eps_a.min(self.eps_c)
    }

    pub fn x_shallow(&self) -> f64 {
        if self.eps_a >= self.eps_c {
            self.x_a
        } else {
            self.x_c
        }
    }

    pub fn x_deep(&self) -> f64 {
        if self.eps_a >= self.eps_c {
            self.x_c
        } else {
            self.x_a
        }
    }

    /// Harmonic period `2π/√V″` at the bottom of the shallow well.
    pub fn harmonic_period_shallow(&self) -> f64 {
        2.0 * PI / self.d2v(self.x_shallow()).sqrt()
    }

    pub fn harmonic_period_deep(&self) -> f64 {
        2.0 * PI / self.d2v(self.x_deep()).sqrt()
    }
}

/// Energy range of a level, including the exact critical levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Rest at the bottom of the deep well.
    DeepMinimum,
    /// Deep well only; the shallow-side turning points are complex.
    I,
    ShallowMinimum,
    /// Both wells, `g₃ > 0`.
    IIa,
    /// `g₃ = 0`.
    Lemniscatic,
    /// Both wells, `g₃ < 0`.
    IIb,
    Separatrix,
    /// Above the barrier, `g₂ > 0`.
    III,
    /// `g₂ = 0`.
    Equianharmonic,
    /// Above the barrier, `g₂ < 0`.
    IV,
}

impl Region {
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            Region::DeepMinimum
                | Region::ShallowMinimum
                | Region::Lemniscatic
                | Region::Separatrix
                | Region::Equianharmonic
        )
    }

    /// Number of real turning points.
    pub fn real_turning_points(self) -> usize {
        match self {
            Region::DeepMinimum | Region::I | Region::III | Region::Equianharmonic | Region::IV => 2,
            _ => 4,
        }
    }

    /// Levels above the barrier, where the Weierstrass lattice is rhombic
    /// with a complex leading root.
    pub fn above_barrier(self) -> bool {
        matches!(self, Region::III | Region::Equianharmonic | Region::IV)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::DeepMinimum => "deep-minimum",
            Region::I => "I",
            Region::ShallowMinimum => "shallow-minimum",
            Region::IIa => "IIa",
            Region::Lemniscatic => "lemniscatic",
            Region::IIb => "IIb",
            Region::Separatrix => "separatrix",
            Region::III => "III",
            Region::Equianharmonic => "equianharmonic",
            Region::IV => "IV",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies `eps` into one of the five open ranges or a boundary level.
pub fn classify_region(eps: f64, spec: &PotentialSpec) -> Result<Region> {
    let deep = spec.eps_deep();
    let shallow = spec.eps_shallow();
    if !(eps >= deep - BOUNDARY_TOL) {
        return Err(Error::domain(format!(
            "energy eps = {eps} lies below the deep minimum eps = {deep}"
        )));
    }
    let near = |level: f64| (eps - level).abs() <= BOUNDARY_TOL;
    let region = if near(shallow) {
        Region::ShallowMinimum
    } else if near(deep) {
        Region::DeepMinimum
    } else if near(spec.eps_b) {
        Region::Separatrix
    } else if near(spec.eps_delta) {
        Region::Lemniscatic
    } else if near(EPS_EQUIANHARMONIC) {
        Region::Equianharmonic
    } else if eps < shallow {
        Region::I
    } else if eps < spec.eps_delta {
        Region::IIa
    } else if eps < spec.eps_b {
        Region::IIb
    } else if eps < EPS_EQUIANHARMONIC {
        Region::III
    } else {
        Region::IV
    };
    Ok(region)
}

/// The auxiliary quantities that parameterize the turning points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelInvariants {
    /// `ν = 1 − 3ε`
    pub nu: f64,
    /// `μ = 4δ² − (1 + 9ε)`
    pub mu: f64,
    /// `η = μ/ν^{3/2}`; `None` at `ν = 0`, where it diverges.
    pub eta: Option<Complex64>,
    /// Phase with `cos ψ = η` on the branch continued across the critical
    /// levels; `None` at `ν = 0`.
    pub psi: Option<Complex64>,
    /// Root of `4χ³ − 3νχ − μ = 0` selected by `χ = ν^{1/2} cos(ψ/3)`.
    pub chi: Complex64,
    /// `σ = ½√(χ + 1)`.
    pub sigma: Complex64,
}

/// `√ν`, taken as `i√|ν|` above the equianharmonic level.
pub(crate) fn sqrt_nu(nu: f64) -> Complex64 {
    if nu >= 0.0 {
        Complex64::new(nu.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-nu).sqrt())
    }
}

pub fn level_invariants(eps: f64, spec: &PotentialSpec) -> LevelInvariants {
    let nu = 1.0 - 3.0 * eps;
    let mu = 4.0 * spec.delta * spec.delta - (1.0 + 9.0 * eps);

    let (eta, psi, chi) = if (eps - EPS_EQUIANHARMONIC).abs() <= BOUNDARY_TOL || nu == 0.0 {
        // ν → 0: χ → (|μ|/4)^{1/3} e^{iπ/3}, continuous from both sides.
        let chi = Complex64::from_polar((mu.abs() / 4.0).cbrt(), PI / 3.0);
        (None, None, chi)
    } else if nu < 0.0 {
        let abs_eta = mu.abs() / (-nu).powf(1.5);
        let eta = Complex64::new(0.0, -abs_eta);
        let psi = Complex64::new(PI / 2.0, abs_eta.asinh());
        let chi = sqrt_nu(nu) * (psi / 3.0).cos();
        (Some(eta), Some(psi), chi)
    } else {
        let eta = mu / nu.powf(1.5);
        let psi = if eps <= spec.eps_shallow() {
            Complex64::new(0.0, eta.max(1.0).acosh())
        } else if eps <= spec.eps_b {
            Complex64::new(eta.clamp(-1.0, 1.0).acos(), 0.0)
        } else {
            Complex64::new(PI, -(-eta).max(1.0).acosh())
        };
        let chi = sqrt_nu(nu) * (psi / 3.0).cos();
        (Some(Complex64::new(eta, 0.0)), Some(psi), chi)
    };

    let sigma = 0.5 * (chi + 1.0).sqrt();
    LevelInvariants {
        nu,
        mu,
        eta,
        psi,
        chi,
        sigma,
    }
}

/// Everything known about one energy level of one potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelData {
    pub eps: f64,
    pub delta: f64,
    pub region: Region,
    pub invariants: LevelInvariants,
    /// Turning points `ξ₁..ξ₄`. Real ones are ascending with zero imaginary
    /// part; a complex pair is stored as `(z̄, z)` with `Im z > 0`.
    pub xi: [Complex64; 4],
}

impl LevelData {
    pub fn new(eps: f64, spec: &PotentialSpec) -> Result<Self> {
        let region = classify_region(eps, spec)?;
        let invariants = level_invariants(eps, spec);
        let xi = turning_points_from(region, &invariants, spec)?;
        Ok(LevelData {
            eps,
            delta: spec.delta,
            region,
            invariants,
            xi,
        })
    }

    pub fn energy(&self) -> f64 {
        energy_from_eps(self.eps)
    }

    /// `ξₖ` for `k ∈ 1..=4` when it is real.
    pub fn xi_real(&self, k: usize) -> Option<f64> {
        let z = self.xi[k - 1];
        (z.im == 0.0).then_some(z.re)
    }

    /// Weierstrass invariants `(g₂, g₃) = (3ν/4, μ/8)` of the level.
    pub fn weierstrass_invariants(&self) -> (f64, f64) {
        (0.75 * self.invariants.nu, self.invariants.mu / 8.0)
    }
}

/// Turning points `ξ₁ ≤ ξ₂ ≤ ξ₃ ≤ ξ₄` (real ones) of the level `eps`.
pub fn turning_points(eps: f64, spec: &PotentialSpec) -> Result<[Complex64; 4]> {
    Ok(LevelData::new(eps, spec)?.xi)
}

fn turning_points_from(
    region: Region,
    inv: &LevelInvariants,
    spec: &PotentialSpec,
) -> Result<[Complex64; 4]> {
    let sigma = inv.sigma;
    if sigma.norm() < SIGMA_MIN {
        return Err(Error::Numerical(format!(
            "sigma = {sigma} is too close to zero for the turning-point formulas"
        )));
    }
    let delta = spec.delta;
    let base = 3.0 - 4.0 * sigma * sigma;
    let left = 0.5 * (base - delta / sigma).sqrt();
    let right = 0.5 * (base + delta / sigma).sqrt();
    let raw = [-sigma - left, -sigma + left, sigma - right, sigma + right];

    let mut xi = [Complex64::new(0.0, 0.0); 4];
    if region.real_turning_points() == 4 {
        let mut re = raw.map(|z| z.re);
        re.sort_by(f64::total_cmp);
        for (slot, r) in xi.iter_mut().zip(re) {
            *slot = Complex64::new(r, 0.0);
        }
        return Ok(xi);
    }

    // Two real points and a conjugate pair: the pair is the two values with
    // the largest imaginary magnitude.
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&i, &j| raw[i].im.abs().total_cmp(&raw[j].im.abs()));
    let mut reals = [raw[idx[0]].re, raw[idx[1]].re];
    reals.sort_by(f64::total_cmp);
    let (p, q) = (raw[idx[2]], raw[idx[3]]);
    let pair_re = 0.5 * (p.re + q.re);
    let pair_im = 0.5 * (p.im.abs() + q.im.abs());
    let lower = Complex64::new(pair_re, -pair_im);
    let upper = Complex64::new(pair_re, pair_im);
    let r = |x: f64| Complex64::new(x, 0.0);

    xi = if pair_re < reals[0] {
        [lower, upper, r(reals[0]), r(reals[1])]
    } else if pair_re > reals[1] {
        [r(reals[0]), r(reals[1]), lower, upper]
    } else {
        [r(reals[0]), lower, upper, r(reals[1])]
    };
    Ok(xi)
}
