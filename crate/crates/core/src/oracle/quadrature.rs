//! Adaptive Gauss–Kronrod quadrature and the period integrals it feeds.
//!
//! The period of a bounded orbit between turning points `a < b` is
//! `T = 2∫ₐᵇ dx/√(2(E − V))`. With `E − V = (x − a)(b − x)Q(x)` and the
//! substitution `x = (a + b)/2 − (b − a)/2·cos θ` both inverse-square-root
//! endpoint singularities cancel, leaving `T = ∫₀^π √2 dθ/√Q(x(θ))` with a
//! smooth integrand. Nothing here uses elliptic functions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::levels::{LevelData, PotentialSpec, Region};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const DEFAULT_REL_TOL: f64 = 1e-13;
const MAX_EVALUATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Panel {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// `∫ₐᵇ f` by globally adaptive 7/15-point Gauss–Kronrod bisection until
/// the summed error estimate falls below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadratureResult> {
    let mut heap = BinaryHeap::new();
    let first = kronrod_panel(&mut f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut evaluations = 15;
    heap.push(first);

    while error > abs_tol.max(rel_tol * value.abs()) {
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::Numerical(format!(
                "quadrature did not reach tolerance (estimate {error:e} after {evaluations} evaluations)"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod_panel(&mut f, worst.a, mid);
        let right = kronrod_panel(&mut f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum();
    if !value.is_finite() {
        return Err(Error::Numerical("quadrature produced a non-finite value".into()));
    }
    Ok(QuadratureResult {
        value,
        est_error: error,
        evaluations,
    })
}

/// Which bounded motion a period integral describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Well {
    /// Oscillation in the shallower well.
    Shallow,
    /// Oscillation in the deeper well.
    Deep,
    /// Motion above the barrier spanning both wells.
    OverBarrier,
}

/// Indices `(i, j)` into `ξ₁..ξ₄` (zero-based) of the interval of `well`.
fn well_interval(well: Well, level: &LevelData, spec: &PotentialSpec) -> Result<(usize, usize)> {
    let shallow_left = spec.eps_a >= spec.eps_c;
    let (i, j) = match well {
        Well::OverBarrier => (0, 3),
        Well::Shallow if shallow_left => (0, 1),
        Well::Shallow => (2, 3),
        Well::Deep if shallow_left => (2, 3),
        Well::Deep => (0, 1),
    };
    let region = level.region;
    let exists = match well {
        Well::OverBarrier => region.above_barrier(),
        Well::Shallow => matches!(
            region,
            Region::ShallowMinimum | Region::IIa | Region::Lemniscatic | Region::IIb
        ),
        Well::Deep => !region.above_barrier() && region != Region::Separatrix,
    };
    if !exists || level.xi[i].im != 0.0 || level.xi[j].im != 0.0 {
        return Err(Error::region(format!(
            "no {well:?} motion at eps = {} (region {region})",
            level.eps
        )));
    }
    Ok((i, j))
}

/// Period of the orbit in `well` at energy `eps`, by quadrature.
pub fn quadrature_period(eps: f64, spec: &PotentialSpec, well: Well) -> Result<QuadratureResult> {
    let level = LevelData::new(eps, spec)?;
    let (i, j) = well_interval(well, &level, spec)?;
    let (a, b) = (level.xi[i].re, level.xi[j].re);
    let others: Vec<Complex64> = (0..4)
        .filter(|&k| k != i && k != j)
        .map(|k| level.xi[k])
        .collect();
    let (c, d) = (others[0], others[1]);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let integrand = |theta: f64| {
        let x = Complex64::new(mid - half * theta.cos(), 0.0);
        let q = ((x - c) * (x - d)).re;
        (2.0 / q).sqrt()
    };
    integrate(integrand, 0.0, PI, DEFAULT_REL_TOL, 0.0)
}

/// The spanning orbit above the barrier, the deep well below it.
pub fn default_well(eps: f64, spec: &PotentialSpec) -> Result<Well> {
    let region = LevelData::new(eps, spec)?.region;
    Ok(if region.above_barrier() {
        Well::OverBarrier
    } else {
        Well::Deep
    })
}

/// `R_F(0, y, z) = ∫₀^{π/2} dθ/√((sin²θ + y cos²θ)(sin²θ + z cos²θ))` by
/// quadrature, with principal square roots taken factor by factor.
pub fn rf_quadrature(y: Complex64, z: Complex64) -> Result<Complex64> {
    let eval = |theta: f64, part: fn(Complex64) -> f64| {
        let (s, c) = theta.sin_cos();
        let (s2, c2) = (s * s, c * c);
        let w = 1.0 / ((s2 + y * c2).sqrt() * (s2 + z * c2).sqrt());
        part(w)
    };
    let re = integrate(|t| eval(t, |w| w.re), 0.0, PI / 2.0, DEFAULT_REL_TOL, 1e-300)?;
    let im = integrate(|t| eval(t, |w| w.im), 0.0, PI / 2.0, DEFAULT_REL_TOL, 1e-15 * re.value.abs())?;
    Ok(Complex64::new(re.value, im.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::make_potential;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn peaked_integrand() {
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 0.0).unwrap();
        let want = 2.0 * 100.0 * (100.0f64).atan();
        assert!((r.value - want).abs() < 1e-9 * want);
        assert!(r.est_error >= 0.0);
    }

    #[test]
    fn symmetric_wells_match() {
        let s = make_potential(0.0).unwrap();
        let a = quadrature_period(-0.5, &s, Well::Shallow).unwrap().value;
        let b = quadrature_period(-0.5, &s, Well::Deep).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn missing_well_is_a_region_error() {
        let s = make_potential(FRAC_1_SQRT_2).unwrap();
        assert!(matches!(quadrature_period(-1.0, &s, Well::Shallow), Err(Error::Region(_))));
        assert!(matches!(quadrature_period(0.5, &s, Well::Deep), Err(Error::Region(_))));
        assert!(matches!(quadrature_period(0.05, &s, Well::OverBarrier), Err(Error::Region(_))));
    }

    #[test]
    fn rf_quadrature_matches_k() {
        let v = rf_quadrature(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 1.854_074_677_301_372).abs() < 1e-13 && v.im.abs() < 1e-15);
    }
}
