//! Carlson's symmetric integral `R_F` with complex arguments and the
//! complete integral of the first kind built on it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `|m − 1|` below which `K(m)` is reported as singular.
pub const K_SINGULAR_TOL: f64 = 1e-14;

const MAX_DUPLICATIONS: usize = 200;

/// `R_F(x, y, z) = ½ ∫₀^∞ dt / √((t+x)(t+y)(t+z))`.
///
/// Uses the duplication theorem with principal square roots followed by the
/// fifth-order Taylor correction. Valid for arguments off the negative real
/// axis with at most one of them zero; arguments lying exactly on the
/// negative axis are taken as the limit from above.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    let args = [x, y, z];
    if args.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("R_F arguments must be finite"));
    }
    if args.iter().filter(|v| v.norm() == 0.0).count() >= 2 {
        return Err(Error::Singular(
            "R_F diverges when two arguments vanish".into(),
        ));
    }

    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    // Termination bound from Carlson (1995) for a relative error of ~1e-16.
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0)
        * [a0 - x, a0 - y, a0 - z]
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max);
    let mut a = a0;
    let mut scale = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * scale < a.norm() {
            let dx = (a0 - args[0]) * scale / a;
            let dy = (a0 - args[1]) * scale / a;
            let dz = -(dx + dy);
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
            return Ok(series / a.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = (x + lambda) / 4.0;
        y = (y + lambda) / 4.0;
        z = (z + lambda) / 4.0;
        a = (a + lambda) / 4.0;
        scale /= 4.0;
    }
    Err(Error::Numerical("R_F duplication did not converge".into()))
}

/// Real-argument convenience wrapper for `R_F`.
pub fn carlson_rf_real(x: f64, y: f64, z: f64) -> Result<f64> {
    carlson_rf(
        Complex64::new(x, 0.0),
        Complex64::new(y, 0.0),
        Complex64::new(z, 0.0),
    )
    .map(|v| v.re)
}

/// Complete elliptic integral of the first kind in the parameter convention,
/// `K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ) = R_F(0, 1 − m, 1)`.
///
/// For real `m > 1` the result is the principal continuation approached
/// from `Im m < 0`.
pub fn complete_k(m: Complex64) -> Result<Complex64> {
    if (m - 1.0).norm() < K_SINGULAR_TOL {
        return Err(Error::Singular(format!("K(m) diverges at m = {m}")));
    }
    if m.norm() == 0.0 {
        return Ok(Complex64::new(PI / 2.0, 0.0));
    }
    carlson_rf(
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0) - m,
        Complex64::new(1.0, 0.0),
    )
}

/// `K(m)` for real `m < 1`.
pub fn complete_k_real(m: f64) -> Result<f64> {
    if m >= 1.0 - K_SINGULAR_TOL {
        return Err(Error::Singular(format!("K(m) is not real-finite at m = {m}")));
    }
    complete_k(Complex64::new(m, 0.0)).map(|k| k.re)
}
