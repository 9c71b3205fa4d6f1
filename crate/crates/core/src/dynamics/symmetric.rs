use crate::dynamics::period::Period;
use crate::elliptic::{complete_k_real, jacobi_snc};
use crate::error::{Error, Result};

/// `|𝖾 − 1|` below which the level is treated as the separatrix.
const SEPARATRIX_TOL: f64 = 1e-12;

/// Motion in the symmetric well `x⁴ − (3/2)x²` released from rest at
/// `x = a = ½√(3(1 + 𝖾))`, `𝖾 = √(1 + ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricCase {
    pub eps: f64,
    /// `ε = −sin²α` for `−1 ≤ ε ≤ 0`.
    pub alpha: Option<f64>,
    pub e_param: f64,
    pub a: f64,
    /// `(1 + 𝖾)/(2𝖾)`; exceeds 1 inside the wells. Infinite at `ε = −1`.
    pub m_sym: f64,
}

impl SymmetricCase {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps >= -1.0) {
            return Err(Error::domain(format!(
                "symmetric well has no motion below eps = -1, got {eps}"
            )));
        }
        let e = (1.0 + eps).sqrt();
        Ok(SymmetricCase {
            eps,
            alpha: (eps <= 0.0).then(|| (-eps).sqrt().asin()),
            e_param: e,
            a: 0.5 * (3.0 * (1.0 + e)).sqrt(),
            m_sym: (1.0 + e) / (2.0 * e),
        })
    }

    pub fn is_separatrix(&self) -> bool {
        (self.e_param - 1.0).abs() <= SEPARATRIX_TOL
    }

    /// `Φ(x) = arccos(2x/√(3(1 + 𝖾)))`, the angle of the substitution
    /// `y = a cos φ`.
    pub fn big_phi(&self, x: f64) -> f64 {
        (x / self.a).clamp(-1.0, 1.0).acos()
    }

    /// Turning points `(±½√(3(1 ± 𝖾)))`, ascending; two of them when `𝖾 > 1`.
    pub fn turning_points(&self) -> Vec<f64> {
        let e = self.e_param;
        if e > 1.0 {
            vec![-self.a, self.a]
        } else {
            let b = 0.5 * (3.0 * (1.0 - e)).sqrt();
            vec![-self.a, -b, b, self.a]
        }
    }

    /// `(x(t), ẋ(t))`.
    pub fn state(&self, t: f64) -> Result<(f64, f64)> {
        let e = self.e_param;
        if self.is_separatrix() {
            let w = 3f64.sqrt();
            let sech = 1.0 / (w * t).cosh();
            let x = 1.5f64.sqrt() * sech;
            return Ok((x, -w * x * (w * t).tanh()));
        }
        if e > 1.0 {
            let w = (3.0 * e).sqrt();
            let j = jacobi_snc(w * t, self.m_sym)?;
            Ok((self.a * j.cn, -self.a * w * j.sn * j.dn))
        } else {
            let w = (1.5 * (1.0 + e)).sqrt();
            let k = 2.0 * e / (1.0 + e);
            let j = jacobi_snc(w * t, k)?;
            Ok((self.a * j.dn, -self.a * w * k * j.sn * j.cn))
        }
    }

    pub fn position(&self, t: f64) -> Result<f64> {
        self.state(t).map(|s| s.0)
    }

    /// `4K(m)/√(3𝖾)` above the barrier, `2K(1/m)/√(3𝖾m)` inside a well.
    pub fn period(&self) -> Result<Period> {
        let e = self.e_param;
        if self.is_separatrix() {
            return Ok(Period::Unbounded);
        }
        if e > 1.0 {
            Ok(Period::Finite(4.0 * complete_k_real(self.m_sym)? / (3.0 * e).sqrt()))
        } else {
            let k = 2.0 * e / (1.0 + e);
            // 𝖾m = (1 + 𝖾)/2 stays finite at the bottom of the well.
            Ok(Period::Finite(2.0 * complete_k_real(k)? / (1.5 * (1.0 + e)).sqrt()))
        }
    }
}

/// `x(t)` for `δ = 0`, released from rest at `a = ½√(3(1 + 𝖾))`.
pub fn symmetric_orbit(t: f64, eps: f64) -> Result<f64> {
    SymmetricCase::new(eps)?.position(t)
}

pub fn symmetric_period(eps: f64) -> Result<Period> {
    SymmetricCase::new(eps)?.period()
}
