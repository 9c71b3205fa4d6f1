//! Jacobi elliptic functions `sn`, `cn`, `dn` for real argument and real
//! parameter `0 ≤ m ≤ 1`, by the descending Landen (AGM) scheme.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_AGM_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// `(sn, cn, dn)(u | m)`.
pub fn jacobi_snc(u: f64, m: f64) -> Result<JacobiTriple> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain(format!(
            "Jacobi parameter must lie in [0, 1], got {m}"
        )));
    }
    if !u.is_finite() {
        return Err(Error::domain(format!("Jacobi argument must be finite, got {u}")));
    }
    if m == 0.0 {
        return Ok(JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        });
    }
    let b0 = (1.0 - m).sqrt();
    if m == 1.0 || b0 == 0.0 {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    let mut a = vec![1.0];
    let mut c = vec![m.sqrt()];
    let mut b = b0;
    for _ in 0..MAX_AGM_STEPS {
        let an = *a.last().unwrap();
        let cn = *c.last().unwrap();
        // c stalls at about an ulp of a once the means agree.
        if cn.abs() <= 4.0 * f64::EPSILON * an {
            break;
        }
        a.push(0.5 * (an + b));
        c.push(0.5 * (an - b));
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let a_n = a[n];

    // Reduce modulo the real period 4K = 2π/a_N.
    let four_k = 2.0 * PI / a_n;
    let u = u - four_k * (u / four_k).round();

    let mut phi = 2f64.powi(n as i32) * a_n * u;
    for k in (1..=n).rev() {
        phi = 0.5 * (phi + (c[k] / a[k] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - m * sn * sn).max(0.0).sqrt();
    Ok(JacobiTriple { sn, cn, dn })
}
