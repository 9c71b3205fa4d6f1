//! Reference values computed without the library.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(x)` by the Lanczos approximation (g = 7, nine terms).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `K(m)` for real `0 ≤ m < 1` from the arithmetic-geometric mean.
pub fn agm_k(m: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    for _ in 0..40 {
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    PI / (2.0 * a)
}

/// Largest real root of `4x³ − g₂x − g₃` by bisection.
pub fn largest_cubic_root(g2: f64, g3: f64) -> f64 {
    let f = |x: f64| 4.0 * x * x * x - g2 * x - g3;
    let mut hi = 1.0 + g2.abs() + g3.abs();
    let mut lo = -hi;
    // f is positive beyond the largest root; walk lo up to it.
    let n = 4096;
    for i in (0..n).rev() {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        if f(x) <= 0.0 {
            lo = x;
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[allow(dead_code)]
pub fn v(x: f64, delta: f64) -> f64 {
    x.powi(4) - 1.5 * x * x - delta * x
}

#[allow(dead_code)]
pub fn d2v(x: f64) -> f64 {
    12.0 * x * x - 3.0
}
