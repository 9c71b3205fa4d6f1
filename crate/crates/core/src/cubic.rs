//! Roots of the Weierstrass normal-form cubic `4x³ − g₂x − g₃ = 0`.
//!
//! With `g₂ = 3β²` and `g₃ = β³ cos φ` the roots are
//!
//! ```text
//! e₁ =  β cos(φ/3)
//! e₂ = −β cos((π + φ)/3)
//! e₃ = −β cos((π − φ)/3)
//! ```
//!
//! which is the trigonometric form of Cardano's solution. When the
//! discriminant is negative `φ` becomes complex; the same expressions are
//! evaluated through their hyperbolic continuation so that the single real
//! root comes out exactly real. A general cubic `4y³ + ay² + by + c` is first
//! depressed by the shift `y = x − a/12`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

/// Arguments of `acos` that overshoot `±1` by less than this are clamped.
const ACOS_CLAMP: f64 = 1e-12;

/// `Δ = g₂³ − 27 g₃²`.
pub fn discriminant(g2: f64, g3: f64) -> f64 {
    g2 * g2 * g2 - 27.0 * g3 * g3
}

/// The invariants of a Weierstrass cubic together with its trigonometric
/// parameters `β` and `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicInvariants {
    pub g2: f64,
    pub g3: f64,
    /// `√(g₂/3)`; purely imaginary when `g₂ < 0`.
    pub beta: Complex64,
    /// Phase with `cos φ = g₃/β³`, principal branch. `None` when `β = 0`.
    pub phi: Option<Complex64>,
}

impl CubicInvariants {
    pub fn new(g2: f64, g3: f64) -> Self {
        let beta = Complex64::new(g2 / 3.0, 0.0).sqrt();
        let phi = if beta.norm() == 0.0 {
            None
        } else {
            let c = Complex64::new(g3, 0.0) / beta.powi(3);
            let c = if c.im == 0.0 && c.re.abs() > 1.0 && c.re.abs() <= 1.0 + ACOS_CLAMP {
                Complex64::new(c.re.signum(), 0.0)
            } else {
                c
            };
            let phi = c.acos();
            phi.is_finite().then_some(phi)
        };
        CubicInvariants { g2, g3, beta, phi }
    }

    pub fn discriminant(&self) -> f64 {
        discriminant(self.g2, self.g3)
    }
}

/// Three roots ordered by descending real part, ties broken by descending
/// imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
}

impl CubicRoots {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.e1, self.e2, self.e3]
    }

    fn from_unsorted(mut roots: [Complex64; 3]) -> Self {
        roots.sort_by(|a, b| {
            b.re.partial_cmp(&a.re)
                .unwrap_or(Ordering::Equal)
                .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
        });
        CubicRoots {
            e1: roots[0],
            e2: roots[1],
            e3: roots[2],
        }
    }

    /// All three roots real (imaginary parts exactly zero).
    pub fn all_real(&self) -> bool {
        self.as_array().iter().all(|r| r.im == 0.0)
    }

    /// Largest real root. Every real cubic has at least one.
    pub fn largest_real(&self) -> f64 {
        self.as_array()
            .iter()
            .filter(|r| r.im == 0.0)
            .map(|r| r.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn shifted(self, alpha: f64) -> Self {
        let a = Complex64::new(alpha, 0.0);
        CubicRoots {
            e1: self.e1 + a,
            e2: self.e2 + a,
            e3: self.e3 + a,
        }
    }
}

/// Solves `4x³ − g₂x − g₃ = 0`.
///
/// Real roots carry an imaginary part of exactly zero whenever `Δ ≥ 0`, and
/// the single real root is exactly real when `Δ < 0`.
pub fn solve_weierstrass_cubic(g2: f64, g3: f64) -> CubicRoots {
    let zero = Complex64::new(0.0, 0.0);
    if g2 == 0.0 && g3 == 0.0 {
        return CubicRoots {
            e1: zero,
            e2: zero,
            e3: zero,
        };
    }

    let delta = discriminant(g2, g3);
    if delta == 0.0 {
        // Double root −3g₃/(2g₂), simple root 3g₃/g₂.
        let double = -1.5 * g3 / g2;
        return CubicRoots::from_unsorted([3.0 * g3 / g2, double, double].map(|e| Complex64::new(e, 0.0)));
    }
    if g2 > 0.0 && delta > 0.0 {
        let beta = (g2 / 3.0).sqrt();
        let c = (g3 / (beta * beta * beta)).clamp(-1.0, 1.0);
        let phi = c.acos();
        let e1 = beta * (phi / 3.0).cos();
        let e2 = -beta * ((PI + phi) / 3.0).cos();
        let e3 = -beta * ((PI - phi) / 3.0).cos();
        return CubicRoots::from_unsorted([e1, e2, e3].map(|e| Complex64::new(e, 0.0)));
    }

    // One real root: continuation of the trigonometric form to complex φ.
    let mut r = if g2 > 0.0 {
        let beta = (g2 / 3.0).sqrt();
        let c = g3 / (beta * beta * beta);
        if c.is_finite() {
            c.signum() * beta * (c.abs().acosh() / 3.0).cosh()
        } else {
            (g3 / 4.0).cbrt()
        }
    } else if g2 < 0.0 {
        let b = (-g2 / 3.0).sqrt();
        let c = g3 / (b * b * b);
        if c.is_finite() {
            b * (c.asinh() / 3.0).sinh()
        } else {
            (g3 / 4.0).cbrt()
        }
    } else {
        (g3 / 4.0).cbrt()
    };

    // One Newton step removes the rounding left by cosh/acosh.
    let f = 4.0 * r * r * r - g2 * r - g3;
    let df = 12.0 * r * r - g2;
    if df != 0.0 {
        let step = f / df;
        if step.is_finite() {
            r -= step;
        }
    }

    let half = -0.5 * r;
    let im = (0.75 * r * r - 0.25 * g2).max(0.0).sqrt();
    CubicRoots::from_unsorted([
        Complex64::new(r, 0.0),
        Complex64::new(half, im),
        Complex64::new(half, -im),
    ])
}

/// Solves `4y³ + ay² + by + c = 0` by depressing to Weierstrass form.
///
/// With `α = −a/12` (the inflection point), `g₂ = −P′(α)` and `g₃ = −P(α)`;
/// the roots are `yᵢ = eᵢ + α`.
pub fn solve_general_cubic(a: f64, b: f64, c: f64) -> CubicRoots {
    let alpha = -a / 12.0;
    let p = 4.0 * alpha * alpha * alpha + a * alpha * alpha + b * alpha + c;
    let dp = 12.0 * alpha * alpha + 2.0 * a * alpha + b;
    solve_weierstrass_cubic(-dp, -p).shifted(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(g2: f64, g3: f64, r: Complex64) -> f64 {
        (4.0 * r * r * r - g2 * r - g3).norm()
    }

    #[test]
    fn double_root_case() {
        let r = solve_weierstrass_cubic(3.0, 1.0);
        assert!((r.e1.re - 1.0).abs() < 1e-15);
        assert!((r.e2.re + 0.5).abs() < 1e-15);
        assert!((r.e3.re + 0.5).abs() < 1e-15);
        assert!(r.all_real());
    }

    #[test]
    fn triple_zero() {
        let r = solve_weierstrass_cubic(0.0, 0.0);
        assert_eq!(r.as_array(), [Complex64::new(0.0, 0.0); 3]);
    }

    #[test]
    fn quarter_eighth_case() {
        let (g2, g3) = (0.75, 0.125);
        let r = solve_weierstrass_cubic(g2, g3);
        for root in r.as_array() {
            assert!(residual(g2, g3, root) < 1e-14);
        }
        assert!((r.e1.re - 0.5).abs() < 1e-15);
        assert!((r.e2.re + 0.25).abs() < 1e-15);
        assert!((r.e3.re + 0.25).abs() < 1e-15);
    }

    #[test]
    fn general_cubic_examples() {
        let r = solve_general_cubic(0.0, -3.0, -1.0);
        assert!((r.e1.re - 1.0).abs() < 1e-15 && (r.e3.re + 0.5).abs() < 1e-15);

        let r = solve_general_cubic(0.0, 0.0, 0.0);
        assert_eq!(r.e1, Complex64::new(0.0, 0.0));

        let p = |y: Complex64| 4.0 * y * y * y + 12.0 * y * y - 4.0;
        for y in solve_general_cubic(12.0, 0.0, -4.0).as_array() {
            assert!(p(y).norm() < 1e-10, "P({y}) = {}", p(y));
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(3.0, 1.0), 0.0);
        assert_eq!(discriminant(0.0, 0.0), 0.0);
        assert!(discriminant(0.75, -0.125).abs() < 1e-16);
    }

    #[test]
    fn complex_roots_ordering() {
        // g3 < 0, Δ < 0: the real root is the smallest, the pair leads with +Im.
        let r = solve_weierstrass_cubic(0.0, -0.25);
        assert!(r.e1.im > 0.0 && r.e2.im < 0.0 && r.e3.im == 0.0);
        assert_eq!(r.e1, r.e2.conj());
        assert!((r.largest_real() - r.e3.re).abs() == 0.0);
    }

    #[test]
    fn invariants_phase_matches_roots() {
        let inv = CubicInvariants::new(3.0, 0.5);
        let phi = inv.phi.unwrap();
        let beta = inv.beta;
        let r = solve_weierstrass_cubic(3.0, 0.5);
        assert!((beta * (phi / 3.0).cos() - r.e1).norm() < 1e-14);
        // Δ = 27 β⁶ sin²φ
        let lhs = inv.discriminant();
        let rhs = 27.0 * beta.powi(6) * phi.sin().powi(2);
        assert!((lhs - rhs.re).abs() < 1e-12 && rhs.im.abs() < 1e-12);
    }

    #[test]
    fn invariants_clamp_near_boundary() {
        // g3/β³ = 1 + 1e-15 from rounding is treated as exactly 1.
        let inv = CubicInvariants::new(3.0, 1.0 + 1e-15);
        assert_eq!(inv.phi.unwrap(), Complex64::new(0.0, 0.0));
        let inv = CubicInvariants::new(-3.0, 1.0);
        assert!(inv.beta.re.abs() < 1e-16 && inv.phi.unwrap().im != 0.0);
    }
}
