use std::fmt;
use std::str::FromStr;

use crate::dynamics::period::{period, Period};
use crate::elliptic::WeierstrassP;
use crate::error::{Error, Result};
use crate::levels::{energy_from_eps, LevelData, PotentialSpec, Region};

/// Below this `|V′(ξ)|` the anchor is an equilibrium and the orbit is
/// constant.
const REST_TOL: f64 = 1e-14;
/// Below this `|2℘ + V″(ξ)/6|` the orbit value is taken as its limit `ξ`.
const DENOMINATOR_TOL: f64 = 1e-12;
/// Energy deficit `9ε/16 − V(x)` tolerated before `velocity_on_orbit` fails.
const ENERGY_SLACK: f64 = 1e-12;

/// Turning point at which an orbit starts with zero velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// Leftmost turning point `ξ₁`.
    Xi1,
    /// Rightmost turning point `ξ₄`.
    Xi4,
}

impl Anchor {
    pub fn index(self) -> usize {
        match self {
            Anchor::Xi1 => 1,
            Anchor::Xi4 => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Anchor::Xi1 => "xi1",
            Anchor::Xi4 => "xi4",
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Anchor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi1" => Ok(Anchor::Xi1),
            "xi4" => Ok(Anchor::Xi4),
            other => Err(Error::domain(format!("unknown anchor '{other}'"))),
        }
    }
}

/// Taylor coefficients of `2(E − V)` about the anchor, written so that the
/// cubic in `1/(x − ξ)` has the Weierstrass form.
///
/// From `ξ₁`: `(a₁, a₂, a₃) = (−V‴/6, −V″/2, −V′)`.
/// From `ξ₄`: `(b₁, b₂, b₃) = (V‴/6, −V″/2, V′)`.
/// Either way `g₂ = −c₁c₃ + c₂²/3` and `g₃ = (3c₃² − (2/9)c₂³ + c₁c₂c₃)/6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitCoefficients {
    pub anchor: Anchor,
    pub xi: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub g2: f64,
    pub g3: f64,
}

impl OrbitCoefficients {
    pub fn new(anchor: Anchor, xi: f64, spec: &PotentialSpec) -> Self {
        let (d1, d2, d3) = (spec.dv(xi), spec.d2v(xi), spec.d3v(xi));
        let (c1, c2, c3) = match anchor {
            Anchor::Xi1 => (-d3 / 6.0, -d2 / 2.0, -d1),
            Anchor::Xi4 => (d3 / 6.0, -d2 / 2.0, d1),
        };
        let g2 = -c1 * c3 + c2 * c2 / 3.0;
        let g3 = (3.0 * c3 * c3 - 2.0 / 9.0 * c2 * c2 * c2 + c1 * c2 * c3) / 6.0;
        OrbitCoefficients {
            anchor,
            xi,
            c1,
            c2,
            c3,
            g2,
            g3,
        }
    }
}

/// Where a [`Trajectory`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectorySource {
    ClosedForm,
    Integrator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryMeta {
    pub eps: f64,
    pub delta: f64,
    pub anchor: Option<Anchor>,
    pub region: Option<Region>,
    pub period: Option<Period>,
    pub source: TrajectorySource,
    /// The sampling window is a finite cut of an unbounded orbit.
    pub truncated: bool,
}

/// Time-sampled `(t, x, ẋ)` series.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub velocities: Vec<f64>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `(t, x, ẋ)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.times
            .iter()
            .zip(&self.positions)
            .zip(&self.velocities)
            .map(|((&t, &x), &v)| (t, x, v))
    }

    /// Largest `|½ẋ² + V(x) − 9ε/16|` over the samples.
    pub fn max_energy_deviation(&self) -> f64 {
        let e = energy_from_eps(self.meta.eps);
        let delta = self.meta.delta;
        self.rows()
            .map(|(_, x, v)| (0.5 * v * v + crate::levels::eval_v(x, delta) - e).abs())
            .fold(0.0, f64::max)
    }

    pub fn last(&self) -> Option<(f64, f64, f64)> {
        self.rows().last()
    }
}

/// The closed-form orbit `x(t) = ξ − V′(ξ)/(2℘(t) + V″(ξ)/6)` released from
/// rest at a real turning point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    pub level: LevelData,
    pub anchor: Anchor,
    pub xi: f64,
    pub coefficients: OrbitCoefficients,
    pub period: Period,
    dv: f64,
    d2v_sixth: f64,
    wp: WeierstrassP,
}

impl Orbit {
    pub fn new(eps: f64, spec: &PotentialSpec, anchor: Anchor) -> Result<Self> {
        let level = LevelData::new(eps, spec)?;
        let xi = level.xi_real(anchor.index()).ok_or_else(|| {
            Error::region(format!(
                "turning point {anchor} is complex at eps = {eps} (region {})",
                level.region
            ))
        })?;
        let (g2, g3) = level.weierstrass_invariants();
        Ok(Orbit {
            level,
            anchor,
            xi,
            coefficients: OrbitCoefficients::new(anchor, xi, spec),
            period: period(eps, spec)?,
            dv: spec.dv(xi),
            d2v_sixth: spec.d2v(xi) / 6.0,
            wp: WeierstrassP::new(g2, g3),
        })
    }

    /// Whether the anchor is an equilibrium, so that `x(t) = ξ`.
    pub fn is_rest(&self) -> bool {
        self.dv.abs() < REST_TOL
    }

    pub fn weierstrass(&self) -> &WeierstrassP {
        &self.wp
    }

    /// `(x(t), ẋ(t))`. The velocity follows from differentiating the orbit
    /// formula, `ẋ = 2V′(ξ)℘′/(2℘ + V″(ξ)/6)²`.
    pub fn state(&self, t: f64) -> Result<(f64, f64)> {
        if self.is_rest() {
            return Ok((self.xi, 0.0));
        }
        let (p, dp) = match self.wp.p_and_prime(t) {
            Ok(v) => v,
            Err(Error::Pole { .. }) => return Ok((self.xi, 0.0)),
            Err(e) => return Err(e),
        };
        let den = 2.0 * p + self.d2v_sixth;
        if den.abs() < DENOMINATOR_TOL {
            return Ok((self.xi, 0.0));
        }
        let x = self.xi - self.dv / den;
        let v = 2.0 * self.dv * dp / (den * den);
        Ok((x, v))
    }

    pub fn position(&self, t: f64) -> Result<f64> {
        self.state(t).map(|s| s.0)
    }

    pub fn velocity(&self, t: f64) -> Result<f64> {
        self.state(t).map(|s| s.1)
    }

    /// `n ≥ 2` uniform samples on `[t0, t1]`, endpoints included.
    pub fn sample(&self, t0: f64, t1: f64, n: usize) -> Result<Trajectory> {
        if n < 2 {
            return Err(Error::domain(format!("need at least 2 samples, got {n}")));
        }
        let mut tr = Trajectory {
            times: Vec::with_capacity(n),
            positions: Vec::with_capacity(n),
            velocities: Vec::with_capacity(n),
            meta: TrajectoryMeta {
                eps: self.level.eps,
                delta: self.level.delta,
                anchor: Some(self.anchor),
                region: Some(self.level.region),
                period: Some(self.period),
                source: TrajectorySource::ClosedForm,
                truncated: false,
            },
        };
        let h = (t1 - t0) / (n - 1) as f64;
        for i in 0..n {
            let t = if i == n - 1 { t1 } else { t0 + h * i as f64 };
            let (x, v) = self.state(t)?;
            tr.times.push(t);
            tr.positions.push(x);
            tr.velocities.push(v);
        }
        Ok(tr)
    }

    /// One full period sampled at `n` points, `t = 0` through `t = T`.
    pub fn sample_period(&self, n: usize) -> Result<Trajectory> {
        match self.period {
            Period::Finite(t) => self.sample(0.0, t, n),
            Period::Unbounded => Err(Error::domain(
                "orbit has an unbounded period; sample a finite window instead",
            )),
        }
    }
}

/// `x(t)` released from rest at `ξ₁`.
pub fn orbit_from_xi1(t: f64, eps: f64, spec: &PotentialSpec) -> Result<f64> {
    Orbit::new(eps, spec, Anchor::Xi1)?.position(t)
}

/// `x(t)` released from rest at `ξ₄`.
pub fn orbit_from_xi4(t: f64, eps: f64, spec: &PotentialSpec) -> Result<f64> {
    Orbit::new(eps, spec, Anchor::Xi4)?.position(t)
}

/// `|ẋ| = √(2(9ε/16 − V(x)))`; the sign is left to the caller.
pub fn velocity_on_orbit(x: f64, eps: f64, spec: &PotentialSpec) -> Result<f64> {
    let kinetic = energy_from_eps(eps) - spec.v(x);
    if kinetic < -ENERGY_SLACK {
        return Err(Error::domain(format!(
            "V({x}) exceeds the energy 9eps/16 at eps = {eps}"
        )));
    }
    Ok((2.0 * kinetic.max(0.0)).sqrt())
}
