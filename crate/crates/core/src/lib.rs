//! Closed-form motion in the asymmetric quartic double well
//! `V(x) = x⁴ − (3/2)x² − δx`.
//!
//! Turning points come from a resolvent cubic, orbits from the Weierstrass
//! function `℘` anchored at a real turning point, and periods from the
//! complete elliptic integral `K(m)` with a complex parameter. The
//! [`oracle`] module supplies quadrature and ODE ground truth that does not
//! depend on any of those closed forms.
//!
//! ```
//! use quartic_well::{make_potential, period};
//!
//! let well = make_potential(0.0).unwrap();
//! let t = period(-1.0, &well).unwrap().value();
//! assert!((t - 2.0 * std::f64::consts::PI / 6f64.sqrt()).abs() < 1e-10);
//! ```

// `!(x > 0.0)` style tests are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cubic;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod levels;
pub mod oracle;
pub mod verify;

/// Library version, recorded in emitted metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use cubic::{discriminant, solve_general_cubic, solve_weierstrass_cubic, CubicInvariants, CubicRoots};
pub use dynamics::{
    jacobi_connection, orbit_from_xi1, orbit_from_xi4, period, phase_portrait, symmetric_orbit,
    symmetric_period, velocity_on_orbit, Anchor, JacobiPeriodData, Orbit, Period, SymmetricCase,
    Trajectory,
};
pub use elliptic::{complete_k, half_periods, jacobi_snc, weierstrass_p, JacobiTriple, WeierstrassData};
pub use error::{Error, Result};
pub use levels::{
    classify_region, level_invariants, make_potential, turning_points, LevelData, PotentialSpec,
    Region,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/levels.md")]
    mod levels {}
    #[doc = include_str!("../../../book/src/turning-points.md")]
    mod turning_points {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/periods.md")]
    mod periods {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
