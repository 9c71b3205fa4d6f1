//! Closed-form orbits, the period engine and the symmetric special case.

mod orbit;
mod period;
mod portrait;
mod symmetric;

pub use orbit::{
    orbit_from_xi1, orbit_from_xi4, velocity_on_orbit, Anchor, Orbit, OrbitCoefficients,
    Trajectory, TrajectoryMeta, TrajectorySource,
};
pub use period::{jacobi_connection, period, weierstrass_period, JacobiPeriodData, Period};
pub use portrait::{phase_portrait, SEPARATRIX_WINDOW};
pub use symmetric::{symmetric_orbit, symmetric_period, SymmetricCase};
