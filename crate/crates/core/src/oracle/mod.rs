//! Ground truth that does not touch the elliptic machinery: quadrature of
//! the period integrals and direct integration of the equation of motion.

mod ode;
mod quadrature;

pub use ode::{
    energy_of, integrate_motion, measure_period, propagate, Dopri5, DrivingKind, DrivingSpec,
    DEFAULT_TOL, MAX_TOL, MIN_TOL,
};
pub use quadrature::{
    default_well, integrate, quadrature_period, rf_quadrature, QuadratureResult, Well,
    DEFAULT_REL_TOL,
};
