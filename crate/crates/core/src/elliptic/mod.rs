//! Special functions: `K(m)` for complex parameter, Jacobi `sn/cn/dn`, and
//! Weierstrass `℘` with its half-periods.

mod carlson;
mod jacobi;
mod weierstrass;

pub use carlson::{carlson_rf, carlson_rf_real, complete_k, complete_k_real, K_SINGULAR_TOL};
pub use jacobi::{jacobi_snc, JacobiTriple};
pub use weierstrass::{
    half_periods, weierstrass_p, LatticeKind, WeierstrassData, WeierstrassP, POLE_TOL,
};
