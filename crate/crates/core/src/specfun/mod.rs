//! Special functions used by the closed-form channel statistics.
//!
//! Everything here is a pure function of its arguments. The numerical
//! integrators in [`quad`] double as the independent oracles the other
//! functions are checked against.

mod bessel;
mod gamma;
mod marcum;
pub mod quad;

pub use bessel::{bessel_i0, bessel_i0e, bessel_i0_asymptotic_scaled, bessel_i0_series, I0_CROSSOVER};
pub use gamma::{ln_gamma, regularized_lower_gamma, regularized_upper_gamma};
pub use marcum::marcum_q1;
pub use quad::{integrate, integrate_2d, Integral, QuadratureSpec};
