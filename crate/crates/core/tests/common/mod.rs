//! Independent quadrature oracles shared by the integration suites.

use mmw_uav::specfun::{
    bessel_i0e,
    quad::{integrate_panels, uniform_breaks},
    QuadratureSpec,
};

fn tight() -> QuadratureSpec {
    QuadratureSpec::new(20_000, 0.0, 1e-13).unwrap()
}

/// `∫_b^∞ x exp(-(x²+a²)/2) I0(ax) dx`, written with the scaled Bessel
/// function so the integrand never overflows.
pub fn marcum_by_quadrature(a: f64, b: f64) -> f64 {
    let upper = a.max(b) + 40.0;
    let breaks = uniform_breaks(b, upper, ((upper - b).ceil() as usize).max(4));
    integrate_panels(
        |x| x * (-0.5 * (x - a) * (x - a)).exp() * bessel_i0e(a * x).unwrap(),
        &breaks,
        &tight(),
    )
    .unwrap()
    .value
}

/// `P(m, x)` with `t = u²`, normalized by the same integral to infinity.
pub fn lower_gamma_by_quadrature(m: f64, x: f64) -> f64 {
    let f = |u: f64| 2.0 * u.powf(2.0 * m - 1.0) * (-u * u).exp();
    let r = x.sqrt();
    let top = r.max(12.0).max((m + 40.0).sqrt() * 2.0);
    let part = integrate_panels(f, &uniform_breaks(0.0, r, 16), &tight()).unwrap().value;
    let rest = integrate_panels(f, &uniform_breaks(r, top, 64), &tight()).unwrap().value;
    part / (part + rest)
}
