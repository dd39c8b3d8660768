mod common;

use common::{lower_gamma_by_quadrature, marcum_by_quadrature};
use mmw_uav::channel::{sector_mass, sector_weights, OrientationStats};
use mmw_uav::specfun::{marcum_q1, regularized_lower_gamma};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

#[test]
fn marcum_matches_quadrature() {
    for &a in &[0.0, 0.3, 1.0, 2.5, 5.0, 9.0] {
        for &b in &[0.05, 0.5, 1.0, 2.0, 4.0, 7.5, 12.0] {
            let got = marcum_q1(a, b).unwrap();
            let want = marcum_by_quadrature(a, b);
            assert!(((got - want) / want).abs() < 1e-8, "Q1({a}, {b}) = {got}, oracle {want}");
        }
    }
}

#[test]
fn marcum_reference_point() {
    let q = marcum_q1(1.0, 2.0).unwrap();
    assert!((q - marcum_by_quadrature(1.0, 2.0)).abs() < 1e-12);
    assert!((q - 0.269_012_060_035).abs() < 1e-9, "{q}");
}

#[test]
fn lower_gamma_matches_quadrature() {
    let want = lower_gamma_by_quadrature(3.0, 2.5);
    assert!((regularized_lower_gamma(3.0, 2.5).unwrap() - want).abs() < 1e-12);
    for &m in &[0.5, 1.0, 3.0, 10.0] {
        for &x in &[1e-3, 0.1, 0.7, 1.0, 2.5, 6.0, 15.0, 30.0] {
            let got = regularized_lower_gamma(m, x).unwrap();
            let want = lower_gamma_by_quadrature(m, x);
            assert!(((got - want) / want).abs() < 1e-8, "P({m}, {x}) = {got}, oracle {want}");
        }
    }
}

#[test]
fn lower_gamma_closed_forms() {
    for &x in &[0.01, 0.5, 2.0, 9.0] {
        let p1 = regularized_lower_gamma(1.0, x).unwrap();
        assert!((p1 - (1.0 - (-x).exp())).abs() < 1e-14);
        let p2 = regularized_lower_gamma(2.0, x).unwrap();
        assert!((p2 - (1.0 - (1.0 + x) * (-x).exp())).abs() < 1e-14);
    }
}

/// Radial error of an offset 2-D Gaussian is Rician; its ring histogram
/// must follow the Marcum-Q differences.
#[test]
fn ring_histogram_is_rician() {
    let o = OrientationStats::from_degrees(0.5, 0.5, 2.0);
    let (n, d, j) = (8, 5, 2);
    let w = sector_weights(&o, n, d, j).unwrap();
    let mass = sector_mass(&o, n, j).unwrap();
    let draws = 200_000u32;
    let mut counts = vec![0u32; w.len() + 1];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let gauss = Normal::new(0.0, o.sigma).unwrap();
    let width = 1.0 / f64::from(d * n);
    for _ in 0..draws {
        let x = o.boresight_offset_x + gauss.sample(&mut rng);
        let y = o.boresight_offset_y + gauss.sample(&mut rng);
        let i = ((x.hypot(y) / width).ceil() as usize).max(1) - 1;
        counts[i.min(w.len())] += 1;
    }
    let expected: Vec<f64> = w.iter().copied().chain([1.0 - mass]).map(|p| p * f64::from(draws)).collect();
    let chi2: f64 = counts
        .iter()
        .zip(&expected)
        .filter(|(_, &e)| e > 5.0)
        .map(|(&c, &e)| (f64::from(c) - e).powi(2) / e)
        .sum();
    // 99.9 % point of χ² with 10 degrees of freedom.
    assert!(chi2 < 29.59, "chi-square {chi2}");
}

#[test]
fn orientation_marginals() {
    // Without offset the radial error is Rayleigh: P(r > b) = exp(-b²/2σ²).
    let o = OrientationStats::from_degrees(0.0, 0.0, 1.5);
    let w = sector_weights(&o, 4, 10, 2).unwrap();
    let width = 1.0 / 40.0;
    for (i, wi) in w.iter().enumerate() {
        let tail = |r: f64| (-0.5 * (r / o.sigma).powi(2)).exp();
        let want = tail(i as f64 * width) - tail((i + 1) as f64 * width);
        assert!((wi - want).abs() < 1e-13, "ring {i}: {wi} vs {want}");
    }
}
