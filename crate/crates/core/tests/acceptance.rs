//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failures are reported, not raised; the process exits 0 either way so the
//! regular test suite stays green while the verdict stays visible.

mod common;

use common::{lower_gamma_by_quadrature, marcum_by_quadrature};
use mmw_uav::antenna::{ArrayConfig, ArrayPattern, Sector0Level};
use mmw_uav::channel::{
    build_mixture, outage_probability, sector_mass, sector_weights, LinkBudget, LinkType, OrientationStats,
};
use mmw_uav::cli::{cmd_validate, RunConfig};
use mmw_uav::montecarlo::{compare_cdf, sector_occupancy, SimulationSpec};
use mmw_uav::optimize::{optimize_array_sizes, optimize_symmetric_size, OptimizationMethod};
use mmw_uav::specfun::{marcum_q1, regularized_lower_gamma};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_190_501;

fn pattern(n: u32) -> ArrayPattern {
    ArrayPattern::new(ArrayConfig::default().with_n(n)).unwrap()
}

fn a2a(n: u32, tx: OrientationStats, rx: OrientationStats) -> LinkBudget {
    LinkBudget::new(LinkType::A2A, pattern(n), pattern(n)).with_orientations(tx, rx)
}

fn mild_jitter(n: u32) -> LinkBudget {
    a2a(n, OrientationStats::from_degrees(0.5, 0.5, 1.0), OrientationStats::from_degrees(1.0, 1.0, 1.0))
}

fn strong_jitter(n: u32, lobes: u32) -> LinkBudget {
    let mut l = a2a(n, OrientationStats::from_degrees(1.0, 1.0, 3.0), OrientationStats::from_degrees(0.5, 0.5, 3.0));
    l.sectorization.lobes = lobes;
    l
}

fn cdf_rel_err(link: &LinkBudget) -> f64 {
    let grid: Vec<f64> = (-20..=60).map(f64::from).collect();
    let model = build_mixture(link).unwrap();
    compare_cdf(link, &model, &SimulationSpec::new(5_000_000, SEED), &grid, 1e-3)
        .unwrap()
        .max_rel_err
}

fn special_functions() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for i in 0..=12 {
        let a = 0.75 * f64::from(i);
        for &b in &[0.05, 0.3, 0.8, 1.5, 2.5, 4.0, 6.0, 8.0, 10.0, 12.0] {
            let want = marcum_by_quadrature(a, b);
            worst = worst.max(((marcum_q1(a, b).unwrap() - want) / want).abs());
            points += 1;
        }
    }
    for &m in &[0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0, 20.0] {
        for &x in &[1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 12.0, 20.0, 35.0] {
            let want = lower_gamma_by_quadrature(m, x);
            worst = worst.max(((regularized_lower_gamma(m, x).unwrap() - want) / want).abs());
            points += 1;
        }
    }
    (worst <= 1e-8, format!("{points} points, max rel err {worst:.2e}"))
}

fn telescoping() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let sigma = rng.random_range(0.1..6.0_f64);
        let offset = rng.random_range(0.0..4.0_f64);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        let o = OrientationStats::from_degrees(offset * angle.cos(), offset * angle.sin(), sigma);
        let n = rng.random_range(1..=24);
        let d = rng.random_range(2..=40);
        let j = rng.random_range(1..=2);
        let sum: f64 = sector_weights(&o, n, d, j).unwrap().iter().sum();
        worst = worst.max((sum - sector_mass(&o, n, j).unwrap()).abs());
    }
    (worst <= 1e-12, format!("100 tuples, max |Σ J_d - (1 - M)| = {worst:.1e}"))
}

fn occupancy() -> Outcome {
    let o = OrientationStats::from_degrees(0.5, 0.5, 2.0);
    let (n, d, j) = (8, 25, 2);
    let w = sector_weights(&o, n, d, j).unwrap();
    let occ = sector_occupancy(&o, n, d, j, &SimulationSpec::new(1_000_000, SEED)).unwrap();
    let freq = occ.frequencies();
    let worst = w
        .iter()
        .zip(&freq)
        .map(|(&p, &f)| (f - p).abs() / occ.std_err(p))
        .fold(0.0, f64::max);
    (worst <= 3.0, format!("{} sectors, worst deviation {worst:.2} SE", w.len()))
}

fn analytic_vs_mc() -> Outcome {
    let a = cdf_rel_err(&mild_jitter(6));
    let b = cdf_rel_err(&strong_jitter(6, 2));
    let paper_s0 = {
        let mut l = mild_jitter(6);
        l.sectorization.sector0 = Sector0Level::Paper;
        cdf_rel_err(&l)
    };
    println!("  info: sector0 = paper at σ = 1° gives max rel err {paper_s0:.3}");
    println!("  info: N = 8 at σ = 3° (j = 2) gives max rel err {:.3}", cdf_rel_err(&strong_jitter(8, 2)));
    (
        a <= 0.15 && b <= 0.15,
        format!("N = 6: σ = 1° max rel err {a:.3}, σ = 3° j = 2 max rel err {b:.3} (tolerance 0.15)"),
    )
}

fn lobe_sensitivity() -> Outcome {
    let j1 = cdf_rel_err(&strong_jitter(6, 1));
    let j2 = cdf_rel_err(&strong_jitter(6, 2));
    (j1 > 0.15 && j2 <= 0.15, format!("σ = 3°: j = 1 max rel err {j1:.3}, j = 2 max rel err {j2:.3}"))
}

fn crossover() -> Outcome {
    let o = OrientationStats::from_degrees(0.5, 0.5, 2.0);
    let small = a2a(6, o, o);
    let large = a2a(12, o, o);
    let mut signs = Vec::new();
    for i in 0..=80 {
        let pt = 0.5 * f64::from(i);
        let p6 = outage_probability(&small.clone().with_tx_power_dbm(pt)).unwrap();
        let p12 = outage_probability(&large.clone().with_tx_power_dbm(pt)).unwrap();
        if p6 != p12 {
            signs.push((pt, p12 < p6));
        }
    }
    let swaps: Vec<f64> = signs.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| w[1].0).collect();
    let both = signs.iter().any(|s| s.1) && signs.iter().any(|s| !s.1);
    (both && swaps.len() == 1, format!("N = 12 vs N = 6 ordering swaps at P_t = {swaps:?} dBm"))
}

fn optimizer_trends() -> Outcome {
    let still = |s: f64| OrientationStats::from_degrees(0.0, 0.0, s);
    let z: Vec<u32> = [1000.0, 2000.0, 3000.0]
        .iter()
        .map(|&z| {
            let l = a2a(8, still(2.0), still(2.0)).with_tx_power_dbm(15.0).with_distance(z);
            optimize_symmetric_size(&l, 20).unwrap().best_nt
        })
        .collect();
    let s: Vec<u32> = [1.0, 2.0, 3.0]
        .iter()
        .map(|&s| optimize_symmetric_size(&a2a(8, still(s), still(s)), 20).unwrap().best_nt)
        .collect();
    let near = |got: u32, want: u32| got.abs_diff(want) <= 2;
    let ok = z.windows(2).all(|w| w[0] <= w[1])
        && s.windows(2).all(|w| w[0] >= w[1])
        && near(z[0], 9)
        && near(z[2], 15)
        && near(s[0], 16)
        && near(s[2], 9);
    (ok, format!("N over Z = 1, 2, 3 km: {z:?}; N over σ = 1°, 2°, 3°: {s:?}"))
}

fn optimizer_agreement() -> Outcome {
    let mut all = true;
    let mut rows = Vec::new();
    for (st, sr) in [(5.0, 3.0), (2.0, 4.0), (3.0, 2.0), (1.0, 2.0)] {
        let l = a2a(8, OrientationStats::from_degrees(0.5, 0.5, st), OrientationStats::from_degrees(0.5, 0.5, sr));
        let an = optimize_array_sizes(&l, 18, OptimizationMethod::Analytical, None).unwrap();
        let spec = SimulationSpec::new(5_000_000, SEED);
        let mc = optimize_array_sizes(&l, 18, OptimizationMethod::MonteCarlo, Some(&spec)).unwrap();
        let sizes_ok = an.best_nt.abs_diff(mc.best_nt) <= 1 && an.best_nr.abs_diff(mc.best_nr) <= 1;
        let ratio = an.best_outage / mc.best_outage;
        let outage_ok = mc.best_outage > 0.0 && (0.5..=2.0).contains(&ratio);
        all &= sizes_ok && outage_ok;
        let line = format!(
            "({st}°, {sr}°): analytical ({}, {}) {:.3e}, simulated ({}, {}) {:.3e}",
            an.best_nt, an.best_nr, an.best_outage, mc.best_nt, mc.best_nr, mc.best_outage
        );
        println!("  {} {line}", if sizes_ok && outage_ok { "ok  " } else { "MISS" });
        rows.push(sizes_ok && outage_ok);
    }
    let passed = rows.iter().filter(|&&r| r).count();
    (all, format!("{passed}/4 rows agree within ±1 size and a factor of 2 in outage"))
}

fn scale_invariance() -> Outcome {
    let o = OrientationStats::from_degrees(0.5, 0.5, 2.0);
    let base = a2a(8, o, o);
    let mut worst: f64 = 0.0;
    let mut argmin_ok = true;
    for k in [1e-3, 0.37, 10.0, 1e4] {
        let mut scaled = base.clone();
        scaled.tx_power_mw *= k;
        scaled.noise_power_mw *= k;
        let a = outage_probability(&base).unwrap();
        let b = outage_probability(&scaled).unwrap();
        worst = worst.max((a - b).abs() / a);
        let ra = optimize_symmetric_size(&base, 12).unwrap();
        let rb = optimize_symmetric_size(&scaled, 12).unwrap();
        argmin_ok &= ra.best_nt == rb.best_nt;
    }
    (worst <= 1e-12 && argmin_ok, format!("max rel outage change {worst:.1e}, argmin unchanged: {argmin_ok}"))
}

fn determinism() -> Outcome {
    let mut cfg = RunConfig::default();
    cfg.tx.n = 6;
    cfg.rx.n = 6;
    cfg.tx.offset_x_deg = Some(0.5);
    cfg.tx.offset_y_deg = Some(0.5);
    cfg.tx.sigma_deg = Some(1.0);
    cfg.rx.offset_x_deg = Some(1.0);
    cfg.rx.offset_y_deg = Some(1.0);
    cfg.rx.sigma_deg = Some(1.0);
    cfg.simulation.samples = 1_000_000;
    let report = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| cmd_validate(&cfg).unwrap().to_json())
    };
    let runs = [report(1), report(1), report(8), report(8)];
    let same = runs.iter().all(|r| r == &runs[0]);
    (same, format!("4 runs (threads 1, 1, 8, 8), {} bytes each, identical: {same}", runs[0].len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("special-function oracle equivalence", special_functions),
        ("weight telescoping", telescoping),
        ("sector occupancy", occupancy),
        ("analytical vs Monte Carlo CDF", analytic_vs_mc),
        ("lobe-count sensitivity", lobe_sensitivity),
        ("array-size crossover", crossover),
        ("optimizer trends", optimizer_trends),
        ("analytical vs simulated optimizer", optimizer_agreement),
        ("scale invariance", scale_invariance),
        ("determinism", determinism),
    ];
    let mut passed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = check();
        passed += usize::from(ok);
        println!(
            "criterion {:>2} {}: {name}: {detail} [{:.1} s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
}
