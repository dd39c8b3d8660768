//! # Monte Carlo validation
//!
//! Simulates the link with exact patterns and Gaussian attitude errors and
//! compares the empirical CDF with the analytical mixture.
//!
//! Run with: cargo run --release --example monte_carlo_validation

use mmw_uav::antenna::{ArrayConfig, ArrayPattern};
use mmw_uav::channel::{build_mixture, LinkBudget, LinkType, OrientationStats};
use mmw_uav::montecarlo::{compare_cdf, estimate_outage, SimulationSpec};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== Monte Carlo validation ===\n");

    let array = ArrayPattern::new(ArrayConfig::default().with_n(6))?;
    let link = LinkBudget::new(LinkType::A2A, array.clone(), array)
        .with_orientations(
            OrientationStats::from_degrees(1.0, 1.0, 1.0),
            OrientationStats::from_degrees(0.5, 0.5, 1.0),
        )
        .with_snr_threshold_db(20.0);
    let spec = SimulationSpec::new(200_000, 7);
    let model = build_mixture(&link)?;

    let grid: Vec<f64> = (0..=12).map(|i| 5.0 * f64::from(i)).collect();
    let cmp = compare_cdf(&link, &model, &spec, &grid, 1e-3)?;
    println!("{:>8} {:>12} {:>12} {:>8}", "SNR dB", "simulated", "model", "rel err");
    for p in &cmp.probes {
        let rel = if p.empirical >= cmp.floor { format!("{:.3}", p.rel_err()) } else { "-".into() };
        println!("{:>8} {:>12.4e} {:>12.4e} {:>8}", p.snr_db, p.empirical, p.analytical, rel);
    }
    println!("\nmax relative error {:.3}, max absolute gap {:.2e}", cmp.max_rel_err, cmp.max_abs_gap);

    let est = estimate_outage(&link, &spec)?;
    println!(
        "outage at 20 dB: simulated {:.4e} ± {:.1e}, model {:.4e}",
        est.p_hat,
        est.std_err,
        model.outage(link.snr_threshold)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
