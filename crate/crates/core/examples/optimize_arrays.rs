//! # Array-size optimization
//!
//! Finds the outage-minimizing array sizes for an A2A link with unequal
//! jitter at the two ends, then the best common size as distance grows.
//!
//! Run with: cargo run --release --example optimize_arrays

use mmw_uav::antenna::{ArrayConfig, ArrayPattern};
use mmw_uav::channel::{LinkBudget, LinkType, OrientationStats};
use mmw_uav::optimize::{optimize_array_sizes, optimize_symmetric_size, OptimizationMethod};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== Array-size optimization ===\n");

    let p = ArrayPattern::new(ArrayConfig::default())?;
    let template = LinkBudget::new(LinkType::A2A, p.clone(), p).with_orientations(
        OrientationStats::from_degrees(0.5, 0.5, 5.0),
        OrientationStats::from_degrees(0.5, 0.5, 3.0),
    );
    let r = optimize_array_sizes(&template, 12, OptimizationMethod::Analytical, None)?;
    println!("σ_t = 5°, σ_r = 3°: best (N_t, N_r) = ({}, {}), outage {:.3e}", r.best_nt, r.best_nr, r.best_outage);
    println!("searched {} size pairs\n", r.evaluations.len());

    let still = OrientationStats::from_degrees(0.0, 0.0, 2.0);
    println!("{:>10} {:>6} {:>12}", "Z [m]", "N", "outage");
    for z in [1000.0, 2000.0, 3000.0] {
        let t = template.clone().with_orientations(still, still).with_tx_power_dbm(15.0).with_distance(z);
        let r = optimize_symmetric_size(&t, 16)?;
        println!("{z:>10} {:>6} {:>12.3e}", r.best_nt, r.best_outage);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
