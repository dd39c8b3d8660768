//! # SNR distribution
//!
//! Builds the Gamma-mixture model of an aerial link for several ring
//! counts D and prints its CDF; the curves settle as D grows.
//!
//! Run with: cargo run --example snr_distribution

use mmw_uav::antenna::{ArrayConfig, ArrayPattern};
use mmw_uav::channel::{build_mixture, LinkBudget, LinkType, OrientationStats, ResidualPolicy};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== SNR distribution ===\n");

    let array = ArrayPattern::new(ArrayConfig::default().with_n(6))?;
    let base = LinkBudget::new(LinkType::A2A, array.clone(), array).with_orientations(
        OrientationStats::from_degrees(1.0, 1.0, 1.0),
        OrientationStats::from_degrees(0.5, 0.5, 1.0),
    );

    let grid: Vec<f64> = (0..=8).map(|i| 10.0 + 5.0 * f64::from(i)).collect();
    print!("{:>4}", "D");
    for g in &grid {
        print!(" {:>9}", format!("{g} dB"));
    }
    println!();

    for d in [5, 15, 25] {
        let mut link = base.clone();
        link.sectorization.d_param = d;
        let model = build_mixture(&link)?;
        print!("{d:>4}");
        for row in model.distribution_table(&grid, ResidualPolicy::ToOutage) {
            print!(" {:>9.3e}", row.cdf);
        }
        println!("   ({} components, residual {:.1e})", model.component_count(), model.residual_mass);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
