//! # Antenna patterns
//!
//! Normalizes an 8×8 array and compares the exact, approximate and
//! sectorized gain along three elevation cuts.
//!
//! Run with: cargo run --example antenna_patterns

use mmw_uav::antenna::{pattern_cut, ArrayConfig, ArrayPattern, PatternModel, Sector0Level};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== Antenna patterns ===\n");

    let pattern = ArrayPattern::new(ArrayConfig::default().with_n(8))?;
    println!("N = {}, G0 = {:.6e}, peak gain = {:.2} dBi", pattern.n(), pattern.g0(), 10.0 * pattern.peak_gain().log10());

    let sectors = pattern.sectorize(25, 2, Sector0Level::Continuity)?;
    println!("{} sectors, innermost level {:.3e}\n", sectors.sector_count(), sectors.level(0));

    let xs: Vec<f64> = (0..=10).map(|i| f64::from(i).to_radians()).collect();
    for ty in [0.0_f64, 2.0, 4.0] {
        let cut = pattern_cut(&pattern, &sectors, ty.to_radians(), &xs);
        println!("theta_y = {ty}°");
        println!("{:>8} {:>10} {:>10} {:>10}", "θx [°]", "actual", "approx", "sector");
        for (i, x) in xs.iter().enumerate() {
            let db = |m: PatternModel| {
                let g = cut.iter().filter(|s| s.model == m).nth(i).unwrap().gain_linear;
                if g > 0.0 { format!("{:.2}", 10.0 * g.log10()) } else { "-inf".into() }
            };
            println!(
                "{:>8.1} {:>10} {:>10} {:>10}",
                x.to_degrees(),
                db(PatternModel::Actual),
                db(PatternModel::Approximate),
                db(PatternModel::Sectorized)
            );
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
