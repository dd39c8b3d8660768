//! # Outage sweep
//!
//! Outage against transmit power for three array sizes. Large arrays win
//! at low power but lose once pointing jitter dominates.
//!
//! Run with: cargo run --example outage_sweep

use mmw_uav::antenna::{ArrayConfig, ArrayPattern};
use mmw_uav::channel::{outage_probability, LinkBudget, LinkType};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== Outage vs transmit power ===\n");

    let sizes = [6, 9, 12];
    let links: Vec<LinkBudget> = sizes
        .iter()
        .map(|&n| {
            let p = ArrayPattern::new(ArrayConfig::default().with_n(n))?;
            Ok(LinkBudget::new(LinkType::A2A, p.clone(), p))
        })
        .collect::<mmw_uav::Result<_>>()?;

    print!("{:>8}", "Pt [dBm]");
    for n in sizes {
        print!(" {:>12}", format!("N = {n}"));
    }
    println!();
    for pt in (0..=40).step_by(5) {
        print!("{pt:>8}");
        for link in &links {
            let p = outage_probability(&link.clone().with_tx_power_dbm(f64::from(pt)))?;
            print!(" {p:>12.3e}");
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
