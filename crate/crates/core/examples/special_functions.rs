//! # Special functions
//!
//! Marcum Q, regularized incomplete gamma and the scaled Bessel I0 that
//! the channel statistics are built on.
//!
//! Run with: cargo run --example special_functions

use mmw_uav::specfun::{bessel_i0e, marcum_q1, regularized_lower_gamma, regularized_upper_gamma};

pub fn run_example() -> mmw_uav::Result<()> {
    println!("=== Special functions ===\n");

    println!("{:>6} {:>6} {:>22}", "a", "b", "Q1(a, b)");
    for &(a, b) in &[(0.0, 1.0), (1.0, 2.0), (2.0, 1.0), (5.0, 5.5), (20.0, 18.0)] {
        println!("{a:>6} {b:>6} {:>22.15e}", marcum_q1(a, b)?);
    }

    println!("\n{:>6} {:>6} {:>22} {:>22}", "m", "x", "P(m, x)", "Q(m, x)");
    for &(m, x) in &[(0.5, 0.1), (1.0, 1.0), (3.0, 2.5), (10.0, 12.0)] {
        println!(
            "{m:>6} {x:>6} {:>22.15e} {:>22.15e}",
            regularized_lower_gamma(m, x)?,
            regularized_upper_gamma(m, x)?
        );
    }

    println!("\n{:>8} {:>22}", "x", "exp(-x) I0(x)");
    for &x in &[0.0, 1.0, 10.0, 100.0, 1e4] {
        println!("{x:>8} {:>22.15e}", bessel_i0e(x)?);
    }

    // Q1(0, b) is the Rayleigh tail.
    let b = 1.7_f64;
    let gap = (marcum_q1(0.0, b)? - (-0.5 * b * b).exp()).abs();
    println!("\n|Q1(0, {b}) - exp(-b²/2)| = {gap:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> mmw_uav::Result<()> {
    run_example()
}
