//! Every example runs to completion.

#[path = "../examples/special_functions.rs"]
mod special_functions;

#[path = "../examples/antenna_patterns.rs"]
mod antenna_patterns;

#[path = "../examples/snr_distribution.rs"]
mod snr_distribution;

#[path = "../examples/outage_sweep.rs"]
mod outage_sweep;

#[path = "../examples/monte_carlo_validation.rs"]
mod monte_carlo_validation;

#[path = "../examples/optimize_arrays.rs"]
mod optimize_arrays;

#[test]
fn special_functions_runs() {
    special_functions::run_example().unwrap();
}

#[test]
fn antenna_patterns_runs() {
    antenna_patterns::run_example().unwrap();
}

#[test]
fn snr_distribution_runs() {
    snr_distribution::run_example().unwrap();
}

#[test]
fn outage_sweep_runs() {
    outage_sweep::run_example().unwrap();
}

#[test]
fn monte_carlo_validation_runs() {
    monte_carlo_validation::run_example().unwrap();
}

#[test]
fn optimize_arrays_runs() {
    optimize_arrays::run_example().unwrap();
}
