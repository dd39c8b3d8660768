//! Monte Carlo oracle for the link SNR.
//!
//! Samples Gaussian attitude errors at both ends, evaluates the exact array
//! patterns and multiplies in Gamma fading. Randomness comes from
//! fixed-size blocks, each with its own ChaCha substream keyed by
//! `(seed, block index)`, so every estimate is bit-identical no matter how
//! blocks are batched or how many threads run them.

mod occupancy;
mod sampler;
mod validate;

pub use occupancy::{sector_occupancy, SectorOccupancy};
pub use sampler::{
    empirical_cdf, estimate_outage, estimate_outage_grid, sample_link_snr, simulate_cdf,
    write_samples_csv, LinkSampler, OutageEstimate,
};
pub use validate::{compare_cdf, CdfComparison, CdfProbe, EstimateReport};

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples per RNG substream.
pub const BLOCK_SAMPLES: u64 = 4096;

/// Smallest sample count for which an estimate is reported.
pub const MIN_REPORTED_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationSpec {
    pub num_samples: u64,
    pub seed: u64,
    /// Samples handed to one worker at a time; affects scheduling only.
    pub batch_size: u64,
}

impl Default for SimulationSpec {
    fn default() -> Self {
        SimulationSpec {
            num_samples: 5_000_000,
            seed: 20_190_501,
            batch_size: 65_536,
        }
    }
}

impl SimulationSpec {
    pub fn new(num_samples: u64, seed: u64) -> Self {
        SimulationSpec {
            num_samples,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_samples == 0 || self.batch_size == 0 {
            return Err(Error::domain("simulation: sample count and batch size must be positive"));
        }
        Ok(())
    }

    pub(crate) fn require_reportable(&self) -> Result<()> {
        self.validate()?;
        if self.num_samples < MIN_REPORTED_SAMPLES {
            return Err(Error::domain(format!(
                "simulation: at least {MIN_REPORTED_SAMPLES} samples are needed for an estimate, got {}",
                self.num_samples
            )));
        }
        Ok(())
    }

    fn block_count(&self) -> u64 {
        self.num_samples.div_ceil(BLOCK_SAMPLES)
    }
}

pub(crate) fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `f(rng, count)` once per block, in parallel, returning results in
/// block order.
pub(crate) fn map_blocks<T, F>(spec: &SimulationSpec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let blocks = spec.block_count() as usize;
    let per_batch = spec.batch_size.div_ceil(BLOCK_SAMPLES).max(1) as usize;
    (0..blocks)
        .into_par_iter()
        .with_min_len(per_batch)
        .map(|b| {
            let b = b as u64;
            let count = BLOCK_SAMPLES.min(spec.num_samples - b * BLOCK_SAMPLES);
            f(&mut block_rng(spec.seed, b), count)
        })
        .collect()
}
