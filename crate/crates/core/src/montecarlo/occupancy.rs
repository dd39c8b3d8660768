use super::{map_blocks, SimulationSpec};
use crate::channel::OrientationStats;
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Counts of sampled radial pointing errors per ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorOccupancy {
    pub counts: Vec<u64>,
    /// Samples beyond the last ring.
    pub outside: u64,
    pub n: u64,
}

impl SectorOccupancy {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.n as f64).collect()
    }

    /// Binomial standard error of a frequency whose true value is `p`.
    pub fn std_err(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.n as f64).sqrt()
    }
}

/// Empirical ring occupancy of `√(θx² + θy²)` for Gaussian attitude jitter,
/// rings of width `1/(DN)` out to `j/N`.
pub fn sector_occupancy(
    orient: &OrientationStats,
    n: u32,
    d_param: u32,
    lobes: u32,
    spec: &SimulationSpec,
) -> Result<SectorOccupancy> {
    spec.validate()?;
    orient.validate()?;
    if n == 0 || d_param == 0 || !(1..=2).contains(&lobes) {
        return Err(Error::domain("occupancy: need n ≥ 1, D ≥ 1, lobes ∈ {1,2}"));
    }
    let rings = (lobes * d_param) as usize;
    let dn = f64::from(d_param) * f64::from(n);
    let blocks = map_blocks(spec, |rng, count| {
        let mut c = vec![0u64; rings + 1];
        for _ in 0..count {
            let zx: f64 = rng.sample(StandardNormal);
            let zy: f64 = rng.sample(StandardNormal);
            let r = (orient.boresight_offset_x + orient.sigma * zx).hypot(orient.boresight_offset_y + orient.sigma * zy);
            let i = if r <= 0.0 { 0 } else { ((r * dn).ceil() as usize).max(1) - 1 };
            c[i.min(rings)] += 1;
        }
        c
    });
    let mut total = vec![0u64; rings + 1];
    for b in blocks {
        for (t, x) in total.iter_mut().zip(b) {
            *t += x;
        }
    }
    let outside = total.pop().unwrap_or(0);
    Ok(SectorOccupancy {
        counts: total,
        outside,
        n: spec.num_samples,
    })
}
