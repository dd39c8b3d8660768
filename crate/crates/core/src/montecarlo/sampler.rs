use super::{map_blocks, SimulationSpec};
use crate::antenna::ArrayPattern;
use crate::channel::{LinkBudget, OrientationStats};
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::Serialize;
use std::io::Write;

/// Draws one SNR realization at a time for a fixed link.
#[derive(Debug, Clone)]
pub struct LinkSampler {
    k: f64,
    tx: ArrayPattern,
    rx: ArrayPattern,
    tx_o: OrientationStats,
    rx_o: OrientationStats,
    fading: Gamma<f64>,
}

/// One draw of the random inputs, before any pattern is evaluated.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Draw {
    pub tx: (f64, f64),
    pub rx: (f64, f64),
    pub zeta: f64,
}

fn tilt(o: &OrientationStats, z1: f64, z2: f64) -> (f64, f64) {
    (o.boresight_offset_x + o.sigma * z1, o.boresight_offset_y + o.sigma * z2)
}

pub(crate) fn fading(m: f64) -> Result<Gamma<f64>> {
    Gamma::new(m, 1.0 / m).map_err(|e| Error::domain(format!("fading: {e}")))
}

/// Four normals then one Gamma, always in that order; ground ends simply
/// have zero sigma.
pub(crate) fn draw(rng: &mut ChaCha8Rng, tx_o: &OrientationStats, rx_o: &OrientationStats, g: &Gamma<f64>) -> Draw {
    let a: f64 = rng.sample(StandardNormal);
    let b: f64 = rng.sample(StandardNormal);
    let c: f64 = rng.sample(StandardNormal);
    let d: f64 = rng.sample(StandardNormal);
    Draw {
        tx: tilt(tx_o, a, b),
        rx: tilt(rx_o, c, d),
        zeta: g.sample(rng),
    }
}

impl LinkSampler {
    pub fn new(link: &LinkBudget) -> Result<Self> {
        link.validate()?;
        Ok(LinkSampler {
            k: link.snr_per_unit_gain()?,
            tx: link.tx.clone(),
            rx: link.rx.clone(),
            tx_o: link.tx_orientation,
            rx_o: link.rx_orientation,
            fading: fading(link.nakagami_m)?,
        })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let d = draw(rng, &self.tx_o, &self.rx_o, &self.fading);
        let gt = self.tx.actual_gain(d.tx.0, d.tx.1);
        let gr = self.rx.actual_gain(d.rx.0, d.rx.1);
        snr(self.k, gt, gr, d.zeta)
    }
}

#[inline]
pub(crate) fn snr(k: f64, gt: f64, gr: f64, zeta: f64) -> f64 {
    k * gt * gr * zeta
}

/// All SNR samples (linear) in a fixed order.
pub fn sample_link_snr(link: &LinkBudget, spec: &SimulationSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let sampler = LinkSampler::new(link)?;
    let blocks = map_blocks(spec, |rng, count| (0..count).map(|_| sampler.sample(rng)).collect::<Vec<_>>());
    Ok(blocks.concat())
}

/// Outage frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub n: u64,
    /// Fewer than 20 outage events were observed.
    pub low_confidence: bool,
    pub seed: u64,
}

impl OutageEstimate {
    pub(crate) fn from_count(hits: u64, n: u64, seed: u64) -> Self {
        let p = hits as f64 / n as f64;
        OutageEstimate {
            p_hat: p,
            std_err: (p * (1.0 - p) / n as f64).sqrt(),
            n,
            low_confidence: hits < 20,
            seed,
        }
    }
}

/// Fraction of samples with SNR below the link threshold.
pub fn estimate_outage(link: &LinkBudget, spec: &SimulationSpec) -> Result<OutageEstimate> {
    spec.require_reportable()?;
    let sampler = LinkSampler::new(link)?;
    let th = link.snr_threshold;
    let hits: u64 = map_blocks(spec, |rng, count| {
        (0..count).filter(|_| sampler.sample(rng) < th).count() as u64
    })
    .into_iter()
    .sum();
    Ok(OutageEstimate::from_count(hits, spec.num_samples, spec.seed))
}

/// Outage for every `(tx size, rx size)` pair using common random numbers:
/// each sample's attitudes and fading are shared by all pairs. Entry
/// `[i][j]` equals `estimate_outage` for sizes `(tx_sizes[i], rx_sizes[j])`
/// with the same spec, exactly.
pub fn estimate_outage_grid(
    template: &LinkBudget,
    tx_sizes: &[u32],
    rx_sizes: &[u32],
    spec: &SimulationSpec,
) -> Result<Vec<Vec<OutageEstimate>>> {
    spec.require_reportable()?;
    if tx_sizes.is_empty() || rx_sizes.is_empty() {
        return Err(Error::usage("outage grid: size lists must not be empty"));
    }
    template.validate()?;
    let pats = |base: &ArrayPattern, sizes: &[u32]| -> Result<Vec<ArrayPattern>> {
        sizes.iter().map(|&n| ArrayPattern::new(base.config().with_n(n))).collect()
    };
    let txp = pats(&template.tx, tx_sizes)?;
    let rxp = pats(&template.rx, rx_sizes)?;
    let k = template.snr_per_unit_gain()?;
    let g = fading(template.nakagami_m)?;
    let th = template.snr_threshold;
    let (nt, nr) = (txp.len(), rxp.len());
    let blocks = map_blocks(spec, |rng, count| {
        let mut hits = vec![0u64; nt * nr];
        let mut gt = vec![0.0; nt];
        let mut gr = vec![0.0; nr];
        for _ in 0..count {
            let d = draw(rng, &template.tx_orientation, &template.rx_orientation, &g);
            for (v, p) in gt.iter_mut().zip(&txp) {
                *v = p.actual_gain(d.tx.0, d.tx.1);
            }
            for (v, p) in gr.iter_mut().zip(&rxp) {
                *v = p.actual_gain(d.rx.0, d.rx.1);
            }
            for (i, &a) in gt.iter().enumerate() {
                let row = &mut hits[i * nr..(i + 1) * nr];
                for (h, &b) in row.iter_mut().zip(&gr) {
                    *h += u64::from(snr(k, a, b, d.zeta) < th);
                }
            }
        }
        hits
    });
    let mut total = vec![0u64; nt * nr];
    for b in blocks {
        for (t, h) in total.iter_mut().zip(b) {
            *t += h;
        }
    }
    Ok((0..nt)
        .map(|i| {
            (0..nr)
                .map(|j| OutageEstimate::from_count(total[i * nr + j], spec.num_samples, spec.seed))
                .collect()
        })
        .collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::usage("CDF grid must be sorted ascending"));
    }
    Ok(())
}

/// `P(X ≤ g)` at each grid point, in one pass over `samples`.
pub fn empirical_cdf<I: IntoIterator<Item = f64>>(samples: I, grid: &[f64]) -> Result<Vec<f64>> {
    check_grid(grid)?;
    let mut counts = vec![0u64; grid.len() + 1];
    let mut n = 0u64;
    for x in samples {
        counts[grid.partition_point(|&g| g < x)] += 1;
        n += 1;
    }
    if n == 0 {
        return Err(Error::usage("empirical CDF of an empty sample stream"));
    }
    Ok(cumulate(&counts, n))
}

fn cumulate(counts: &[u64], n: u64) -> Vec<f64> {
    let mut acc = 0u64;
    counts[..counts.len() - 1]
        .iter()
        .map(|&c| {
            acc += c;
            acc as f64 / n as f64
        })
        .collect()
}

/// Empirical CDF of the link SNR at linear grid points, without storing
/// the samples.
pub fn simulate_cdf(link: &LinkBudget, spec: &SimulationSpec, grid: &[f64]) -> Result<Vec<f64>> {
    spec.validate()?;
    check_grid(grid)?;
    let sampler = LinkSampler::new(link)?;
    let blocks = map_blocks(spec, |rng, count| {
        let mut counts = vec![0u64; grid.len() + 1];
        for _ in 0..count {
            let x = sampler.sample(rng);
            counts[grid.partition_point(|&g| g < x)] += 1;
        }
        counts
    });
    let mut total = vec![0u64; grid.len() + 1];
    for b in blocks {
        for (t, c) in total.iter_mut().zip(b) {
            *t += c;
        }
    }
    Ok(cumulate(&total, spec.num_samples))
}

/// CSV `sample_index,snr_db` for at most `cap` samples.
pub fn write_samples_csv<W: Write>(mut w: W, samples: &[f64], cap: usize) -> std::io::Result<()> {
    writeln!(w, "sample_index,snr_db")?;
    for (i, &x) in samples.iter().take(cap).enumerate() {
        writeln!(w, "{i},{}", 10.0 * x.log10())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::ArrayConfig;
    use crate::channel::LinkType;

    fn link(n: u32) -> LinkBudget {
        let p = ArrayPattern::new(ArrayConfig::default().with_n(n)).unwrap();
        LinkBudget::new(LinkType::A2A, p.clone(), p)
    }

    #[test]
    fn deterministic_and_batch_independent() {
        let l = link(6);
        let a = SimulationSpec { num_samples: 20_000, seed: 7, batch_size: 4096 };
        let b = SimulationSpec { batch_size: 1_000_000, ..a };
        assert_eq!(sample_link_snr(&l, &a).unwrap(), sample_link_snr(&l, &b).unwrap());
        assert_eq!(estimate_outage(&l, &a).unwrap(), estimate_outage(&l, &b).unwrap());
        let c = SimulationSpec { seed: 8, ..a };
        assert_ne!(sample_link_snr(&l, &a).unwrap(), sample_link_snr(&l, &c).unwrap());
    }

    #[test]
    fn threshold_extremes() {
        let spec = SimulationSpec::new(10_000, 1);
        let mut l = link(4);
        l.snr_threshold = 0.0;
        assert_eq!(estimate_outage(&l, &spec).unwrap().p_hat, 0.0);
        l.snr_threshold = 1e300;
        assert_eq!(estimate_outage(&l, &spec).unwrap().p_hat, 1.0);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        assert!(estimate_outage(&link(4), &SimulationSpec::new(9_999, 1)).is_err());
    }

    #[test]
    fn fading_has_unit_mean() {
        let g = fading(3.0).unwrap();
        let spec = SimulationSpec::new(1_000_000, 3);
        let sums = map_blocks(&spec, |rng, count| (0..count).map(|_| g.sample(rng)).sum::<f64>());
        let mean = sums.iter().sum::<f64>() / 1e6;
        assert!((mean - 1.0).abs() < 0.01);
    }

    #[test]
    fn still_terminals_hit_peak() {
        let mut l = link(8).with_orientations(OrientationStats::ground(), OrientationStats::ground());
        l.nakagami_m = 500.0;
        let peak = l.snr_per_unit_gain().unwrap() * l.tx.peak_gain() * l.rx.peak_gain();
        let s = sample_link_snr(&l, &SimulationSpec::new(20_000, 5)).unwrap();
        assert!(s.iter().all(|&x| ((x - peak) / peak).abs() < 0.25));
        let mean = s.iter().sum::<f64>() / s.len() as f64;
        assert!(((mean - peak) / peak).abs() < 0.01);
    }

    #[test]
    fn grid_matches_pointwise() {
        let l = link(4);
        let spec = SimulationSpec::new(12_000, 11);
        let sizes = [3, 5];
        let grid = estimate_outage_grid(&l, &sizes, &sizes, &spec).unwrap();
        for (i, &nt) in sizes.iter().enumerate() {
            for (j, &nr) in sizes.iter().enumerate() {
                let mut single = l.clone();
                single.tx = ArrayPattern::new(l.tx.config().with_n(nt)).unwrap();
                single.rx = ArrayPattern::new(l.rx.config().with_n(nr)).unwrap();
                assert_eq!(grid[i][j], estimate_outage(&single, &spec).unwrap());
            }
        }
    }

    #[test]
    fn empirical_cdf_conventions() {
        assert_eq!(empirical_cdf([2.0; 5], &[1.0, 2.0, 3.0]).unwrap(), vec![0.0, 1.0, 1.0]);
        assert!(empirical_cdf(std::iter::empty(), &[1.0]).is_err());
        assert!(empirical_cdf([1.0], &[2.0, 1.0]).is_err());
    }

    #[test]
    fn streaming_cdf_matches_materialized() {
        let l = link(6);
        let spec = SimulationSpec::new(10_000, 2);
        let grid: Vec<f64> = (0..30).map(|i| 10f64.powf(i as f64 / 10.0)).collect();
        let a = simulate_cdf(&l, &spec, &grid).unwrap();
        let b = empirical_cdf(sample_link_snr(&l, &spec).unwrap(), &grid).unwrap();
        assert_eq!(a, b);
    }
}
