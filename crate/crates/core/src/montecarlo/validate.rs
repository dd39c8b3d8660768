use super::sampler::{simulate_cdf, OutageEstimate};
use super::SimulationSpec;
use crate::channel::{LinkBudget, ResidualPolicy, SnrMixtureModel};
use crate::error::{Error, Result};
use serde::Serialize;

/// Empirical and analytical CDF at one SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfProbe {
    pub snr_db: f64,
    pub empirical: f64,
    pub analytical: f64,
}

impl CdfProbe {
    pub fn rel_err(&self) -> f64 {
        (self.analytical - self.empirical).abs() / self.empirical
    }
}

/// Model-versus-oracle CDF comparison on a probe grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfComparison {
    pub probes: Vec<CdfProbe>,
    /// Probes with empirical CDF below this are not scored.
    pub floor: f64,
    pub max_rel_err: f64,
    pub max_abs_gap: f64,
}

impl CdfComparison {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_rel_err <= tolerance
    }

    pub fn scored(&self) -> impl Iterator<Item = &CdfProbe> {
        self.probes.iter().filter(move |p| p.empirical >= self.floor)
    }
}

/// Compares `model` (residual counted as outage) with the simulated link
/// at each dB value in `grid_db`.
pub fn compare_cdf(
    link: &LinkBudget,
    model: &SnrMixtureModel,
    spec: &SimulationSpec,
    grid_db: &[f64],
    floor: f64,
) -> Result<CdfComparison> {
    spec.require_reportable()?;
    if grid_db.is_empty() {
        return Err(Error::usage("CDF comparison needs at least one probe"));
    }
    let lin: Vec<f64> = grid_db.iter().map(|d| 10f64.powf(d / 10.0)).collect();
    let emp = simulate_cdf(link, spec, &lin)?;
    let probes: Vec<CdfProbe> = grid_db
        .iter()
        .zip(&lin)
        .zip(&emp)
        .map(|((&db, &x), &e)| CdfProbe {
            snr_db: db,
            empirical: e,
            analytical: model.cdf(x, ResidualPolicy::ToOutage),
        })
        .collect();
    let max_rel_err = probes
        .iter()
        .filter(|p| p.empirical >= floor)
        .map(CdfProbe::rel_err)
        .fold(0.0, f64::max);
    let max_abs_gap = probes
        .iter()
        .map(|p| (p.analytical - p.empirical).abs())
        .fold(0.0, f64::max);
    Ok(CdfComparison {
        probes,
        floor,
        max_rel_err,
        max_abs_gap,
    })
}

/// Structured summary of one outage estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub p_hat: f64,
    pub std_err: f64,
    pub n: u64,
    pub seed: u64,
    pub config_digest: String,
}

impl EstimateReport {
    pub fn new(est: &OutageEstimate, config_digest: impl Into<String>) -> Self {
        EstimateReport {
            p_hat: est.p_hat,
            std_err: est.std_err,
            n: est.n,
            seed: est.seed,
            config_digest: config_digest.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}
