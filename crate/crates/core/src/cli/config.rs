use crate::antenna::{ArrayConfig, ArrayPattern, Sector0Level};
use crate::channel::{LinkBudget, LinkType, OrientationStats, ResidualPolicy, Sectorization};
use crate::error::{Error, Result};
use crate::montecarlo::SimulationSpec;
use crate::optimize::OptimizationMethod;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::{Path, PathBuf};

/// Full run configuration in presentation units: degrees, dBm, dB, GHz,
/// meters. Every key is optional; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub link: LinkSection,
    pub tx: TerminalSection,
    pub rx: TerminalSection,
    pub sectorization: SectorizationSection,
    pub simulation: SimulationSection,
    pub pattern: PatternSection,
    pub distribution: DistributionSection,
    pub outage: OutageSection,
    pub validate: ValidateSection,
    pub optimize: OptimizeSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkSection {
    pub link_type: LinkType,
    pub distance_m: f64,
    pub carrier_ghz: f64,
    pub tx_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub nakagami_m: f64,
    pub snr_threshold_db: f64,
    /// Overrides `snr_threshold_db` with `2^C - 1` when set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity_threshold_bps_hz: Option<f64>,
    pub building_height_m: f64,
}

impl Default for LinkSection {
    fn default() -> Self {
        LinkSection {
            link_type: LinkType::A2A,
            distance_m: 1000.0,
            carrier_ghz: 50.0,
            tx_power_dbm: 20.0,
            noise_power_dbm: -110.0,
            nakagami_m: 3.0,
            snr_threshold_db: 10.0,
            capacity_threshold_bps_hz: None,
            building_height_m: 30.0,
        }
    }
}

/// One end of the link. Orientation keys left unset default to a still
/// terminal on the ground end and to 0.5° offsets with σ = 2° otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TerminalSection {
    pub n: u32,
    pub element_spacing_wavelengths: f64,
    pub beta_x_deg: f64,
    pub beta_y_deg: f64,
    pub g_max_dbi: f64,
    pub front_back_db: f64,
    pub sidelobe_limit_db: f64,
    pub theta_3db_deg: f64,
    pub phi_3db_deg: f64,
    pub total_power_constant: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset_x_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset_y_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_deg: Option<f64>,
}

impl Default for TerminalSection {
    fn default() -> Self {
        let a = ArrayConfig::default();
        TerminalSection {
            n: a.n,
            element_spacing_wavelengths: a.element_spacing_wavelengths,
            beta_x_deg: 0.0,
            beta_y_deg: 0.0,
            g_max_dbi: a.g_max_dbi,
            front_back_db: a.front_back_db,
            sidelobe_limit_db: a.sidelobe_limit_db,
            theta_3db_deg: a.theta_3db_deg,
            phi_3db_deg: a.phi_3db_deg,
            total_power_constant: a.total_power_constant,
            offset_x_deg: None,
            offset_y_deg: None,
            sigma_deg: None,
        }
    }
}

impl TerminalSection {
    fn array(&self, carrier_ghz: f64) -> ArrayConfig {
        ArrayConfig {
            n: self.n,
            carrier_hz: carrier_ghz * 1e9,
            element_spacing_wavelengths: self.element_spacing_wavelengths,
            beta_x: self.beta_x_deg.to_radians(),
            beta_y: self.beta_y_deg.to_radians(),
            g_max_dbi: self.g_max_dbi,
            front_back_db: self.front_back_db,
            sidelobe_limit_db: self.sidelobe_limit_db,
            theta_3db_deg: self.theta_3db_deg,
            phi_3db_deg: self.phi_3db_deg,
            total_power_constant: self.total_power_constant,
        }
    }

    fn orientation(&self, ground: bool) -> OrientationStats {
        let (ox, oy, s) = if ground { (0.0, 0.0, 0.0) } else { (0.5, 0.5, 2.0) };
        OrientationStats::from_degrees(
            self.offset_x_deg.unwrap_or(ox),
            self.offset_y_deg.unwrap_or(oy),
            self.sigma_deg.unwrap_or(s),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SectorizationSection {
    pub d_param: u32,
    pub lobes: u32,
    pub sector0: Sector0Level,
    pub residual: ResidualPolicy,
}

impl Default for SectorizationSection {
    fn default() -> Self {
        let s = Sectorization::default();
        SectorizationSection {
            d_param: s.d_param,
            lobes: s.lobes,
            sector0: s.sector0,
            residual: ResidualPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSection {
    pub samples: u64,
    pub seed: u64,
    pub batch_size: u64,
}

impl Default for SimulationSection {
    fn default() -> Self {
        let s = SimulationSpec::default();
        SimulationSection {
            samples: s.num_samples,
            seed: s.seed,
            batch_size: s.batch_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatternSection {
    /// Array size to plot; the transmit array size when unset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub cuts_theta_y_deg: Vec<f64>,
    pub theta_x_min_deg: f64,
    pub theta_x_max_deg: f64,
    pub step_deg: f64,
}

impl Default for PatternSection {
    fn default() -> Self {
        PatternSection {
            n: None,
            cuts_theta_y_deg: vec![0.0, 2.0, 4.0],
            theta_x_min_deg: -20.0,
            theta_x_max_deg: 20.0,
            step_deg: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistributionSection {
    pub snr_min_db: f64,
    pub snr_max_db: f64,
    pub step_db: f64,
    /// One curve per value; the sectorization `d_param` when empty.
    pub d_values: Vec<u32>,
    /// Adds a simulated CDF column.
    pub monte_carlo: bool,
}

impl Default for DistributionSection {
    fn default() -> Self {
        DistributionSection {
            snr_min_db: -20.0,
            snr_max_db: 60.0,
            step_db: 0.5,
            d_values: Vec::new(),
            monte_carlo: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    TxPowerDbm,
    DistanceM,
    SigmaDeg,
    SnrThresholdDb,
    NakagamiM,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::TxPowerDbm => "tx_power_dbm",
            SweepVariable::DistanceM => "distance_m",
            SweepVariable::SigmaDeg => "sigma_deg",
            SweepVariable::SnrThresholdDb => "snr_threshold_db",
            SweepVariable::NakagamiM => "nakagami_m",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutageSection {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    /// Aerial array sizes to compare; the configured sizes when empty.
    pub sizes: Vec<u32>,
    /// Adds simulated outage and standard-error columns.
    pub monte_carlo: bool,
}

impl Default for OutageSection {
    fn default() -> Self {
        OutageSection {
            variable: SweepVariable::TxPowerDbm,
            values: (0..=20).map(|i| f64::from(2 * i)).collect(),
            sizes: Vec::new(),
            monte_carlo: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateSection {
    /// Largest accepted relative CDF error.
    pub tolerance: f64,
    /// Probes with empirical CDF below this are reported but not scored.
    pub cdf_floor: f64,
    pub snr_min_db: f64,
    pub snr_max_db: f64,
    pub step_db: f64,
}

impl Default for ValidateSection {
    fn default() -> Self {
        ValidateSection {
            tolerance: 0.15,
            cdf_floor: 1e-3,
            snr_min_db: -20.0,
            snr_max_db: 60.0,
            step_db: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizeSection {
    pub n_max: u32,
    pub method: OptimizationMethod,
    /// Restrict the search to `N_t = N_r`.
    pub symmetric: bool,
}

impl Default for OptimizeSection {
    fn default() -> Self {
        OptimizeSection {
            n_max: 18,
            method: OptimizationMethod::Analytical,
            symmetric: false,
        }
    }
}

/// Inclusive arithmetic grid `min, min + step, ..., ≤ max`.
pub fn linear_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::usage(format!("bad grid: min {min}, max {max}, step {step}")));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| min + i as f64 * step).collect())
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::usage(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is plain data")
    }

    /// SHA-256 of the canonical serialization, output path excluded.
    pub fn digest(&self) -> String {
        let canonical = RunConfig {
            output_path: None,
            ..self.clone()
        };
        let hash = Sha256::digest(canonical.to_toml_string().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn sectorization(&self) -> Sectorization {
        Sectorization {
            d_param: self.sectorization.d_param,
            lobes: self.sectorization.lobes,
            sector0: self.sectorization.sector0,
        }
    }

    pub fn simulation(&self) -> SimulationSpec {
        SimulationSpec {
            num_samples: self.simulation.samples,
            seed: self.simulation.seed,
            batch_size: self.simulation.batch_size,
        }
    }

    pub fn tx_array(&self) -> ArrayConfig {
        self.tx.array(self.link.carrier_ghz)
    }

    pub fn rx_array(&self) -> ArrayConfig {
        self.rx.array(self.link.carrier_ghz)
    }

    /// The configured link with normalized patterns, validated.
    pub fn link_budget(&self) -> Result<LinkBudget> {
        let l = &self.link;
        let tx = ArrayPattern::new(self.tx_array())?;
        let rx = ArrayPattern::new(self.rx_array())?;
        let tx_o = self.tx.orientation(l.link_type == LinkType::G2A);
        let rx_o = self.rx.orientation(l.link_type == LinkType::A2G);
        let mut link = LinkBudget::new(l.link_type, tx, rx)
            .with_distance(l.distance_m)
            .with_tx_power_dbm(l.tx_power_dbm)
            .with_noise_power_dbm(l.noise_power_dbm)
            .with_snr_threshold_db(l.snr_threshold_db)
            .with_orientations(tx_o, rx_o)
            .with_sectorization(self.sectorization());
        link.nakagami_m = l.nakagami_m;
        link.building_height_m = l.building_height_m;
        if let Some(c) = l.capacity_threshold_bps_hz {
            link = link.with_capacity_threshold(c);
        }
        link.validate()?;
        Ok(link)
    }
}
