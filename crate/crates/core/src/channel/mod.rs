//! Link budget and closed-form SNR statistics.
//!
//! The end-to-end SNR of a link is `γ = P_t h_L(Z) G_t G_r ζ / σ²`, where
//! `ζ` is unit-mean Gamma fading and the gains depend on random pointing
//! errors. Replacing each pattern by its ring sectorization turns `γ` into a
//! finite mixture of scaled Gamma variables, [`SnrMixtureModel`].

mod mixture;
mod pathloss;
mod weights;

pub use mixture::{
    build_a2a_mixture, build_a2g_mixture, build_g2a_mixture, build_mixture, outage_probability,
    write_distribution_csv, write_sweep_csv, DistributionRow, MixtureComponent, ResidualPolicy,
    SnrMixtureModel, SweepRow,
};
pub use pathloss::{path_gain_linear, path_loss_db, PATH_LOSS_MAX_DISTANCE_M};
pub use weights::{sector_mass, sector_weights};

use crate::antenna::{ArrayPattern, Sector0Level};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// dBm (or dB) to linear.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Gaussian attitude jitter of one terminal, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OrientationStats {
    pub boresight_offset_x: f64,
    pub boresight_offset_y: f64,
    pub sigma: f64,
}

impl OrientationStats {
    pub fn new(boresight_offset_x: f64, boresight_offset_y: f64, sigma: f64) -> Result<Self> {
        let o = OrientationStats {
            boresight_offset_x,
            boresight_offset_y,
            sigma,
        };
        o.validate()?;
        Ok(o)
    }

    /// Offsets and sigma given in degrees.
    pub fn from_degrees(offset_x_deg: f64, offset_y_deg: f64, sigma_deg: f64) -> Self {
        OrientationStats {
            boresight_offset_x: offset_x_deg.to_radians(),
            boresight_offset_y: offset_y_deg.to_radians(),
            sigma: sigma_deg.to_radians(),
        }
    }

    /// A perfectly stable terminal.
    pub fn ground() -> Self {
        Self::default()
    }

    pub fn is_ground(&self) -> bool {
        self.sigma == 0.0 && self.boresight_offset_x == 0.0 && self.boresight_offset_y == 0.0
    }

    pub fn offset_radial(&self) -> f64 {
        self.boresight_offset_x.hypot(self.boresight_offset_y)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(Error::domain(format!("orientation sigma must be ≥ 0, got {}", self.sigma)));
        }
        if !self.boresight_offset_x.is_finite() || !self.boresight_offset_y.is_finite() {
            return Err(Error::domain("orientation offsets must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkType {
    A2A,
    G2A,
    A2G,
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkType::A2A => "A2A",
            LinkType::G2A => "G2A",
            LinkType::A2G => "A2G",
        })
    }
}

impl FromStr for LinkType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A2A" => Ok(LinkType::A2A),
            "G2A" => Ok(LinkType::G2A),
            "A2G" => Ok(LinkType::A2G),
            _ => Err(Error::usage(format!("link type must be A2A, G2A or A2G, got '{s}'"))),
        }
    }
}

/// Ring sectorization parameters shared by both ends of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sectorization {
    pub d_param: u32,
    pub lobes: u32,
    pub sector0: Sector0Level,
}

impl Default for Sectorization {
    fn default() -> Self {
        Sectorization {
            d_param: 25,
            lobes: 2,
            sector0: Sector0Level::Continuity,
        }
    }
}

/// One end-to-end link. Powers are stored linearly in mW.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudget {
    pub link_type: LinkType,
    pub distance_m: f64,
    pub tx_power_mw: f64,
    pub noise_power_mw: f64,
    pub nakagami_m: f64,
    /// Linear SNR threshold.
    pub snr_threshold: f64,
    pub building_height_m: f64,
    pub tx: ArrayPattern,
    pub rx: ArrayPattern,
    pub tx_orientation: OrientationStats,
    pub rx_orientation: OrientationStats,
    pub sectorization: Sectorization,
}

impl LinkBudget {
    /// Baseline link: 1000 m, 20 dBm, noise -110 dBm, m = 3, threshold 10 dB,
    /// 30 m buildings. Aerial ends jitter with σ = 2° around 0.5° offsets.
    pub fn new(link_type: LinkType, tx: ArrayPattern, rx: ArrayPattern) -> Self {
        let aerial = OrientationStats::from_degrees(0.5, 0.5, 2.0);
        let (tx_o, rx_o) = match link_type {
            LinkType::A2A => (aerial, aerial),
            LinkType::G2A => (OrientationStats::ground(), aerial),
            LinkType::A2G => (aerial, OrientationStats::ground()),
        };
        LinkBudget {
            link_type,
            distance_m: 1000.0,
            tx_power_mw: db_to_linear(20.0),
            noise_power_mw: db_to_linear(-110.0),
            nakagami_m: 3.0,
            snr_threshold: db_to_linear(10.0),
            building_height_m: 30.0,
            tx,
            rx,
            tx_orientation: tx_o,
            rx_orientation: rx_o,
            sectorization: Sectorization::default(),
        }
    }

    pub fn tx_power_dbm(&self) -> f64 {
        linear_to_db(self.tx_power_mw)
    }

    pub fn noise_power_dbm(&self) -> f64 {
        linear_to_db(self.noise_power_mw)
    }

    pub fn snr_threshold_db(&self) -> f64 {
        linear_to_db(self.snr_threshold)
    }

    pub fn with_tx_power_dbm(mut self, dbm: f64) -> Self {
        self.tx_power_mw = db_to_linear(dbm);
        self
    }

    pub fn with_noise_power_dbm(mut self, dbm: f64) -> Self {
        self.noise_power_mw = db_to_linear(dbm);
        self
    }

    pub fn with_snr_threshold_db(mut self, db: f64) -> Self {
        self.snr_threshold = db_to_linear(db);
        self
    }

    /// Threshold from a target capacity `C_th` in bit/s/Hz: `2^C_th - 1`.
    pub fn with_capacity_threshold(mut self, c_th: f64) -> Self {
        self.snr_threshold = 2f64.powf(c_th) - 1.0;
        self
    }

    pub fn with_distance(mut self, z: f64) -> Self {
        self.distance_m = z;
        self
    }

    pub fn with_orientations(mut self, tx: OrientationStats, rx: OrientationStats) -> Self {
        self.tx_orientation = tx;
        self.rx_orientation = rx;
        self
    }

    pub fn with_sectorization(mut self, s: Sectorization) -> Self {
        self.sectorization = s;
        self
    }

    /// The same physical link seen with transmitter and receiver exchanged.
    pub fn swapped(&self) -> Self {
        let link_type = match self.link_type {
            LinkType::A2A => LinkType::A2A,
            LinkType::G2A => LinkType::A2G,
            LinkType::A2G => LinkType::G2A,
        };
        LinkBudget {
            link_type,
            tx: self.rx.clone(),
            rx: self.tx.clone(),
            tx_orientation: self.rx_orientation,
            rx_orientation: self.tx_orientation,
            ..self.clone()
        }
    }

    pub fn path_gain(&self) -> Result<f64> {
        path_gain_linear(self.distance_m, self.tx.config().carrier_hz, self.building_height_m)
    }

    /// `P_t h_L / σ²`: the SNR per unit of combined antenna gain.
    pub fn snr_per_unit_gain(&self) -> Result<f64> {
        Ok(self.tx_power_mw * self.path_gain()? / self.noise_power_mw)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.distance_m) || !positive(self.building_height_m) {
            return Err(Error::domain("link: distance and building height must be positive"));
        }
        if !positive(self.tx_power_mw) || !positive(self.noise_power_mw) {
            return Err(Error::domain("link: powers must be finite"));
        }
        if !(self.nakagami_m >= 0.5) || !self.nakagami_m.is_finite() {
            return Err(Error::domain(format!("link: Nakagami m must be ≥ 0.5, got {}", self.nakagami_m)));
        }
        if !(self.snr_threshold >= 0.0) || !self.snr_threshold.is_finite() {
            return Err(Error::domain("link: SNR threshold must be finite"));
        }
        if self.tx.config().carrier_hz != self.rx.config().carrier_hz {
            return Err(Error::domain("link: tx and rx arrays must share a carrier"));
        }
        if self.sectorization.d_param < 2 || !(1..=2).contains(&self.sectorization.lobes) {
            return Err(Error::domain(format!(
                "link: need D ≥ 2 and lobes ∈ {{1,2}}, got D={} j={}",
                self.sectorization.d_param, self.sectorization.lobes
            )));
        }
        self.tx_orientation.validate()?;
        self.rx_orientation.validate()?;
        let ground_ok = match self.link_type {
            LinkType::A2A => true,
            LinkType::G2A => self.tx_orientation.is_ground(),
            LinkType::A2G => self.rx_orientation.is_ground(),
        };
        if !ground_ok {
            return Err(Error::domain(format!(
                "link: the ground end of a {} link must have zero jitter and offsets",
                self.link_type
            )));
        }
        Ok(())
    }
}
