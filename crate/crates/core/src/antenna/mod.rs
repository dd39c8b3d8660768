//! Radiation patterns of an N×N uniform square array.
//!
//! Three views of the same antenna are provided: the exact composite
//! pattern (3GPP element times array factor, normalized over the sphere),
//! a radially symmetric sinc-like approximation, and a piecewise-constant
//! ring sectorization of that approximation.
//!
//! ```
//! use mmw_uav::antenna::{ArrayConfig, ArrayPattern};
//!
//! let pattern = ArrayPattern::new(ArrayConfig { n: 4, ..ArrayConfig::default() }).unwrap();
//! assert!(pattern.actual_gain(0.0, 0.0) >= pattern.actual_gain(0.1, 0.05));
//! ```

mod array;
mod element;
mod pattern;

pub use array::{
    array_factor, default_normalization_quad, normalization_constant, sphere_integral,
    NormalizationCache,
};
pub use element::{element_gain_db, pointing_angles};
pub use pattern::{
    pattern_cut, write_pattern_csv, write_sectors_csv, ArrayPattern, PatternModel, PatternSample,
    Sector0Level, SectorizedPattern,
};

use crate::error::{Error, Result};

/// Speed of light used for wavelength conversions, m/s.
pub const SPEED_OF_LIGHT: f64 = 3e8;

/// Geometry and element parameters of one square array.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    /// Elements per side.
    pub n: u32,
    pub carrier_hz: f64,
    pub element_spacing_wavelengths: f64,
    /// Progressive phase shifts, radians.
    pub beta_x: f64,
    pub beta_y: f64,
    pub g_max_dbi: f64,
    pub front_back_db: f64,
    pub sidelobe_limit_db: f64,
    pub theta_3db_deg: f64,
    pub phi_3db_deg: f64,
    /// Total radiated-power constant `G'_0`.
    pub total_power_constant: f64,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        ArrayConfig {
            n: 8,
            carrier_hz: 50e9,
            element_spacing_wavelengths: 0.5,
            beta_x: 0.0,
            beta_y: 0.0,
            g_max_dbi: 8.0,
            front_back_db: 30.0,
            sidelobe_limit_db: 30.0,
            theta_3db_deg: 65.0,
            phi_3db_deg: 65.0,
            total_power_constant: 0.01,
        }
    }
}

impl ArrayConfig {
    pub fn with_n(&self, n: u32) -> Self {
        ArrayConfig { n, ..self.clone() }
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    pub fn wave_number(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength()
    }

    /// Element spacing in metres.
    pub fn spacing_m(&self) -> f64 {
        self.element_spacing_wavelengths * self.wavelength()
    }

    /// Electrical spacing `k·d_a`.
    pub fn kd(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.element_spacing_wavelengths
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if self.n < 1 {
            return Err(Error::domain("array: n must be at least 1"));
        }
        if !positive(self.carrier_hz) {
            return Err(Error::domain(format!("array: carrier {} Hz must be positive", self.carrier_hz)));
        }
        if !positive(self.element_spacing_wavelengths) {
            return Err(Error::domain("array: element spacing must be positive"));
        }
        if !positive(self.total_power_constant) {
            return Err(Error::domain("array: total power constant must be positive"));
        }
        if !positive(self.theta_3db_deg) || !positive(self.phi_3db_deg) {
            return Err(Error::domain("array: 3 dB beamwidths must be positive"));
        }
        let finite = [
            self.beta_x,
            self.beta_y,
            self.g_max_dbi,
            self.front_back_db,
            self.sidelobe_limit_db,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("array: parameters must be finite"));
        }
        Ok(())
    }
}
