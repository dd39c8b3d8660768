use super::array::{composite_spherical, dirichlet_sq, NormalizationCache};
use super::element::element_gain_db_sines;
use super::ArrayConfig;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Factor relating the approximate pattern scale to `G_0`.
const APPROX_SCALE: f64 = 0.2025;

/// Lowest gain written to CSV, dBi; exact nulls would otherwise print `-inf`.
const DB_FLOOR: f64 = -300.0;

/// A normalized array: configuration plus its power-normalization constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayPattern {
    cfg: ArrayConfig,
    g0: f64,
}

impl ArrayPattern {
    /// Normalizes `cfg` through the process-wide cache.
    pub fn new(cfg: ArrayConfig) -> Result<Self> {
        Self::with_cache(cfg, NormalizationCache::global())
    }

    pub fn with_cache(cfg: ArrayConfig, cache: &NormalizationCache) -> Result<Self> {
        cfg.validate()?;
        let g0 = cache.g0(&cfg)?;
        Ok(ArrayPattern { cfg, g0 })
    }

    /// Uses a caller-supplied normalization constant.
    pub fn with_g0(cfg: ArrayConfig, g0: f64) -> Result<Self> {
        cfg.validate()?;
        if !(g0 > 0.0 && g0.is_finite()) {
            return Err(Error::domain(format!("pattern: G0 must be positive, got {g0}")));
        }
        Ok(ArrayPattern { cfg, g0 })
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.cfg
    }

    pub fn n(&self) -> u32 {
        self.cfg.n
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    /// `G''_0 = 0.2025 · 10^{G_max/10} · G_0`.
    pub fn g0_double_prime(&self) -> f64 {
        APPROX_SCALE * 10f64.powf(self.cfg.g_max_dbi / 10.0) * self.g0
    }

    /// Exact composite gain (linear) at body tilt `(θx, θy)`.
    pub fn actual_gain(&self, theta_x: f64, theta_y: f64) -> f64 {
        let sx = theta_x.sin();
        let sy = theta_y.sin();
        // sinθ·cosφ and sinθ·sinφ of the pointing transform, without trig.
        let inv = 1.0 / (1.0 + sx * sx + sy * sy).sqrt();
        let kd = self.cfg.kd();
        let af = dirichlet_sq(kd * sx * inv + self.cfg.beta_x, self.cfg.n)
            * dirichlet_sq(kd * sy * inv + self.cfg.beta_y, self.cfg.n);
        let elem = element_gain_db_sines(sx, sy, theta_x.to_degrees(), &self.cfg);
        self.g0 * af * 10f64.powf(elem / 10.0)
    }

    /// Exact gain at spherical angles, covering the back hemisphere too.
    pub fn gain_spherical(&self, theta: f64, phi: f64) -> f64 {
        self.g0 * composite_spherical(&self.cfg, theta, phi)
    }

    /// Boresight gain, linear.
    pub fn peak_gain(&self) -> f64 {
        self.actual_gain(0.0, 0.0)
    }

    /// Radially symmetric approximation `G''_0 (1 - cos(N kd r)) / (N² r²)`.
    pub fn approx_gain(&self, theta_x: f64, theta_y: f64) -> f64 {
        let r = theta_x.hypot(theta_y);
        self.approx_gain_radial(r)
    }

    pub fn approx_gain_radial(&self, r: f64) -> f64 {
        let kd = self.cfg.kd();
        let nf = f64::from(self.cfg.n);
        let x = nf * kd * r;
        let g2 = self.g0_double_prime();
        if x.abs() < 1e-4 {
            return g2 * kd * kd * (0.5 - x * x / 24.0);
        }
        g2 * (1.0 - x.cos()) / (nf * nf * r * r)
    }

    /// Ring sectorization with `d_param` rings per `1/N` and `lobes` lobes.
    pub fn sectorize(&self, d_param: u32, lobes: u32, sector0: Sector0Level) -> Result<SectorizedPattern> {
        if d_param < 2 {
            return Err(Error::domain(format!("sectorize: D must be at least 2, got {d_param}")));
        }
        if !(1..=2).contains(&lobes) {
            return Err(Error::domain(format!("sectorize: lobes must be 1 or 2, got {lobes}")));
        }
        let kd = self.cfg.kd();
        let g2 = self.g0_double_prime();
        let d = f64::from(d_param);
        let dn = d * f64::from(self.cfg.n);
        let count = lobes * d_param;
        let levels = (0..count)
            .map(|i| {
                let fi = f64::from(i);
                let gain = if i == 0 {
                    sector0.factor() * kd * kd * g2
                } else {
                    g2 * d * d * (1.0 - (fi * kd / d).cos()) / (fi * fi)
                };
                ((fi + 1.0) / dn, gain)
            })
            .collect();
        Ok(SectorizedPattern {
            n: self.cfg.n,
            d_param,
            lobes,
            sector0,
            levels,
            norm_constant: g2,
        })
    }
}

/// Choice of the innermost sector level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector0Level {
    /// `2 k² d² G''_0`.
    Paper,
    /// `k² d² G''_0 / 2`, the boresight limit of the approximate pattern.
    #[default]
    Continuity,
}

impl Sector0Level {
    fn factor(self) -> f64 {
        match self {
            Sector0Level::Paper => 2.0,
            Sector0Level::Continuity => 0.5,
        }
    }
}

impl fmt::Display for Sector0Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector0Level::Paper => "paper",
            Sector0Level::Continuity => "continuity",
        })
    }
}

impl FromStr for Sector0Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Sector0Level::Paper),
            "continuity" => Ok(Sector0Level::Continuity),
            other => Err(Error::usage(format!("sector0 must be 'paper' or 'continuity', got '{other}'"))),
        }
    }
}

/// Piecewise-constant ring pattern: sector `i` covers
/// `i/(DN) < r ≤ (i+1)/(DN)` and the gain is zero past the last ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorizedPattern {
    pub n: u32,
    pub d_param: u32,
    pub lobes: u32,
    pub sector0: Sector0Level,
    /// `(upper_angle_rad, gain_linear)` per sector.
    pub levels: Vec<(f64, f64)>,
    /// `G''_0` of the underlying array.
    pub norm_constant: f64,
}

impl SectorizedPattern {
    pub fn sector_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> f64 {
        self.levels[i].1
    }

    pub fn gains(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|&(_, g)| g)
    }

    /// Sector index containing radial deviation `r`, if any.
    pub fn sector_of(&self, r: f64) -> Option<usize> {
        let dn = f64::from(self.d_param) * f64::from(self.n);
        let i = if r <= 0.0 { 0 } else { ((r * dn).ceil() as usize).max(1) - 1 };
        (i < self.levels.len()).then_some(i)
    }

    pub fn gain(&self, r: f64) -> f64 {
        self.sector_of(r).map_or(0.0, |i| self.level(i))
    }
}

/// Which of the three pattern views a sample comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternModel {
    Actual,
    Approximate,
    Sectorized,
}

impl fmt::Display for PatternModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternModel::Actual => "actual",
            PatternModel::Approximate => "approximate",
            PatternModel::Sectorized => "sectorized",
        })
    }
}

/// One point of a pattern cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternSample {
    pub theta_x: f64,
    pub theta_y: f64,
    pub gain_linear: f64,
    pub model: PatternModel,
}

/// Actual, approximate and sectorized gain along `theta_y = const`.
pub fn pattern_cut(
    pattern: &ArrayPattern,
    sectors: &SectorizedPattern,
    theta_y: f64,
    theta_xs: &[f64],
) -> Vec<PatternSample> {
    let mut out = Vec::with_capacity(3 * theta_xs.len());
    for model in [PatternModel::Actual, PatternModel::Approximate, PatternModel::Sectorized] {
        out.extend(theta_xs.iter().map(|&theta_x| PatternSample {
            theta_x,
            theta_y,
            gain_linear: match model {
                PatternModel::Actual => pattern.actual_gain(theta_x, theta_y),
                PatternModel::Approximate => pattern.approx_gain(theta_x, theta_y),
                PatternModel::Sectorized => sectors.gain(theta_x.hypot(theta_y)),
            },
            model,
        }));
    }
    out
}

fn to_dbi(g: f64) -> f64 {
    if g > 0.0 {
        (10.0 * g.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

/// CSV `theta_x_rad,theta_y_rad,gain_dbi,model`.
pub fn write_pattern_csv<W: Write>(mut w: W, samples: &[PatternSample]) -> std::io::Result<()> {
    writeln!(w, "theta_x_rad,theta_y_rad,gain_dbi,model")?;
    for s in samples {
        writeln!(w, "{},{},{},{}", s.theta_x, s.theta_y, to_dbi(s.gain_linear), s.model)?;
    }
    Ok(())
}

/// CSV `sector_index,upper_angle_rad,gain_linear`.
pub fn write_sectors_csv<W: Write>(mut w: W, pattern: &SectorizedPattern) -> std::io::Result<()> {
    writeln!(w, "sector_index,upper_angle_rad,gain_linear")?;
    for (i, &(upper, g)) in pattern.levels.iter().enumerate() {
        writeln!(w, "{i},{upper},{g}")?;
    }
    Ok(())
}
