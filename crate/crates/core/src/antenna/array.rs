use super::element::element_gain_db_sines;
use super::ArrayConfig;
use crate::error::Result;
use crate::specfun::quad::{integrate_2d, uniform_breaks, QuadratureSpec};
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{OnceLock, RwLock};

/// `(sin(Nψ/2) / (N sin(ψ/2)))²`, with the removable singularities at
/// `ψ = 2πℓ` replaced by their limit.
pub(crate) fn dirichlet_sq(psi: f64, n: u32) -> f64 {
    let s = (0.5 * psi).sin();
    let nf = f64::from(n);
    if s.abs() < 1e-9 {
        // Near ψ = 2πℓ the ratio tends to ±1; the sign drops out on squaring.
        return 1.0;
    }
    let r = (0.5 * nf * psi).sin() / (nf * s);
    r * r
}

/// Square-array factor at spherical angles `(θ, φ)`, unnormalized.
pub fn array_factor(cfg: &ArrayConfig, theta: f64, phi: f64) -> f64 {
    let kd = cfg.kd();
    let st = theta.sin();
    let psi_x = kd * st * phi.cos() + cfg.beta_x;
    let psi_y = kd * st * phi.sin() + cfg.beta_y;
    dirichlet_sq(psi_x, cfg.n) * dirichlet_sq(psi_y, cfg.n)
}

/// Unnormalized composite gain (array factor times linear element gain) at
/// spherical angles. The element pattern is mapped back to body tilts on the
/// front hemisphere; the back hemisphere sits at the front-to-back floor.
pub(crate) fn composite_spherical(cfg: &ArrayConfig, theta: f64, phi: f64) -> f64 {
    let af = array_factor(cfg, theta, phi);
    if theta < FRAC_PI_2 {
        af * element_linear_front(cfg, theta, phi)
    } else {
        af * 10f64.powf((cfg.g_max_dbi - cfg.front_back_db) / 10.0)
    }
}

fn element_linear_front(cfg: &ArrayConfig, theta: f64, phi: f64) -> f64 {
    let t = theta.tan();
    let sx = (t * phi.cos()).clamp(-1.0, 1.0);
    let sy = (t * phi.sin()).clamp(-1.0, 1.0);
    10f64.powf(element_gain_db_sines(sx, sy, sx.asin().to_degrees(), cfg) / 10.0)
}

/// `∬ G sinθ dθ dφ` of the unnormalized composite pattern.
///
/// The array factor is the same at `θ` and `π - θ`, so the back hemisphere
/// is folded onto the front one; with `β_x = 0` the pattern is also even
/// under `φ → π - φ` and only half the azimuth range is integrated.
pub fn sphere_integral(cfg: &ArrayConfig, quad: &QuadratureSpec) -> Result<f64> {
    cfg.validate()?;
    let floor = 10f64.powf((cfg.g_max_dbi - cfg.front_back_db) / 10.0);
    // Main-lobe width is about 2/N rad; keep several panels per lobe.
    let panels = 4 * cfg.n as usize + 4;
    let theta_breaks = uniform_breaks(0.0, FRAC_PI_2, panels);
    let (phi_breaks, fold) = if cfg.beta_x == 0.0 {
        (uniform_breaks(-FRAC_PI_2, FRAC_PI_2, 2 * panels), 2.0)
    } else {
        (uniform_breaks(0.0, 2.0 * PI, 4 * panels), 1.0)
    };
    let r = integrate_2d(
        |theta, phi| {
            array_factor(cfg, theta, phi)
                * theta.sin()
                * (element_linear_front(cfg, theta, phi) + floor)
        },
        &theta_breaks,
        &phi_breaks,
        quad,
    )?;
    Ok(fold * r.value)
}

/// Normalization `G_0 = G'_0 / ∬ G sinθ dθ dφ`.
pub fn normalization_constant(cfg: &ArrayConfig, quad: &QuadratureSpec) -> Result<f64> {
    Ok(cfg.total_power_constant / sphere_integral(cfg, quad)?)
}

/// Quadrature settings used for cached normalizations.
pub fn default_normalization_quad() -> QuadratureSpec {
    QuadratureSpec {
        max_intervals: 20_000,
        abs_tol: 0.0,
        rel_tol: 1e-8,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct ShapeKey {
    n: u32,
    bits: [u64; 8],
}

impl ShapeKey {
    fn of(cfg: &ArrayConfig) -> Self {
        ShapeKey {
            n: cfg.n,
            bits: [
                cfg.element_spacing_wavelengths.to_bits(),
                cfg.beta_x.to_bits(),
                cfg.beta_y.to_bits(),
                cfg.g_max_dbi.to_bits(),
                cfg.front_back_db.to_bits(),
                cfg.sidelobe_limit_db.to_bits(),
                cfg.theta_3db_deg.to_bits(),
                cfg.phi_3db_deg.to_bits(),
            ],
        }
    }
}

/// Thread-safe memo of sphere integrals, keyed by everything that shapes the
/// pattern. `G'_0` is applied afterwards, so it is not part of the key.
#[derive(Debug, Default)]
pub struct NormalizationCache {
    integrals: RwLock<HashMap<ShapeKey, f64>>,
}

impl NormalizationCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache.
    pub fn global() -> &'static NormalizationCache {
        static CACHE: OnceLock<NormalizationCache> = OnceLock::new();
        CACHE.get_or_init(NormalizationCache::new)
    }

    pub fn g0(&self, cfg: &ArrayConfig) -> Result<f64> {
        let key = ShapeKey::of(cfg);
        if let Some(&i) = self.integrals.read().expect("cache lock poisoned").get(&key) {
            return Ok(cfg.total_power_constant / i);
        }
        let i = sphere_integral(cfg, &default_normalization_quad())?;
        log::debug!("sphere integral for N={}: {i:.12e}", cfg.n);
        self.integrals
            .write()
            .expect("cache lock poisoned")
            .insert(key, i);
        Ok(cfg.total_power_constant / i)
    }

    pub fn len(&self) -> usize {
        self.integrals.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
