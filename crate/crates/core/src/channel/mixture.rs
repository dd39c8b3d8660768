use super::weights::{sector_mass, sector_weights};
use super::{LinkBudget, LinkType};
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, regularized_lower_gamma};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// What to do with probability mass outside the modeled rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualPolicy {
    /// Count it as outage: those pointing errors sit past the last modeled lobe.
    #[default]
    ToOutage,
    /// Drop it, leaving a defective CDF that tops out at the modeled mass.
    Ignore,
}

impl fmt::Display for ResidualPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualPolicy::ToOutage => "to_outage",
            ResidualPolicy::Ignore => "ignore",
        })
    }
}

impl FromStr for ResidualPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "to_outage" => Ok(ResidualPolicy::ToOutage),
            "ignore" => Ok(ResidualPolicy::Ignore),
            _ => Err(Error::usage(format!("residual policy must be 'to_outage' or 'ignore', got '{s}'"))),
        }
    }
}

/// `weight · Gamma(shape m, mean scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub scale: f64,
}

/// Finite Gamma mixture for the linear end-to-end SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrMixtureModel {
    pub shape_m: f64,
    pub components: Vec<MixtureComponent>,
    pub residual_mass: f64,
}

impl SnrMixtureModel {
    pub fn new(shape_m: f64, components: Vec<MixtureComponent>, residual_mass: f64) -> Result<Self> {
        if !(shape_m >= 0.5) || !shape_m.is_finite() {
            return Err(Error::domain(format!("mixture: shape m must be ≥ 0.5, got {shape_m}")));
        }
        for c in &components {
            if !(0.0..=1.0).contains(&c.weight) || !(c.scale > 0.0 && c.scale.is_finite()) {
                return Err(Error::domain(format!(
                    "mixture: bad component (weight {}, scale {})",
                    c.weight, c.scale
                )));
            }
        }
        if !(0.0..=1.0).contains(&residual_mass) {
            return Err(Error::domain(format!("mixture: residual mass {residual_mass} outside [0, 1]")));
        }
        Ok(SnrMixtureModel {
            shape_m,
            components,
            residual_mass,
        })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|c| c.weight).sum()
    }

    /// Density of the modeled part at linear SNR `x`.
    pub fn pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let m = self.shape_m;
        let lg = ln_gamma(m).expect("shape validated at construction");
        let lx = x.ln();
        self.components
            .iter()
            .filter(|c| c.weight > 0.0)
            .map(|c| {
                let rate = m / c.scale;
                c.weight * (m * rate.ln() + (m - 1.0) * lx - rate * x - lg).exp()
            })
            .sum()
    }

    /// `P(γ ≤ x)`, with the residual mass handled per `policy`.
    pub fn cdf(&self, x: f64, policy: ResidualPolicy) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let residual = match policy {
            ResidualPolicy::ToOutage => self.residual_mass,
            ResidualPolicy::Ignore => 0.0,
        };
        if x <= 0.0 {
            return residual;
        }
        let m = self.shape_m;
        let body: f64 = self
            .components
            .iter()
            .filter(|c| c.weight > 0.0)
            .map(|c| {
                c.weight * regularized_lower_gamma(m, m * x / c.scale).expect("shape validated at construction")
            })
            .sum();
        (body + residual).min(1.0)
    }

    /// The CDF summed term by term in its unsimplified form
    /// `R (S/m)^m γ_lower(m, m x / S)` with `R = J (m/S)^m / Γ(m)`.
    /// Mathematically equal to `cdf(x, Ignore)`.
    pub fn cdf_unsimplified(&self, x: f64) -> f64 {
        let m = self.shape_m;
        let gamma_m = ln_gamma(m).expect("shape validated at construction").exp();
        self.components
            .iter()
            .map(|c| {
                let r = c.weight / gamma_m * (m / c.scale).powf(m);
                let lower = gamma_m * regularized_lower_gamma(m, m * x.max(0.0) / c.scale).unwrap_or(0.0);
                r * (c.scale / m).powf(m) * lower
            })
            .sum()
    }

    /// Outage at linear threshold `gamma_th`, residual counted as outage.
    pub fn outage(&self, gamma_th: f64) -> f64 {
        self.cdf(gamma_th, ResidualPolicy::ToOutage)
    }

    /// PDF (per dB) and CDF over a grid of SNR values in dB.
    ///
    /// The density is taken with respect to `snr_db`, so a trapezoid rule
    /// over the grid integrates it to the captured mass.
    pub fn distribution_table(&self, grid_db: &[f64], policy: ResidualPolicy) -> Vec<DistributionRow> {
        let per_db = std::f64::consts::LN_10 / 10.0;
        grid_db
            .iter()
            .map(|&db| {
                let x = 10f64.powf(db / 10.0);
                DistributionRow {
                    snr_db: db,
                    pdf: self.pdf(x) * x * per_db,
                    cdf: self.cdf(x, policy),
                }
            })
            .collect()
    }
}

fn finish(link: &LinkBudget, raw: Vec<MixtureComponent>, mass: f64) -> Result<SnrMixtureModel> {
    // Rings whose level is exactly zero (pattern nulls) carry no SNR; their
    // weight joins the residual.
    let (components, nulls): (Vec<_>, Vec<_>) = raw.into_iter().partition(|c| c.scale > 0.0);
    let null_mass: f64 = nulls.iter().map(|c| c.weight).sum();
    let residual = (1.0 - mass + null_mass).clamp(0.0, 1.0);
    SnrMixtureModel::new(link.nakagami_m, components, residual)
}

fn expect_type(link: &LinkBudget, want: LinkType) -> Result<()> {
    if link.link_type != want {
        return Err(Error::usage(format!(
            "expected a {want} link, got {}",
            link.link_type
        )));
    }
    link.validate()
}

/// Aerial-to-aerial mixture: `(jD)²` components indexed by the pair of
/// rings the two pointing errors fall in.
pub fn build_a2a_mixture(link: &LinkBudget) -> Result<SnrMixtureModel> {
    expect_type(link, LinkType::A2A)?;
    let s = link.sectorization;
    let k = link.snr_per_unit_gain()?;
    let lt = link.tx.sectorize(s.d_param, s.lobes, s.sector0)?;
    let lr = link.rx.sectorize(s.d_param, s.lobes, s.sector0)?;
    let wt = sector_weights(&link.tx_orientation, link.tx.n(), s.d_param, s.lobes)?;
    let wr = sector_weights(&link.rx_orientation, link.rx.n(), s.d_param, s.lobes)?;
    let mut raw = Vec::with_capacity(wt.len() * wr.len());
    for (dt, &w_t) in wt.iter().enumerate() {
        for (dr, &w_r) in wr.iter().enumerate() {
            raw.push(MixtureComponent {
                weight: w_t * w_r,
                scale: k * lt.level(dt) * lr.level(dr),
            });
        }
    }
    let mass = sector_mass(&link.tx_orientation, link.tx.n(), s.lobes)?
        * sector_mass(&link.rx_orientation, link.rx.n(), s.lobes)?;
    finish(link, raw, mass)
}

/// Ground-to-aerial mixture: the stable ground transmitter contributes its
/// peak gain, leaving `jD` components from the aerial receiver.
pub fn build_g2a_mixture(link: &LinkBudget) -> Result<SnrMixtureModel> {
    expect_type(link, LinkType::G2A)?;
    let s = link.sectorization;
    let k = link.snr_per_unit_gain()? * link.tx.peak_gain();
    let lr = link.rx.sectorize(s.d_param, s.lobes, s.sector0)?;
    let wr = sector_weights(&link.rx_orientation, link.rx.n(), s.d_param, s.lobes)?;
    let raw = wr
        .iter()
        .enumerate()
        .map(|(d, &w)| MixtureComponent {
            weight: w,
            scale: k * lr.level(d),
        })
        .collect();
    let mass = sector_mass(&link.rx_orientation, link.rx.n(), s.lobes)?;
    finish(link, raw, mass)
}

/// Aerial-to-ground mixture, by exchanging the roles of the two ends.
pub fn build_a2g_mixture(link: &LinkBudget) -> Result<SnrMixtureModel> {
    expect_type(link, LinkType::A2G)?;
    build_g2a_mixture(&link.swapped())
}

pub fn build_mixture(link: &LinkBudget) -> Result<SnrMixtureModel> {
    match link.link_type {
        LinkType::A2A => build_a2a_mixture(link),
        LinkType::G2A => build_g2a_mixture(link),
        LinkType::A2G => build_a2g_mixture(link),
    }
}

/// Probability that the SNR falls below the link threshold.
pub fn outage_probability(link: &LinkBudget) -> Result<f64> {
    Ok(build_mixture(link)?.outage(link.snr_threshold))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionRow {
    pub snr_db: f64,
    pub pdf: f64,
    pub cdf: f64,
}

/// CSV `snr_db,pdf,cdf`.
pub fn write_distribution_csv<W: Write>(mut w: W, rows: &[DistributionRow]) -> std::io::Result<()> {
    writeln!(w, "snr_db,pdf,cdf")?;
    for r in rows {
        writeln!(w, "{},{:e},{:e}", r.snr_db, r.pdf, r.cdf)?;
    }
    Ok(())
}

/// One point of an outage sweep, with optional extra labelled columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub variable: String,
    pub value: f64,
    pub outage: f64,
    pub extra: Vec<String>,
}

/// CSV `sweep_variable,value,outage_probability[,extra...]`.
pub fn write_sweep_csv<W: Write>(mut w: W, extra_headers: &[&str], rows: &[SweepRow]) -> std::io::Result<()> {
    write!(w, "sweep_variable,value,outage_probability")?;
    for h in extra_headers {
        write!(w, ",{h}")?;
    }
    writeln!(w)?;
    for r in rows {
        write!(w, "{},{},{:e}", r.variable, r.value, r.outage)?;
        for e in &r.extra {
            write!(w, ",{e}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::OrientationStats;
    use super::*;
    use crate::antenna::{ArrayConfig, ArrayPattern, Sector0Level};
    use crate::channel::Sectorization;
    use crate::specfun::quad::{integrate_panels, QuadratureSpec};

    fn pattern(n: u32) -> ArrayPattern {
        ArrayPattern::new(ArrayConfig::default().with_n(n)).unwrap()
    }

    fn mild_link() -> LinkBudget {
        LinkBudget::new(LinkType::A2A, pattern(6), pattern(6)).with_orientations(
            OrientationStats::from_degrees(0.5, 0.5, 1.0),
            OrientationStats::from_degrees(1.0, 1.0, 1.0),
        )
    }

    #[test]
    fn a2a_component_count_and_mass() {
        let model = build_a2a_mixture(&mild_link()).unwrap();
        assert_eq!(model.component_count(), 2500);
        assert!((model.total_weight() + model.residual_mass - 1.0).abs() < 1e-9);
        let wide = mild_link().with_orientations(
            OrientationStats::from_degrees(0.5, 0.5, 3.0),
            OrientationStats::from_degrees(1.0, 1.0, 3.0),
        )
        .with_sectorization(Sectorization { lobes: 1, ..Sectorization::default() });
        let model = build_a2a_mixture(&wide).unwrap();
        assert_eq!(model.component_count(), 625);
        assert!(model.residual_mass > 1e-3);
        assert!((model.total_weight() + model.residual_mass - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_component_is_gamma() {
        let model = SnrMixtureModel::new(1.0, vec![MixtureComponent { weight: 1.0, scale: 2.0 }], 0.0).unwrap();
        // m = 1: exponential with mean 2.
        assert!((model.pdf(1.0) - 0.5 * (-0.5f64).exp()).abs() < 1e-15);
        assert!((model.cdf(1.0, ResidualPolicy::Ignore) - (1.0 - (-0.5f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn residual_policy_limits() {
        let model = build_a2a_mixture(&mild_link()).unwrap();
        assert_eq!(model.cdf(0.0, ResidualPolicy::ToOutage), model.residual_mass);
        assert_eq!(model.cdf(0.0, ResidualPolicy::Ignore), 0.0);
        assert!((model.cdf(1e30, ResidualPolicy::ToOutage) - 1.0).abs() < 1e-9);
        assert!((model.cdf(1e30, ResidualPolicy::Ignore) - (1.0 - model.residual_mass)).abs() < 1e-9);
    }

    #[test]
    fn pdf_integrates_to_mass_and_matches_cdf() {
        let model = build_a2a_mixture(&mild_link()).unwrap();
        let quad = QuadratureSpec::new(4000, 0.0, 1e-10).unwrap();
        // Integrate in log-SNR, where the components are well spread.
        let f = |u: f64| {
            let x = u.exp();
            model.pdf(x) * x
        };
        let total = integrate_panels(f, &crate::specfun::quad::uniform_breaks(-30.0, 40.0, 70), &quad).unwrap();
        assert!((total.value - model.total_weight()).abs() < 1e-6);
        for k in 0..20 {
            let db = -5.0 + 2.5 * k as f64;
            let x: f64 = 10f64.powf(db / 10.0);
            let breaks = crate::specfun::quad::uniform_breaks(-30.0, x.ln(), 40);
            let num = integrate_panels(f, &breaks, &quad).unwrap().value + model.residual_mass;
            let cdf = model.cdf(x, ResidualPolicy::ToOutage);
            assert!((num - cdf).abs() < 1e-6, "{db} dB: {num} vs {cdf}");
        }
    }

    #[test]
    fn unsimplified_cdf_agrees() {
        let model = build_a2a_mixture(&mild_link()).unwrap();
        for db in [0.0, 10.0, 20.0, 30.0] {
            let x = 10f64.powf(db / 10.0);
            let a = model.cdf(x, ResidualPolicy::Ignore);
            let b = model.cdf_unsimplified(x);
            assert!((a - b).abs() <= 1e-12 * a.max(1e-300), "{a} vs {b}");
        }
    }

    #[test]
    fn a2g_is_swapped_g2a() {
        let aerial = OrientationStats::from_degrees(0.5, 0.5, 2.0);
        let g2a = LinkBudget::new(LinkType::G2A, pattern(18), pattern(7))
            .with_orientations(OrientationStats::ground(), aerial);
        let a2g = g2a.swapped();
        assert_eq!(a2g.link_type, LinkType::A2G);
        assert_eq!(build_a2g_mixture(&a2g).unwrap(), build_g2a_mixture(&g2a).unwrap());
        assert!(build_g2a_mixture(&a2g).is_err());
    }

    #[test]
    fn g2a_collapses_with_tight_jitter() {
        let link = LinkBudget::new(LinkType::G2A, pattern(18), pattern(8))
            .with_orientations(OrientationStats::ground(), OrientationStats::from_degrees(0.0, 0.0, 1e-4));
        let model = build_g2a_mixture(&link).unwrap();
        assert!(model.components[0].weight > 1.0 - 1e-9);
        let want = link.snr_per_unit_gain().unwrap() * link.tx.peak_gain() * 0.5 * link.rx.config().kd().powi(2)
            * link.rx.g0_double_prime();
        assert!((model.components[0].scale - want).abs() < 1e-12 * want);
    }

    #[test]
    fn ground_end_must_be_still() {
        let aerial = OrientationStats::from_degrees(0.5, 0.5, 2.0);
        let bad = LinkBudget::new(LinkType::G2A, pattern(4), pattern(4)).with_orientations(aerial, aerial);
        assert!(matches!(build_g2a_mixture(&bad), Err(Error::Domain(_))));
        let wrong = LinkBudget::new(LinkType::A2A, pattern(4), pattern(4));
        assert!(matches!(build_g2a_mixture(&wrong), Err(Error::Usage(_))));
    }

    #[test]
    fn joint_table_is_level_product() {
        // Corner, edges and interior of the four-case table.
        let link = mild_link().with_sectorization(Sectorization {
            d_param: 10,
            lobes: 2,
            sector0: Sector0Level::Paper,
        });
        let model = build_a2a_mixture(&link).unwrap();
        let k = link.snr_per_unit_gain().unwrap();
        let kd = link.tx.config().kd();
        let (gt, gr) = (link.tx.g0_double_prime(), link.rx.g0_double_prime());
        let d = 10.0f64;
        let edge = |i: f64| d * d * (1.0 - (i * kd / d).cos()) / (i * i);
        let inner = |i: f64| d * d * (i * kd / (2.0 * d)).sin().powi(2) / (i * i);
        let table = |dt: usize, dr: usize| -> f64 {
            let (a, b) = (dt as f64, dr as f64);
            match (dt, dr) {
                (0, 0) => 4.0 * kd.powi(4) * gt * gr,
                (_, 0) => 2.0 * kd * kd * gt * gr * edge(a),
                (0, _) => 2.0 * kd * kd * gt * gr * edge(b),
                _ => 4.0 * gt * gr * inner(a) * inner(b),
            }
        };
        for (dt, dr) in [(0, 0), (3, 0), (0, 7), (5, 11), (19, 19)] {
            let s = model.components[dt * 20 + dr].scale;
            let want = k * table(dt, dr);
            assert!((s - want).abs() < 1e-12 * want, "({dt},{dr})");
        }
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &["n"], &[SweepRow { variable: "tx_power_dbm".into(), value: 1.0, outage: 0.5, extra: vec!["6".into()] }]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("sweep_variable,value,outage_probability,n\n"));
        let mut buf = Vec::new();
        write_distribution_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "snr_db,pdf,cdf\n");
    }
}
