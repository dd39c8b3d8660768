use super::config::{linear_grid, RunConfig, SweepVariable};
use crate::antenna::{pattern_cut, write_pattern_csv, write_sectors_csv, ArrayPattern};
use crate::channel::{
    build_mixture, db_to_linear, linear_to_db, outage_probability, write_sweep_csv, LinkBudget, LinkType,
    SweepRow,
};
use crate::error::{Error, Result};
use crate::montecarlo::{compare_cdf, estimate_outage, simulate_cdf, CdfProbe};
use crate::optimize::{optimize_array_sizes, optimize_symmetric_size};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `#`-prefixed header shared by every CSV.
pub fn metadata_block(cfg: &RunConfig, command: &str) -> String {
    let l = &cfg.link;
    format!(
        "# tool: mmw-uav {TOOL_VERSION}\n# command: {command}\n# config_digest: {}\n# seed: {}\n\
         # link: {} distance_m={} tx_power_dbm={} noise_power_dbm={}\n",
        cfg.digest(),
        cfg.simulation.seed,
        l.link_type,
        l.distance_m,
        l.tx_power_dbm,
        l.noise_power_dbm,
    )
}

fn csv_body(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> String {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

/// Pattern cuts and the sector table, each with its own header block.
pub fn cmd_pattern(cfg: &RunConfig) -> Result<(String, String)> {
    let p = &cfg.pattern;
    if p.cuts_theta_y_deg.is_empty() {
        return Err(Error::usage("pattern: cuts_theta_y_deg is empty"));
    }
    let n = p.n.unwrap_or(cfg.tx.n);
    let pattern = ArrayPattern::new(cfg.tx_array().with_n(n))?;
    let s = cfg.sectorization();
    let sectors = pattern.sectorize(s.d_param, s.lobes, s.sector0)?;
    let xs: Vec<f64> = linear_grid(p.theta_x_min_deg, p.theta_x_max_deg, p.step_deg)?
        .into_iter()
        .map(f64::to_radians)
        .collect();
    let samples: Vec<_> = p
        .cuts_theta_y_deg
        .iter()
        .flat_map(|&ty| pattern_cut(&pattern, &sectors, ty.to_radians(), &xs))
        .collect();
    let cuts = metadata_block(cfg, "pattern") + &csv_body(|w| write_pattern_csv(w, &samples));
    let table = metadata_block(cfg, "pattern") + &csv_body(|w| write_sectors_csv(w, &sectors));
    Ok((cuts, table))
}

/// `snr_db,pdf,cdf,d_param[,empirical_cdf]`, one block of rows per `D`.
pub fn cmd_distribution(cfg: &RunConfig) -> Result<String> {
    let d = &cfg.distribution;
    let grid = linear_grid(d.snr_min_db, d.snr_max_db, d.step_db)?;
    let base = cfg.link_budget()?;
    let ds = if d.d_values.is_empty() {
        vec![cfg.sectorization.d_param]
    } else {
        d.d_values.clone()
    };
    let empirical = if d.monte_carlo {
        let lin: Vec<f64> = grid.iter().map(|&x| db_to_linear(x)).collect();
        Some(simulate_cdf(&base, &cfg.simulation(), &lin)?)
    } else {
        None
    };
    let mut out = metadata_block(cfg, "distribution");
    out.push_str("snr_db,pdf,cdf,d_param");
    out.push_str(if empirical.is_some() { ",empirical_cdf\n" } else { "\n" });
    for &dp in &ds {
        let mut link = base.clone();
        link.sectorization.d_param = dp;
        let rows = build_mixture(&link)?.distribution_table(&grid, cfg.sectorization.residual);
        for (i, r) in rows.iter().enumerate() {
            let _ = write!(out, "{},{:e},{:e},{dp}", r.snr_db, r.pdf, r.cdf);
            if let Some(e) = &empirical {
                let _ = write!(out, ",{:e}", e[i]);
            }
            out.push('\n');
        }
    }
    Ok(out)
}

fn with_aerial_size(link: &LinkBudget, n: u32) -> Result<LinkBudget> {
    let mut l = link.clone();
    if l.link_type != LinkType::G2A {
        l.tx = ArrayPattern::new(l.tx.config().with_n(n))?;
    }
    if l.link_type != LinkType::A2G {
        l.rx = ArrayPattern::new(l.rx.config().with_n(n))?;
    }
    Ok(l)
}

fn with_sweep_value(link: &LinkBudget, var: SweepVariable, v: f64) -> LinkBudget {
    let mut l = link.clone();
    match var {
        SweepVariable::TxPowerDbm => l.tx_power_mw = db_to_linear(v),
        SweepVariable::DistanceM => l.distance_m = v,
        SweepVariable::SnrThresholdDb => l.snr_threshold = db_to_linear(v),
        SweepVariable::NakagamiM => l.nakagami_m = v,
        SweepVariable::SigmaDeg => {
            if l.link_type != LinkType::G2A {
                l.tx_orientation.sigma = v.to_radians();
            }
            if l.link_type != LinkType::A2G {
                l.rx_orientation.sigma = v.to_radians();
            }
        }
    }
    l
}

/// `sweep_variable,value,outage_probability,nt,nr,link_type[,mc_p_hat,mc_std_err]`.
pub fn cmd_outage(cfg: &RunConfig) -> Result<String> {
    let o = &cfg.outage;
    if o.values.is_empty() {
        return Err(Error::usage("outage: the sweep list `values` is empty"));
    }
    let base = cfg.link_budget()?;
    let links: Vec<LinkBudget> = if o.sizes.is_empty() {
        vec![base]
    } else {
        o.sizes.iter().map(|&n| with_aerial_size(&base, n)).collect::<Result<_>>()?
    };
    let spec = cfg.simulation();
    let jobs: Vec<(&LinkBudget, f64)> = links
        .iter()
        .flat_map(|l| o.values.iter().map(move |&v| (l, v)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(l, v)| {
            let link = with_sweep_value(l, o.variable, v);
            link.validate()?;
            let mut extra = vec![link.tx.n().to_string(), link.rx.n().to_string(), link.link_type.to_string()];
            if o.monte_carlo {
                let e = estimate_outage(&link, &spec)?;
                extra.push(format!("{:e}", e.p_hat));
                extra.push(format!("{:e}", e.std_err));
            }
            Ok(SweepRow {
                variable: o.variable.to_string(),
                value: v,
                outage: outage_probability(&link)?,
                extra,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut headers = vec!["nt", "nr", "link_type"];
    if o.monte_carlo {
        headers.extend(["mc_p_hat", "mc_std_err"]);
    }
    Ok(metadata_block(cfg, "outage") + &csv_body(|w| write_sweep_csv(w, &headers, &rows)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutageDelta {
    pub threshold_db: f64,
    pub analytical: f64,
    pub p_hat: f64,
    pub std_err: f64,
    pub abs_delta: f64,
    /// `None` when no outage event was observed.
    pub rel_delta: Option<f64>,
}

/// Outcome of a model-versus-simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tool: String,
    pub config_digest: String,
    pub seed: u64,
    pub samples: u64,
    pub link_type: LinkType,
    pub d_param: u32,
    pub lobes: u32,
    pub sector0: String,
    pub tolerance: f64,
    pub cdf_floor: f64,
    pub max_rel_err: f64,
    pub max_abs_gap: f64,
    pub outage: OutageDelta,
    pub passed: bool,
    pub probes: Vec<CdfProbe>,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data") + "\n"
    }

    /// `Ok` when passed, otherwise a validation error describing the gap.
    pub fn verdict(&self) -> Result<()> {
        if self.passed {
            return Ok(());
        }
        Err(Error::Validation(format!(
            "max relative CDF error {:.4} (outage delta {:?}) against tolerance {}",
            self.max_rel_err, self.outage.rel_delta, self.tolerance
        )))
    }
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<ValidationReport> {
    let v = &cfg.validate;
    if !(v.tolerance > 0.0) || !(v.cdf_floor >= 0.0) {
        return Err(Error::usage("validate: tolerance must be positive and cdf_floor non-negative"));
    }
    let link = cfg.link_budget()?;
    let spec = cfg.simulation();
    let model = build_mixture(&link)?;
    let grid = linear_grid(v.snr_min_db, v.snr_max_db, v.step_db)?;
    let cmp = compare_cdf(&link, &model, &spec, &grid, v.cdf_floor)?;
    let est = estimate_outage(&link, &spec)?;
    let analytical = model.outage(link.snr_threshold);
    let abs_delta = (analytical - est.p_hat).abs();
    let rel_delta = (est.p_hat > 0.0).then(|| abs_delta / est.p_hat);
    let outage_ok = est.p_hat < v.cdf_floor || rel_delta.is_some_and(|r| r <= v.tolerance);
    let s = link.sectorization;
    Ok(ValidationReport {
        tool: format!("mmw-uav {TOOL_VERSION}"),
        config_digest: cfg.digest(),
        seed: spec.seed,
        samples: spec.num_samples,
        link_type: link.link_type,
        d_param: s.d_param,
        lobes: s.lobes,
        sector0: s.sector0.to_string(),
        tolerance: v.tolerance,
        cdf_floor: v.cdf_floor,
        max_rel_err: cmp.max_rel_err,
        max_abs_gap: cmp.max_abs_gap,
        outage: OutageDelta {
            threshold_db: linear_to_db(link.snr_threshold),
            analytical,
            p_hat: est.p_hat,
            std_err: est.std_err,
            abs_delta,
            rel_delta,
        },
        passed: cmp.passes(v.tolerance) && outage_ok,
        probes: cmp.probes,
    })
}

/// Header with the optimizer summary as comment lines, then `nt,nr,outage`.
pub fn cmd_optimize(cfg: &RunConfig) -> Result<String> {
    let o = &cfg.optimize;
    let template = cfg.link_budget()?;
    let result = if o.symmetric {
        optimize_symmetric_size(&template, o.n_max)?
    } else {
        optimize_array_sizes(&template, o.n_max, o.method, Some(&cfg.simulation()))?
    };
    let mut out = metadata_block(cfg, "optimize");
    for line in result.summary().lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str(&csv_body(|w| result.write_grid_csv(w)));
    Ok(out)
}
