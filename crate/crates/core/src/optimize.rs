//! Exhaustive search over array sizes.
//!
//! Outage is evaluated on the full admissible grid and the argmin is taken
//! afterwards, ties going to the smaller transmit then receive array.

use crate::antenna::ArrayPattern;
use crate::channel::{outage_probability, LinkBudget, LinkType};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_outage_grid, SimulationSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizationMethod {
    #[default]
    Analytical,
    MonteCarlo,
}

impl fmt::Display for OptimizationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizationMethod::Analytical => "analytical",
            OptimizationMethod::MonteCarlo => "monte_carlo",
        })
    }
}

impl FromStr for OptimizationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytical" => Ok(OptimizationMethod::Analytical),
            "monte_carlo" | "montecarlo" | "mc" => Ok(OptimizationMethod::MonteCarlo),
            _ => Err(Error::usage(format!("method must be 'analytical' or 'monte_carlo', got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub nt: u32,
    pub nr: u32,
    pub outage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_nt: u32,
    pub best_nr: u32,
    pub best_outage: f64,
    pub evaluations: Vec<GridPoint>,
    pub method: OptimizationMethod,
    pub elapsed_seconds: f64,
}

impl OptimizationResult {
    fn from_grid(evaluations: Vec<GridPoint>, method: OptimizationMethod, started: Instant) -> Self {
        let best = evaluations
            .iter()
            .copied()
            .reduce(|a, b| if b.outage < a.outage { b } else { a })
            .expect("grid is never empty");
        OptimizationResult {
            best_nt: best.nt,
            best_nr: best.nr,
            best_outage: best.outage,
            evaluations,
            method,
            elapsed_seconds: started.elapsed().as_secs_f64(),
        }
    }

    pub fn outage_at(&self, nt: u32, nr: u32) -> Option<f64> {
        self.evaluations.iter().find(|p| p.nt == nt && p.nr == nr).map(|p| p.outage)
    }

    /// CSV `nt,nr,outage`.
    pub fn write_grid_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "nt,nr,outage")?;
        for p in &self.evaluations {
            writeln!(w, "{},{},{:e}", p.nt, p.nr, p.outage)?;
        }
        Ok(())
    }

    /// `key = value` summary. Wall-clock time is left out so that reruns are
    /// byte-identical.
    pub fn summary(&self) -> String {
        format!(
            "method = {}\nbest_nt = {}\nbest_nr = {}\nbest_outage = {:e}\nevaluations = {}\n",
            self.method,
            self.best_nt,
            self.best_nr,
            self.best_outage,
            self.evaluations.len()
        )
    }
}

/// `(tx sizes, rx sizes)` searched for a link type; the ground end is
/// pinned at `n_max`.
pub fn admissible_sizes(link_type: LinkType, n_max: u32) -> (Vec<u32>, Vec<u32>) {
    let all: Vec<u32> = (1..=n_max).collect();
    match link_type {
        LinkType::A2A => (all.clone(), all),
        LinkType::G2A => (vec![n_max], all),
        LinkType::A2G => (all, vec![n_max]),
    }
}

fn patterns(base: &ArrayPattern, sizes: &[u32]) -> Result<Vec<ArrayPattern>> {
    sizes
        .par_iter()
        .map(|&n| ArrayPattern::new(base.config().with_n(n)))
        .collect()
}

fn analytical_grid(template: &LinkBudget, pairs: &[(usize, usize)], txp: &[ArrayPattern], rxp: &[ArrayPattern]) -> Result<Vec<GridPoint>> {
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut link = template.clone();
            link.tx = txp[i].clone();
            link.rx = rxp[j].clone();
            Ok(GridPoint {
                nt: link.tx.n(),
                nr: link.rx.n(),
                outage: outage_probability(&link)?,
            })
        })
        .collect()
}

/// Minimizes outage over all admissible `(N_t, N_r)` with sizes up to `n_max`.
pub fn optimize_array_sizes(
    template: &LinkBudget,
    n_max: u32,
    method: OptimizationMethod,
    mc_spec: Option<&SimulationSpec>,
) -> Result<OptimizationResult> {
    let started = Instant::now();
    if n_max < 1 {
        return Err(Error::domain("optimize: n_max must be at least 1"));
    }
    template.validate()?;
    let (ts, rs) = admissible_sizes(template.link_type, n_max);
    let evaluations = match method {
        OptimizationMethod::Analytical => {
            let txp = patterns(&template.tx, &ts)?;
            let rxp = patterns(&template.rx, &rs)?;
            let pairs: Vec<(usize, usize)> = (0..ts.len())
                .flat_map(|i| (0..rs.len()).map(move |j| (i, j)))
                .collect();
            analytical_grid(template, &pairs, &txp, &rxp)?
        }
        OptimizationMethod::MonteCarlo => {
            let spec = mc_spec.ok_or_else(|| Error::usage("monte_carlo optimization needs a simulation spec"))?;
            let grid = estimate_outage_grid(template, &ts, &rs, spec)?;
            ts.iter()
                .zip(grid)
                .flat_map(|(&nt, row)| {
                    rs.iter().zip(row).map(move |(&nr, e)| GridPoint { nt, nr, outage: e.p_hat })
                })
                .collect()
        }
    };
    let result = OptimizationResult::from_grid(evaluations, method, started);
    log::info!(
        "optimized {} grid points in {:.2} s",
        result.evaluations.len(),
        result.elapsed_seconds
    );
    Ok(result)
}

/// Minimizes analytical outage over equal sizes `N_t = N_r = N`, `N ≤ n_max`.
pub fn optimize_symmetric_size(template: &LinkBudget, n_max: u32) -> Result<OptimizationResult> {
    let started = Instant::now();
    if n_max < 1 {
        return Err(Error::domain("optimize: n_max must be at least 1"));
    }
    template.validate()?;
    let sizes: Vec<u32> = (1..=n_max).collect();
    let txp = patterns(&template.tx, &sizes)?;
    let rxp = if template.rx.config() == template.tx.config() {
        txp.clone()
    } else {
        patterns(&template.rx, &sizes)?
    };
    let pairs: Vec<(usize, usize)> = (0..sizes.len()).map(|i| (i, i)).collect();
    let grid = analytical_grid(template, &pairs, &txp, &rxp)?;
    Ok(OptimizationResult::from_grid(grid, OptimizationMethod::Analytical, started))
}
