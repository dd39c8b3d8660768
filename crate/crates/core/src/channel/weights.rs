use super::OrientationStats;
use crate::error::{Error, Result};
use crate::specfun::marcum_q1;

fn check(orient: &OrientationStats, n: u32, d_param: u32, lobes: u32) -> Result<()> {
    if !(orient.sigma > 0.0) || !orient.sigma.is_finite() {
        return Err(Error::domain(format!(
            "sector weights need a positive orientation sigma, got {}; ground terminals use the peak gain",
            orient.sigma
        )));
    }
    if n == 0 || d_param == 0 || !(1..=2).contains(&lobes) {
        return Err(Error::domain(format!(
            "sector weights: need n ≥ 1, D ≥ 1, lobes ∈ {{1,2}}; got ({n}, {d_param}, {lobes})"
        )));
    }
    Ok(())
}

/// Probability `J_d` that the radial pointing error falls in ring `d`,
/// for `d = 0 … jD-1`.
pub fn sector_weights(orient: &OrientationStats, n: u32, d_param: u32, lobes: u32) -> Result<Vec<f64>> {
    check(orient, n, d_param, lobes)?;
    let a = orient.offset_radial() / orient.sigma;
    let scale = f64::from(d_param) * f64::from(n) * orient.sigma;
    let count = (lobes * d_param) as usize;
    let mut q = Vec::with_capacity(count + 1);
    for d in 0..=count {
        q.push(marcum_q1(a, d as f64 / scale)?);
    }
    Ok(q.windows(2).map(|w| (w[0] - w[1]).max(0.0)).collect())
}

/// Total probability of the modeled rings, `1 - M(θ'/σ, j/(Nσ))`.
pub fn sector_mass(orient: &OrientationStats, n: u32, lobes: u32) -> Result<f64> {
    check(orient, n, 1, lobes)?;
    let a = orient.offset_radial() / orient.sigma;
    Ok(1.0 - marcum_q1(a, f64::from(lobes) / (f64::from(n) * orient.sigma))?)
}
