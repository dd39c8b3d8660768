use crate::error::{Error, Result};

/// Distances beyond this are outside the range the model was fitted on.
pub const PATH_LOSS_MAX_DISTANCE_M: f64 = 3000.0;

/// Large-scale path gain in dB (negative: a loss) for link length `Z`,
/// carrier `f_c` and building height `h_b`.
pub fn path_loss_db(distance_m: f64, carrier_hz: f64, building_height_m: f64) -> Result<f64> {
    let positive = |v: f64| v > 0.0 && v.is_finite();
    if !positive(distance_m) || !positive(carrier_hz) || !positive(building_height_m) {
        return Err(Error::domain(format!(
            "path loss: distance ({distance_m}), carrier ({carrier_hz}) and building height ({building_height_m}) must be positive"
        )));
    }
    if distance_m > PATH_LOSS_MAX_DISTANCE_M {
        log::warn!("path loss: {distance_m} m is beyond the {PATH_LOSS_MAX_DISTANCE_M} m fitting range");
    }
    let f_ghz = carrier_hz / 1e9;
    let hb173 = building_height_m.powf(1.73);
    let z = distance_m;
    Ok(-20.0 * (40.0 * std::f64::consts::PI * z * f_ghz / 3.0).log10()
        + (0.03 * hb173).min(10.0) * z.log10()
        + (0.044 * hb173).min(14.77)
        - 0.002 * z * building_height_m.log10())
}

/// Linear path gain `h_L = 10^{h_L,dB/10}`.
pub fn path_gain_linear(distance_m: f64, carrier_hz: f64, building_height_m: f64) -> Result<f64> {
    Ok(10f64.powf(path_loss_db(distance_m, carrier_hz, building_height_m)? / 10.0))
}
