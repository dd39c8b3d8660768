use super::ArrayConfig;

/// Spherical pointing angles `(θ, φ)` seen by a terminal whose body axes are
/// tilted by `θx`, `θy`.
///
/// `φ` is taken as 0 at boresight, where it is undefined.
pub fn pointing_angles(theta_x: f64, theta_y: f64) -> (f64, f64) {
    let (sx, sy) = (theta_x.sin(), theta_y.sin());
    let theta = (sx * sx + sy * sy).sqrt().atan();
    let phi = if sx == 0.0 && sy == 0.0 { 0.0 } else { sy.atan2(sx) };
    (theta, phi)
}

/// 3GPP single-element gain in dBi at body tilt `(θx, θy)`.
///
/// Vertical cut `-min{12((θe-90)/θ3dB)², G_SL}`, horizontal cut
/// `-min{12(θx/φ3dB)², F_m}`, total attenuation clamped at `F_m`.
pub fn element_gain_db(theta_x: f64, theta_y: f64, cfg: &ArrayConfig) -> f64 {
    element_gain_db_sines(theta_x.sin(), theta_y.sin(), theta_x.to_degrees(), cfg)
}

/// Same pattern, from `sin θx`, `sin θy` and `θx` in degrees.
pub(crate) fn element_gain_db_sines(sx: f64, sy: f64, horiz_deg: f64, cfg: &ArrayConfig) -> f64 {
    let theta_e_deg = (1.0 + sx * sx).sqrt().atan2(sy).to_degrees();
    let v = 12.0 * ((theta_e_deg - 90.0) / cfg.theta_3db_deg).powi(2);
    let a_v = -v.min(cfg.sidelobe_limit_db);
    let h = 12.0 * (horiz_deg / cfg.phi_3db_deg).powi(2);
    let a_h = -h.min(cfg.front_back_db);
    cfg.g_max_dbi - (-(a_v + a_h)).min(cfg.front_back_db)
}
