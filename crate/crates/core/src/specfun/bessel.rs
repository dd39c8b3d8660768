use crate::error::{Error, Result};

/// Argument at which `bessel_i0` switches from the power series to the
/// asymptotic expansion.
pub const I0_CROSSOVER: f64 = 15.0;

/// Largest argument for which `exp(x)` is finite.
const EXP_OVERFLOW: f64 = 709.78;

/// Power series `Σ (x²/4)^k / (k!)²`, summed until the terms stop mattering.
pub fn bessel_i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > 1e-17 * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// Large-argument expansion of `exp(-x)·I0(x)`.
///
/// Terms are `((2k-1)!!)² / (k! (8x)^k)`; the sum stops at the smallest
/// term, where the truncation error of this divergent series is least.
pub fn bessel_i0_asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    let mut k = 1.0_f64;
    loop {
        let next = term * (2.0 * k - 1.0).powi(2) / (8.0 * k * x);
        if next >= term || next < 1e-17 * sum {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// Exponentially scaled modified Bessel function `exp(-|x|)·I0(x)`.
pub fn bessel_i0e(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("bessel_i0e: argument {x} is not finite")));
    }
    let ax = x.abs();
    if ax <= I0_CROSSOVER {
        Ok(bessel_i0_series(ax) * (-ax).exp())
    } else {
        Ok(bessel_i0_asymptotic_scaled(ax))
    }
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("bessel_i0: argument {x} is not finite")));
    }
    let ax = x.abs();
    if ax <= I0_CROSSOVER {
        return Ok(bessel_i0_series(ax));
    }
    if ax > EXP_OVERFLOW {
        return Err(Error::Range(format!(
            "bessel_i0({x}) overflows f64; use bessel_i0e"
        )));
    }
    let v = ax.exp() * bessel_i0_asymptotic_scaled(ax);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!("bessel_i0({x}) overflows f64; use bessel_i0e")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Fixed 50-term truncation, written independently of the adaptive loop.
    fn series_50(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut fact = 1.0;
        for k in 0..50 {
            if k > 0 {
                fact *= k as f64;
            }
            sum += (x / 2.0).powi(2 * k) / (fact * fact);
        }
        sum
    }

    #[test]
    fn zero_is_one() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
    }

    #[test]
    fn one_matches_truncated_series() {
        let expected = series_50(1.0);
        let got = bessel_i0(1.0).unwrap();
        assert!(((got - expected) / expected).abs() < 1e-12, "{got} vs {expected}");
        assert!((got - 1.266_065_877_752_008_4).abs() < 1e-15);
    }

    #[test]
    fn ten_series_and_asymptotic_agree() {
        // 10 sits in the series branch; cross-check against the scaled
        // asymptotic form with the exponent restored.
        let series = bessel_i0(10.0).unwrap();
        let asym = 10.0_f64.exp() * bessel_i0_asymptotic_scaled(10.0);
        assert!(((series - series_50(10.0)) / series).abs() < 1e-12);
        // The asymptotic expansion is only good to ~e^{-20} at x = 10.
        assert!(((series - asym) / series).abs() < 1e-8);
    }

    #[test]
    fn branches_agree_around_crossover() {
        for i in 0..=40 {
            let x = 14.0 + 0.05 * i as f64;
            let s = bessel_i0_series(x) * (-x).exp();
            let a = bessel_i0_asymptotic_scaled(x);
            assert!(((s - a) / s).abs() < 1e-12, "x={x}: {s} vs {a}");
        }
    }

    #[test]
    fn even_extension_and_overflow() {
        assert_eq!(bessel_i0(-3.0).unwrap(), bessel_i0(3.0).unwrap());
        assert!(matches!(bessel_i0(800.0), Err(Error::Range(_))));
        assert!(bessel_i0e(800.0).unwrap() > 0.0);
        assert!(bessel_i0(f64::NAN).is_err());
    }
}
