//! Adaptive Gauss–Kronrod (7/15) quadrature in one and two dimensions.
//!
//! Used for the sphere integral that fixes the array normalization and as
//! the reference integrator in the special-function tests.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Budget and tolerances for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub max_intervals: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl QuadratureSpec {
    pub fn new(max_intervals: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            max_intervals,
            abs_tol,
            rel_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_intervals < 16 {
            return Err(Error::domain(format!(
                "quadrature: max_intervals must be at least 16, got {}",
                self.max_intervals
            )));
        }
        if !(self.abs_tol >= 0.0) || !(self.rel_tol >= 0.0) {
            return Err(Error::domain("quadrature: tolerances must be non-negative"));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::domain("quadrature: abs_tol and rel_tol cannot both be zero"));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            max_intervals: 4000,
            abs_tol: 0.0,
            rel_tol: 1e-10,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod rule with the QUADPACK error heuristic.
fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel {
        a,
        b,
        value: res_k * half,
        error,
    }
}

/// Integrate `f` over the partition given by `breakpoints`, bisecting the
/// worst panel until the total error estimate meets the tolerance.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral> {
    spec.validate()?;
    if breakpoints.len() < 2 {
        return Err(Error::usage("quadrature: need at least two breakpoints"));
    }
    let mut heap = BinaryHeap::with_capacity(2 * breakpoints.len());
    for w in breakpoints.windows(2) {
        heap.push(kronrod15(&mut f, w[0], w[1]));
    }
    let mut total: f64 = heap.iter().map(|p| p.value).sum();
    let mut err: f64 = heap.iter().map(|p| p.error).sum();
    while err > spec.tolerance(total) {
        if heap.len() >= spec.max_intervals {
            // Recompute before judging, in case running sums drifted.
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
            if err <= spec.tolerance(total) {
                break;
            }
            return Err(Error::Accuracy {
                estimate: err,
                tolerance: spec.tolerance(total),
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod15(&mut f, worst.a, mid);
        let right = kronrod15(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let total: f64 = heap.iter().map(|p| p.value).sum();
    let err: f64 = heap.iter().map(|p| p.error).sum();
    Ok(Integral {
        value: total,
        abs_error: err,
        intervals: heap.len(),
    })
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    integrate_panels(f, &[a, b], spec)
}

/// Iterated 2D integral `∫∫ f(x, y) dy dx` over the rectangle spanned by the
/// two partitions. The inner integral runs with a tolerance ten times
/// tighter than the outer one.
pub fn integrate_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    x_breaks: &[f64],
    y_breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral> {
    let inner_spec = QuadratureSpec {
        max_intervals: spec.max_intervals,
        abs_tol: spec.abs_tol * 0.1,
        rel_tol: spec.rel_tol * 0.1,
    };
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let mut inner_err_max: f64 = 0.0;
    let outer = integrate_panels(
        |x| {
            if failure.borrow().is_some() {
                return 0.0;
            }
            match integrate_panels(|y| f(x, y), y_breaks, &inner_spec) {
                Ok(r) => {
                    inner_err_max = inner_err_max.max(r.abs_error);
                    r.value
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        },
        x_breaks,
        spec,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer?;
    let span = (x_breaks[x_breaks.len() - 1] - x_breaks[0]).abs();
    Ok(Integral {
        value: outer.value,
        abs_error: outer.abs_error + inner_err_max * span,
        intervals: outer.intervals,
    })
}

/// Evenly spaced breakpoints `a = x_0 < ... < x_n = b`.
pub fn uniform_breaks(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let n = panels.max(1);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}
