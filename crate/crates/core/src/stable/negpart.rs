//! `E(Z - k)^-` for the standard spectrally positive law.
//!
//! Uses `E|Z - k| = 2/π ∫_0^∞ (1 - Re φ(t) e^{-itk}) / t² dt` together with
//! `E Z = 0`, so that `E(Z - k)^- = (E|Z - k| + k) / 2`. The numerator is
//! written as `-expm1(-t^α) + 2 e^{-t^α} sin²(b/2)` to keep it accurate near
//! the origin, where it behaves like `t^α`. Beyond `T0 = 39^{1/α}` the
//! characteristic function is below `e^{-39}` and the remaining integral of
//! `1/t²` is added exactly.

use std::f64::consts::PI;

use crate::error::Result;
use crate::quadrature::{
    integrate_power_endpoint, integrate_with_breakpoints, IntegralResult, QuadSpec,
};

const CUTOFF_EXPONENT: f64 = 39.0;

pub(crate) fn neg_part_standard(alpha: f64, k: f64) -> Result<IntegralResult> {
    let tan = (0.5 * PI * alpha).tan();
    let numerator = |t: f64| {
        let ta = t.powf(alpha);
        let b = ta * tan - t * k;
        let s = (0.5 * b).sin();
        -(-ta).exp_m1() + 2.0 * (-ta).exp() * s * s
    };
    let t0 = CUTOFF_EXPONENT.powf(1.0 / alpha);
    let period = 2.0 * PI / k.abs().max(1.0);
    let first = period.min(t0);

    let spec = QuadSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_subdivisions: 2000,
    };
    let head = integrate_power_endpoint(
        |t: f64| numerator(t) / t.powf(alpha),
        0.0,
        first,
        alpha - 2.0,
        0.0,
        &spec,
    )?;

    let mut points = vec![first];
    while *points.last().unwrap() < t0 {
        points.push((points.last().unwrap() + period).min(t0));
    }
    let body = if points.len() > 1 {
        let spec = QuadSpec {
            max_subdivisions: 2000 + 4 * points.len(),
            ..spec
        };
        integrate_with_breakpoints(|t: f64| numerator(t) / (t * t), &points, &spec)?
    } else {
        IntegralResult::ZERO
    };

    let mut total = head + body;
    total.value += 1.0 / t0;
    total.error_estimate += (-CUTOFF_EXPONENT).exp() / t0;
    let abs_dev = total.scale(2.0 / PI);
    Ok(IntegralResult {
        value: (0.5 * (abs_dev.value + k)).max(0.0),
        error_estimate: 0.5 * abs_dev.error_estimate,
        ..abs_dev
    })
}
