//! Fourier-inversion evaluation of the standard spectrally positive law,
//! kept independent of the Zolotarev route so the two can check each other.
//!
//! ```text
//! pdf(x)    = 1/π ∫_0^∞ e^{-t^α} cos(t x - t^α tan(πα/2)) dt
//! P(Z > x)  = 1/2 + 1/π ∫_0^∞ e^{-t^α} sin(t^α tan(πα/2) - t x) / t dt
//! ```

use std::f64::consts::PI;

use crate::error::Result;
use crate::quadrature::{integrate_oscillatory, IntegralResult, QuadSpec};

fn spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_subdivisions: 2000,
    }
}

fn segment_length(x: f64) -> f64 {
    (4.0 * PI / x.abs()).min(1.0)
}

/// `∫_T^∞ e^{-t^α} t^{-k} dt ≤ e^{-T^α} / (α T^{α-1+k})` for `T ≥ 1`.
fn envelope_tail(alpha: f64, k: f64, t: f64) -> f64 {
    if t < 1.0 {
        f64::INFINITY
    } else {
        (-t.powf(alpha)).exp() / (alpha * t.powf(alpha - 1.0 + k))
    }
}

pub(crate) fn density_positive(alpha: f64, x: f64) -> Result<IntegralResult> {
    let tan = (0.5 * PI * alpha).tan();
    let r = integrate_oscillatory(
        |t: f64| {
            let ta = t.powf(alpha);
            (-ta).exp() * (t * x - ta * tan).cos()
        },
        0.0,
        segment_length(x),
        |t| envelope_tail(alpha, 0.0, t),
        &spec(),
    )?;
    Ok(r.scale(1.0 / PI))
}

pub(crate) fn tail_positive(alpha: f64, x: f64) -> Result<IntegralResult> {
    let tan = (0.5 * PI * alpha).tan();
    let r = integrate_oscillatory(
        |t: f64| {
            let ta = t.powf(alpha);
            (-ta).exp() * (ta * tan - t * x).sin() / t
        },
        0.0,
        segment_length(x),
        |t| envelope_tail(alpha, 1.0, t),
        &spec(),
    )?;
    let mut r = r.scale(1.0 / PI);
    r.value += 0.5;
    Ok(r)
}
