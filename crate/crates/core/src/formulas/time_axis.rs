//! `∫_0^∞ g(s) ds` for time integrands that vanish at the origin and decay
//! at a model-dependent, possibly only algebraic, rate.
//!
//! The integral is taken in `y = ln s`. The upper end is pushed out in
//! steps until a geometric tail estimate, extrapolated from the local decay
//! rate of `e^y g(e^y)`, drops below tolerance; the estimate is added to
//! the value and to the error.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breakpoints, ErrorSlot, IntegralResult, QuadSpec};

const DECADES_BELOW: f64 = 30.0;
const INITIAL_SPAN: f64 = 12.0;
const EXTENSION: f64 = 6.0;
const MAX_LOG_TIME: f64 = 700.0;
const TAIL_TOLERANCE: f64 = 1e-12;

fn spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_subdivisions: 4000,
    }
}

pub(crate) fn integrate_time_axis<G>(g: G, time_scale: f64, what: &str) -> Result<IntegralResult>
where
    G: Fn(f64) -> Result<f64>,
{
    let centre = time_scale.ln();
    let y_lo = centre - DECADES_BELOW;
    let h = |y: f64| -> Result<f64> {
        let s = y.exp();
        Ok(s * g(s)?)
    };

    let slot = ErrorSlot::new();
    let segment = |a: f64, b: f64| -> Result<IntegralResult> {
        let mut pts: Vec<f64> = Vec::new();
        let mut y = a;
        while y < b {
            pts.push(y);
            y += 1.0;
        }
        pts.push(b);
        integrate_with_breakpoints(|y: f64| slot.guard(h(y)), &pts, &spec())
    };

    let mut total = segment(y_lo, centre + INITIAL_SPAN);
    let mut y_hi = centre + INITIAL_SPAN;
    let mut tail = f64::INFINITY;
    while total.is_ok() {
        let end = h(y_hi)?;
        let before = h(y_hi - 1.0)?;
        if end == 0.0 {
            tail = 0.0;
            break;
        }
        if before > 0.0 && end < before {
            let rate = (before / end).ln();
            tail = end / rate;
            if tail < TAIL_TOLERANCE {
                break;
            }
        }
        if y_hi >= MAX_LOG_TIME {
            break;
        }
        let next = (y_hi + EXTENSION).min(MAX_LOG_TIME);
        total = total.and_then(|t| Ok(t + segment(y_hi, next)?));
        y_hi = next;
    }
    let mut r = slot.finish(total)?;

    // Below `y_lo` the integrand vanishes at least linearly in s.
    let head = h(y_lo)?;
    r.value += tail;
    r.error_estimate += tail + head;
    if !(tail < TAIL_TOLERANCE * 10.0) {
        r.converged = false;
    }
    if !r.converged {
        return Err(Error::NotConverged {
            what: format!("{what} (time integral, tail estimate {tail:e})"),
            value: r.value,
            error_estimate: r.error_estimate,
        });
    }
    Ok(r)
}
