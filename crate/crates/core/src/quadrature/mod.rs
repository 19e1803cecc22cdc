//! Adaptive one-dimensional quadrature.
//!
//! Everything here is built on a globally adaptive bisection scheme driven by
//! the 10/21-point Gauss–Kronrod pair. The rule is open, so integrands are
//! never evaluated at interval endpoints and integrable endpoint
//! singularities are tolerated. Dedicated entry points handle semi-infinite
//! ranges, oscillatory integrands with a decaying envelope, and declared
//! power-law endpoint behaviour.
//!
//! Non-convergence is reported through [`IntegralResult::converged`] rather
//! than as an error; a non-finite integrand value is a hard error.

mod kronrod;

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::Add;

use crate::error::{invalid, Error, Result};
use kronrod::{gk21, Panel, EVALS_PER_PANEL};

/// Tolerance contract for an integration call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol >= 0.0 && rel_tol >= 0.0) {
            return Err(invalid("tolerances must be non-negative"));
        }
        if abs_tol == 0.0 && rel_tol == 0.0 {
            return Err(invalid("abs_tol and rel_tol cannot both be zero"));
        }
        if max_subdivisions == 0 {
            return Err(invalid("max_subdivisions must be at least 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    /// Target error for an integral of the given magnitude.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

/// Value of an integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegralResult {
    pub const ZERO: IntegralResult = IntegralResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    };

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    /// Turns a soft non-convergence into an error naming the integral.
    pub fn require_converged(self, what: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                what: what.to_string(),
                value: self.value,
                error_estimate: self.error_estimate,
            })
        }
    }
}

impl Add for IntegralResult {
    type Output = IntegralResult;

    fn add(self, rhs: Self) -> Self {
        IntegralResult {
            value: self.value + rhs.value,
            error_estimate: self.error_estimate + rhs.error_estimate,
            evaluations: self.evaluations + rhs.evaluations,
            converged: self.converged && rhs.converged,
        }
    }
}

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(invalid(format!(
            "finite interval required, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(invalid(format!("interval is reversed: [{a}, {b}]")));
    }
    Ok(())
}

/// Integrates `f` over `[a, b]`.
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<IntegralResult> {
    check_interval(a, b)?;
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Integrates `f` over `[points[0], points[last]]`, starting the adaptive
/// scheme from the panels delimited by `points` (which must be sorted).
/// Error control is global across all panels.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadSpec,
) -> Result<IntegralResult> {
    if points.len() < 2 {
        return Err(invalid("at least two breakpoints are required"));
    }
    for w in points.windows(2) {
        check_interval(w[0], w[1])?;
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[0] < w[1] {
            heap.push(ByError(gk21(&f, w[0], w[1])?));
            evaluations += EVALS_PER_PANEL;
        }
    }
    if heap.is_empty() {
        return Ok(IntegralResult::ZERO);
    }

    let totals = |heap: &BinaryHeap<ByError>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.0.value, e + p.0.error))
    };

    let (mut value, mut error) = totals(&heap);
    while error > spec.tolerance(value) && heap.len() < spec.max_subdivisions {
        let worst = heap.pop().expect("heap is non-empty").0;
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(ByError(worst));
            break;
        }
        let left = gk21(&f, worst.a, mid)?;
        let right = gk21(&f, mid, worst.b)?;
        evaluations += 2 * EVALS_PER_PANEL;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        // Re-sum occasionally so incremental updates do not drift.
        if heap.len() % 64 == 0 {
            (value, error) = totals(&heap);
        }
    }
    (value, error) = totals(&heap);

    Ok(IntegralResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= spec.tolerance(value),
    })
}

/// Integrates a monotonically decaying `f` over `(a, ∞)` through the map
/// `x = a + t / (1 - t)`, `t ∈ (0, 1)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    spec: &QuadSpec,
) -> Result<IntegralResult> {
    if !a.is_finite() {
        return Err(invalid(format!("lower limit must be finite, got {a}")));
    }
    integrate_finite(
        |t: f64| {
            let one_minus = 1.0 - t;
            let x = a + t / one_minus;
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v / (one_minus * one_minus)
            }
        },
        0.0,
        1.0,
        spec,
    )
}

const MAX_OSCILLATORY_SEGMENTS: usize = 200_000;

/// Integrates an oscillatory `f` over `(a, ∞)` on consecutive segments of
/// length `segment`. `tail_bound(x)` must bound `∫_x^∞ |f|`; integration
/// stops once it falls below `abs_tol / 10` and the bound is added to the
/// error estimate.
pub fn integrate_oscillatory<F, B>(
    f: F,
    a: f64,
    segment: f64,
    tail_bound: B,
    spec: &QuadSpec,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    if !(segment > 0.0 && segment.is_finite()) {
        return Err(invalid(format!("segment length must be positive, got {segment}")));
    }
    if !a.is_finite() {
        return Err(invalid(format!("lower limit must be finite, got {a}")));
    }
    let cutoff = spec.abs_tol / 10.0;
    let mut total = IntegralResult::ZERO;
    let mut x = a;
    for _ in 0..MAX_OSCILLATORY_SEGMENTS {
        let bound = tail_bound(x);
        if bound < cutoff {
            total.error_estimate += bound;
            return Ok(total);
        }
        let next = x + segment;
        total = total + integrate_finite(&f, x, next, spec)?;
        x = next;
    }
    total.error_estimate += tail_bound(x);
    total.converged = false;
    Ok(total)
}

/// Integrates `(x-a)^p_left · (b-x)^p_right · f_smooth(x)` over `[a, b]`.
///
/// Each half of the interval is mapped by `x - a = w^{1/(1+p_left)}` (and
/// the mirror image on the right), which absorbs the singular factor
/// exactly; the transformed integrand is bounded.
pub fn integrate_power_endpoint<F: Fn(f64) -> f64>(
    f_smooth: F,
    a: f64,
    b: f64,
    p_left: f64,
    p_right: f64,
    spec: &QuadSpec,
) -> Result<IntegralResult> {
    integrate_power_endpoint_with_distances(
        |x: f64, _: f64, _: f64| f_smooth(x),
        a,
        b,
        p_left,
        p_right,
        spec,
    )
}

/// Same as [`integrate_power_endpoint`], but `f_smooth` also receives the
/// distances `x - a` and `b - x`, computed without cancellation.
pub fn integrate_power_endpoint_with_distances<F: Fn(f64, f64, f64) -> f64>(
    f_smooth: F,
    a: f64,
    b: f64,
    p_left: f64,
    p_right: f64,
    spec: &QuadSpec,
) -> Result<IntegralResult> {
    check_interval(a, b)?;
    for p in [p_left, p_right] {
        if !(p > -1.0) {
            return Err(Error::NotIntegrable { exponent: p });
        }
    }
    if a == b {
        return Ok(IntegralResult::ZERO);
    }

    let half = 0.5 * (b - a);
    let el = 1.0 + p_left;
    let er = 1.0 + p_right;

    let left = integrate_finite(
        |w: f64| {
            let dl = w.powf(1.0 / el);
            let dr = (b - a) - dl;
            f_smooth(a + dl, dl, dr) * power(dr, p_right) / el
        },
        0.0,
        half.powf(el),
        spec,
    )?;
    let right = integrate_finite(
        |w: f64| {
            let dr = w.powf(1.0 / er);
            let dl = (b - a) - dr;
            f_smooth(b - dr, dl, dr) * power(dl, p_left) / er
        },
        0.0,
        half.powf(er),
        spec,
    )?;
    Ok(left + right)
}

fn power(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.powf(p)
    }
}

/// Captures the first error raised inside an integrand, which must itself
/// return a plain `f64`. The integrand reports NaN after a failure so the
/// quadrature aborts promptly.
pub(crate) struct ErrorSlot(RefCell<Option<Error>>);

impl ErrorSlot {
    pub fn new() -> Self {
        Self(RefCell::new(None))
    }

    pub fn guard(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    /// Prefers the captured inner error over the quadrature's own.
    pub fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}
