//! Gamma function, Mittag-Leffler function and standard normal helpers.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{
    integrate_power_endpoint, integrate_semi_infinite, integrate_with_breakpoints, IntegralResult,
    QuadSpec,
};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Γ(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(x)`; poles return infinity.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x <= 0.0 {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(0.5 * (x + 0.5)) * (-t).exp() * t.powf(0.5 * (x + 0.5)) * acc
}

/// `1 / Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x == x.floor() && x <= 0.0 {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `P(N(0,1) > x)`, accurate in the far right tail.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

const ML_MAX_TERMS: usize = 100_000;
/// Largest absolute error accepted from either Mittag-Leffler expansion.
const ML_ERROR_BUDGET: f64 = 1e-9;

/// Mittag-Leffler function `E_ρ(x) = Σ_{n≥0} x^n / Γ(1 + ρn)` for
/// `0 < ρ ≤ 1`.
///
/// The power series is used while its cancellation loss is acceptable. For
/// large negative arguments the algebraic asymptotic expansion
/// `-Σ_{k≥1} x^{-k} / Γ(1 - ρk)` takes over, and in between a Laplace-type
/// integral of the spectral density is evaluated by quadrature. Arguments
/// none of these reach within the error budget are reported as out of
/// domain.
pub fn mittag_leffler(rho: f64, x: f64) -> Result<f64> {
    mittag_leffler_with_error(rho, x).map(|(value, _)| value)
}

/// [`mittag_leffler`] together with an estimate of its absolute error.
pub fn mittag_leffler_with_error(rho: f64, x: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(invalid(format!("Mittag-Leffler order must lie in (0, 1], got {rho}")));
    }
    if !x.is_finite() {
        return Err(invalid(format!("Mittag-Leffler argument must be finite, got {x}")));
    }
    if x == 0.0 {
        return Ok((1.0, 0.0));
    }
    if rho == 1.0 {
        let v = x.exp();
        return Ok((v, f64::EPSILON * v));
    }

    if let Ok((value, err)) = ml_power_series(rho, x) {
        if err <= ML_ERROR_BUDGET {
            return Ok((value, err));
        }
    }
    if x < 0.0 {
        let (value, err) = ml_asymptotic(rho, x);
        if err <= ML_ERROR_BUDGET {
            return Ok((value, err));
        }
        let r = ml_laplace_integral(rho, -x)?;
        if r.converged && r.error_estimate <= ML_ERROR_BUDGET {
            return Ok((r.value, r.error_estimate));
        }
    }
    Err(Error::Domain(format!(
        "Mittag-Leffler E_{rho}({x}) cannot be evaluated to {ML_ERROR_BUDGET:e} in double precision"
    )))
}

/// Power series value with an estimate of its rounding error.
fn ml_power_series(rho: f64, x: f64) -> Result<(f64, f64)> {
    let ln_abs = x.abs().ln();
    let negative = x < 0.0;
    let mut sum = CompensatedSum::default();
    sum.add(1.0);
    let mut peak: f64 = 1.0;
    let mut previous = 1.0;
    for n in 1..ML_MAX_TERMS {
        let log_term = n as f64 * ln_abs - ln_gamma(1.0 + rho * n as f64);
        if log_term > 700.0 {
            return Err(Error::Domain(format!("Mittag-Leffler series term overflow at x = {x}")));
        }
        let magnitude = log_term.exp();
        let term = if negative && n % 2 == 1 { -magnitude } else { magnitude };
        sum.add(term);
        peak = peak.max(magnitude);
        let value = sum.value();
        if magnitude < 1e-16 * (value.abs() + 1.0) && magnitude < previous {
            return Ok((value, 4.0 * f64::EPSILON * peak));
        }
        previous = magnitude;
    }
    Err(Error::Domain(format!(
        "Mittag-Leffler series did not settle within {ML_MAX_TERMS} terms at x = {x}"
    )))
}

/// Optimally truncated asymptotic expansion for `x → -∞`, with the size of
/// the first omitted term as its error estimate.
fn ml_asymptotic(rho: f64, x: f64) -> (f64, f64) {
    let inv = 1.0 / x;
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    let mut last_magnitude = f64::INFINITY;
    for k in 1..200 {
        power *= inv;
        let term = power * recip_gamma(1.0 - rho * k as f64);
        let magnitude = term.abs();
        if magnitude == 0.0 {
            continue;
        }
        if magnitude > last_magnitude {
            return (-sum.value(), last_magnitude);
        }
        sum.add(term);
        last_magnitude = magnitude;
        if magnitude < 1e-17 {
            return (-sum.value(), magnitude);
        }
    }
    (-sum.value(), last_magnitude)
}

/// `E_ρ(-t) = ∫_0^∞ e^{-r s} K_ρ(r) dr` with `s = t^{1/ρ}`, for `0 < ρ < 1`
/// and `t > 0`, where
/// `K_ρ(r) = sin(πρ) r^{ρ-1} / (π (r^{2ρ} + 2 r^ρ cos(πρ) + 1))`.
fn ml_laplace_integral(rho: f64, t: f64) -> Result<IntegralResult> {
    let (sin, cos) = (PI * rho).sin_cos();
    let s = t.powf(1.0 / rho);
    // Kernel without the r^{ρ-1} factor.
    let smooth = move |r: f64| {
        let p = r.powf(rho);
        (-r * s).exp() * sin / (PI * (p * p + 2.0 * p * cos + 1.0))
    };
    let full = move |r: f64| {
        if r == 0.0 {
            0.0
        } else {
            smooth(r) * r.powf(rho - 1.0)
        }
    };
    let spec = QuadSpec::new(1e-14, 1e-12, 4000)?;
    let head_end = (1.0 / s).min(1.0);
    let head = integrate_power_endpoint(smooth, 0.0, head_end, rho - 1.0, 0.0, &spec)?;
    // The kernel peaks near r^ρ = -cos(πρ) when ρ > 1/2.
    let peak = if cos < 0.0 { (-cos).powf(1.0 / rho) } else { 1.0 };
    let body_end = 2.0 * peak.max(1.0);
    let mut points = vec![head_end];
    for p in [peak, body_end] {
        if p > *points.last().expect("non-empty") {
            points.push(p);
        }
    }
    let body = if points.len() > 1 {
        integrate_with_breakpoints(full, &points, &spec)?
    } else {
        IntegralResult::ZERO
    };
    let tail = integrate_semi_infinite(full, *points.last().expect("non-empty"), &spec)?;
    Ok(head + body + tail)
}
