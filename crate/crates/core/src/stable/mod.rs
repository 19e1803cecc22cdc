//! Spectrally one-sided stable laws with `1 < α ≤ 2`.
//!
//! Densities and tails are evaluated through the Zolotarev integral
//! representation on the positive half-line of the standardized variable.
//! Negative arguments and `β = -1` are mapped onto it by reflection, so
//! `pdf(x; β=-1)` and `pdf(-x; β=+1)` run the same code path. Scale and
//! shift enter through `f_{σ,μ}(x) = f((x-μ)/σ)/σ`. At `α = 2` the law is
//! `N(μ, 2σ²)`.
//!
//! The Fourier-inversion routes in [`fourier_density`] and [`fourier_tail`]
//! are independent second evaluations used for cross-checking.

mod fourier;
mod negpart;
mod params;
mod sampler;
mod zolotarev;

use std::f64::consts::SQRT_2;

use crate::error::{invalid, Error, Result};
use crate::quadrature::IntegralResult;
use crate::special::{normal_cdf, normal_pdf, normal_sf};
pub use params::StableParams;
pub use sampler::{stable_sample, StableSampler};
use zolotarev::{Kernel, Skew};

/// Below this standardized distance from the origin the origin values are
/// used directly.
const ORIGIN_BAND: f64 = 1e-13;

fn describe(p: &StableParams) -> String {
    format!(
        "alpha={}, beta={}, sigma={}, mu={}",
        p.alpha(),
        p.beta(),
        p.sigma(),
        p.mu()
    )
}

fn converged(r: IntegralResult, what: impl FnOnce() -> String) -> Result<f64> {
    r.require_converged("").map(|r| r.value).map_err(|_| Error::NotConverged {
        what: what(),
        value: r.value,
        error_estimate: r.error_estimate,
    })
}

/// Standard density of skew `skew` at `z`.
fn standard_density(alpha: f64, skew: Skew, z: f64) -> Result<IntegralResult> {
    if z.abs() < ORIGIN_BAND {
        return Ok(IntegralResult {
            value: Kernel::density_at_zero(alpha),
            ..IntegralResult::ZERO
        });
    }
    if z > 0.0 {
        Kernel::new(alpha, skew).density(z)
    } else {
        Kernel::new(alpha, skew.opposite()).density(-z)
    }
}

/// Standard upper tail of skew `skew` at `z`; `lower` selects `P(Z ≤ z)`.
fn standard_tail(alpha: f64, skew: Skew, z: f64, lower: bool) -> Result<IntegralResult> {
    let complement = |r: IntegralResult| IntegralResult {
        value: 1.0 - r.value,
        ..r
    };
    if z.abs() < ORIGIN_BAND {
        let upper = Kernel::new(alpha, skew).tail_at_zero() - z * Kernel::density_at_zero(alpha);
        let value = if lower { 1.0 - upper } else { upper };
        return Ok(IntegralResult {
            value,
            ..IntegralResult::ZERO
        });
    }
    if z > 0.0 {
        let r = Kernel::new(alpha, skew).tail(z)?;
        Ok(if lower { complement(r) } else { r })
    } else {
        // P(Z > z) = 1 - P(-Z > -z), and -Z has the opposite skew.
        let r = Kernel::new(alpha, skew.opposite()).tail(-z)?;
        Ok(if lower { r } else { complement(r) })
    }
}

/// Density of the stable law `p` at `x`.
pub fn stable_pdf(x: f64, p: &StableParams) -> Result<f64> {
    if !x.is_finite() {
        return Err(invalid(format!("density argument must be finite, got {x}")));
    }
    if p.is_gaussian() {
        let s = SQRT_2 * p.sigma();
        return Ok(normal_pdf((x - p.mu()) / s) / s);
    }
    let z = (x - p.mu()) / p.sigma();
    let r = standard_density(p.alpha(), Skew::of(p.beta()), z)?;
    converged(r, || format!("stable density at x={x} ({})", describe(p))).map(|v| v / p.sigma())
}

/// `P(X > u)` for `X` with the stable law `p`.
pub fn stable_tail(u: f64, p: &StableParams) -> Result<f64> {
    tail_or_cdf(u, p, false)
}

/// `P(X ≤ x)`, accurate in the lower tail.
pub fn stable_cdf(x: f64, p: &StableParams) -> Result<f64> {
    tail_or_cdf(x, p, true)
}

fn tail_or_cdf(u: f64, p: &StableParams, lower: bool) -> Result<f64> {
    if u.is_nan() {
        return Err(invalid("tail argument is NaN"));
    }
    if u.is_infinite() {
        let upper = if u > 0.0 { 0.0 } else { 1.0 };
        return Ok(if lower { 1.0 - upper } else { upper });
    }
    if p.is_gaussian() {
        let z = (u - p.mu()) / (SQRT_2 * p.sigma());
        return Ok(if lower { normal_cdf(z) } else { normal_sf(z) });
    }
    let z = (u - p.mu()) / p.sigma();
    let r = standard_tail(p.alpha(), Skew::of(p.beta()), z, lower)?;
    converged(r, || format!("stable tail at u={u} ({})", describe(p))).map(|v| v.clamp(0.0, 1.0))
}

/// Density via Fourier inversion of the characteristic function; an
/// independent check on [`stable_pdf`].
pub fn fourier_density(x: f64, p: &StableParams) -> Result<f64> {
    if p.is_gaussian() {
        return stable_pdf(x, p);
    }
    let z = (x - p.mu()) / p.sigma();
    let z = if p.beta() > 0.0 { z } else { -z };
    let r = fourier::density_positive(p.alpha(), z)?;
    converged(r, || format!("Fourier density at x={x} ({})", describe(p))).map(|v| v / p.sigma())
}

/// `P(X > u)` via the Gil-Pelaez inversion formula; an independent check on
/// [`stable_tail`].
pub fn fourier_tail(u: f64, p: &StableParams) -> Result<f64> {
    if p.is_gaussian() {
        return stable_tail(u, p);
    }
    let z = (u - p.mu()) / p.sigma();
    if p.beta() > 0.0 {
        let r = fourier::tail_positive(p.alpha(), z)?;
        converged(r, || format!("Fourier tail at u={u} ({})", describe(p)))
    } else {
        let r = fourier::tail_positive(p.alpha(), -z)?;
        converged(r, || format!("Fourier tail at u={u} ({})", describe(p))).map(|v| 1.0 - v)
    }
}

/// `E(Z - c)^- = E max(c - Z, 0)` for `Z` with the spectrally positive law
/// `p` (`β = +1`, `μ = 0`).
pub fn neg_part_mean_unit(p: &StableParams, c: f64) -> Result<f64> {
    if !c.is_finite() {
        return Err(invalid(format!("level must be finite, got {c}")));
    }
    if p.mu() != 0.0 {
        return Err(invalid("negative-part mean requires mu = 0"));
    }
    if p.is_gaussian() {
        // Z ~ N(0, s²): E(c - Z)^+ = c Φ(c/s) + s φ(c/s)
        let s = SQRT_2 * p.sigma();
        return Ok((c * normal_cdf(c / s) + s * normal_pdf(c / s)).max(0.0));
    }
    if p.beta() != 1.0 {
        return Err(invalid("negative-part mean requires beta = +1"));
    }
    let sigma = p.sigma();
    let r = negpart::neg_part_standard(p.alpha(), c / sigma)?;
    converged(r, || format!("negative-part mean at c={c} ({})", describe(p))).map(|v| v * sigma)
}
