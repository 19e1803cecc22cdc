//! Supremum laws for the finite-variation compound Poisson family.
//!
//! The Stieltjes measure `d_s P(J(s) - cs ≤ u)` is the space density of
//! `J(s) - cs` at `u` times `ds`; for `u > 0` the atom of `J(s)` at zero
//! never contributes.

use std::f64::consts::PI;

use super::time_axis::integrate_time_axis;
use super::{describe, require_positive, Method, ProbabilityEstimate};
use crate::error::Result;
use crate::models::CompoundPoissonDrift;
use crate::quadrature::{
    integrate_finite, integrate_power_endpoint_with_distances, QuadSpec,
};

fn spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        max_subdivisions: 2000,
    }
}

/// `P(sup_{t≤T} (J(t) - ct) > u)
///  = P(J(T) - cT > u) + ∫_0^T E(J(T-s)/(T-s) - c)^- d_s P(J(s) - cs ≤ u)`.
pub fn takacs_finite(m: &CompoundPoissonDrift, u: f64, horizon: f64) -> Result<ProbabilityEstimate> {
    require_positive("u", u)?;
    require_positive("horizon", horizon)?;
    let tail = m.tail_prob(u, horizon);
    let c = m.drift();
    let r = integrate_power_endpoint_with_distances(
        |_, s, tau| m.neg_part_mean_ratio(tau) * m.jump_sum_density(u + c * s, s),
        0.0,
        horizon,
        0.0,
        0.0,
        &spec(),
    )?
    .require_converged(&format!("finite-horizon jump integral (u={u}, T={horizon})"))?;
    Ok(ProbabilityEstimate::clamped(
        tail + r.value,
        r.error_estimate,
        Method::Quadrature,
        format!("P(X(T)>u) = {tail:.6e}; {}", describe("kernel integral", &r)),
    ))
}

/// `P(sup_{t<∞} (J(t) - ct) > u)`: one if `E J(1) ≥ c`, else
/// `(c - E J(1)) ∫_0^∞ d_s P(J(s) - cs ≤ u)`.
pub fn takacs_infinite(m: &CompoundPoissonDrift, u: f64) -> Result<ProbabilityEstimate> {
    require_positive("u", u)?;
    let mean = m.jump_mean_rate();
    let c = m.drift();
    if mean >= c {
        return Ok(ProbabilityEstimate::exact(
            1.0,
            format!("E J(1) = {mean} >= c = {c}: ruin is certain"),
        ));
    }
    let scale = (u / c).max(1.0 / m.jump_rate()).max(1e-3);
    let r = integrate_time_axis(
        |s| Ok(m.jump_sum_density(u + c * s, s)),
        scale,
        "infinite-horizon jump integral",
    )?
    .scale(c - mean);
    Ok(ProbabilityEstimate::clamped(
        r.value,
        r.error_estimate,
        Method::Quadrature,
        describe("(c - E J(1)) ∫ density ds", &r),
    ))
}

/// Absolutely continuous density of `J(s)` at `y > 0` through the Bessel
/// form `e^{-λs-μy} √(λsμ/y) I_1(2√(λsμy))`, with
/// `I_1(x) = π^{-1} ∫_0^π e^{x cos θ} cos θ dθ`.
fn jump_sum_density_bessel(m: &CompoundPoissonDrift, y: f64, s: f64) -> Result<f64> {
    let lam = m.jump_rate() * s;
    let mu_y = m.jump_size_rate() * y;
    let x = 2.0 * (lam * mu_y).sqrt();
    let decay = lam + mu_y;
    let inner = integrate_finite(
        |theta: f64| (x * theta.cos() - decay).exp() * theta.cos(),
        0.0,
        PI,
        &QuadSpec {
            abs_tol: 1e-300,
            rel_tol: 1e-13,
            max_subdivisions: 500,
        },
    )?;
    Ok((lam * m.jump_size_rate() / y).sqrt() * inner.value / PI)
}

/// `P(sup_{t≤T} (ct - J(t)) > u) = u ∫_0^T s^{-1} d_s P(cs - J(s) ≤ u)`.
///
/// The measure has an absolutely continuous part with density
/// `f_J(cs - u, s)` on `s > u/c`, and, from the atom of `J(s)` at zero, a
/// point mass `e^{-λu/c}/c` at `s = u/c`.
pub fn drift_minus_jumps_sup(
    m: &CompoundPoissonDrift,
    u: f64,
    horizon: f64,
) -> Result<ProbabilityEstimate> {
    require_positive("u", u)?;
    require_positive("horizon", horizon)?;
    let c = m.drift();
    let start = u / c;
    if horizon <= start {
        return Ok(ProbabilityEstimate::exact(
            0.0,
            "the level cannot be reached before u/c",
        ));
    }
    let atom = m.atom_mass(start);
    let slot = crate::quadrature::ErrorSlot::new();
    let r = integrate_power_endpoint_with_distances(
        |s, dl, _| slot.guard(jump_sum_density_bessel(m, dl * c, s)) / s,
        start,
        horizon,
        0.0,
        0.0,
        &spec(),
    );
    let r = slot
        .finish(r)?
        .require_converged(&format!("drift-minus-jumps passage integral (u={u}, T={horizon})"))?
        .scale(u);
    Ok(ProbabilityEstimate::clamped(
        atom + r.value,
        r.error_estimate,
        Method::Quadrature,
        format!("atom e^(-λu/c) = {atom:.6e}; {}", describe("u ∫ s^-1 density ds", &r)),
    ))
}
