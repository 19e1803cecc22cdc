use std::f64::consts::PI;

use super::time_axis::integrate_time_axis;
use super::{describe, require_positive, Method, ProbabilityEstimate};
use crate::error::{invalid, Error, Result};
use crate::models::LevyModel;
use crate::quadrature::{integrate_power_endpoint_with_distances, ErrorSlot, QuadSpec};
use crate::special::mittag_leffler_with_error;
use crate::stable::{stable_tail, StableParams};

fn sup_spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-8,
        max_subdivisions: 2000,
    }
}

/// Singular exponents of the finite-horizon integrand at `s = 0` and
/// `s = T`: the density scaling near the start and the negative-part
/// kernel near the end.
fn endpoint_exponents(m: &LevyModel) -> (f64, f64) {
    match m {
        LevyModel::StableDrift(s) => (-1.0 / s.alpha(), 1.0 / s.alpha() - 1.0),
        LevyModel::PerturbedCompoundPoisson(p) => {
            let a = p.perturbation().alpha();
            (-1.0 / a, 1.0 / a - 1.0)
        }
        _ => (-0.5, -0.5),
    }
}

fn require_continuous_supremum_model(m: &LevyModel) -> Result<()> {
    match m {
        LevyModel::CompoundPoissonDrift(_) => Err(Error::UnsupportedModel(
            "compound Poisson has finite variation; use takacs_finite / takacs_infinite".into(),
        )),
        LevyModel::SpectrallyNegativeStable(_) => Err(Error::UnsupportedModel(
            "the spectrally negative stable supremum is given by spectrally_negative_sup".into(),
        )),
        _ => Ok(()),
    }
}

/// `P(sup_{t≤T} X(t) > u) = P(X(T) > u) + ∫_0^T E(X(T-s))^-/(T-s) f(u,s) ds`.
pub fn sup_finite(m: &LevyModel, u: f64, horizon: f64) -> Result<ProbabilityEstimate> {
    require_positive("u", u)?;
    require_positive("horizon", horizon)?;
    require_continuous_supremum_model(m)?;

    let tail = m.tail_prob(u, horizon)?;
    let (p_left, p_right) = endpoint_exponents(m);
    let slot = ErrorSlot::new();
    let r = integrate_power_endpoint_with_distances(
        |_, s, tau| {
            let v = m
                .density(u, s)
                .and_then(|f| Ok(f * m.neg_part_mean_ratio(tau)?));
            slot.guard(v) / (s.powf(p_left) * tau.powf(p_right))
        },
        0.0,
        horizon,
        p_left,
        p_right,
        &sup_spec(),
    );
    let r = slot
        .finish(r)?
        .require_converged(&format!("finite-horizon supremum integral (u={u}, T={horizon})"))?;
    Ok(ProbabilityEstimate::clamped(
        tail + r.value,
        r.error_estimate,
        Method::Quadrature,
        format!("P(X(T)>u) = {tail:.6e}; {}", describe("kernel integral", &r)),
    ))
}

/// `P(sup_{t<∞} X(t) > u)`: one if `E X(1) ≥ 0`, else
/// `|E X(1)| ∫_0^∞ f(u,s) ds`.
pub fn sup_infinite(m: &LevyModel, u: f64) -> Result<ProbabilityEstimate> {
    require_positive("u", u)?;
    if matches!(m, LevyModel::CompoundPoissonDrift(_)) {
        return Err(Error::UnsupportedModel(
            "compound Poisson has finite variation; use takacs_infinite".into(),
        ));
    }
    let mean = m.mean_rate();
    if mean >= 0.0 {
        return Ok(ProbabilityEstimate::exact(
            1.0,
            format!("E X(1) = {mean} >= 0: the supremum is infinite almost surely"),
        ));
    }
    // Mass of f(u, ·) sits around the time the drift needs to cover u.
    let scale = (u / mean.abs()).max(1e-3);
    let r = integrate_time_axis(|s| m.density(u, s), scale, "infinite-horizon supremum")?;
    let r = r.scale(mean.abs());
    Ok(ProbabilityEstimate::clamped(
        r.value,
        r.error_estimate,
        Method::Quadrature,
        describe("|E X(1)| ∫ f(u,s) ds", &r),
    ))
}

/// Mittag-Leffler closed form of the infinite-horizon supremum for the
/// unit-scale stable process with drift: `E_{α-1}(-a u^{α-1})`,
/// `a = c cos(π(α-2)/2)`.
pub fn sup_infinite_stable_ml(alpha: f64, drift: f64, u: f64) -> Result<ProbabilityEstimate> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid(format!("alpha must lie in (1, 2], got {alpha}")));
    }
    require_positive("drift", drift)?;
    require_positive("u", u)?;
    let a = drift * (PI * (alpha - 2.0) / 2.0).cos();
    let rho = alpha - 1.0;
    let (value, err) = mittag_leffler_with_error(rho, -a * u.powf(rho))?;
    Ok(ProbabilityEstimate::clamped(
        value,
        err,
        Method::Series,
        format!("E_{rho}(-{a} u^{rho})"),
    ))
}

/// `P(sup_{t≤T} Z(t) > u) = α P(Z(T) > u)` for the driftless spectrally
/// negative stable process with scale `σ`.
pub fn spectrally_negative_sup(
    alpha: f64,
    sigma: f64,
    u: f64,
    horizon: f64,
) -> Result<ProbabilityEstimate> {
    if !(u >= 0.0 && u.is_finite()) {
        return Err(invalid(format!("u must be non-negative, got {u}")));
    }
    require_positive("horizon", horizon)?;
    let p = StableParams::new(alpha, -1.0, sigma, 0.0)?.at_time(horizon)?;
    let tail = stable_tail(u, &p)?;
    Ok(ProbabilityEstimate::clamped(
        alpha * tail,
        alpha * 1e-12,
        Method::Quadrature,
        format!("alpha * P(Z(T) > u) with P = {tail:.17e}"),
    ))
}
