//! First passage of the spectrally negative process `Y` and the joint law
//! of its running infimum and terminal value.

use super::{describe, require_positive, Method, ProbabilityEstimate};
use crate::error::{Error, Result};
use crate::models::LevyModel;
use crate::quadrature::{
    integrate_finite, integrate_power_endpoint_with_distances, integrate_semi_infinite,
    integrate_with_breakpoints, ErrorSlot, IntegralResult, QuadSpec,
};

fn spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        max_subdivisions: 2000,
    }
}

/// `P(S(z) ≤ T)` for `S(z) = inf{t : Y(t) > z}`, from Kendall's identity
/// `P(S(z) ∈ dt) = (z/t) P(Y(t) ∈ dz) dt / dz`.
///
/// For the compound Poisson family `Y(t) = ct - J(t)` reaches `z` without
/// jumps at `t = z/c` with probability `e^{-λz/c}`; that atom is added
/// separately.
pub fn kendall_first_passage_cdf(
    m: &LevyModel,
    z: f64,
    horizon: f64,
) -> Result<ProbabilityEstimate> {
    require_positive("z", z)?;
    require_positive("horizon", horizon)?;
    let (start, atom) = match m {
        LevyModel::CompoundPoissonDrift(cp) => {
            let first = z / cp.drift();
            if horizon < first {
                return Ok(ProbabilityEstimate::exact(0.0, "the level cannot be reached before z/c"));
            }
            (first, cp.atom_mass(first))
        }
        _ => (0.0, 0.0),
    };
    let mut pts = vec![start];
    for k in (1..=6).rev() {
        let p = start + (horizon - start) / f64::from(1 << k);
        pts.push(p);
    }
    pts.push(horizon);

    let slot = ErrorSlot::new();
    let r = integrate_with_breakpoints(
        |t: f64| z / t * slot.guard(m.passage_density(z, t)),
        &pts,
        &spec(),
    );
    let r = slot
        .finish(r)?
        .require_converged(&format!("first-passage integral (z={z}, T={horizon})"))?;
    Ok(ProbabilityEstimate::clamped(
        atom + r.value,
        r.error_estimate,
        Method::Quadrature,
        describe("∫ (z/t) p(z,t) dt", &r),
    ))
}

fn require_joint_model(m: &LevyModel) -> Result<()> {
    if let LevyModel::CompoundPoissonDrift(_) = m {
        return Err(Error::UnsupportedModel(
            "the joint infimum law needs absolutely continuous marginals".into(),
        ));
    }
    Ok(())
}

fn joint_density_integral(m: &LevyModel, x: f64, z: f64, horizon: f64) -> Result<IntegralResult> {
    if z <= 0.0 {
        return Ok(IntegralResult::ZERO);
    }
    // Both factors vanish at the ends: p(-x, s) → 0 as s → 0 and
    // p(z, T-s) → 0 as s → T, so no singular weight is declared.
    let slot = ErrorSlot::new();
    let r = integrate_power_endpoint_with_distances(
        |_, s, tau| {
            let v = m
                .passage_density(-x, s)
                .and_then(|left| Ok(left * m.passage_density(z, tau)?));
            z / tau * slot.guard(v)
        },
        0.0,
        horizon,
        0.0,
        0.0,
        &spec(),
    );
    slot.finish(r)?
        .require_converged(&format!("joint infimum density (x={x}, z={z}, T={horizon})"))
}

/// Density in `z` of the defective law
/// `P(inf_{t≤T} Y(t) < -x, Y(T) + x ∈ dz)`:
/// `∫_0^T z/(T-s) p(z, T-s) p(-x, s) ds` with `p` the density of `Y`.
pub fn joint_inf_terminal_density(m: &LevyModel, x: f64, z: f64, horizon: f64) -> Result<f64> {
    require_positive("x", x)?;
    require_positive("z", z)?;
    require_positive("horizon", horizon)?;
    require_joint_model(m)?;
    Ok(joint_density_integral(m, x, z, horizon)?.value)
}

/// `P(inf_{t≤T} Y(t) < -x, Y(T) + x ∈ (z_lo, z_hi])`, integrating the
/// joint density over the bin; `z_hi` may be infinite.
pub fn joint_inf_terminal_mass(
    m: &LevyModel,
    x: f64,
    z_lo: f64,
    z_hi: f64,
    horizon: f64,
) -> Result<ProbabilityEstimate> {
    require_positive("x", x)?;
    require_positive("horizon", horizon)?;
    require_joint_model(m)?;
    if !(z_lo >= 0.0 && z_hi > z_lo) {
        return Err(crate::error::invalid(format!(
            "bin must satisfy 0 <= z_lo < z_hi, got ({z_lo}, {z_hi}]"
        )));
    }
    let slot = ErrorSlot::new();
    let density = |z: f64| slot.guard(joint_density_integral(m, x, z, horizon).map(|r| r.value));
    let outer = QuadSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-8,
        max_subdivisions: 500,
    };
    let r = if z_hi.is_infinite() {
        integrate_semi_infinite(density, z_lo, &outer)
    } else {
        integrate_finite(density, z_lo, z_hi, &outer)
    };
    let r = slot
        .finish(r)?
        .require_converged(&format!("joint infimum mass over ({z_lo}, {z_hi}]"))?;
    Ok(ProbabilityEstimate::clamped(
        r.value,
        r.error_estimate,
        Method::Quadrature,
        describe("∫ joint density dz", &r),
    ))
}
