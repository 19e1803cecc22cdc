use std::f64::consts::PI;

use levysup::formulas::{
    drift_minus_jumps_sup, joint_inf_terminal_density, joint_inf_terminal_mass,
    kendall_first_passage_cdf, spectrally_negative_sup, sup_finite, sup_infinite,
    sup_infinite_stable_ml, takacs_finite, takacs_infinite, Method, ProbabilityEstimate,
};
use levysup::models::{CompoundPoissonDrift, LevyModel};
use levysup::quadrature::{integrate_power_endpoint, QuadSpec};
use levysup::special::{gamma, mittag_leffler, normal_pdf, normal_sf};
use levysup::stable::{fourier_density, fourier_tail, stable_tail, StableParams};
use levysup::Error;

fn reflection(level: f64, horizon: f64) -> f64 {
    2.0 * normal_sf(level / horizon.sqrt())
}

fn assert_probability(e: &ProbabilityEstimate) {
    assert!((0.0..=1.0).contains(&e.value), "{e:?}");
    assert!(e.error_estimate >= 0.0, "{e:?}");
    if e.method == Method::ExactClosedForm {
        assert_eq!(e.error_estimate, 0.0);
    }
}

#[test]
fn brownian_finite_horizon_reflection() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let e = sup_finite(&m, 1.0, 1.0).unwrap();
    assert!((e.value - reflection(1.0, 1.0)).abs() < 1e-5, "{e:?}");
    assert!((e.value - 0.3173105).abs() < 1e-5);
}

#[test]
fn heavy_tail_dominates_large_levels() {
    let m = LevyModel::stable_drift(1.5, 1.0, 0.0).unwrap();
    let e = sup_finite(&m, 1e3, 1.0).unwrap();
    let tail = stable_tail(1e3, &StableParams::new(1.5, 1.0, 1.0, 0.0).unwrap()).unwrap();
    assert!(e.value <= 2e-3);
    // One big jump: P(sup > u) ~ P(X(T) > u) as u → ∞.
    assert!(e.value >= tail && e.value / tail < 1.01, "{} vs {tail}", e.value);
}

/// `E|Z|` for the unit spectrally positive law,
/// `(2/π) Γ(1 - 1/α) (1 + tan²(πα/2))^{1/(2α)} cos(arctan(tan(πα/2)) / α)`.
fn abs_mean(alpha: f64) -> f64 {
    let tan = (PI * alpha / 2.0).tan();
    2.0 / PI
        * gamma(1.0 - 1.0 / alpha)
        * (1.0 + tan * tan).powf(1.0 / (2.0 * alpha))
        * (tan.atan() / alpha).cos()
}

/// Driftless stable case rebuilt from the Fourier-inversion density and
/// tail with the negative-part mean in closed form:
/// `P(Z(T) > u) + E Z^- ∫_0^T (T-s)^{1/α-1} s^{-1/α} f(s^{-1/α} u) ds`.
#[test]
fn driftless_stable_matches_fourier_route() {
    let (alpha, u, horizon) = (1.5, 1.0, 1.0_f64);
    let unit = StableParams::new(alpha, 1.0, 1.0, 0.0).unwrap();
    // Zero mean, so E Z^- = E|Z| / 2.
    let half_mean = abs_mean(alpha) / 2.0;
    let tail = fourier_tail(u * horizon.powf(-1.0 / alpha), &unit).unwrap();
    let kernel = |s: f64| {
        let r = s.powf(-1.0 / alpha);
        r * fourier_density(r * u, &unit).unwrap()
    };
    let spec = QuadSpec::new(1e-12, 1e-10, 2000).unwrap();
    let integral =
        integrate_power_endpoint(kernel, 0.0, horizon, 0.0, 1.0 / alpha - 1.0, &spec).unwrap();
    let route = tail + half_mean * integral.value;

    let m = LevyModel::stable_drift(alpha, 1.0, 0.0).unwrap();
    let e = sup_finite(&m, u, horizon).unwrap();
    assert!((e.value - route).abs() < 2e-6, "{} vs {route}", e.value);
}

#[test]
fn wiener_infinite_horizon() {
    let m = LevyModel::brownian(1.0, 1.0).unwrap();
    let e = sup_infinite(&m, 1.0).unwrap();
    assert!((e.value - (-2.0f64).exp()).abs() < 1e-6, "{e:?}");
}

#[test]
fn stable_infinite_horizon_routes_agree() {
    let (alpha, c) = (1.5, 1.0);
    let m = LevyModel::stable_drift(alpha, 1.0, c).unwrap();
    let a = c * (PI * (alpha - 2.0) / 2.0).cos();
    for u in [1.0, 2.0] {
        let quad = sup_infinite(&m, u).unwrap();
        let closed = mittag_leffler(alpha - 1.0, -a * u.powf(alpha - 1.0)).unwrap();
        let series = sup_infinite_stable_ml(alpha, c, u).unwrap();
        assert_eq!(series.method, Method::Series);
        assert!((quad.value - closed).abs() < 1e-4 * closed, "u={u}: {} vs {closed}", quad.value);
        assert!((quad.value - series.value).abs() < 1e-4 * series.value);
    }
}

#[test]
fn no_drift_means_certain_crossing() {
    let m = LevyModel::stable_drift(1.5, 1.0, 0.0).unwrap();
    let e = sup_infinite(&m, 3.0).unwrap();
    assert_eq!(e.value, 1.0);
    assert_eq!(e.method, Method::ExactClosedForm);
    assert_eq!(e.error_estimate, 0.0);
}

#[test]
fn series_route_limits() {
    let near_zero = sup_infinite_stable_ml(1.5, 1.0, 1e-12).unwrap();
    assert!((near_zero.value - 1.0).abs() < 1e-5);
    for (c, u) in [(0.5, 0.5), (1.0, 2.0), (2.0, 1.0)] {
        let v = sup_infinite_stable_ml(2.0, c, u).unwrap().value;
        assert!((v - (-c * u).exp()).abs() < 1e-12);
    }
}

/// The finite-horizon value approaches the infinite-horizon one only like
/// `T^{-1/2}`: each fourfold increase of `T` halves the gap.
#[test]
fn horizon_gap_decays_like_inverse_square_root() {
    let m = LevyModel::stable_drift(1.5, 1.0, 1.0).unwrap();
    let limit = sup_infinite(&m, 1.0).unwrap().value;
    let gaps: Vec<f64> = [125.0, 500.0, 2000.0]
        .iter()
        .map(|&h| limit - sup_finite(&m, 1.0, h).unwrap().value)
        .collect();
    assert!(gaps.iter().all(|&g| g > 0.0), "{gaps:?}");
    for w in gaps.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 2.0).abs() < 0.05, "{gaps:?}");
    }
}

#[test]
fn exponential_ruin_formula() {
    let m = CompoundPoissonDrift::new(1.0, 1.0, 2.0).unwrap();
    for u in [0.5, 1.0, 2.0] {
        let e = takacs_infinite(&m, u).unwrap();
        let oracle = 1.0 / 2.0 * (-(1.0 - 1.0 / 2.0) * u).exp();
        assert!((e.value - oracle).abs() < 1e-6, "u={u}: {e:?}");
    }
    assert!((takacs_infinite(&m, 1.0).unwrap().value - 0.30327).abs() < 1e-5);
    let small = takacs_infinite(&m, 1e-8).unwrap();
    assert!((small.value - 0.5).abs() < 1e-4);
}

#[test]
fn critical_and_supercritical_jumps_cross_surely() {
    for (lambda, mu, c) in [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0)] {
        let m = CompoundPoissonDrift::new(lambda, mu, c).unwrap();
        let e = takacs_infinite(&m, 5.0).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.method, Method::ExactClosedForm);
    }
}

#[test]
fn takacs_finite_extremes() {
    let m = CompoundPoissonDrift::new(1.0, 2.0, 1.0).unwrap();
    let short = takacs_finite(&m, 1.0, 1e-6).unwrap();
    assert!(short.value < 2e-6, "{short:?}");
    let far = takacs_finite(&m, 200.0, 5.0).unwrap();
    assert!(far.value < 1e-12, "{far:?}");
    let infinite = takacs_infinite(&m, 1.0).unwrap().value;
    let long = takacs_finite(&m, 1.0, 400.0).unwrap().value;
    assert!(long <= infinite + 1e-8 && infinite - long < 1e-6, "{long} vs {infinite}");
}

#[test]
fn takacs_rejects_continuous_laws_in_sup_finite() {
    let m = LevyModel::compound_poisson(1.0, 2.0, 1.0).unwrap();
    assert!(matches!(sup_finite(&m, 1.0, 1.0), Err(Error::UnsupportedModel(_))));
}

#[test]
fn kendall_brownian_reflection() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let e = kendall_first_passage_cdf(&m, 1.0, 1.0).unwrap();
    assert!((e.value - reflection(1.0, 1.0)).abs() < 1e-5, "{e:?}");
}

#[test]
fn kendall_is_a_distribution_function_in_time() {
    let m = LevyModel::spectrally_negative_stable(1.5, 1.0).unwrap();
    let one = kendall_first_passage_cdf(&m, 1.0, 1.0).unwrap().value;
    let four = kendall_first_passage_cdf(&m, 1.0, 4.0).unwrap().value;
    assert!(one <= four && four <= 1.0, "{one} {four}");
}

#[test]
fn kendall_agrees_with_the_closing_identity() {
    // No upward jumps: sup_{t≤T} Y > z iff S(z) ≤ T.
    let m = LevyModel::spectrally_negative_stable(1.5, 1.0).unwrap();
    let k = kendall_first_passage_cdf(&m, 1.0, 1.0).unwrap().value;
    let s = spectrally_negative_sup(1.5, 1.0, 1.0, 1.0).unwrap().value;
    assert!((k - s).abs() < 1e-7, "{k} vs {s}");
}

#[test]
fn drift_minus_jumps_routes_agree() {
    let cp = CompoundPoissonDrift::new(1.0, 2.0, 1.0).unwrap();
    let model = LevyModel::CompoundPoissonDrift(cp);
    for (u, h) in [(1.0, 5.0), (0.5, 2.0), (2.0, 10.0), (0.2, 0.7)] {
        let bessel = drift_minus_jumps_sup(&cp, u, h).unwrap().value;
        let series = kendall_first_passage_cdf(&model, u, h).unwrap().value;
        assert!((bessel - series).abs() < 1e-6, "u={u} T={h}: {bessel} vs {series}");
    }
    // Level out of reach before u/c.
    assert_eq!(drift_minus_jumps_sup(&cp, 3.0, 2.0).unwrap().value, 0.0);
}

#[test]
fn closing_identity_limits() {
    let at_zero = spectrally_negative_sup(1.5, 1.0, 0.0, 1.0).unwrap();
    assert!((at_zero.value - 1.0).abs() < 1e-9);
    for (sigma, u, h) in [(1.0, 1.0, 1.0), (0.5, 2.0, 3.0)] {
        let v = spectrally_negative_sup(2.0, sigma, u, h).unwrap().value;
        let expected = 2.0 * normal_sf(u / (sigma * (2.0 * h).sqrt()));
        assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
    }
}

#[test]
fn brownian_joint_density_reflection() {
    // P(inf W < -x, W(T) + x ∈ dz) = φ((x + z)/√T)/√T for z > 0.
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let v = joint_inf_terminal_density(&m, 1.0, 1.0, 1.0).unwrap();
    assert!((v - normal_pdf(2.0)).abs() < 1e-5, "{v}");
    for (x, z, h) in [(0.5, 0.3, 2.0), (2.0, 1.5, 0.7)] {
        let v = joint_inf_terminal_density(&m, x, z, h).unwrap();
        let expected = normal_pdf((x + z) / h.sqrt()) / h.sqrt();
        assert!((v - expected).abs() < 1e-5, "{v} vs {expected}");
    }
}

/// As `z → 0` the factor `z` is absorbed by the `(T-s)^{-1-1/α}` blow-up
/// near `s = T` and the density tends to the marginal density of `Y(T)` at
/// `-x`: a path ending at `-x` has crossed below it.
#[test]
fn joint_density_at_small_offset_tends_to_the_marginal() {
    let m = LevyModel::stable_drift(1.5, 1.0, 0.0).unwrap();
    let v = joint_inf_terminal_density(&m, 1.0, 1e-9, 1.0).unwrap();
    let marginal = m.density(1.0, 1.0).unwrap();
    assert!((v - marginal).abs() < 1e-6, "{v} vs {marginal}");

    let b = LevyModel::brownian(1.0, 0.0).unwrap();
    let v = joint_inf_terminal_density(&b, 1.0, 1e-9, 1.0).unwrap();
    assert!((v - normal_pdf(1.0)).abs() < 1e-6, "{v}");
}

#[test]
fn brownian_joint_mass_closes_the_supremum() {
    let m = LevyModel::brownian(1.0, 0.5).unwrap();
    let (x, h) = (1.0, 2.0);
    let tail = m.tail_prob(x, h).unwrap();
    let mass = joint_inf_terminal_mass(&m, x, 0.0, f64::INFINITY, h).unwrap().value;
    let sup = sup_finite(&m, x, h).unwrap().value;
    assert!((tail + mass - sup).abs() < 3e-5, "{} vs {sup}", tail + mass);
}

#[test]
fn joint_rejects_atomic_models() {
    let m = LevyModel::compound_poisson(1.0, 1.0, 2.0).unwrap();
    assert!(matches!(
        joint_inf_terminal_density(&m, 1.0, 1.0, 1.0),
        Err(Error::UnsupportedModel(_))
    ));
}

fn monotone_grid(m: &LevyModel, levels: &[f64], horizons: &[f64]) {
    let grid: Vec<Vec<ProbabilityEstimate>> = levels
        .iter()
        .map(|&u| horizons.iter().map(|&h| sup_finite(m, u, h).unwrap()).collect())
        .collect();
    for (i, row) in grid.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_probability(e);
            let tail = m.tail_prob(levels[i], horizons[j]).unwrap();
            assert!(e.value >= tail - e.error_estimate, "{} below tail {tail}", e.value);
            if j > 0 {
                let prev = &row[j - 1];
                let slack = 2.0 * (e.error_estimate + prev.error_estimate);
                assert!(e.value >= prev.value - slack, "{} in T at u={}", m.name(), levels[i]);
            }
            if i > 0 {
                let prev = &grid[i - 1][j];
                let slack = 2.0 * (e.error_estimate + prev.error_estimate);
                assert!(e.value <= prev.value + slack, "{} in u at T={}", m.name(), horizons[j]);
            }
        }
    }
}

#[test]
fn sup_finite_monotone_and_bounded() {
    let levels = [0.25, 0.5, 1.0, 2.0, 4.0];
    let horizons = [0.1, 0.5, 1.0, 3.0, 10.0];
    monotone_grid(&LevyModel::stable_drift(1.5, 1.0, 1.0).unwrap(), &levels, &horizons);
    monotone_grid(&LevyModel::stable_drift(1.2, 1.0, 0.0).unwrap(), &levels, &horizons);
    monotone_grid(&LevyModel::brownian(1.0, 0.5).unwrap(), &levels, &horizons);
}

#[test]
fn perturbed_sup_finite_monotone_and_bounded() {
    let m = LevyModel::perturbed_compound_poisson(1.0, 2.0, 1.0, 1.5, 0.5).unwrap();
    monotone_grid(&m, &[0.5, 2.0], &[0.5, 2.0]);
}

/// Exponential jumps at rate `λ` with sizes of rate `√(2λ)` and drift
/// `√(λ/2)` have zero mean and unit variance, so the supremum laws approach
/// those of a standard Brownian motion as `λ` grows.
#[test]
fn compound_poisson_approximation_trend() {
    let (u, h) = (1.0, 1.0);
    let target = sup_finite(&LevyModel::brownian(1.0, 0.0).unwrap(), u, h).unwrap().value;
    let gaps: Vec<f64> = [4.0f64, 16.0, 64.0]
        .iter()
        .map(|&lambda| {
            let m = CompoundPoissonDrift::new(lambda, (2.0 * lambda).sqrt(), (lambda / 2.0).sqrt())
                .unwrap();
            (takacs_finite(&m, u, h).unwrap().value - target).abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
