use std::f64::consts::{E, PI};

use levysup::quadrature::{integrate_semi_infinite, QuadSpec};
use levysup::special::mittag_leffler;
use levysup::stable::{
    neg_part_mean_unit, stable_cdf, stable_pdf, stable_tail, StableParams, StableSampler,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(alpha: f64, beta: f64) -> StableParams {
    StableParams::new(alpha, beta, 1.0, 0.0).unwrap()
}

fn total_mass(p: &StableParams) -> f64 {
    let spec = QuadSpec::default();
    let right = integrate_semi_infinite(|x| stable_pdf(x, p).unwrap(), 0.0, &spec).unwrap();
    let left = integrate_semi_infinite(|x| stable_pdf(-x, p).unwrap(), 0.0, &spec).unwrap();
    right.value + left.value
}

fn draws(p: StableParams, n: usize, seed: u64) -> Vec<f64> {
    let sampler = StableSampler::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sampler.sample(&mut rng)).collect()
}

#[test]
fn gaussian_density_at_origin() {
    let p = StableParams::new(2.0, 0.0, 1.0, 0.0).unwrap();
    let v = stable_pdf(0.0, &p).unwrap();
    assert!((v - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
}

#[test]
fn densities_integrate_to_one() {
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        for beta in [-1.0, 1.0] {
            let mass = total_mass(&params(alpha, beta));
            assert!((mass - 1.0).abs() < 1e-6, "alpha={alpha} beta={beta}: {mass}");
        }
    }
}

/// Trapezoid sum of `(1/π) ∫_0^60 e^{-t^1.5} cos(t - t^1.5 tan(3π/4)) dt`
/// on 10^7 panels, computed once.
const BRUTE_PDF_AT_ONE: f64 = 1.06251243013209068e-1;

#[test]
fn density_at_one_matches_frozen_brute_force() {
    let v = stable_pdf(1.0, &params(1.5, 1.0)).unwrap();
    assert!((v - BRUTE_PDF_AT_ONE).abs() < 1e-7, "{v}");
}

#[test]
fn tails_at_zero() {
    let neg = stable_tail(0.0, &params(1.5, -1.0)).unwrap();
    assert!((neg - 2.0 / 3.0).abs() < 1e-6, "{neg}");
    let pos = stable_tail(0.0, &params(1.5, 1.0)).unwrap();
    assert!((pos - 1.0 / 3.0).abs() < 1e-6, "{pos}");
    let gauss = stable_tail(0.0, &params(2.0, 1.0)).unwrap();
    assert_eq!(gauss, 0.5);
}

#[test]
fn gaussian_sample_mean() {
    let xs = draws(StableParams::new(2.0, 0.0, 1.0, 0.0).unwrap(), 1_000_000, 1);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!(mean.abs() < 4.0 * 2f64.sqrt() / 1e3, "{mean}");
}

#[test]
fn sampler_matches_tail_and_cdf() {
    let p = params(1.5, 1.0);
    let xs = draws(p, 1_000_000, 2);
    let n = xs.len() as f64;
    let positive = xs.iter().filter(|&&x| x > 0.0).count() as f64 / n;
    assert!((positive - 1.0 / 3.0).abs() < 0.002, "{positive}");
    let below_one = xs.iter().filter(|&&x| x <= 1.0).count() as f64 / n;
    let cdf = 1.0 - stable_tail(1.0, &p).unwrap();
    assert!((below_one - cdf).abs() < 0.002, "{below_one} vs {cdf}");
}

/// Largest gap between the empirical CDF and `stable_cdf` over a grid of
/// 400 points, against the one-sample 1% critical value `1.628/√n`.
#[test]
fn sampler_ks_distance() {
    for (alpha, seed) in [(1.3, 3), (1.7, 4)] {
        let p = params(alpha, 1.0);
        let mut xs = draws(p, 100_000, seed);
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        let mut worst = 0.0_f64;
        for k in 0..400 {
            let x = -6.0 + 26.0 * k as f64 / 399.0;
            let empirical = xs.partition_point(|&s| s <= x) as f64 / n;
            worst = worst.max((empirical - stable_cdf(x, &p).unwrap()).abs());
        }
        let critical = 1.628 / n.sqrt();
        assert!(worst < critical, "alpha={alpha}: D={worst} critical={critical}");
    }
}

#[test]
fn mittag_leffler_reductions() {
    assert_eq!(mittag_leffler(0.3, 0.0).unwrap(), 1.0);
    let v = mittag_leffler(1.0, -2.0).unwrap();
    assert!((v - (-2.0f64).exp()).abs() < 1e-10);
}

/// `Σ_{n<10^4} (-1)^n / Γ(1 + n/2)` with the Gamma values built by the
/// recursion `Γ(1 + (n+2)/2) = (1 + n/2) Γ(1 + n/2)` and Neumaier summation.
fn ml_half_at_minus_one() -> f64 {
    let mut gamma = [1.0, PI.sqrt() / 2.0];
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for n in 0..10_000usize {
        let g = gamma[n % 2];
        if !g.is_finite() {
            break;
        }
        let term = if n % 2 == 0 { 1.0 } else { -1.0 } / g;
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        gamma[n % 2] = g * (1.0 + n as f64 / 2.0);
    }
    sum + comp
}

#[test]
fn mittag_leffler_half_against_series_oracle() {
    let oracle = ml_half_at_minus_one();
    // E_{1/2}(-x) = e^{x²} erfc(x) at x = 1.
    assert!((oracle - E * libm::erfc(1.0)).abs() < 1e-14);
    let v = mittag_leffler(0.5, -1.0).unwrap();
    assert!((v - oracle).abs() < 1e-13, "{v} vs {oracle}");
}

#[test]
fn negative_part_limits() {
    let p = params(1.5, 1.0);
    let c = 1e3;
    let v = neg_part_mean_unit(&p, c).unwrap();
    assert!((v - c).abs() / c < 0.01, "{v}");

    // Z ~ N(0, 2): E Z^- = E|Z|/2 = 1/√π.
    let g = neg_part_mean_unit(&params(2.0, 1.0), 0.0).unwrap();
    assert!((g - 1.0 / PI.sqrt()).abs() < 1e-6, "{g}");
}

/// Midpoint sum of `(1 - x) · p(x)` over `[-200, 1]` on 10^7 panels, with
/// `p` from Fourier inversion; computed once.
const BRUTE_NEG_PART_AT_ONE: f64 = 1.67933247369736804e0;

#[test]
fn negative_part_matches_frozen_brute_force() {
    let v = neg_part_mean_unit(&params(1.5, 1.0), 1.0).unwrap();
    assert!((v - BRUTE_NEG_PART_AT_ONE).abs() < 1e-8, "{v}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_is_exact(alpha in 1.05..1.99f64, x in -20.0..20.0f64) {
        let pos = stable_pdf(-x, &params(alpha, 1.0)).unwrap();
        let neg = stable_pdf(x, &params(alpha, -1.0)).unwrap();
        prop_assert_eq!(pos.to_bits(), neg.to_bits());
    }

    #[test]
    fn self_similarity(alpha in 1.05..2.0f64, x in -10.0..10.0f64, t in 0.01..100.0f64) {
        let unit = params(alpha, 1.0);
        let scaled = unit.at_time(t).unwrap();
        let s = t.powf(-1.0 / alpha);
        let lhs = stable_pdf(x, &scaled).unwrap();
        let rhs = s * stable_pdf(s * x, &unit).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn tail_is_monotone(alpha in 1.05..2.0f64, beta in prop::sample::select(vec![-1.0, 1.0]),
                        u in -10.0..10.0f64, du in 0.0..3.0f64) {
        let p = params(alpha, beta);
        let a = stable_tail(u, &p).unwrap();
        let b = stable_tail(u + du, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        prop_assert!(b <= a + 1e-12, "{} then {}", a, b);
    }

    #[test]
    fn mittag_leffler_is_a_probability(rho in 0.01..=1.0f64, x in -50.0..=0.0f64) {
        prop_assert_eq!(mittag_leffler(rho, 0.0).unwrap(), 1.0);
        let v = mittag_leffler(rho, x).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0, "E_{}({}) = {}", rho, x, v);
    }
}
