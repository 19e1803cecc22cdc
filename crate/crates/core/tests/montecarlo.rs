use levysup::formulas::{drift_minus_jumps_sup, takacs_finite};
use levysup::models::{CompoundPoissonDrift, LevyModel};
use levysup::montecarlo::{
    mc_first_passage, mc_joint_inf_terminal, mc_sup_prob, mc_sup_prob_exact_jumps, BiasNote,
    McEstimate, SimConfig,
};
use levysup::special::normal_sf;

const REFLECTION_AT_ONE: f64 = 0.317_310_507_862_914_1;

fn cfg(n_paths: u64, n_steps: u32, seed: u64) -> SimConfig {
    SimConfig::new(n_paths, n_steps, seed, 1).unwrap()
}

fn assert_estimate_invariants(e: &McEstimate) {
    assert!((0.0..=1.0).contains(&e.value));
    assert!(e.stderr <= 0.5 / (e.n_paths as f64).sqrt() + 1e-15);
}

#[test]
fn reflection_oracle_constant() {
    assert!((2.0 * normal_sf(1.0) - REFLECTION_AT_ONE).abs() < 1e-15);
}

#[test]
fn barrier_below_the_start_is_always_crossed() {
    let models = [
        LevyModel::brownian(1.0, 0.0).unwrap(),
        LevyModel::stable_drift(1.5, 1.0, 1.0).unwrap(),
        LevyModel::compound_poisson(1.0, 2.0, 1.0).unwrap(),
    ];
    let c = cfg(500, 64, 1);
    for m in &models {
        let sup = mc_sup_prob(m, -1.0, 1.0, &c).unwrap();
        assert_eq!((sup.value, sup.stderr), (1.0, 0.0), "{}", m.name());
        let passage = mc_first_passage(m, -1.0, 1.0, &c).unwrap();
        assert_eq!((passage.value, passage.stderr), (1.0, 0.0), "{}", m.name());
    }
}

#[test]
fn brownian_grid_supremum_is_near_and_below_reflection() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let e = mc_sup_prob(&m, 1.0, 1.0, &cfg(200_000, 1 << 13, 42)).unwrap();
    assert_estimate_invariants(&e);
    assert_eq!(e.bias_note, BiasNote::BiasedLow);
    assert!((e.value - REFLECTION_AT_ONE).abs() <= (3.0 * e.stderr).max(0.01), "{e:?}");
    assert!(e.value <= REFLECTION_AT_ONE + 3.0 * e.stderr, "{e:?}");
}

#[test]
fn brownian_grid_first_passage_is_near_and_below_reflection() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let e = mc_first_passage(&m, 1.0, 1.0, &cfg(50_000, 1 << 13, 7)).unwrap();
    assert!((e.value - REFLECTION_AT_ONE).abs() <= (3.0 * e.stderr).max(0.01), "{e:?}");
    assert!(e.value <= REFLECTION_AT_ONE + 3.0 * e.stderr, "{e:?}");
}

#[test]
fn grid_refinement_moves_estimates_up() {
    let m = LevyModel::stable_drift(1.5, 1.0, 0.0).unwrap();
    let estimates: Vec<McEstimate> = [1u32 << 9, 1 << 11, 1 << 13]
        .iter()
        .enumerate()
        .map(|(k, &n)| mc_sup_prob(&m, 1.0, 1.0, &cfg(40_000, n, 100 + k as u64)).unwrap())
        .collect();
    for w in estimates.windows(2) {
        let combined = (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
        assert!(w[1].value >= w[0].value - 3.0 * combined, "{estimates:?}");
    }
}

#[test]
fn repeated_runs_are_bit_identical() {
    let m = LevyModel::stable_drift(1.5, 1.0, 1.0).unwrap();
    let c = cfg(5_000, 256, 9);
    let a = mc_sup_prob(&m, 0.5, 1.0, &c).unwrap();
    let b = mc_sup_prob(&m, 0.5, 1.0, &c).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.value.to_bits(), b.value.to_bits());
}

#[test]
fn worker_count_does_not_change_the_law() {
    let m = LevyModel::brownian(1.0, 0.3).unwrap();
    for seed in 0..10 {
        let one = mc_sup_prob(&m, 0.8, 1.0, &SimConfig::new(4_000, 128, seed, 1).unwrap()).unwrap();
        let four = mc_sup_prob(&m, 0.8, 1.0, &SimConfig::new(4_000, 128, seed, 4).unwrap()).unwrap();
        let combined = (one.stderr.powi(2) + four.stderr.powi(2)).sqrt();
        assert!((one.value - four.value).abs() <= 4.0 * combined, "seed {seed}");
        // Per-path streams make the draw itself worker-independent.
        assert_eq!(one, four);
    }
}

#[test]
fn exact_jumps_pair_with_takacs() {
    let m = CompoundPoissonDrift::new(1.0, 2.0, 1.0).unwrap();
    let e = mc_sup_prob_exact_jumps(&m, 1.0, 5.0, &cfg(200_000, 1, 42)).unwrap();
    assert_eq!(e.bias_note, BiasNote::Unbiased);
    let formula = takacs_finite(&m, 1.0, 5.0).unwrap().value;
    assert!((e.value - formula).abs() <= 3.0 * e.stderr, "{e:?} vs {formula}");

    let routed = mc_sup_prob(&LevyModel::CompoundPoissonDrift(m), 1.0, 5.0, &cfg(200_000, 1, 42));
    assert_eq!(routed.unwrap(), e);
}

#[test]
fn no_jumps_no_crossing() {
    let m = CompoundPoissonDrift::new(1e-9, 1.0, 1.0).unwrap();
    let e = mc_sup_prob_exact_jumps(&m, 0.5, 10.0, &cfg(100_000, 1, 3)).unwrap();
    assert!(e.value <= 3.0 * e.stderr, "{e:?}");
}

/// The first jump alone crosses when its size exceeds `u + cτ`, which has
/// probability `λ e^{-μu} (1 - e^{-(λ+μc)T}) / (λ + μc)`.
#[test]
fn tiny_level_is_crossed_at_least_by_the_first_jump() {
    let (lambda, mu, c, horizon) = (1.0, 2.0, 1.0, 5.0);
    let m = CompoundPoissonDrift::new(lambda, mu, c).unwrap();
    let u = 1e-9;
    let e = mc_sup_prob_exact_jumps(&m, u, horizon, &cfg(100_000, 1, 4)).unwrap();
    let rate = lambda + mu * c;
    let bound = lambda * (-mu * u).exp() * (1.0 - (-rate * horizon).exp()) / rate;
    assert!(e.value >= bound - 3.0 * e.stderr, "{e:?} vs {bound}");
}

#[test]
fn exact_first_passage_pairs_with_drift_minus_jumps() {
    let cp = CompoundPoissonDrift::new(1.0, 2.0, 1.0).unwrap();
    let m = LevyModel::CompoundPoissonDrift(cp);
    for (z, h) in [(1.0, 5.0), (0.5, 2.0)] {
        let e = mc_first_passage(&m, z, h, &cfg(200_000, 1, 5)).unwrap();
        assert_eq!(e.bias_note, BiasNote::Unbiased);
        let formula = drift_minus_jumps_sup(&cp, z, h).unwrap().value;
        assert!((e.value - formula).abs() <= 3.0 * e.stderr, "z={z}: {e:?} vs {formula}");
    }
}

#[test]
fn joint_bins_form_a_defective_law() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let c = cfg(20_000, 512, 6);
    let edges: Vec<f64> = (0..=20).map(|k| 0.2 * f64::from(k)).collect();
    let h = mc_joint_inf_terminal(&m, 1.0, &edges, 1.0, &c).unwrap();
    assert_eq!(h.bins.len(), 20);
    let total: f64 = h.bins.iter().map(|b| b.value).sum();
    // Same streams: every counted path also crosses above x.
    let crossing = mc_sup_prob(&m, 1.0, 1.0, &c).unwrap().value;
    assert!(total <= crossing && crossing <= 1.0, "{total} vs {crossing}");
    assert!(total > 0.0);
    h.bins.iter().for_each(assert_estimate_invariants);
}

#[test]
fn deep_barrier_leaves_empty_bins() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let h = mc_joint_inf_terminal(&m, 100.0, &[0.0, 1.0, 2.0, 4.0], 1.0, &cfg(5_000, 256, 8)).unwrap();
    assert!(h.bins.iter().all(|b| b.value == 0.0 && b.stderr == 0.0));
}

#[test]
fn bad_edges_are_rejected() {
    let m = LevyModel::brownian(1.0, 0.0).unwrap();
    let c = cfg(10, 4, 0);
    for edges in [vec![1.0], vec![0.0, 2.0, 1.0], vec![0.0, 0.0], vec![-1.0, 1.0]] {
        assert!(mc_joint_inf_terminal(&m, 1.0, &edges, 1.0, &c).is_err(), "{edges:?}");
    }
}
