//! Monte Carlo oracles for the supremum, first-passage and joint infimum
//! laws.
//!
//! Continuous-time families are observed on the grid `{kT/n}` with exact
//! increments, so path suprema are biased low. Compound Poisson paths are
//! simulated event by event and carry no discretisation bias.
//!
//! Path `i` draws from a ChaCha8 generator keyed by `(seed, i)`: the stream
//! of every path is fixed by the seed alone, whatever the worker count or
//! schedule.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Exp1};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::models::{CompoundPoissonDrift, IncrementSampler, LevyModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_paths: u64,
    pub n_steps: u32,
    pub seed: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(n_paths: u64, n_steps: u32, seed: u64, workers: usize) -> Result<Self> {
        if n_paths == 0 {
            return Err(invalid("n_paths must be at least 1"));
        }
        if n_steps == 0 {
            return Err(invalid("n_steps must be at least 1"));
        }
        if workers == 0 {
            return Err(invalid("workers must be at least 1"));
        }
        Ok(Self {
            n_paths,
            n_steps,
            seed,
            workers,
        })
    }

    fn path_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))
    }

    /// Number of paths on which `hit` holds.
    fn count<F>(&self, hit: F) -> Result<u64>
    where
        F: Fn(&mut ChaCha8Rng) -> bool + Sync,
    {
        let pool = self.pool()?;
        Ok(pool.install(|| {
            (0..self.n_paths)
                .into_par_iter()
                .filter(|&i| hit(&mut self.path_rng(i)))
                .count() as u64
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BiasNote {
    BiasedLow,
    Unbiased,
}

impl BiasNote {
    pub fn as_str(&self) -> &'static str {
        match self {
            BiasNote::BiasedLow => "biased-low",
            BiasNote::Unbiased => "unbiased",
        }
    }
}

impl fmt::Display for BiasNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Frequency of an event with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n_paths: u64,
    pub bias_note: BiasNote,
}

impl McEstimate {
    pub fn from_counts(hits: u64, n_paths: u64, bias_note: BiasNote) -> Self {
        let n = n_paths as f64;
        let p = hits as f64 / n;
        Self {
            value: p,
            stderr: (p * (1.0 - p) / n).sqrt(),
            n_paths,
            bias_note,
        }
    }
}

/// `P(sup_{t≤T} X(t) > u)` by simulation.
pub fn mc_sup_prob(m: &LevyModel, u: f64, horizon: f64, cfg: &SimConfig) -> Result<McEstimate> {
    check_horizon(horizon)?;
    if let LevyModel::CompoundPoissonDrift(cp) = m {
        return mc_sup_prob_exact_jumps(cp, u, horizon, cfg);
    }
    let step = IncrementSampler::new(m, horizon / f64::from(cfg.n_steps));
    let hits = cfg.count(|rng| grid_exceeds(&step, 1.0, u, cfg.n_steps, rng))?;
    Ok(McEstimate::from_counts(hits, cfg.n_paths, BiasNote::BiasedLow))
}

/// `P(sup_{t≤T} (J(t) - ct) > u)` with exact jump instants. Between jumps
/// the path drifts down, so the supremum is attained at `0` or just after
/// a jump.
pub fn mc_sup_prob_exact_jumps(
    m: &CompoundPoissonDrift,
    u: f64,
    horizon: f64,
    cfg: &SimConfig,
) -> Result<McEstimate> {
    check_horizon(horizon)?;
    let gap = Exp::new(m.jump_rate()).map_err(|e| invalid(e.to_string()))?;
    let hits = cfg.count(|rng| {
        if u < 0.0 {
            return true;
        }
        let mut t = 0.0;
        let mut x = 0.0;
        loop {
            let dt: f64 = gap.sample(rng);
            t += dt;
            if t > horizon {
                return false;
            }
            x += jump(m, rng) - m.drift() * dt;
            if x > u {
                return true;
            }
        }
    })?;
    Ok(McEstimate::from_counts(hits, cfg.n_paths, BiasNote::Unbiased))
}

/// `P(S(z) ≤ T)` for the spectrally negative process `Y` of the model.
/// Compound Poisson paths `ct - J(t)` creep upward between jumps and are
/// simulated exactly; other families use the grid.
pub fn mc_first_passage(m: &LevyModel, z: f64, horizon: f64, cfg: &SimConfig) -> Result<McEstimate> {
    check_horizon(horizon)?;
    if let LevyModel::CompoundPoissonDrift(cp) = m {
        let gap = Exp::new(cp.jump_rate()).map_err(|e| invalid(e.to_string()))?;
        let c = cp.drift();
        let hits = cfg.count(|rng| {
            if z < 0.0 {
                return true;
            }
            let mut t = 0.0;
            let mut y = 0.0;
            loop {
                let dt: f64 = gap.sample(rng);
                let reach = t + (z - y) / c;
                if reach <= (t + dt).min(horizon) {
                    return true;
                }
                t += dt;
                if t > horizon {
                    return false;
                }
                y += c * dt - jump(cp, rng);
            }
        })?;
        return Ok(McEstimate::from_counts(hits, cfg.n_paths, BiasNote::Unbiased));
    }
    let step = IncrementSampler::new(m, horizon / f64::from(cfg.n_steps));
    let sign = m.passage_sign();
    let hits = cfg.count(|rng| grid_exceeds(&step, sign, z, cfg.n_steps, rng))?;
    Ok(McEstimate::from_counts(hits, cfg.n_paths, BiasNote::BiasedLow))
}

/// Per-bin frequencies of `{inf_{t≤T} Y(t) < -x, Y(T) + x ∈ (e_k, e_{k+1}]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointHistogram {
    pub edges: Vec<f64>,
    pub bins: Vec<McEstimate>,
}

/// Grid estimate of the joint law of the running infimum and terminal value
/// of `Y`; the grid infimum is biased high, so bin masses are biased low.
pub fn mc_joint_inf_terminal(
    m: &LevyModel,
    x: f64,
    edges: &[f64],
    horizon: f64,
    cfg: &SimConfig,
) -> Result<JointHistogram> {
    check_horizon(horizon)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(invalid(format!("x must be positive and finite, got {x}")));
    }
    validate_edges(edges)?;
    let step = IncrementSampler::new(m, horizon / f64::from(cfg.n_steps));
    let sign = m.passage_sign();
    let n_bins = edges.len() - 1;

    let landing = |rng: &mut ChaCha8Rng| -> Option<usize> {
        let mut y = 0.0;
        let mut low = 0.0_f64;
        for _ in 0..cfg.n_steps {
            y += sign * step.sample(rng);
            low = low.min(y);
        }
        let offset = y + x;
        if low >= -x || offset <= edges[0] || offset > edges[n_bins] {
            return None;
        }
        // First edge at or above the offset closes its bin.
        Some(edges.partition_point(|&e| e < offset) - 1)
    };

    let pool = cfg.pool()?;
    let counts = pool.install(|| {
        (0..cfg.n_paths)
            .into_par_iter()
            .fold(
                || vec![0u64; n_bins],
                |mut acc, i| {
                    if let Some(k) = landing(&mut cfg.path_rng(i)) {
                        acc[k] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; n_bins],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    });
    Ok(JointHistogram {
        edges: edges.to_vec(),
        bins: counts
            .into_iter()
            .map(|h| McEstimate::from_counts(h, cfg.n_paths, BiasNote::BiasedLow))
            .collect(),
    })
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon > 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("horizon must be positive and finite, got {horizon}")))
    }
}

fn validate_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(invalid("at least two bin edges are required"));
    }
    if !edges.iter().all(|e| e.is_finite()) || edges[0] < 0.0 {
        return Err(invalid("bin edges must be finite and non-negative"));
    }
    if edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("bin edges must be strictly increasing"));
    }
    Ok(())
}

fn jump<R: Rng + ?Sized>(m: &CompoundPoissonDrift, rng: &mut R) -> f64 {
    let e: f64 = Exp1.sample(rng);
    e / m.jump_size_rate()
}

/// Whether `sign · X` exceeds `level` at some grid point.
fn grid_exceeds<R: Rng + ?Sized>(
    step: &IncrementSampler,
    sign: f64,
    level: f64,
    n_steps: u32,
    rng: &mut R,
) -> bool {
    if level < 0.0 {
        return true;
    }
    let mut v = 0.0;
    for _ in 0..n_steps {
        v += sign * step.sample(rng);
        if v > level {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn always_true_event_has_zero_stderr() {
        let m = LevyModel::brownian(1.0, 0.0).unwrap();
        let cfg = SimConfig::new(500, 16, 1, 1).unwrap();
        let e = mc_sup_prob(&m, -1.0, 1.0, &cfg).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn edges_are_validated() {
        let m = LevyModel::brownian(1.0, 0.0).unwrap();
        let cfg = SimConfig::new(10, 4, 1, 1).unwrap();
        for bad in [&[1.0][..], &[0.0, 1.0, 1.0], &[-1.0, 1.0], &[0.0, f64::NAN]] {
            assert!(mc_joint_inf_terminal(&m, 1.0, bad, 1.0, &cfg).is_err());
        }
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(0, 1, 0, 1).is_err());
        assert!(SimConfig::new(1, 0, 0, 1).is_err());
        assert!(SimConfig::new(1, 1, 0, 0).is_err());
    }

    #[test]
    fn path_streams_do_not_overlap() {
        let cfg = SimConfig::new(2, 1, 9, 1).unwrap();
        let a: u64 = cfg.path_rng(0).random();
        let b: u64 = cfg.path_rng(1).random();
        assert_ne!(a, b);
        assert_eq!(a, cfg.path_rng(0).random::<u64>());
    }
}
