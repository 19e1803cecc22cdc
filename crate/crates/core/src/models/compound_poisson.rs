//! Compound Poisson process with exponential jumps, minus a linear drift.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use crate::error::{invalid, Result};
use crate::special::ln_gamma;

/// `X(t) = J(t) - ct`, where `J` is compound Poisson with jump rate `λ`
/// and `Exp(μ)` jump sizes (mean `1/μ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundPoissonDrift {
    jump_rate: f64,
    jump_size_rate: f64,
    drift: f64,
}

/// Poisson probabilities beyond this tail mass are dropped.
const POISSON_TAIL_MASS: f64 = 1e-17;

impl CompoundPoissonDrift {
    pub fn new(jump_rate: f64, jump_size_rate: f64, drift: f64) -> Result<Self> {
        if !(jump_rate > 0.0 && jump_rate.is_finite()) {
            return Err(invalid(format!("jump rate must be positive, got {jump_rate}")));
        }
        if !(jump_size_rate > 0.0 && jump_size_rate.is_finite()) {
            return Err(invalid(format!(
                "jump size rate must be positive, got {jump_size_rate}"
            )));
        }
        if !(drift > 0.0 && drift.is_finite()) {
            return Err(invalid(format!("drift must be positive, got {drift}")));
        }
        Ok(Self {
            jump_rate,
            jump_size_rate,
            drift,
        })
    }

    /// `λ`
    pub fn jump_rate(&self) -> f64 {
        self.jump_rate
    }

    /// `μ`, the rate of the exponential jump sizes.
    pub fn jump_size_rate(&self) -> f64 {
        self.jump_size_rate
    }

    /// `c`
    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// `E J(1) = λ/μ`.
    pub fn jump_mean_rate(&self) -> f64 {
        self.jump_rate / self.jump_size_rate
    }

    pub fn mean_rate(&self) -> f64 {
        self.jump_mean_rate() - self.drift
    }

    /// `P(J(t) = 0) = e^{-λt}`, the atom of the law of `X(t)` at `-ct`.
    pub fn atom_mass(&self, t: f64) -> f64 {
        (-self.jump_rate * t).exp()
    }

    /// Poisson probabilities `P(N(t) = n)` for `n = 0, 1, …` until the
    /// remaining mass is negligible.
    fn poisson_weights(&self, t: f64) -> Vec<f64> {
        let m = self.jump_rate * t;
        let mut weights = Vec::new();
        let mut cumulative = 0.0;
        let mut n = 0usize;
        loop {
            let w = if m == 0.0 {
                if n == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                (n as f64 * m.ln() - m - ln_gamma(n as f64 + 1.0)).exp()
            };
            cumulative += w;
            weights.push(w);
            n += 1;
            if (n as f64 > m && 1.0 - cumulative < POISSON_TAIL_MASS) || n > 100_000 {
                break;
            }
        }
        weights
    }

    /// Absolutely continuous part of the density of `J(t)` at `y > 0`:
    /// `Σ_{n≥1} P(N(t)=n) · Gamma(n, μ)` density, summed in log space.
    pub fn jump_sum_density(&self, y: f64, t: f64) -> f64 {
        if !(y > 0.0) || !(t > 0.0) {
            return 0.0;
        }
        let w = self.jump_rate * t * self.jump_size_rate * y;
        let base = -self.jump_rate * t - self.jump_size_rate * y - y.ln();
        // term_n = exp(base) · w^n / (n! (n-1)!)
        let log_term =
            |n: f64| base + n * w.ln() - ln_gamma(n + 1.0) - ln_gamma(n);
        let peak = w.sqrt().floor().max(1.0);
        let peak_log = log_term(peak);
        let mut sum = 0.0;
        for direction in [1.0, -1.0] {
            let mut n = if direction > 0.0 { peak } else { peak - 1.0 };
            while n >= 1.0 {
                let r = (log_term(n) - peak_log).exp();
                sum += r;
                if r < 1e-18 {
                    break;
                }
                n += direction;
            }
        }
        sum * peak_log.exp()
    }

    /// Absolutely continuous density of `X(t) = J(t) - ct` at `x`.
    pub fn ac_density(&self, x: f64, t: f64) -> f64 {
        self.jump_sum_density(x + self.drift * t, t)
    }

    /// `P(J(t) > y)` for `y ≥ 0`, as `Σ_k P(Pois(μy) = k) · P(N(t) > k)`,
    /// a sum of non-negative terms.
    pub fn jump_sum_tail(&self, y: f64, t: f64) -> f64 {
        if y < 0.0 {
            return 1.0;
        }
        let weights = self.poisson_weights(t);
        // survivors[k] = P(N(t) > k)
        let mut survivors = vec![0.0; weights.len()];
        let mut acc = 0.0;
        for k in (0..weights.len()).rev() {
            survivors[k] = acc;
            acc += weights[k];
        }
        let z = self.jump_size_rate * y;
        let mut total = 0.0;
        for (k, &s) in survivors.iter().enumerate() {
            if s == 0.0 {
                break;
            }
            let p = if z == 0.0 {
                if k == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                (k as f64 * z.ln() - z - ln_gamma(k as f64 + 1.0)).exp()
            };
            total += p * s;
        }
        total.clamp(0.0, 1.0)
    }

    /// `P(X(t) > u)`.
    pub fn tail_prob(&self, u: f64, t: f64) -> f64 {
        self.jump_sum_tail(u + self.drift * t, t)
    }

    /// `E(K - J(t))^+` for `K ≥ 0`.
    ///
    /// For a `Gamma(n, μ)` variable `G`,
    /// `E(K - G)^+ = ∫_0^K P(G ≤ x) dx = μ^{-1} Σ_{j≥n} P(Pois(μK) > j)`,
    /// so the shortfall is
    /// `K e^{-λt} + μ^{-1} Σ_{j≥1} P(Pois(μK) > j) P(1 ≤ N(t) ≤ j)`,
    /// a sum of non-negative terms.
    pub fn shortfall(&self, level: f64, t: f64) -> f64 {
        if level <= 0.0 {
            return 0.0;
        }
        let jumps = self.poisson_weights(t);
        let z = self.jump_size_rate * level;
        let mut total = level * jumps[0];
        let mut pois_cdf = 0.0;
        let mut jumps_cdf = 0.0;
        let mut j = 0usize;
        loop {
            pois_cdf += (j as f64 * z.ln() - z - ln_gamma(j as f64 + 1.0)).exp();
            if j >= 1 {
                jumps_cdf += jumps.get(j).copied().unwrap_or(0.0);
                let above = self.poisson_upper_tail(z, j, pois_cdf);
                if above < 1e-18 * (total + 1e-300) && j as f64 > z {
                    break;
                }
                total += above * jumps_cdf / self.jump_size_rate;
            }
            j += 1;
            if j > 1_000_000 {
                break;
            }
        }
        total
    }

    /// `P(Pois(z) > j)` given the running CDF; switches to a direct tail sum
    /// once the complement loses precision.
    fn poisson_upper_tail(&self, z: f64, j: usize, cdf: f64) -> f64 {
        let complement = 1.0 - cdf;
        if complement > 1e-3 {
            return complement;
        }
        let mut sum = 0.0;
        let mut k = j + 1;
        loop {
            let p = (k as f64 * z.ln() - z - ln_gamma(k as f64 + 1.0)).exp();
            sum += p;
            if p < 1e-20 * sum || p == 0.0 {
                return sum;
            }
            k += 1;
        }
    }

    /// `E(J(τ)/τ - c)^-`, the kernel of the finite-horizon formula.
    pub fn neg_part_mean_ratio(&self, tau: f64) -> f64 {
        self.shortfall(self.drift * tau, tau) / tau
    }

    /// Exact draw of `J(dt)`.
    pub fn sample_jump_sum<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> f64 {
        let m = self.jump_rate * dt;
        let count = if m > 0.0 {
            Poisson::new(m).expect("positive Poisson mean").sample(rng) as u64
        } else {
            0
        };
        if count == 0 {
            0.0
        } else {
            Gamma::new(count as f64, 1.0 / self.jump_size_rate)
                .expect("valid gamma parameters")
                .sample(rng)
        }
    }

    /// Exact draw of `X(dt)`.
    pub fn sample_increment<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> f64 {
        self.sample_jump_sum(dt, rng) - self.drift * dt
    }
}
