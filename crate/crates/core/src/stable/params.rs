use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Parameters of a stable law in the Samorodnitsky–Taqqu (S1)
/// parametrization, restricted to the spectrally one-sided case.
///
/// Only `1 < α ≤ 2` is supported. For `α < 2` the skewness must be `±1`; at
/// `α = 2` the law is `N(μ, 2σ²)` and any `β ∈ [-1, 1]` is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    sigma: f64,
    mu: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, sigma: f64, mu: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(invalid(format!("alpha must lie in (1, 2], got {alpha}")));
        }
        if alpha < 2.0 {
            if beta != 1.0 && beta != -1.0 {
                return Err(invalid(format!(
                    "beta must be -1 or +1 for alpha < 2, got {beta}"
                )));
            }
        } else if !(-1.0..=1.0).contains(&beta) {
            return Err(invalid(format!("beta must lie in [-1, 1], got {beta}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        if !mu.is_finite() {
            return Err(invalid(format!("mu must be finite, got {mu}")));
        }
        Ok(Self {
            alpha,
            beta,
            sigma,
            mu,
        })
    }

    /// Unit-scale, zero-shift law.
    pub fn standard(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn is_gaussian(&self) -> bool {
        self.alpha == 2.0
    }

    /// Same law with the skewness sign flipped, i.e. the law of `-(X - μ) + μ`.
    pub fn reflected(&self) -> Self {
        Self {
            beta: -self.beta,
            ..*self
        }
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, sigma, self.mu)
    }

    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.sigma, mu)
    }

    /// Law of `Z(t)` for the Lévy process with `Z(1)` distributed as `self`
    /// and `μ = 0`: scale `σ t^{1/α}`.
    pub fn at_time(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(invalid(format!("time must be positive, got {t}")));
        }
        Self::new(self.alpha, self.beta, self.sigma * t.powf(1.0 / self.alpha), self.mu * t)
    }

    /// `tan(πα/2)`, negative on `(1, 2)`.
    pub fn tan_half_pi_alpha(&self) -> f64 {
        (0.5 * PI * self.alpha).tan()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(StableParams::new(1.5, 1.0, 1.0, 0.0).is_ok());
        assert!(StableParams::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(2.1, 1.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 0.5, 1.0, 0.0).is_err());
        assert!(StableParams::new(2.0, 0.5, 1.0, 0.0).is_ok());
        assert!(StableParams::new(2.0, 1.5, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 1.0, 0.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn time_scaling() {
        let p = StableParams::standard(1.5, 1.0).unwrap().at_time(8.0).unwrap();
        assert!((p.sigma() - 4.0).abs() < 1e-14);
    }
}
