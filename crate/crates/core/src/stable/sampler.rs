use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand::distr::Open01;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::StableParams;

/// Chambers–Mallows–Stuck sampler in the S1 parametrization.
///
/// With `V ~ U(-π/2, π/2)` and `W ~ Exp(1)` independent,
///
/// ```text
/// B = arctan(β tan(πα/2)) / α
/// S = (1 + β² tan²(πα/2))^{1/(2α)}
/// X = S sin(α(V+B)) / cos(V)^{1/α} · (cos(V - α(V+B)) / W)^{(1-α)/α}
/// ```
///
/// is standard `S1(α, β, 1, 0)`; the draw returned is `σX + μ`.
#[derive(Debug, Clone, Copy)]
pub struct StableSampler {
    params: StableParams,
    shift_angle: f64,
    scale_factor: f64,
}

impl StableSampler {
    pub fn new(params: StableParams) -> Self {
        let alpha = params.alpha();
        let tan = params.tan_half_pi_alpha();
        let beta = params.beta();
        Self {
            params,
            shift_angle: (beta * tan).atan() / alpha,
            scale_factor: (1.0 + beta * beta * tan * tan).powf(0.5 / alpha),
        }
    }

    pub fn params(&self) -> &StableParams {
        &self.params
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let p = &self.params;
        if p.is_gaussian() {
            let z: f64 = StandardNormal.sample(rng);
            return p.mu() + std::f64::consts::SQRT_2 * p.sigma() * z;
        }
        self.sample_standard(rng) * p.sigma() + p.mu()
    }

    fn sample_standard<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let alpha = self.params.alpha();
        let u: f64 = Open01.sample(rng);
        let v = PI * u - FRAC_PI_2;
        let w: f64 = Exp1.sample(rng);
        let shifted = alpha * (v + self.shift_angle);
        // Both powers folded into one exponential.
        let log_weight =
            ((1.0 - alpha) * ((v - shifted).cos() / w).ln() - v.cos().ln()) / alpha;
        self.scale_factor * shifted.sin() * log_weight.exp()
    }
}

impl Distribution<f64> for StableSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        StableSampler::sample(self, rng)
    }
}

/// One draw from the stable law with parameters `p`.
pub fn stable_sample<R: Rng + ?Sized>(p: &StableParams, rng: &mut R) -> f64 {
    StableSampler::new(*p).sample(rng)
}
