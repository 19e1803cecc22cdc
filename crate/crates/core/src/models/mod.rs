//! The parametric Lévy families the formula layer works with.
//!
//! Each family is a validated value type; [`LevyModel`] is the closed sum
//! of them. Throughout, `X` denotes the spectrally positive process of the
//! family and `Y` its spectrally negative counterpart used by the
//! first-passage formulas (`Y = -X`, except for
//! [`SpectrallyNegativeStable`], which already is one).

mod compound_poisson;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub use compound_poisson::CompoundPoissonDrift;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_with_breakpoints, ErrorSlot, QuadSpec};
use crate::special::{normal_pdf, normal_sf};
use crate::stable::{neg_part_mean_unit, stable_pdf, stable_tail, StableParams, StableSampler};

/// `X(t) = σ Z_α(t) - ct` with `Z_α` standard spectrally positive stable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableDrift {
    stable: StableParams,
    drift: f64,
}

impl StableDrift {
    pub fn new(alpha: f64, sigma: f64, drift: f64) -> Result<Self> {
        if !drift.is_finite() {
            return Err(invalid(format!("drift must be finite, got {drift}")));
        }
        Ok(Self {
            stable: StableParams::new(alpha, 1.0, sigma, 0.0)?,
            drift,
        })
    }

    pub fn stable(&self) -> &StableParams {
        &self.stable
    }

    pub fn alpha(&self) -> f64 {
        self.stable.alpha()
    }

    pub fn sigma(&self) -> f64 {
        self.stable.sigma()
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// `σ t^{1/α}`, the scale of `σ Z_α(t)`.
    pub fn scale_at(&self, t: f64) -> f64 {
        self.sigma() * t.powf(1.0 / self.alpha())
    }

    /// `f(v, t) = r f_Z(r (v + ct))` with `r = σ^{-1} t^{-1/α}`.
    pub fn density(&self, v: f64, t: f64) -> Result<f64> {
        let r = t.powf(-1.0 / self.alpha()) / self.sigma();
        Ok(r * stable_pdf(r * (v + self.drift * t), &unit(self.alpha(), 1.0)?)?)
    }
}

/// `X(t) = σ Z_α(t)` with `β = -1`: spectrally negative, no drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrallyNegativeStable {
    stable: StableParams,
}

impl SpectrallyNegativeStable {
    pub fn new(alpha: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            stable: StableParams::new(alpha, -1.0, sigma, 0.0)?,
        })
    }

    pub fn stable(&self) -> &StableParams {
        &self.stable
    }

    pub fn alpha(&self) -> f64 {
        self.stable.alpha()
    }

    pub fn sigma(&self) -> f64 {
        self.stable.sigma()
    }
}

/// `X(t) = v W(t) - ct` with `W` a standard Wiener process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianDrift {
    volatility: f64,
    drift: f64,
}

impl BrownianDrift {
    pub fn new(volatility: f64, drift: f64) -> Result<Self> {
        if !(volatility > 0.0 && volatility.is_finite()) {
            return Err(invalid(format!("volatility must be positive, got {volatility}")));
        }
        if !drift.is_finite() {
            return Err(invalid(format!("drift must be finite, got {drift}")));
        }
        Ok(Self { volatility, drift })
    }

    pub fn volatility(&self) -> f64 {
        self.volatility
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }
}

/// Compound Poisson process minus drift, perturbed by an independent
/// spectrally positive stable process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedCompoundPoisson {
    jumps: CompoundPoissonDrift,
    perturbation: StableParams,
}

impl PerturbedCompoundPoisson {
    pub fn new(jumps: CompoundPoissonDrift, alpha: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            jumps,
            perturbation: StableParams::new(alpha, 1.0, sigma, 0.0)?,
        })
    }

    pub fn jumps(&self) -> &CompoundPoissonDrift {
        &self.jumps
    }

    pub fn perturbation(&self) -> &StableParams {
        &self.perturbation
    }

    fn perturbation_scale(&self, t: f64) -> f64 {
        self.perturbation.sigma() * t.powf(1.0 / self.perturbation.alpha())
    }

    /// Range of jump-sum values `y` that matter when the perturbation is
    /// evaluated at `w - y`: beyond `w + LIGHT_TAIL_WIDTH · scale` the
    /// perturbation sits deep in its light left tail.
    fn jump_range(&self, w: f64, t: f64) -> (Vec<f64>, f64) {
        let s = self.perturbation_scale(t);
        let upper = w.max(0.0) + LIGHT_TAIL_WIDTH * s;
        let mut pts = vec![0.0];
        for offset in [-10.0, -2.0, 0.0, 2.0] {
            let p = w + offset * s;
            if p > 0.0 && p < upper {
                pts.push(p);
            }
        }
        pts.push(upper);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        (pts, upper)
    }

    /// `e^{-λt} f_S(v+ct) + ∫ f_J(y) f_S(v+ct-y) dy` with `S` the
    /// perturbation at time `t`.
    pub fn density(&self, v: f64, t: f64) -> Result<f64> {
        let st = self.perturbation.at_time(t)?;
        let w = v + self.jumps.drift() * t;
        let atom = self.jumps.atom_mass(t) * stable_pdf(w, &st)?;
        let (pts, _) = self.jump_range(w, t);
        let slot = ErrorSlot::new();
        let r = integrate_with_breakpoints(
            |y: f64| {
                let fj = self.jumps.jump_sum_density(y, t);
                if fj == 0.0 {
                    0.0
                } else {
                    fj * slot.guard(stable_pdf(w - y, &st))
                }
            },
            &pts,
            &mixture_spec(),
        );
        let r = slot.finish(r)?.require_converged("perturbed compound Poisson density")?;
        Ok(atom + r.value)
    }

    /// `P(X(t) > u)`.
    pub fn tail_prob(&self, u: f64, t: f64) -> Result<f64> {
        let st = self.perturbation.at_time(t)?;
        let w = u + self.jumps.drift() * t;
        let atom = self.jumps.atom_mass(t) * stable_tail(w, &st)?;
        let (pts, upper) = self.jump_range(w, t);
        let slot = ErrorSlot::new();
        let r = integrate_with_breakpoints(
            |y: f64| {
                let fj = self.jumps.jump_sum_density(y, t);
                if fj == 0.0 {
                    0.0
                } else {
                    fj * slot.guard(stable_tail(w - y, &st))
                }
            },
            &pts,
            &mixture_spec(),
        );
        let r = slot.finish(r)?.require_converged("perturbed compound Poisson tail")?;
        // Beyond `upper` the perturbation exceeds w - y with probability ≈ 1.
        Ok((atom + r.value + self.jumps.jump_sum_tail(upper, t)).clamp(0.0, 1.0))
    }

    /// `E(X(t))^- / t`, conditioning on the jump sum:
    /// `E[h(J)]` with `h(j) = E(S(t) + j - ct)^-`.
    pub fn neg_part_mean_ratio(&self, t: f64) -> Result<f64> {
        let s = self.perturbation_scale(t);
        let scaled = self.perturbation.with_sigma(s)?;
        let ct = self.jumps.drift() * t;
        let h = |j: f64| neg_part_mean_unit(&scaled, ct - j);
        let atom = self.jumps.atom_mass(t) * h(0.0)?;
        let (pts, _) = self.jump_range(ct, t);
        let slot = ErrorSlot::new();
        let r = integrate_with_breakpoints(
            |y: f64| {
                let fj = self.jumps.jump_sum_density(y, t);
                if fj == 0.0 {
                    0.0
                } else {
                    fj * slot.guard(h(y))
                }
            },
            &pts,
            &mixture_spec(),
        );
        let r = slot.finish(r)?.require_converged("perturbed negative-part mean")?;
        Ok((atom + r.value) / t)
    }
}

/// Width, in perturbation scales, of the light left tail kept in mixture
/// integrals.
const LIGHT_TAIL_WIDTH: f64 = 50.0;

fn mixture_spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_subdivisions: 2000,
    }
}

fn unit(alpha: f64, beta: f64) -> Result<StableParams> {
    StableParams::standard(alpha, beta)
}

/// The closed set of supported families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevyModel {
    StableDrift(StableDrift),
    SpectrallyNegativeStable(SpectrallyNegativeStable),
    BrownianDrift(BrownianDrift),
    CompoundPoissonDrift(CompoundPoissonDrift),
    PerturbedCompoundPoisson(PerturbedCompoundPoisson),
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("time must be positive and finite, got {t}")))
    }
}

impl LevyModel {
    pub fn stable_drift(alpha: f64, sigma: f64, drift: f64) -> Result<Self> {
        StableDrift::new(alpha, sigma, drift).map(Self::StableDrift)
    }

    pub fn spectrally_negative_stable(alpha: f64, sigma: f64) -> Result<Self> {
        SpectrallyNegativeStable::new(alpha, sigma).map(Self::SpectrallyNegativeStable)
    }

    pub fn brownian(volatility: f64, drift: f64) -> Result<Self> {
        BrownianDrift::new(volatility, drift).map(Self::BrownianDrift)
    }

    pub fn compound_poisson(jump_rate: f64, jump_size_rate: f64, drift: f64) -> Result<Self> {
        CompoundPoissonDrift::new(jump_rate, jump_size_rate, drift).map(Self::CompoundPoissonDrift)
    }

    pub fn perturbed_compound_poisson(
        jump_rate: f64,
        jump_size_rate: f64,
        drift: f64,
        alpha: f64,
        sigma: f64,
    ) -> Result<Self> {
        let jumps = CompoundPoissonDrift::new(jump_rate, jump_size_rate, drift)?;
        PerturbedCompoundPoisson::new(jumps, alpha, sigma).map(Self::PerturbedCompoundPoisson)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::StableDrift(_) => "stable_drift",
            Self::SpectrallyNegativeStable(_) => "spectrally_negative_stable",
            Self::BrownianDrift(_) => "brownian",
            Self::CompoundPoissonDrift(_) => "cpoisson",
            Self::PerturbedCompoundPoisson(_) => "perturbed_cpoisson",
        }
    }

    pub fn has_infinite_variation(&self) -> bool {
        match self {
            Self::StableDrift(_)
            | Self::SpectrallyNegativeStable(_)
            | Self::BrownianDrift(_)
            | Self::PerturbedCompoundPoisson(_) => true,
            Self::CompoundPoissonDrift(_) => false,
        }
    }

    /// `E X(1)`.
    pub fn mean_rate(&self) -> f64 {
        match self {
            Self::StableDrift(m) => -m.drift(),
            Self::SpectrallyNegativeStable(_) => 0.0,
            Self::BrownianDrift(m) => -m.drift(),
            Self::CompoundPoissonDrift(m) => m.mean_rate(),
            Self::PerturbedCompoundPoisson(m) => m.jumps().mean_rate(),
        }
    }

    /// Density of `X(t)` at `v`.
    pub fn density(&self, v: f64, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            Self::StableDrift(m) => m.density(v, t),
            Self::SpectrallyNegativeStable(m) => stable_pdf(v, &m.stable().at_time(t)?),
            Self::BrownianDrift(m) => {
                let s = m.volatility() * t.sqrt();
                Ok(normal_pdf((v + m.drift() * t) / s) / s)
            }
            Self::CompoundPoissonDrift(_) => Err(Error::AtomicLaw),
            Self::PerturbedCompoundPoisson(m) => m.density(v, t),
        }
    }

    /// `P(X(t) > u)`.
    pub fn tail_prob(&self, u: f64, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            Self::StableDrift(m) => {
                let s = m.scale_at(t);
                stable_tail((u + m.drift() * t) / s, &unit(m.alpha(), 1.0)?)
            }
            Self::SpectrallyNegativeStable(m) => stable_tail(u, &m.stable().at_time(t)?),
            Self::BrownianDrift(m) => {
                Ok(normal_sf((u + m.drift() * t) / (m.volatility() * t.sqrt())))
            }
            Self::CompoundPoissonDrift(m) => Ok(m.tail_prob(u, t)),
            Self::PerturbedCompoundPoisson(m) => m.tail_prob(u, t),
        }
    }

    /// Density at `z` of `Y(t)`, the spectrally negative process attached
    /// to the model. For compound Poisson this is the absolutely continuous
    /// part of `ct - J(t)`; its atom sits at `ct`.
    pub fn passage_density(&self, z: f64, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            Self::SpectrallyNegativeStable(_) => self.density(z, t),
            Self::CompoundPoissonDrift(m) => Ok(m.jump_sum_density(m.drift() * t - z, t)),
            _ => self.density(-z, t),
        }
    }

    /// Sign taking the model's `X` to its spectrally negative process `Y`.
    pub(crate) fn passage_sign(&self) -> f64 {
        match self {
            Self::SpectrallyNegativeStable(_) => 1.0,
            _ => -1.0,
        }
    }

    /// `E(X(t))^- / t`.
    pub fn neg_part_mean_ratio(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            Self::StableDrift(m) => {
                // E(σ t^{1/α-1} Z - c)^-
                let p = m.stable().with_sigma(m.sigma() * t.powf(1.0 / m.alpha() - 1.0))?;
                neg_part_mean_unit(&p, m.drift())
            }
            Self::SpectrallyNegativeStable(m) => {
                // -Z' has the β = -1 law: E(-Z')^- = E(Z')^- + E Z'.
                let p = m
                    .stable()
                    .reflected()
                    .with_sigma(m.sigma() * t.powf(1.0 / m.alpha() - 1.0))?;
                neg_part_mean_unit(&p, 0.0)
            }
            Self::BrownianDrift(m) => {
                let a = m.volatility() / t.sqrt();
                let c = m.drift();
                Ok(c * crate::special::normal_cdf(c / a) + a * normal_pdf(c / a))
            }
            Self::CompoundPoissonDrift(m) => Ok(m.neg_part_mean_ratio(t)),
            Self::PerturbedCompoundPoisson(m) => m.neg_part_mean_ratio(t),
        }
    }

    /// Exact draw of `X(dt)`.
    pub fn sample_increment<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> f64 {
        IncrementSampler::new(self, dt).sample(rng)
    }
}

/// Precomputed exact sampler for `X(dt)` at a fixed step.
#[derive(Debug, Clone, Copy)]
pub struct IncrementSampler {
    kind: IncrementKind,
    dt: f64,
}

#[derive(Debug, Clone, Copy)]
enum IncrementKind {
    Stable { sampler: StableSampler, drift: f64 },
    Gaussian { sd: f64, drift: f64 },
    Jumps(CompoundPoissonDrift),
    Perturbed { jumps: CompoundPoissonDrift, sampler: StableSampler },
}

impl IncrementSampler {
    /// # Panics
    /// If `dt` is not positive and finite.
    pub fn new(model: &LevyModel, dt: f64) -> Self {
        assert!(dt > 0.0 && dt.is_finite(), "step must be positive, got {dt}");
        let scaled = |p: &StableParams| {
            StableSampler::new(p.at_time(dt).expect("validated parameters and step"))
        };
        let kind = match model {
            LevyModel::StableDrift(m) => IncrementKind::Stable {
                sampler: scaled(m.stable()),
                drift: m.drift(),
            },
            LevyModel::SpectrallyNegativeStable(m) => IncrementKind::Stable {
                sampler: scaled(m.stable()),
                drift: 0.0,
            },
            LevyModel::BrownianDrift(m) => IncrementKind::Gaussian {
                sd: m.volatility() * dt.sqrt(),
                drift: m.drift(),
            },
            LevyModel::CompoundPoissonDrift(m) => IncrementKind::Jumps(*m),
            LevyModel::PerturbedCompoundPoisson(m) => IncrementKind::Perturbed {
                jumps: *m.jumps(),
                sampler: scaled(m.perturbation()),
            },
        };
        Self { kind, dt }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let dt = self.dt;
        match &self.kind {
            IncrementKind::Stable { sampler, drift } => sampler.sample(rng) - drift * dt,
            IncrementKind::Gaussian { sd, drift } => {
                let z: f64 = StandardNormal.sample(rng);
                sd * z - drift * dt
            }
            IncrementKind::Jumps(m) => m.sample_increment(dt, rng),
            IncrementKind::Perturbed { jumps, sampler } => {
                jumps.sample_increment(dt, rng) + sampler.sample(rng)
            }
        }
    }
}

impl Distribution<f64> for IncrementSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        IncrementSampler::sample(self, rng)
    }
}
