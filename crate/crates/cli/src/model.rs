use levysup::models::{CompoundPoissonDrift, LevyModel};

use crate::args::{ModelArgs, ModelKind};
use crate::error::{CliError, CliResult};
use crate::record::Record;

impl ModelKind {
    pub fn flag_value(&self) -> &'static str {
        match self {
            ModelKind::StableDrift => "stable_drift",
            ModelKind::SpectrallyNegativeStable => "spectrally_negative_stable",
            ModelKind::Brownian => "brownian",
            ModelKind::Cpoisson => "cpoisson",
            ModelKind::PerturbedCpoisson => "perturbed_cpoisson",
        }
    }

    /// Flags the family takes; every other model flag is rejected.
    fn keys(&self) -> &'static [&'static str] {
        match self {
            ModelKind::StableDrift => &["alpha", "sigma", "c"],
            ModelKind::SpectrallyNegativeStable => &["alpha", "sigma"],
            ModelKind::Brownian => &["vol", "c"],
            ModelKind::Cpoisson => &["lambda", "mu-rate", "c"],
            ModelKind::PerturbedCpoisson => &["lambda", "mu-rate", "c", "alpha", "sigma"],
        }
    }
}

impl ModelArgs {
    fn entries(&self) -> [(&'static str, Option<f64>); 6] {
        [
            ("alpha", self.alpha),
            ("sigma", self.sigma),
            ("c", self.c),
            ("vol", self.vol),
            ("lambda", self.lambda),
            ("mu-rate", self.mu_rate),
        ]
    }

    fn require(&self, key: &str) -> CliResult<f64> {
        self.entries()
            .iter()
            .find(|(k, _)| *k == key)
            .and_then(|(_, v)| *v)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "model {} requires --{key}",
                    self.model.flag_value()
                ))
            })
    }

    pub fn build(&self) -> CliResult<LevyModel> {
        let allowed = self.model.keys();
        for (key, value) in self.entries() {
            if value.is_some() && !allowed.contains(&key) {
                return Err(CliError::usage(format!(
                    "--{key} does not apply to model {}",
                    self.model.flag_value()
                )));
            }
        }
        let v = |k| self.require(k);
        let model = match self.model {
            ModelKind::StableDrift => LevyModel::stable_drift(v("alpha")?, v("sigma")?, v("c")?),
            ModelKind::SpectrallyNegativeStable => {
                LevyModel::spectrally_negative_stable(v("alpha")?, v("sigma")?)
            }
            ModelKind::Brownian => LevyModel::brownian(v("vol")?, v("c")?),
            ModelKind::Cpoisson => LevyModel::compound_poisson(v("lambda")?, v("mu-rate")?, v("c")?),
            ModelKind::PerturbedCpoisson => LevyModel::perturbed_compound_poisson(
                v("lambda")?,
                v("mu-rate")?,
                v("c")?,
                v("alpha")?,
                v("sigma")?,
            ),
        }?;
        Ok(model)
    }

    pub fn compound_poisson(&self) -> CliResult<CompoundPoissonDrift> {
        match self.build()? {
            LevyModel::CompoundPoissonDrift(m) => Ok(m),
            other => Err(CliError::usage(format!(
                "this command needs --model cpoisson, got {}",
                other.name()
            ))),
        }
    }

    pub fn echo(&self, record: &mut Record) {
        record.set("model", self.model.flag_value());
        for (key, value) in self.entries() {
            if let Some(v) = value {
                record.set(key, v);
            }
        }
    }
}
