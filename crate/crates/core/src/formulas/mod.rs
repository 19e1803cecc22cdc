//! Supremum, first-passage and joint infimum laws.
//!
//! Every operation returns a [`ProbabilityEstimate`] carrying the value, an
//! error estimate assembled from the underlying quadratures, and the method
//! used. An integral that fails to converge is reported as
//! [`Error::NotConverged`](crate::Error::NotConverged).

mod passage;
mod supremum;
mod takacs;
mod time_axis;

use std::fmt;

pub use passage::{joint_inf_terminal_density, joint_inf_terminal_mass, kendall_first_passage_cdf};
pub use supremum::{spectrally_negative_sup, sup_finite, sup_infinite, sup_infinite_stable_ml};
pub use takacs::{drift_minus_jumps_sup, takacs_finite, takacs_infinite};

use crate::error::{invalid, Result};
use crate::quadrature::IntegralResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactClosedForm,
    Quadrature,
    Series,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactClosedForm => "exact-closed-form",
            Method::Quadrature => "quadrature",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A probability with its error estimate and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    pub detail: String,
}

impl ProbabilityEstimate {
    pub fn exact(value: f64, detail: impl Into<String>) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            method: Method::ExactClosedForm,
            detail: detail.into(),
        }
    }

    /// Clamps `raw` into `[0, 1]`, folding any excursion into the error.
    pub fn clamped(raw: f64, error_estimate: f64, method: Method, detail: impl Into<String>) -> Self {
        let value = raw.clamp(0.0, 1.0);
        Self {
            value,
            error_estimate: error_estimate + (raw - value).abs(),
            method,
            detail: detail.into(),
        }
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn describe(label: &str, r: &IntegralResult) -> String {
    format!(
        "{label}: {:.6e} ± {:.1e} ({} evaluations)",
        r.value, r.error_estimate, r.evaluations
    )
}
