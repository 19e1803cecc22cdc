//! Integral representation of the standard one-sided stable density and
//! tail on the positive half-line, for `1 < α < 2`.
//!
//! With the angle split as `φ + ψ = L` over `(0, L)`,
//!
//! ```text
//! pdf(x)  = α / (π (α-1) x) ∫ g e^{-g} dφ
//! tail(x) = 1/π ∫ e^{-g} dφ,        g = x^{α/(α-1)} V(φ)
//! ```
//!
//! where `V` is the Zolotarev kernel. `g` runs monotonically from its value
//! at `φ = 0` up to `+∞` at `ψ = 0`. The integrand is concentrated around
//! `g = 1`, which is located first and used to seed the breakpoints. Each
//! half of the range is integrated in its own distance-to-endpoint variable
//! so `φ` and `ψ` never suffer cancellation.

use std::f64::consts::PI;

use crate::error::Result;
use crate::quadrature::{integrate_with_breakpoints, IntegralResult, QuadSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Skew {
    Positive,
    Negative,
}

impl Skew {
    pub fn of(beta: f64) -> Self {
        if beta > 0.0 {
            Skew::Positive
        } else {
            Skew::Negative
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Skew::Positive => Skew::Negative,
            Skew::Negative => Skew::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Quantity {
    Density,
    Tail,
}

const BREAKPOINT_OCTAVES: i32 = 10;
const LN_G_CUTOFF: f64 = 700.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    alpha: f64,
    skew: Skew,
    range: f64,
    ln_c0: f64,
    exponent: f64,
}

impl Kernel {
    pub fn new(alpha: f64, skew: Skew) -> Self {
        debug_assert!(alpha > 1.0 && alpha < 2.0);
        let range = match skew {
            Skew::Positive => PI - PI / alpha,
            Skew::Negative => PI / alpha,
        };
        Self {
            alpha,
            skew,
            range,
            ln_c0: (-(0.5 * PI * alpha).cos()).ln() / (alpha - 1.0),
            exponent: alpha / (alpha - 1.0),
        }
    }

    /// `P(X > 0)`.
    pub fn tail_at_zero(&self) -> f64 {
        self.range / PI
    }

    /// Density at the origin, which is the same for both skews.
    pub fn density_at_zero(alpha: f64) -> f64 {
        let tan = (0.5 * PI * alpha).tan();
        let theta0 = tan.atan() / alpha;
        crate::special::gamma(1.0 + 1.0 / alpha) * theta0.cos()
            / (PI * (1.0 + tan * tan).powf(0.5 / alpha))
    }

    fn ln_v(&self, phi: f64, psi: f64) -> f64 {
        let a = self.alpha;
        let (sin_a_psi, cos_term) = match self.skew {
            Skew::Positive => (
                (a * psi).sin(),
                (0.5 * PI * a - PI + (a - 1.0) * (0.5 * PI - phi)).cos(),
            ),
            // Here αL = π, so sin(αψ) = sin(αφ).
            Skew::Negative => ((a * phi.min(psi)).sin(), ((a - 1.0) * phi).sin()),
        };
        self.ln_c0 + phi.sin().ln() / (a - 1.0) - self.exponent * sin_a_psi.ln() + cos_term.ln()
    }

    fn ln_g(&self, ln_x_scaled: f64, phi: f64, psi: f64) -> f64 {
        ln_x_scaled + self.ln_v(phi, psi)
    }

    pub fn density(&self, x: f64) -> Result<IntegralResult> {
        let r = self.integrate(x, Quantity::Density)?;
        Ok(r.scale(self.alpha / (PI * (self.alpha - 1.0) * x)))
    }

    pub fn tail(&self, x: f64) -> Result<IntegralResult> {
        Ok(self.integrate(x, Quantity::Tail)?.scale(1.0 / PI))
    }

    fn integrate(&self, x: f64, what: Quantity) -> Result<IntegralResult> {
        debug_assert!(x > 0.0);
        let lx = self.exponent * x.ln();
        let half = 0.5 * self.range;
        let spec = QuadSpec {
            abs_tol: 1e-300,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        };
        let h = move |lg: f64| -> f64 {
            match what {
                Quantity::Density if lg > LN_G_CUTOFF => 0.0,
                Quantity::Density => (lg - lg.exp()).exp(),
                Quantity::Tail => (-lg.exp()).exp(),
            }
        };
        let range = self.range;

        // Left half in φ, right half in ψ; ln g rises with φ.
        let at_half = self.ln_g(lx, half, range - half);
        let (left_centre, right_centre) = if at_half >= 0.0 {
            (self.root(|s| self.ln_g(lx, s, range - s), half, true), half)
        } else {
            (half, self.root(|s| self.ln_g(lx, range - s, s), half, false))
        };

        let left = integrate_with_breakpoints(
            |phi: f64| h(self.ln_g(lx, phi, range - phi)),
            &breakpoints(left_centre, half),
            &spec,
        )?;
        let right = integrate_with_breakpoints(
            |psi: f64| h(self.ln_g(lx, range - psi, psi)),
            &breakpoints(right_centre, half),
            &spec,
        )?;
        Ok(left + right)
    }

    /// Locates the zero of a monotone `ln g(s)` on `(0, half]` by bisection
    /// in `ln s`; `increasing` gives the direction of monotonicity.
    fn root<F: Fn(f64) -> f64>(&self, lng: F, half: f64, increasing: bool) -> f64 {
        let mut lo = (half * 1e-200).ln();
        let mut hi = half.ln();
        let below = |s: f64| (lng(s) < 0.0) == increasing;
        if !below(lo.exp()) {
            return lo.exp();
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if below(mid.exp()) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).exp()
    }
}

fn breakpoints(centre: f64, half: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    for k in -BREAKPOINT_OCTAVES..=BREAKPOINT_OCTAVES {
        let p = centre * 2f64.powi(k);
        if p > 0.0 && p < half {
            pts.push(p);
        }
    }
    pts.push(half);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}
