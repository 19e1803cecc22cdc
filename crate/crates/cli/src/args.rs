use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::record::Format;

#[derive(Debug, Parser)]
#[command(
    name = "levysup",
    version,
    about = "Supremum, first-passage and joint infimum laws of spectrally one-sided Lévy processes",
    after_help = "Any argument list may include `--args-file <path>`; the file is read as one \
                  flag (optionally followed by its value) per line and spliced in place."
)]
pub struct Cli {
    /// Record format; `table` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,

    /// Write records to this file instead of standard output.
    #[arg(long = "out", global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density of X(t) at x.
    Pdf {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        t: f64,
    },
    /// P(sup_{t≤T} X(t) > u), finite or infinite horizon.
    Sup {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        u: f64,
        /// A positive time or `inf`.
        #[arg(long)]
        horizon: f64,
        /// Infinite-horizon stable drift only: series evaluates the
        /// Mittag-Leffler closed form.
        #[arg(long, value_enum, default_value_t = Route::Quadrature)]
        route: Route,
    },
    /// P(S(z) ≤ T) for the first passage of Y above z.
    Kendall {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        z: f64,
        #[arg(long = "T")]
        t: f64,
    },
    /// Density in z of P(inf_{t≤T} Y(t) < -x, Y(T) + x ∈ dz).
    Joint {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        z: f64,
        #[arg(long = "T")]
        t: f64,
    },
    /// Supremum laws of the compound Poisson family.
    Takacs {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        u: f64,
        /// A positive time or `inf`.
        #[arg(long)]
        horizon: f64,
        /// jumps-minus-drift: sup of J(t) - ct; drift-minus-jumps: sup of ct - J(t).
        #[arg(long, value_enum, default_value_t = Process::JumpsMinusDrift)]
        process: Process,
    },
    /// Monte Carlo estimates.
    Mc {
        #[command(subcommand)]
        target: McTarget,
    },
    /// Run formula-versus-oracle suites; exits 0 only if every check passes.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Sweep one numeric flag of a request, one record per grid point.
    Table {
        /// flag:from:to:points:lin|log
        #[arg(long)]
        sweep: String,
        /// The request to sweep, starting with its subcommand.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        base: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum McTarget {
    /// Frequency of sup_{t≤T} X(t) > u.
    Sup {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        #[arg(long)]
        horizon: f64,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Frequency of S(z) ≤ T.
    Passage {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        #[arg(long = "T")]
        t: f64,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Histogram of the joint infimum / terminal law.
    Joint {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        x: f64,
        /// Equal-width bins as from:to:count.
        #[arg(long)]
        bins: String,
        #[arg(long = "T")]
        t: f64,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 200_000)]
    pub paths: u64,
    #[arg(long, default_value_t = 8192)]
    pub steps: u32,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Defaults to the number of available cores.
    #[arg(long, env = "LEVYSUP_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    #[value(name = "stable_drift", alias = "stable-drift")]
    StableDrift,
    #[value(name = "spectrally_negative_stable", alias = "spectrally-negative-stable")]
    SpectrallyNegativeStable,
    #[value(name = "brownian")]
    Brownian,
    #[value(name = "cpoisson")]
    Cpoisson,
    #[value(name = "perturbed_cpoisson", alias = "perturbed-cpoisson")]
    PerturbedCpoisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Process {
    JumpsMinusDrift,
    DriftMinusJumps,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Drift c (the process is the jump or stable part minus ct).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Brownian volatility.
    #[arg(long)]
    pub vol: Option<f64>,
    /// Jump rate λ.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Rate of the exponential jump sizes.
    #[arg(long = "mu-rate")]
    pub mu_rate: Option<f64>,
}
