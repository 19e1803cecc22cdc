use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::execute;
use crate::error::{CliError, CliResult};
use crate::record::Record;

const NUMERIC_FLAGS: &[&str] = &[
    "alpha", "sigma", "c", "vol", "lambda", "mu-rate", "x", "t", "u", "horizon", "z", "T",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub flag: String,
    pub points: Vec<f64>,
}

impl Sweep {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let bad = |why: &str| CliError::usage(format!("--sweep {spec:?}: {why}"));
        let parts: Vec<&str> = spec.split(':').collect();
        let [flag, from, to, count, spacing] = parts[..] else {
            return Err(bad("expected flag:from:to:points:lin|log"));
        };
        if !NUMERIC_FLAGS.contains(&flag) {
            return Err(bad("only numeric flags can be swept"));
        }
        let from: f64 = from.parse().map_err(|_| bad("from is not a number"))?;
        let to: f64 = to.parse().map_err(|_| bad("to is not a number"))?;
        let count: usize = count.parse().map_err(|_| bad("points is not a count"))?;
        let spacing = match spacing {
            "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            _ => return Err(bad("spacing must be lin or log")),
        };
        if count == 0 || !from.is_finite() || !to.is_finite() {
            return Err(bad("need at least one point and finite bounds"));
        }
        if spacing == Spacing::Log && !(from > 0.0 && to > 0.0) {
            return Err(bad("log spacing needs positive bounds"));
        }
        let points = (0..count)
            .map(|k| {
                if k == 0 {
                    return from;
                }
                if k == count - 1 {
                    return to;
                }
                let f = k as f64 / (count - 1) as f64;
                match spacing {
                    Spacing::Linear => from + f * (to - from),
                    Spacing::Log => (from.ln() + f * (to / from).ln()).exp(),
                }
            })
            .collect();
        Ok(Self {
            flag: flag.to_owned(),
            points,
        })
    }
}

/// Sets `--flag value` in `base`, replacing an existing occurrence.
fn with_flag(base: &[String], flag: &str, value: f64) -> Vec<String> {
    let long = format!("--{flag}");
    let prefix = format!("{long}=");
    let mut out = Vec::with_capacity(base.len() + 2);
    let mut i = 0;
    while i < base.len() {
        if base[i] == long {
            i += 2;
            continue;
        }
        if !base[i].starts_with(&prefix) {
            out.push(base[i].clone());
        }
        i += 1;
    }
    out.push(long);
    out.push(value.to_string());
    out
}

pub fn run(sweep: &str, base: &[String]) -> CliResult<Vec<Record>> {
    let sweep = Sweep::parse(sweep)?;
    let mut records = Vec::new();
    for &point in &sweep.points {
        let argv = with_flag(base, &sweep.flag, point);
        let cli = Cli::try_parse_from(std::iter::once("levysup".to_owned()).chain(argv))
            .map_err(|e| CliError::usage(format!("table base request: {e}")))?;
        if matches!(cli.command, Command::Table { .. } | Command::Verify { .. }) {
            return Err(CliError::usage("table cannot sweep table or verify"));
        }
        records.extend(execute(&cli.command)?);
    }
    Ok(records)
}
