use levysup::formulas::{
    drift_minus_jumps_sup, joint_inf_terminal_density, kendall_first_passage_cdf,
    spectrally_negative_sup, sup_finite, sup_infinite, sup_infinite_stable_ml, takacs_finite,
    takacs_infinite, Method, ProbabilityEstimate,
};
use levysup::models::LevyModel;
use levysup::montecarlo::{
    mc_first_passage, mc_joint_inf_terminal, mc_sup_prob, McEstimate, SimConfig,
};

use crate::args::{Command, McTarget, ModelArgs, Process, Route, SimArgs};
use crate::error::{CliError, CliResult};
use crate::record::Record;
use crate::{table, verify};

pub fn execute(command: &Command) -> CliResult<Vec<Record>> {
    match command {
        Command::Pdf { model, x, t } => {
            let m = model.build()?;
            let mut r = request("pdf", model);
            r.set("x", *x).set("t", *t);
            let method = match m {
                LevyModel::BrownianDrift(_) => "closed-form",
                _ => "quadrature",
            };
            r.set("value", m.density(*x, *t)?).set("method", method);
            Ok(vec![r])
        }
        Command::Sup {
            model,
            u,
            horizon,
            route,
        } => {
            let estimate = sup(model, *u, *horizon, *route)?;
            let mut r = request("sup", model);
            r.set("u", *u).set("horizon", *horizon).set("route", route_name(*route));
            Ok(vec![with_estimate(r, &estimate)])
        }
        Command::Kendall { model, z, t } => {
            let estimate = kendall_first_passage_cdf(&model.build()?, *z, *t)?;
            let mut r = request("kendall", model);
            r.set("z", *z).set("T", *t);
            Ok(vec![with_estimate(r, &estimate)])
        }
        Command::Joint { model, x, z, t } => {
            let density = joint_inf_terminal_density(&model.build()?, *x, *z, *t)?;
            let mut r = request("joint", model);
            r.set("x", *x).set("z", *z).set("T", *t);
            r.set("value", density).set("method", Method::Quadrature.as_str());
            Ok(vec![r])
        }
        Command::Takacs {
            model,
            u,
            horizon,
            process,
        } => {
            let m = model.compound_poisson()?;
            let estimate = match (process, horizon.is_finite()) {
                (Process::JumpsMinusDrift, true) => takacs_finite(&m, *u, *horizon)?,
                (Process::JumpsMinusDrift, false) => takacs_infinite(&m, *u)?,
                (Process::DriftMinusJumps, true) => drift_minus_jumps_sup(&m, *u, *horizon)?,
                (Process::DriftMinusJumps, false) => {
                    return Err(CliError::usage(
                        "--process drift-minus-jumps needs a finite --horizon",
                    ))
                }
            };
            let mut r = request("takacs", model);
            let process = match process {
                Process::JumpsMinusDrift => "jumps-minus-drift",
                Process::DriftMinusJumps => "drift-minus-jumps",
            };
            r.set("u", *u).set("horizon", *horizon).set("process", process);
            Ok(vec![with_estimate(r, &estimate)])
        }
        Command::Mc { target } => monte_carlo(target),
        Command::Verify { suite, sim } => verify::run(suite, &sim_config(sim)?),
        Command::Table { sweep, base } => table::run(sweep, base),
    }
}

fn sup(model: &ModelArgs, u: f64, horizon: f64, route: Route) -> CliResult<ProbabilityEstimate> {
    if !(horizon > 0.0) {
        return Err(CliError::usage(format!(
            "--horizon must be positive or inf, got {horizon}"
        )));
    }
    let m = model.build()?;
    if route == Route::Series {
        return match (&m, horizon.is_finite()) {
            (LevyModel::StableDrift(s), false) if s.sigma() == 1.0 => {
                Ok(sup_infinite_stable_ml(s.alpha(), s.drift(), u)?)
            }
            _ => Err(CliError::usage(
                "--route series needs --model stable_drift --sigma 1 --horizon inf",
            )),
        };
    }
    let estimate = match (&m, horizon.is_finite()) {
        (LevyModel::CompoundPoissonDrift(cp), true) => takacs_finite(cp, u, horizon)?,
        (LevyModel::CompoundPoissonDrift(cp), false) => takacs_infinite(cp, u)?,
        (LevyModel::SpectrallyNegativeStable(s), true) => {
            spectrally_negative_sup(s.alpha(), s.sigma(), u, horizon)?
        }
        (_, true) => sup_finite(&m, u, horizon)?,
        (_, false) => sup_infinite(&m, u)?,
    };
    Ok(estimate)
}

fn monte_carlo(target: &McTarget) -> CliResult<Vec<Record>> {
    match target {
        McTarget::Sup {
            model,
            u,
            horizon,
            sim,
        } => {
            let cfg = sim_config(sim)?;
            let e = mc_sup_prob(&model.build()?, *u, *horizon, &cfg)?;
            let mut r = mc_request("sup", model, &cfg);
            r.set("u", *u).set("horizon", *horizon);
            Ok(vec![with_mc(r, &e)])
        }
        McTarget::Passage { model, z, t, sim } => {
            let cfg = sim_config(sim)?;
            let e = mc_first_passage(&model.build()?, *z, *t, &cfg)?;
            let mut r = mc_request("passage", model, &cfg);
            r.set("z", *z).set("T", *t);
            Ok(vec![with_mc(r, &e)])
        }
        McTarget::Joint {
            model,
            x,
            bins,
            t,
            sim,
        } => {
            let cfg = sim_config(sim)?;
            let edges = parse_bins(bins)?;
            let h = mc_joint_inf_terminal(&model.build()?, *x, &edges, *t, &cfg)?;
            Ok(h.bins
                .iter()
                .zip(h.edges.windows(2))
                .map(|(e, w)| {
                    let mut r = mc_request("joint", model, &cfg);
                    r.set("x", *x).set("bins", bins.as_str()).set("T", *t);
                    r.set("bin_lo", w[0]).set("bin_hi", w[1]);
                    with_mc(r, e)
                })
                .collect())
        }
    }
}

pub fn sim_config(sim: &SimArgs) -> CliResult<SimConfig> {
    let workers = sim.workers.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, std::num::NonZeroUsize::get)
    });
    Ok(SimConfig::new(sim.paths, sim.steps, sim.seed, workers)?)
}

/// `from:to:count` into `count + 1` equally spaced edges.
fn parse_bins(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::usage(format!("--bins expects from:to:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [from, to, count] = parts[..] else {
        return Err(bad());
    };
    let from: f64 = from.parse().map_err(|_| bad())?;
    let to: f64 = to.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if count == 0 || !(to > from) {
        return Err(bad());
    }
    let width = (to - from) / count as f64;
    Ok((0..=count)
        .map(|k| if k == count { to } else { from + width * k as f64 })
        .collect())
}

fn request(command: &str, model: &ModelArgs) -> Record {
    let mut r = Record::new(command);
    model.echo(&mut r);
    r
}

fn mc_request(target: &str, model: &ModelArgs, cfg: &SimConfig) -> Record {
    let mut r = request("mc", model);
    r.set("target", target)
        .set("paths", cfg.n_paths)
        .set("steps", u64::from(cfg.n_steps))
        .set("seed", cfg.seed)
        .set("workers", cfg.workers as u64);
    r
}

fn with_estimate(mut r: Record, e: &ProbabilityEstimate) -> Record {
    r.set("value", e.value)
        .set("error_estimate", e.error_estimate)
        .set("method", e.method.as_str())
        .set("detail", e.detail.as_str());
    r
}

fn with_mc(mut r: Record, e: &McEstimate) -> Record {
    r.set("value", e.value)
        .set("stderr", e.stderr)
        .set("bias_note", e.bias_note.as_str());
    r
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Quadrature => "quadrature",
        Route::Series => "series",
    }
}
