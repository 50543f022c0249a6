use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use anyhow::{Context, Result};
use hyts::scenarios::{self, BallParams};
use hyts::{GapPolicy, ScenarioError, Signal, SolverConfig};
use serde_json::{json, Value};

use crate::params::Params;
use crate::{usage, write_json, Common, Scenario, Status};

fn ball_params(p: &Params) -> Result<BallParams> {
    Ok(BallParams {
        h0: p.f64("h0", None)?,
        v0: p.f64("v0", None)?,
        g: p.f64("g", None)?,
        theta: p.f64("theta", None)?,
    })
}

fn solver_config(p: &Params) -> Result<SolverConfig> {
    let d = SolverConfig::default();
    let gap_policy = match p.opt_f64("gap_ratio")? {
        Some(r) => GapPolicy::Geometric { r },
        None => GapPolicy::Constant { delta: p.f64("gap", Some(1.0))? },
    };
    let cfg = SolverConfig {
        step: p.f64("step", Some(d.step))?,
        event_tol: p.f64("event_tol", Some(d.event_tol))?,
        gap_policy,
        max_jumps: p.usize("max_jumps", Some(d.max_jumps))?,
        horizon: p.f64("horizon", Some(d.horizon))?,
        zeno_tol: p.f64("zeno_tol", Some(d.zeno_tol))?,
        zeno_run: p.usize("zeno_run", Some(d.zeno_run))?,
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

/// Parameter problems surface as usage errors, numeric ones as failures.
fn scenario_err(e: ScenarioError) -> anyhow::Error {
    match e {
        ScenarioError::Param(m) => usage(m),
        other => other.into(),
    }
}

fn write_trace(path: &Path, sig: &Signal) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    sig.write_trace_csv(BufWriter::new(f))?;
    Ok(())
}

pub fn run(scenario: Scenario, common: &Common, out: &Path) -> Result<Status> {
    let p = Params::load(common.config.as_deref(), &common.params)?;
    let mut extra: Vec<(&str, Value)> = Vec::new();
    let (sig, report, impacts) = match scenario {
        Scenario::Example1Continuous => {
            let x0 = p.require_vec2("x0")?;
            let horizon = p.f64("horizon", Some(5.0))?;
            let step = p.f64("step", Some(1e-3))?;
            p.finish()?;
            let (sig, rep) = scenarios::example1_continuous(&x0, horizon, step).map_err(scenario_err)?;
            (sig, serde_json::to_value(rep)?, None)
        }
        Scenario::Example1Discrete => {
            let x0 = p.require_vec2("x0")?;
            let r = p.f64("r", None)?;
            let steps = p.usize("steps", Some(10))?;
            p.finish()?;
            let (sig, rep) = scenarios::example1_discrete(&x0, r, steps).map_err(scenario_err)?;
            (sig, serde_json::to_value(rep)?, None)
        }
        Scenario::Example2 => {
            let x0 = match p.vec2("x0")? {
                Some(x) => x,
                None => scenarios::random_state(&mut scenarios::rng(common.seed), 0.1, 10.0),
            };
            let horizon = p.f64("horizon", Some(20.0))?;
            let step = p.f64("step", Some(1e-4))?;
            let every = p.usize("sample_every", Some(10))?;
            p.finish()?;
            let (sig, log) = scenarios::example2_switched(&x0, horizon, step, every).map_err(scenario_err)?;
            extra.push(("x0", json!(x0)));
            (sig, serde_json::to_value(log)?, None)
        }
        Scenario::BouncingBall => {
            let bp = ball_params(&p)?;
            let eta = p.bool("eta", false)?;
            let cfg = solver_config(&p)?;
            p.finish()?;
            let run = scenarios::bouncing_ball(&bp, &cfg, eta).map_err(scenario_err)?;
            extra.push(("solver", serde_json::to_value(&cfg)?));
            (run.solution.signal, serde_json::to_value(run.report)?, Some(run.impacts))
        }
        Scenario::BouncingBallZeno => {
            let bp = ball_params(&p)?;
            let zeno_tol = p.f64("zeno_tol", Some(1e-6))?;
            let step = p.f64("step", Some(1e-3))?;
            let tail = p.f64("tail", Some(1.0))?;
            p.finish()?;
            let run = scenarios::bouncing_ball_zeno(&bp, zeno_tol, step, tail).map_err(scenario_err)?;
            fs::create_dir_all(out)?;
            write_json(&out.join("realtime.json"), &serde_json::to_value(&run.trace)?)?;
            (run.signal, serde_json::to_value(run.report)?, None)
        }
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write_trace(&out.join("trace.csv"), &sig)?;
    if let Some(table) = impacts {
        let f = File::create(out.join("impacts.csv"))?;
        table.write_csv(BufWriter::new(f))?;
    }
    let mut doc = json!({
        "scenario": scenario.name(),
        "seed": common.seed,
        "params": p.as_map(),
        "samples": sig.len(),
        "report": report,
    });
    for (k, v) in extra {
        doc[k] = v;
    }
    write_json(&out.join("report.json"), &doc)?;
    Ok(Status::Ok)
}
