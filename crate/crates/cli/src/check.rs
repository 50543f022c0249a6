use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use hyts::scenarios;
use hyts::stability::{self, fit_linear_gain};
use hyts::{ClassKInf, Distance, Ensemble, ScenarioError, Signal, Slack, StabilityReport};
use serde_json::json;

use crate::params::Params;
use crate::{usage, write_json, Common, Scenario, Status};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Check {
    Ugs,
    Attractivity,
    Kweak,
    C1,
    Corollary1,
    Strict,
    Pugas,
}

#[derive(Args)]
pub struct CheckArgs {
    check: Check,
    /// Scenario whose ensemble is checked.
    #[arg(long, required_unless_present = "trace")]
    scenario: Option<Scenario>,
    /// Trace CSV files to check instead of a scenario ensemble; repeatable.
    #[arg(long, conflicts_with = "scenario")]
    trace: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Class-K∞ bound: identity, linear:c or power:a,b.
    #[arg(long)]
    beta: Option<ClassKInf>,
    #[arg(long)]
    alpha: Option<ClassKInf>,
    /// Class-K∞ gain, or `fit` to use the smallest linear gain seen in the ensemble.
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long = "T", value_name = "T")]
    horizon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Largest admissible gap.
    #[arg(long = "M", value_name = "M", default_value_t = 1.0)]
    max_gap: f64,
    /// `(ε, T)` pairs for pugas, e.g. `0.2:50,0.1:80`.
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    slack_abs: f64,
    #[arg(long, default_value_t = 1e-9)]
    slack_rel: f64,
    /// Absolute slack of the strict-decrease check; defaults to ten solver steps.
    #[arg(long)]
    strict_slack: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

type Lyapunov = fn(&[f64]) -> f64;

fn squared_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

struct Subject {
    signals: Vec<Signal>,
    v: Lyapunov,
    step: f64,
    spec: serde_json::Value,
}

fn scenario_err(e: ScenarioError) -> anyhow::Error {
    match e {
        ScenarioError::Param(m) => usage(m),
        other => other.into(),
    }
}

fn ensemble(scenario: Scenario, p: &Params, seed: u64) -> Result<Subject> {
    let subject = match scenario {
        Scenario::Example1Continuous => {
            let (count, horizon, step) = (p.usize("count", Some(20))?, p.f64("horizon", Some(5.0))?, p.f64("step", Some(1e-3))?);
            p.finish()?;
            let signals = scenarios::example1_continuous_ensemble(seed, count, horizon, step).map_err(scenario_err)?;
            Subject { signals, v: squared_norm, step, spec: json!({ "count": count, "horizon": horizon, "step": step }) }
        }
        Scenario::Example1Discrete => {
            let (count, r, steps) = (p.usize("count", Some(20))?, p.f64("r", None)?, p.usize("steps", Some(8))?);
            p.finish()?;
            let signals = scenarios::example1_discrete_ensemble(seed, count, r, steps).map_err(scenario_err)?;
            Subject { signals, v: squared_norm, step: r, spec: json!({ "count": count, "r": r, "steps": steps }) }
        }
        Scenario::Example2 => {
            let count = p.usize("count", Some(10))?;
            let horizon = p.f64("horizon", Some(100.0))?;
            let step = p.f64("step", Some(1e-3))?;
            let every = p.usize("sample_every", Some(10))?;
            p.finish()?;
            let runs = scenarios::example2_ensemble(seed, count, horizon, step, every).map_err(scenario_err)?;
            Subject {
                signals: runs.into_iter().map(|(s, _)| s).collect(),
                v: scenarios::example2_v,
                step: step * every as f64,
                spec: json!({ "count": count, "horizon": horizon, "step": step, "sample_every": every }),
            }
        }
        Scenario::BouncingBall | Scenario::BouncingBallZeno => {
            return Err(usage("stability checks are defined for example1-continuous, example1-discrete and example2"));
        }
    };
    Ok(subject)
}

fn from_traces(paths: &[PathBuf]) -> Result<Subject> {
    let mut signals = Vec::with_capacity(paths.len());
    let mut step = 0.0f64;
    for path in paths {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let sig = Signal::read_trace_csv(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for w in sig.times().windows(2) {
            step = step.max(w[1] - w[0]);
        }
        signals.push(sig);
    }
    let names: Vec<_> = paths.iter().map(|p| p.display().to_string()).collect();
    Ok(Subject { signals, v: squared_norm, step, spec: json!({ "traces": names }) })
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| usage(format!("this check needs --{flag}")))
}

fn schedule(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(|pair| {
            let (e, t) = pair.split_once(':').ok_or_else(|| usage(format!("bad schedule entry {pair:?}")))?;
            let parse = |v: &str| v.trim().parse::<f64>().map_err(|_| usage(format!("bad schedule entry {pair:?}")));
            Ok((parse(e)?, parse(t)?))
        })
        .collect()
}

fn param_err(e: hyts::StabilityError) -> anyhow::Error {
    usage(e.to_string())
}

pub fn run(args: &CheckArgs) -> Result<Status> {
    let p = Params::load(args.common.config.as_deref(), &args.common.params)?;
    let subject = match args.scenario {
        Some(s) => ensemble(s, &p, args.common.seed)?,
        None => {
            p.finish()?;
            from_traces(&args.trace)?
        }
    };
    let Subject { signals, v, step, spec } = subject;
    let slack = Slack { abs: args.slack_abs, rel: args.slack_rel };
    let e = Ensemble::new(signals, Distance::Euclidean).map_err(param_err)?;
    let vf = |x: &[f64]| v(x);
    let report: StabilityReport = match args.check {
        Check::Ugs => stability::check_ugs(&e, &args.beta.clone().unwrap_or_else(ClassKInf::identity), slack),
        Check::Attractivity => {
            stability::check_attractivity(&e, need(&args.eps, "eps")?, need(&args.horizon, "T")?, slack).map_err(param_err)?
        }
        Check::C1 => stability::falsify_c1(&e, need(&args.eps, "eps")?, need(&args.horizon, "T")?).map_err(param_err)?,
        Check::Kweak => {
            let gamma = match need(&args.gamma, "gamma")?.as_str() {
                "fit" => {
                    let c = fit_linear_gain(&e.signals, &vf);
                    ClassKInf::linear(c.max(f64::MIN_POSITIVE) * (1.0 + 1e-9)).map_err(|err| usage(err.to_string()))?
                }
                s => s.parse().map_err(|err: hyts::stability::ClassKError| usage(err.to_string()))?,
            };
            stability::check_k_weak(&e, &vf, &need(&args.alpha, "alpha")?, &need(&args.beta, "beta")?, &gamma, slack)
        }
        Check::Corollary1 => stability::check_corollary1(
            &e,
            &vf,
            args.max_gap,
            need(&args.eps, "eps")?,
            need(&args.horizon, "T")?,
            need(&args.delta, "delta")?,
            args.beta.as_ref(),
            slack,
        )
        .map_err(param_err)?,
        Check::Pugas => {
            let sched = schedule(&need(&args.schedule, "schedule")?)?;
            let beta = args.beta.clone().unwrap_or_else(ClassKInf::identity);
            stability::check_pugas(&e, &beta, &sched, slack).map_err(param_err)?
        }
        Check::Strict => {
            let gamma: ClassKInf = need(&args.gamma, "gamma")?
                .parse()
                .map_err(|err: hyts::stability::ClassKError| usage(err.to_string()))?;
            let tol = args.strict_slack.unwrap_or(10.0 * step);
            let mut first = None;
            for (k, sig) in e.signals.iter().enumerate() {
                let mut rep = stability::check_strict_decrease(sig, &vf, &gamma, &e.distance, tol);
                if let Some(w) = rep.witness.as_mut() {
                    w.signal = k;
                }
                let failed = !rep.passed();
                if first.is_none() || failed {
                    first = Some(rep);
                }
                if failed {
                    break;
                }
            }
            first.ok_or_else(|| usage("no signals to check"))?
        }
    };
    let passed = report.passed();
    let doc = json!({
        "scenario": args.scenario.map(Scenario::name),
        "seed": args.common.seed,
        "ensemble": spec,
        "report": report,
    });
    match &args.out {
        Some(path) => write_json(path, &doc)?,
        None => crate::print_json(&doc)?,
    }
    Ok(if passed { Status::Ok } else { Status::Failed })
}
