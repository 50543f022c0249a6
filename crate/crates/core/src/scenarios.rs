//! The worked examples: a planar system on `ℝ_+` and on lattices, a
//! state-dependent switched system, and the bouncing ball with and without
//! its Zeno passage.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{RealTimeEntry, RealTimeTrace, Signal, SignalError};
use crate::hybrid::{self, FnSystem, HybridError, Solution, SolverConfig, Termination};
use crate::numeric::{geometric_partial_sums, norm};
use crate::timescale::{GeneralizedTimeScale, Segment, TimeScaleError, DEFAULT_TOL_T};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Hybrid(#[from] HybridError),
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error("impacts csv: {0}")]
    Csv(#[from] csv::Error),
}

type Result<T> = std::result::Result<T, ScenarioError>;

fn require(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok { Ok(()) } else { Err(ScenarioError::Param(msg.into())) }
}

fn require_state(x0: &[f64]) -> Result<()> {
    require(x0.len() == 2, format!("x0 must have two components, got {}", x0.len()))?;
    require(x0.iter().all(|v| v.is_finite()), "x0 must be finite")
}

/// Uniform grid `lo, lo + h, ...` on `[lo, hi]` that always ends at `hi`.
fn grid(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let mut ts = vec![lo];
    let mut k = 1u64;
    loop {
        let t = lo + k as f64 * h;
        if t >= hi - 1e-3 * h {
            break;
        }
        ts.push(t);
        k += 1;
    }
    if hi > lo {
        ts.push(hi);
    }
    ts
}

// ---------------------------------------------------------------------------
// Example 1: ẋ₁ = −x₁ + x₂², ẋ₂ = −x₂ − x₁x₂

pub fn example1_field(x: &[f64], dx: &mut [f64]) {
    dx[0] = -x[0] + x[1] * x[1];
    dx[1] = -x[1] - x[0] * x[1];
}

/// `V = x₁² + x₂²`.
pub fn example1_v(x: &[f64]) -> f64 {
    x[0] * x[0] + x[1] * x[1]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example1Report {
    pub x0: Vec<f64>,
    pub horizon: f64,
    pub step: f64,
    pub samples: usize,
    /// `max |d(t) − e^{−t} d(0)|`.
    pub max_abs_error: f64,
    /// `max |d(t)/d(0) − e^{−t}|`; zero for the trivial solution.
    pub decay_rate_error: f64,
}

pub fn example1_continuous(x0: &[f64], horizon: f64, step: f64) -> Result<(Signal, Example1Report)> {
    require_state(x0)?;
    require(horizon > 0.0 && horizon.is_finite(), "horizon must be positive")?;
    require(step > 0.0 && step.is_finite(), "step must be positive")?;
    let sys = FnSystem::new(2, |_| true, example1_field);
    let cfg = SolverConfig { step, horizon, ..SolverConfig::default() };
    let sig = hybrid::solve(&sys, x0, &cfg)?.signal;
    let d0 = norm(x0);
    let (mut abs_err, mut rate_err) = (0.0f64, 0.0f64);
    for (t, x) in sig.iter() {
        let d = norm(x);
        let law = (-t).exp();
        abs_err = abs_err.max((d - law * d0).abs());
        if d0 > 0.0 {
            rate_err = rate_err.max((d / d0 - law).abs());
        }
    }
    let report = Example1Report {
        x0: x0.to_vec(),
        horizon,
        step,
        samples: sig.len(),
        max_abs_error: abs_err,
        decay_rate_error: rate_err,
    };
    Ok((sig, report))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example1DiscreteReport {
    pub x0: Vec<f64>,
    pub r: f64,
    pub steps: usize,
    /// `V` at every lattice point.
    pub v: Vec<f64>,
    /// Largest `|V(t+r) − V(t)((r−1)² + r²x₂²(t))| / max(1, |V(t+r)|)`.
    pub max_identity_residual: f64,
}

/// One lattice step `x + r f(x)`.
pub fn example1_lattice_step(x: &[f64], r: f64) -> [f64; 2] {
    let mut dx = [0.0; 2];
    example1_field(x, &mut dx);
    [x[0] + r * dx[0], x[1] + r * dx[1]]
}

pub fn example1_discrete(x0: &[f64], r: f64, n_steps: usize) -> Result<(Signal, Example1DiscreteReport)> {
    require_state(x0)?;
    require(r > 0.0 && r.is_finite(), "r must be positive")?;
    let mut xs = vec![[x0[0], x0[1]]];
    for _ in 0..n_steps {
        let next = example1_lattice_step(xs.last().unwrap(), r);
        if !next.iter().all(|v| v.is_finite()) {
            return Err(ScenarioError::Param(format!("lattice iterate overflowed after {} steps", xs.len() - 1)));
        }
        xs.push(next);
    }
    let v: Vec<f64> = xs.iter().map(|x| example1_v(x)).collect();
    let mut residual = 0.0f64;
    for k in 0..n_steps {
        let factor = (r - 1.0) * (r - 1.0) + r * r * xs[k][1] * xs[k][1];
        residual = residual.max((v[k + 1] - v[k] * factor).abs() / v[k + 1].abs().max(1.0));
    }
    let dom = GeneralizedTimeScale::lattice(0.0, r)?.restrict(0.0, n_steps as f64 * r)?;
    let times = (0..=n_steps).map(|k| k as f64 * r).collect();
    let sig = Signal::from_samples(dom, times, xs.iter().map(|x| x.to_vec()).collect())?;
    let report = Example1DiscreteReport {
        x0: x0.to_vec(),
        r,
        steps: n_steps,
        v,
        max_identity_residual: residual,
    };
    Ok((sig, report))
}

// ---------------------------------------------------------------------------
// Example 2: state-feedback switching between two linear modes

/// `q(x) = (x₁ + 4x₂)(x₁ − 2x₂)`; mode 0 where `q ≤ 0`.
pub fn example2_mode(x: &[f64]) -> u32 {
    if (x[0] + 4.0 * x[1]) * (x[0] - 2.0 * x[1]) <= 0.0 { 0 } else { 1 }
}

pub fn example2_field(mode: u32, x: &[f64]) -> [f64; 2] {
    match mode {
        0 => [10.0 * x[1], 0.0],
        _ => [1.5 * x[0] + 2.0 * x[1], -2.0 * x[0] - 0.5 * x[1]],
    }
}

/// `V = 2(x₁ + x₂)² + x₂²`.
pub fn example2_v(x: &[f64]) -> f64 {
    let s = x[0] + x[1];
    2.0 * s * s + x[1] * x[1]
}

/// `d/dt arctan(x₂/x₁)` under the active mode.
pub fn example2_angular_rate(x: &[f64]) -> f64 {
    let dx = example2_field(example2_mode(x), x);
    (x[0] * dx[1] - x[1] * dx[0]) / (x[0] * x[0] + x[1] * x[1])
}

fn rk4_mode(mode: u32, x: [f64; 2], h: f64) -> [f64; 2] {
    let add = |a: [f64; 2], b: [f64; 2], c: f64| [a[0] + c * b[0], a[1] + c * b[1]];
    let k1 = example2_field(mode, &x);
    let k2 = example2_field(mode, &add(x, k1, h / 2.0));
    let k3 = example2_field(mode, &add(x, k2, h / 2.0));
    let k4 = example2_field(mode, &add(x, k3, h));
    [
        x[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        x[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

pub const EXAMPLE2_EVENT_TOL: f64 = 1e-12;
pub const EXAMPLE2_CONVERGED: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchRow {
    pub t: f64,
    pub from: u32,
    pub to: u32,
    pub state: [f64; 2],
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dwell {
    pub mode: u32,
    pub entry: f64,
    pub exit: f64,
    pub v_entry: f64,
    pub v_exit: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SwitchEventLog {
    pub switches: Vec<SwitchRow>,
    /// Dwells bounded by two switches.
    pub dwells: Vec<Dwell>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub rate_min: Option<f64>,
    pub rate_max: Option<f64>,
    #[serde(skip)]
    pub angular_rates: Vec<f64>,
    pub converged: bool,
    pub trivial: bool,
    pub final_norm: f64,
}

impl SwitchEventLog {
    /// Largest `|V(entry) − V(exit)| / max(1, V(entry))` over mode-0 dwells.
    pub fn mode0_v_mismatch(&self) -> f64 {
        self.dwells
            .iter()
            .filter(|d| d.mode == 0)
            .map(|d| (d.v_entry - d.v_exit).abs() / d.v_entry.max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Simulates from `x0`, storing every `sample_every`-th step plus every switch.
pub fn example2_switched(x0: &[f64], horizon: f64, step: f64, sample_every: usize) -> Result<(Signal, SwitchEventLog)> {
    require_state(x0)?;
    require(horizon > 0.0 && horizon.is_finite(), "horizon must be positive")?;
    require(step > 0.0 && step.is_finite(), "step must be positive")?;
    require(sample_every >= 1, "sample_every must be at least 1")?;
    let mut log = SwitchEventLog::default();
    if x0[0] == 0.0 && x0[1] == 0.0 {
        log.trivial = true;
        let dom = GeneralizedTimeScale::interval(0.0, horizon)?;
        let sig = Signal::from_samples(dom, vec![0.0, horizon], vec![vec![0.0, 0.0]; 2])?;
        return Ok((sig, log));
    }
    let mut times = vec![0.0];
    let mut values = vec![x0[0], x0[1]];
    let mut x = [x0[0], x0[1]];
    let mut t = 0.0f64;
    let mut mode = example2_mode(&x);
    let mut count = 0usize;
    log.angular_rates.push(example2_angular_rate(&x));
    while horizon - t > EXAMPLE2_EVENT_TOL {
        let h = step.min(horizon - t);
        let next = rk4_mode(mode, x, h);
        let stored;
        if example2_mode(&next) != mode {
            let (mut lo, mut hi) = (0.0, h);
            while hi - lo > EXAMPLE2_EVENT_TOL {
                let mid = 0.5 * (lo + hi);
                if example2_mode(&rk4_mode(mode, x, mid)) != mode {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            x = rk4_mode(mode, x, hi);
            t += hi;
            let to = example2_mode(&x);
            log.switches.push(SwitchRow { t, from: mode, to, state: x, v: example2_v(&x) });
            mode = to;
            stored = true;
        } else {
            x = next;
            t = if h < step { horizon } else { t + h };
            count += 1;
            stored = count % sample_every == 0 || horizon - t <= EXAMPLE2_EVENT_TOL;
        }
        if !x.iter().all(|v| v.is_finite()) {
            return Err(HybridError::NonFinite { t }.into());
        }
        let converged = norm(&x) <= EXAMPLE2_CONVERGED;
        if stored || converged {
            times.push(t);
            values.extend_from_slice(&x);
            log.angular_rates.push(example2_angular_rate(&x));
        }
        if converged {
            log.converged = true;
            break;
        }
    }
    for w in log.switches.windows(2) {
        log.dwells.push(Dwell {
            mode: w[0].to,
            entry: w[0].t,
            exit: w[1].t,
            v_entry: w[0].v,
            v_exit: w[1].v,
        });
    }
    let taus = log.dwells.iter().map(|d| d.exit - d.entry);
    log.tau_min = taus.clone().reduce(f64::min);
    log.tau_max = taus.reduce(f64::max);
    log.rate_min = log.angular_rates.iter().copied().reduce(f64::min);
    log.rate_max = log.angular_rates.iter().copied().reduce(f64::max);
    log.final_norm = norm(&x);
    let dom = GeneralizedTimeScale::interval(0.0, t)?;
    Ok((Signal::from_flat(dom, 2, times, values)?, log))
}

// ---------------------------------------------------------------------------
// Bouncing ball

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallParams {
    pub h0: f64,
    pub v0: f64,
    pub g: f64,
    pub theta: f64,
}

impl Default for BallParams {
    fn default() -> Self {
        BallParams { h0: 0.0, v0: 1.0, g: 2.0, theta: 0.5 }
    }
}

impl BallParams {
    pub fn validate(&self) -> Result<()> {
        require(self.h0 >= 0.0 && self.h0.is_finite(), "h0 must be a finite height >= 0")?;
        require(self.v0.is_finite(), "v0 must be finite")?;
        require(self.g > 0.0 && self.g.is_finite(), "g must be positive")?;
        require(self.theta >= 0.0 && self.theta < 1.0, "theta must lie in [0, 1)")
    }

    /// `(t₁, v₁⁻)`.
    pub fn first_impact(&self) -> (f64, f64) {
        let root = (self.v0 * self.v0 + 2.0 * self.g * self.h0).sqrt();
        ((self.v0 + root) / self.g, -root)
    }

    /// `v_n⁺ = θⁿ |v₁⁻|` for `n ≥ 1`.
    pub fn v_plus(&self, n: usize) -> f64 {
        self.theta.powi(n as i32) * self.first_impact().1.abs()
    }

    /// `t_n` for `n ≥ 1`.
    pub fn impact_time(&self, n: usize) -> f64 {
        let (t1, _) = self.first_impact();
        t1 + (1..n).map(|i| 2.0 * self.v_plus(i) / self.g).sum::<f64>()
    }

    /// `t_∞ = t₁ + 2v₁⁺ / (g(1 − θ))`.
    pub fn t_inf(&self) -> f64 {
        self.first_impact().0 + 2.0 * self.v_plus(1) / (self.g * (1.0 - self.theta))
    }
}

fn ball_flow(g: f64) -> impl Fn(&[f64], &mut [f64]) + Send + Sync {
    move |x, dx| {
        dx[0] = x[1];
        dx[1] = -g;
    }
}

/// `C = {h ≥ 0}`, `D = {h ≤ 0, v ≤ 0}`, `x⁺ = −θx`.
pub fn ball_system(p: &BallParams) -> FnSystem {
    let theta = p.theta;
    FnSystem::new(2, |x| x[0] >= -1e-9, ball_flow(p.g)).with_jumps(
        |x| x[0] <= 0.0 && x[1] <= 0.0,
        move |x| vec![-theta * x[0], -theta * x[1]],
    )
}

/// The ball with flow switched off at the origin and `(0, 0)` as the
/// state after an accumulation of impacts.
pub fn ball_eta_system(p: &BallParams) -> FnSystem {
    let theta = p.theta;
    let g = p.g;
    FnSystem::new(2, |x| x[0] >= -1e-9, move |x, dx| {
        if x[0] == 0.0 && x[1] == 0.0 {
            dx[0] = 0.0;
            dx[1] = 0.0;
        } else {
            dx[0] = x[1];
            dx[1] = -g;
        }
    })
    .with_jumps(|x| x[0] <= 0.0 && x[1] <= 0.0, move |x| vec![-theta * x[0], -theta * x[1]])
    .with_zeno_limit(vec![0.0, 0.0])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpactRow {
    pub n: usize,
    /// Real time of the impact.
    pub t_n: f64,
    pub v_minus: f64,
    pub v_plus: f64,
    /// `t_{n+1} − t_n`, absent for the last recorded impact.
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ImpactTable {
    pub rows: Vec<ImpactRow>,
}

impl ImpactTable {
    pub fn from_solution(sol: &Solution) -> Self {
        let jumps: Vec<_> = sol.jumps.iter().filter(|j| !j.zeno_closure).collect();
        let rows = jumps
            .iter()
            .enumerate()
            .map(|(k, j)| ImpactRow {
                n: k + 1,
                t_n: j.t_c,
                v_minus: j.before[1],
                v_plus: j.after[1],
                gap: jumps.get(k + 1).map(|next| next.t_c - j.t_c),
            })
            .collect();
        ImpactTable { rows }
    }

    /// `n,t_n,v_minus,v_plus,gap`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "t_n", "v_minus", "v_plus", "gap"])?;
        for r in &self.rows {
            out.write_record([
                r.n.to_string(),
                r.t_n.to_string(),
                r.v_minus.to_string(),
                r.v_plus.to_string(),
                r.gap.map(|g| g.to_string()).unwrap_or_default(),
            ])?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallReport {
    pub params: BallParams,
    pub impacts: usize,
    pub compared: usize,
    pub reason: Termination,
    pub t1_closed_form: f64,
    pub v1_minus_closed_form: f64,
    pub max_impact_time_error: f64,
    pub max_velocity_error: f64,
    /// Largest `|v_n⁺ / |v_n⁻| − θ|`.
    pub max_restitution_error: f64,
    /// Largest `|gap_{n+1} / gap_n − θ|` over the compared impacts.
    pub max_gap_ratio_error: f64,
    pub t_inf_closed_form: f64,
    /// `t₁ + 2v₁⁺ / (g(1 − θ̂))` from the measured first impact and ratio.
    pub t_inf_estimate: f64,
    /// Continuous part at the last recorded impact.
    pub t_last_impact: Option<f64>,
}

pub const BALL_COMPARED: usize = 10;

impl BallReport {
    pub fn new(p: &BallParams, table: &ImpactTable, reason: Termination) -> Self {
        let n = table.rows.len().min(BALL_COMPARED);
        let rows = &table.rows[..n];
        let mut rep = BallReport {
            params: *p,
            impacts: table.rows.len(),
            compared: n,
            reason,
            t1_closed_form: p.first_impact().0,
            v1_minus_closed_form: p.first_impact().1,
            max_impact_time_error: 0.0,
            max_velocity_error: 0.0,
            max_restitution_error: 0.0,
            max_gap_ratio_error: 0.0,
            t_inf_closed_form: p.t_inf(),
            t_inf_estimate: f64::NAN,
            t_last_impact: table.rows.last().map(|r| r.t_n),
        };
        for r in rows {
            rep.max_impact_time_error = rep.max_impact_time_error.max((r.t_n - p.impact_time(r.n)).abs());
            let v_minus = if r.n == 1 { p.first_impact().1 } else { -p.v_plus(r.n - 1) };
            rep.max_velocity_error = rep
                .max_velocity_error
                .max((r.v_minus - v_minus).abs())
                .max((r.v_plus - p.v_plus(r.n)).abs());
            if r.v_minus != 0.0 {
                rep.max_restitution_error = rep.max_restitution_error.max((r.v_plus / -r.v_minus - p.theta).abs());
            }
        }
        for w in rows.windows(2) {
            if let (Some(a), Some(b)) = (w[0].gap, w[1].gap) {
                if a > 0.0 {
                    rep.max_gap_ratio_error = rep.max_gap_ratio_error.max((b / a - p.theta).abs());
                }
            }
        }
        if let Some(first) = rows.first() {
            let theta_hat = if first.v_minus != 0.0 { first.v_plus / -first.v_minus } else { p.theta };
            rep.t_inf_estimate = first.t_n + 2.0 * first.v_plus / (p.g * (1.0 - theta_hat));
        }
        rep
    }
}

#[derive(Debug, Clone)]
pub struct BallRun {
    pub solution: Solution,
    pub impacts: ImpactTable,
    pub report: BallReport,
}

/// Solves the ball with the hybrid solver; `eta` selects the model that
/// continues past the accumulation of impacts.
pub fn bouncing_ball(p: &BallParams, cfg: &SolverConfig, eta: bool) -> Result<BallRun> {
    p.validate()?;
    let x0 = [p.h0, p.v0];
    let solution = if eta {
        hybrid::solve(&ball_eta_system(p), &x0, cfg)?
    } else {
        hybrid::solve(&ball_system(p), &x0, cfg)?
    };
    let impacts = ImpactTable::from_solution(&solution);
    let report = BallReport::new(p, &impacts, solution.reason);
    Ok(BallRun { solution, impacts, report })
}

/// Closed-form ball state at real time `s` (before `t_∞`), using the
/// post-impact branch at impact times.
fn ball_state(p: &BallParams, s: f64) -> [f64; 2] {
    let (t1, _) = p.first_impact();
    if s < t1 {
        return [p.h0 + p.v0 * s - 0.5 * p.g * s * s, p.v0 - p.g * s];
    }
    let mut tn = t1;
    let mut n = 1;
    loop {
        let v = p.v_plus(n);
        let len = 2.0 * v / p.g;
        if v == 0.0 || s < tn + len {
            let tau = s - tn;
            return [(v * tau - 0.5 * p.g * tau * tau).max(0.0), v - p.g * tau];
        }
        tn += len;
        n += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZenoReport {
    pub params: BallParams,
    pub t1: f64,
    pub t_inf: f64,
    /// Impacts resolved one by one before the remainder segment.
    pub resolved_impacts: usize,
    pub gaps: Vec<f64>,
    pub total_gap: f64,
    pub closure_point: f64,
    /// Every sample at or beyond the closure point equals `(0, 0)` exactly.
    pub post_closure_exact: bool,
    pub flow_violations: usize,
    pub jump_violations: usize,
}

#[derive(Debug, Clone)]
pub struct ZenoRun {
    pub signal: Signal,
    pub trace: RealTimeTrace,
    pub report: ZenoReport,
}

/// Points `1 − 2^{-n}`, `n = 0..ZERO_BALL_POINTS`, used for the ball at rest.
pub const ZERO_BALL_POINTS: usize = 20;

/// Builds the ball's solution through its Zeno passage on the scale with
/// `n`-th gap `2^{-n}`, closure at `t_∞ + 1` and a constant tail of length
/// `tail` after it.
pub fn bouncing_ball_zeno(p: &BallParams, zeno_tol: f64, step: f64, tail: f64) -> Result<ZenoRun> {
    p.validate()?;
    require(zeno_tol > 0.0, "zeno_tol must be positive")?;
    require(step > 0.0 && step.is_finite(), "step must be positive")?;
    require(tail >= 0.0 && tail.is_finite(), "tail must be finite and non-negative")?;
    let (t1, v1m) = p.first_impact();
    let t_inf = p.t_inf();
    let mut segs = Vec::new();
    let mut times = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    let closure;
    let gaps;
    if v1m == 0.0 {
        let pts: Vec<f64> = (0..=ZERO_BALL_POINTS).map(|n| 1.0 - 0.5f64.powi(n as i32)).collect();
        for &t in &pts {
            segs.push(Segment::point(t));
            times.push(t);
            values.push(vec![0.0, 0.0]);
        }
        gaps = (1..=ZERO_BALL_POINTS).map(|n| 0.5f64.powi(n as i32)).collect::<Vec<_>>();
        closure = 1.0;
    } else {
        // impacts t_1..t_N with t_∞ − t_N < zeno_tol
        let mut ts = vec![t1];
        while t_inf - ts.last().unwrap() >= zeno_tol {
            let n = ts.len();
            ts.push(ts[n - 1] + 2.0 * p.v_plus(n) / p.g);
        }
        let n_imp = ts.len();
        let shift = geometric_partial_sums(0.5, n_imp);
        // segment 0 and the resolved flights
        let mut push_flight = |lo: f64, hi: f64, sh: f64, start: [f64; 2], end: [f64; 2], f: &dyn Fn(f64) -> [f64; 2]| {
            let g = grid(lo, hi, step);
            let last = g.len() - 1;
            for (i, &s) in g.iter().enumerate() {
                let x = if i == 0 {
                    start
                } else if i == last {
                    end
                } else {
                    f(s)
                };
                times.push(s + sh);
                values.push(x.to_vec());
            }
            segs.push(Segment::closed(lo + sh, hi + sh));
        };
        push_flight(0.0, t1, 0.0, [p.h0, p.v0], [0.0, v1m], &|s| ball_state(p, s));
        for n in 1..n_imp {
            let v = p.v_plus(n);
            push_flight(ts[n - 1], ts[n], shift[n], [0.0, v], [0.0, -v], &|s| ball_state(p, s));
        }
        // remainder of the accumulation, aggregated into one segment
        push_flight(
            ts[n_imp - 1],
            t_inf,
            shift[n_imp],
            [0.0, p.v_plus(n_imp)],
            [0.0, 0.0],
            &|s| ball_state(p, s),
        );
        gaps = (1..=n_imp).map(|n| shift[n] - shift[n - 1]).collect();
        closure = t_inf + 1.0;
    }
    let tail_grid = grid(closure, closure + tail, step);
    for &t in &tail_grid {
        times.push(t);
        values.push(vec![0.0, 0.0]);
    }
    segs.push(Segment::unbounded(closure));
    let mut all_gaps = gaps;
    let last_end = segs[segs.len() - 2].hi;
    all_gaps.push(closure - last_end);
    let dom = GeneralizedTimeScale::from_segments(segs, DEFAULT_TOL_T)?;
    let signal = Signal::from_samples(dom, times, values)?;
    let post_closure_exact = signal
        .iter()
        .filter(|(t, _)| *t >= closure)
        .all(|(_, x)| x[0] == 0.0 && x[1] == 0.0);
    let check = hybrid::validate(&ball_eta_system(p), &signal, 10.0 * step);
    let trace = realtime_projection(&signal);
    let report = ZenoReport {
        params: *p,
        t1,
        t_inf,
        resolved_impacts: all_gaps.len() - 1,
        total_gap: all_gaps.iter().sum(),
        gaps: all_gaps,
        closure_point: closure,
        post_closure_exact,
        flow_violations: check.flow_violations.len(),
        jump_violations: check.jump_violations.len(),
    };
    Ok(ZenoRun { signal, trace, report })
}

/// Collapses the gaps of `sig`: samples whose continuous parts agree across
/// a gap are reported together at `s = t_c`.
pub fn realtime_projection(sig: &Signal) -> RealTimeTrace {
    let tol = sig.dom().tol();
    let mut entries: Vec<RealTimeEntry> = Vec::new();
    let mut prev_seg = usize::MAX;
    for i in 0..sig.len() {
        let (tc, _) = sig.time_parts(i);
        let seg = sig.segment_of(i);
        let x = sig.value(i).to_vec();
        let merge = seg != prev_seg && entries.last().is_some_and(|e| (e.s - tc).abs() <= tol);
        prev_seg = seg;
        if merge {
            let e = entries.last_mut().unwrap();
            if !e.values.contains(&x) {
                e.values.push(x);
            }
        } else {
            entries.push(RealTimeEntry { s: tc, values: vec![x] });
        }
    }
    RealTimeTrace { entries }
}

// ---------------------------------------------------------------------------
// Ensembles

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random point with norm log-uniform in `[r_min, r_max]`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, r_min: f64, r_max: f64) -> [f64; 2] {
    let radius = (rng.random_range(r_min.ln()..=r_max.ln())).exp();
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    [radius * phi.cos(), radius * phi.sin()]
}

pub fn example1_continuous_ensemble(seed: u64, count: usize, horizon: f64, step: f64) -> Result<Vec<Signal>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let x0 = random_state(&mut rng, 0.01, 1.0);
            example1_continuous(&x0, horizon, step).map(|(s, _)| s)
        })
        .collect()
}

/// The first member starts at `(0.1, 0)`.
pub fn example1_discrete_ensemble(seed: u64, count: usize, r: f64, steps: usize) -> Result<Vec<Signal>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|k| {
            let x0 = if k == 0 { [0.1, 0.0] } else { random_state(&mut rng, 0.01, 0.5) };
            example1_discrete(&x0, r, steps).map(|(s, _)| s)
        })
        .collect()
}

pub fn example2_ensemble(
    seed: u64,
    count: usize,
    horizon: f64,
    step: f64,
    sample_every: usize,
) -> Result<Vec<(Signal, SwitchEventLog)>> {
    let mut rng = rng(seed);
    let x0s: Vec<[f64; 2]> = (0..count).map(|_| random_state(&mut rng, 0.1, 10.0)).collect();
    x0s.iter().map(|x0| example2_switched(x0, horizon, step, sample_every)).collect()
}
