//! Hybrid systems `ẋ = f(x), x ∈ C` / `x⁺ = g(x), x ∈ D` and their solutions
//! on generalized time scales.
//!
//! [`solve`] grows the time scale and the signal together: fixed-step RK4
//! while flowing, bisection on the jump trigger, and a gap inserted from the
//! configured [`GapPolicy`] at every jump.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Signal, SignalError};
use crate::numeric::dist;
use crate::timescale::{GeneralizedTimeScale, Segment, TimeScaleError, DEFAULT_TOL_T};

#[derive(Debug, Error)]
pub enum HybridError {
    #[error("initial state {0:?} is in neither the flow set nor the jump set")]
    InitialCondition(Vec<f64>),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("flow field produced a non-finite value at t = {t}")]
    NonFinite { t: f64 },
    #[error("state has dimension {got}, system expects {want}")]
    Dimension { got: usize, want: usize },
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
}

type Result<T> = std::result::Result<T, HybridError>;

/// A hybrid system with single-valued flow and jump selections.
pub trait HybridSystem {
    fn dim(&self) -> usize;
    fn in_flow_set(&self, x: &[f64]) -> bool;
    fn in_jump_set(&self, x: &[f64]) -> bool;
    fn flow(&self, x: &[f64], dx: &mut [f64]);
    fn jump(&self, x: &[f64]) -> Vec<f64>;

    /// Admissible jump targets; the first one is the solver's choice.
    fn jump_targets(&self, x: &[f64]) -> Vec<Vec<f64>> {
        vec![self.jump(x)]
    }

    /// State to adopt after an accumulation of jumps, if the model defines one.
    fn zeno_limit(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

type Pred = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;
type Field = Box<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;
type Map = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A [`HybridSystem`] assembled from closures.
pub struct FnSystem {
    dim: usize,
    flow_set: Pred,
    flow: Field,
    jump_set: Pred,
    jump: Map,
    zeno_limit: Option<Vec<f64>>,
}

impl FnSystem {
    /// Flow-only system: the jump set is empty.
    pub fn new(
        dim: usize,
        flow_set: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
        flow: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Self {
        FnSystem {
            dim,
            flow_set: Box::new(flow_set),
            flow: Box::new(flow),
            jump_set: Box::new(|_| false),
            jump: Box::new(|x| x.to_vec()),
            zeno_limit: None,
        }
    }

    pub fn with_jumps(
        mut self,
        jump_set: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
        jump: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.jump_set = Box::new(jump_set);
        self.jump = Box::new(jump);
        self
    }

    pub fn with_zeno_limit(mut self, limit: Vec<f64>) -> Self {
        self.zeno_limit = Some(limit);
        self
    }
}

impl HybridSystem for FnSystem {
    fn dim(&self) -> usize {
        self.dim
    }
    fn in_flow_set(&self, x: &[f64]) -> bool {
        (self.flow_set)(x)
    }
    fn in_jump_set(&self, x: &[f64]) -> bool {
        (self.jump_set)(x)
    }
    fn flow(&self, x: &[f64], dx: &mut [f64]) {
        (self.flow)(x, dx)
    }
    fn jump(&self, x: &[f64]) -> Vec<f64> {
        (self.jump)(x)
    }
    fn zeno_limit(&self, _x: &[f64]) -> Option<Vec<f64>> {
        self.zeno_limit.clone()
    }
}

/// Length of the gap inserted at each jump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GapPolicy {
    /// Every gap has length `delta`; `delta = 1` yields scales in ℍ.
    Constant { delta: f64 },
    /// The n-th gap (n ≥ 1) has length `r^n`.
    Geometric { r: f64 },
}

impl GapPolicy {
    /// Length of the `n`-th gap, `n ≥ 1`.
    pub fn gap(&self, n: usize) -> f64 {
        match *self {
            GapPolicy::Constant { delta } => delta,
            GapPolicy::Geometric { r } => r.powi(n as i32),
        }
    }

    /// Gap budget left after `n` gaps; for a constant policy one more gap.
    pub fn remaining_after(&self, n: usize) -> f64 {
        match *self {
            GapPolicy::Constant { delta } => delta,
            GapPolicy::Geometric { r } => r.powi(n as i32 + 1) / (1.0 - r),
        }
    }

    /// Upper bound on `σ(t) − t`.
    pub fn max_gap(&self) -> f64 {
        match *self {
            GapPolicy::Constant { delta } => delta,
            GapPolicy::Geometric { r } => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub step: f64,
    pub event_tol: f64,
    pub gap_policy: GapPolicy,
    pub max_jumps: usize,
    /// Budget on the continuous part `T_c`.
    pub horizon: f64,
    pub zeno_tol: f64,
    pub zeno_run: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            step: 1e-3,
            event_tol: 1e-10,
            gap_policy: GapPolicy::Constant { delta: 1.0 },
            max_jumps: 10_000,
            horizon: 10.0,
            zeno_tol: 1e-6,
            zeno_run: 8,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(HybridError::Config(m.to_string()));
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be positive");
        }
        if !(self.event_tol > 0.0) {
            return bad("event_tol must be positive");
        }
        if !(self.horizon >= 0.0 && self.horizon.is_finite()) {
            return bad("horizon must be finite and non-negative");
        }
        if !(self.zeno_tol >= 0.0) {
            return bad("zeno_tol must be non-negative");
        }
        if self.zeno_run < 2 {
            return bad("zeno_run must be at least 2");
        }
        match self.gap_policy {
            GapPolicy::Constant { delta } if !(delta > 0.0 && delta.is_finite()) => bad("gap delta must be positive"),
            GapPolicy::Geometric { r } if !(r > 0.0 && r < 1.0) => bad("geometric ratio must lie in (0, 1)"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Horizon,
    MaxJumps,
    /// The state left `C ∪ D`, or flow could not continue and no jump was possible.
    LeftDomain,
    /// A jump accumulation was detected and the model defines no continuation.
    Zeno,
    /// The next gap is below the time resolution.
    GapResolution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpRecord {
    /// Right-scattered point where the jump happens.
    pub t: f64,
    /// Continuous part at the jump.
    pub t_c: f64,
    pub before: Vec<f64>,
    pub after: Vec<f64>,
    /// True for the closure jump placed after a detected accumulation.
    pub zeno_closure: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub signal: Signal,
    pub reason: Termination,
    pub jumps: Vec<JumpRecord>,
    /// Duration of every flow phase that ended in a jump.
    pub flow_durations: Vec<f64>,
}

struct Rk4 {
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
}

impl Rk4 {
    fn new(n: usize) -> Self {
        Rk4 {
            k: std::array::from_fn(|_| vec![0.0; n]),
            tmp: vec![0.0; n],
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn step<S: HybridSystem + ?Sized>(&mut self, sys: &S, x: &[f64], h: f64, out: &mut [f64]) {
        let n = x.len();
        sys.flow(x, &mut self.k[0]);
        for (j, c) in [(1, 0.5), (2, 0.5), (3, 1.0)] {
            for i in 0..n {
                self.tmp[i] = x[i] + c * h * self.k[j - 1][i];
            }
            sys.flow(&self.tmp, &mut self.k[j]);
        }
        for i in 0..n {
            out[i] = x[i] + h / 6.0 * (self.k[0][i] + 2.0 * self.k[1][i] + 2.0 * self.k[2][i] + self.k[3][i]);
        }
    }
}

/// Fixed-step RK4 from `x` over duration `h` in a single step.
pub fn rk4_step<S: HybridSystem + ?Sized>(sys: &S, x: &[f64], h: f64) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    Rk4::new(x.len()).step(sys, x, h, &mut out);
    out
}

struct Builder {
    dim: usize,
    segs: Vec<Segment>,
    seg_lo: f64,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl Builder {
    fn push(&mut self, t: f64, x: &[f64]) {
        self.times.push(t);
        self.values.extend_from_slice(x);
    }

    fn pop(&mut self) {
        self.times.pop();
        self.values.truncate(self.values.len() - self.dim);
    }

    fn close_segment(&mut self) {
        let hi = *self.times.last().expect("segment has samples");
        self.segs.push(Segment::closed(self.seg_lo, hi));
    }

    fn finish(self) -> Result<Signal> {
        let dom = GeneralizedTimeScale::from_segments(self.segs, DEFAULT_TOL_T)?;
        Ok(Signal::from_flat(dom, self.dim, self.times, self.values)?)
    }
}

/// Outcome of one flow phase.
enum PhaseEnd {
    Horizon,
    /// Reached a point of `D`; the caller jumps.
    Jump,
    LeftDomain,
}

/// Constructs a solution from `x0` at `t = 0`.
pub fn solve<S: HybridSystem + ?Sized>(sys: &S, x0: &[f64], cfg: &SolverConfig) -> Result<Solution> {
    cfg.validate()?;
    let n = sys.dim();
    if x0.len() != n {
        return Err(HybridError::Dimension { got: x0.len(), want: n });
    }
    if !sys.in_flow_set(x0) && !sys.in_jump_set(x0) {
        return Err(HybridError::InitialCondition(x0.to_vec()));
    }
    let tol_t = DEFAULT_TOL_T;
    let mut b = Builder {
        dim: n,
        segs: Vec::new(),
        seg_lo: 0.0,
        times: Vec::new(),
        values: Vec::new(),
    };
    let mut rk = Rk4::new(n);
    let mut x = x0.to_vec();
    let mut tc = 0.0;
    let mut jumps: Vec<JumpRecord> = Vec::new();
    let mut flow_durations = Vec::new();
    let mut short_run = 0usize;
    let mut zeno_passed = false;
    let mut gaps_used = 0usize;

    let reason = loop {
        b.push(b.seg_lo, &x);
        let (end, duration) = flow_phase(sys, &mut rk, &mut b, &mut x, tc, cfg, zeno_passed)?;
        tc += duration;
        match end {
            PhaseEnd::Horizon => break Termination::Horizon,
            PhaseEnd::LeftDomain => break Termination::LeftDomain,
            PhaseEnd::Jump => {}
        }
        flow_durations.push(duration);
        short_run = if duration < cfg.zeno_tol { short_run + 1 } else { 0 };
        let t = *b.times.last().expect("phase has samples");

        let closure = if short_run >= cfg.zeno_run {
            match sys.zeno_limit(&x) {
                Some(limit) => Some(limit),
                None => break Termination::Zeno,
            }
        } else {
            None
        };
        let gap = match closure {
            Some(_) => cfg.gap_policy.remaining_after(gaps_used),
            None => cfg.gap_policy.gap(gaps_used + 1),
        };
        if !(gap > 2.0 * tol_t) {
            break Termination::GapResolution;
        }
        let zeno_closure = closure.is_some();
        let after = match closure {
            Some(limit) => {
                zeno_passed = true;
                limit
            }
            None => sys.jump_targets(&x).swap_remove(0),
        };
        if after.iter().any(|v| !v.is_finite()) {
            return Err(HybridError::NonFinite { t });
        }
        b.close_segment();
        gaps_used += 1;
        jumps.push(JumpRecord {
            t,
            t_c: tc,
            before: std::mem::replace(&mut x, after.clone()),
            after,
            zeno_closure,
        });
        b.seg_lo = t + gap;
        log::trace!("jump {} at t = {t} (t_c = {tc}), gap {gap}", jumps.len());

        let landed = sys.in_flow_set(&x) || sys.in_jump_set(&x);
        if !landed || jumps.len() >= cfg.max_jumps {
            b.push(b.seg_lo, &x);
            break if landed { Termination::MaxJumps } else { Termination::LeftDomain };
        }
    };
    b.close_segment();
    log::debug!("solver stopped: {reason:?} after {} jumps", jumps.len());
    Ok(Solution {
        signal: b.finish()?,
        reason,
        jumps,
        flow_durations,
    })
}

/// Integrates one flow phase starting at the builder's current segment start.
/// Returns how it ended and the flow duration.
fn flow_phase<S: HybridSystem + ?Sized>(
    sys: &S,
    rk: &mut Rk4,
    b: &mut Builder,
    x: &mut Vec<f64>,
    tc0: f64,
    cfg: &SolverConfig,
    zeno_passed: bool,
) -> Result<(PhaseEnd, f64)> {
    let budget = cfg.horizon - tc0;
    let jumps_allowed = !zeno_passed;
    let started_in_d = sys.in_jump_set(x);
    let n = x.len();
    let mut next = vec![0.0; n];

    if jumps_allowed && started_in_d {
        // Jump right away unless flowing is possible.
        rk.step(sys, x, cfg.step.min(budget.max(cfg.event_tol)), &mut next);
        if !sys.in_flow_set(x) || !sys.in_flow_set(&next) {
            return Ok((PhaseEnd::Jump, 0.0));
        }
    }
    if !sys.in_flow_set(x) {
        return Ok((PhaseEnd::LeftDomain, 0.0));
    }
    if budget <= 0.0 {
        return Ok((PhaseEnd::Horizon, 0.0));
    }
    let triggered = |s: &S, y: &[f64]| !s.in_flow_set(y) || (jumps_allowed && !started_in_d && s.in_jump_set(y));

    let mut k: u64 = 0;
    let mut tau = 0.0;
    loop {
        let tau_next = ((k + 1) as f64 * cfg.step).min(budget);
        rk.step(sys, x, tau_next - tau, &mut next);
        if next.iter().any(|v| !v.is_finite()) {
            return Err(HybridError::NonFinite { t: b.seg_lo + tau });
        }
        if triggered(sys, &next) {
            let (mut lo, mut hi) = (tau, tau_next);
            let mut x_hi = next.clone();
            let mut x_lo = x.clone();
            while hi - lo > cfg.event_tol {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                rk.step(sys, x, mid - tau, &mut next);
                if triggered(sys, &next) {
                    hi = mid;
                    x_hi.copy_from_slice(&next);
                } else {
                    lo = mid;
                    x_lo.copy_from_slice(&next);
                }
            }
            let (end_tau, end_x, end) = if jumps_allowed && sys.in_jump_set(&x_hi) {
                (hi, x_hi, PhaseEnd::Jump)
            } else {
                (lo, x_lo, PhaseEnd::LeftDomain)
            };
            if end_tau > tau {
                let t_end = b.seg_lo + end_tau;
                if k > 0 && end_tau - tau < 2.0 * DEFAULT_TOL_T {
                    b.pop();
                }
                b.push(t_end, &end_x);
            }
            *x = end_x;
            return Ok((end, end_tau));
        }
        std::mem::swap(x, &mut next);
        k += 1;
        tau = tau_next;
        b.push(b.seg_lo + tau, x);
        if tau >= budget {
            return Ok((PhaseEnd::Horizon, tau));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowViolation {
    pub t: f64,
    /// `‖x^Δ(t) − f(x(t))‖`.
    pub residual: f64,
    pub in_flow_set: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpViolation {
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub initial_ok: bool,
    pub flow_violations: Vec<FlowViolation>,
    pub jump_violations: Vec<JumpViolation>,
    pub max_flow_residual: f64,
}

impl ViolationReport {
    pub fn is_ok(&self) -> bool {
        self.initial_ok && self.flow_violations.is_empty() && self.jump_violations.is_empty()
    }
}

/// Checks the initial, flow and jump conditions of a solution at grid resolution.
pub fn validate<S: HybridSystem + ?Sized>(sys: &S, sig: &Signal, tol: f64) -> ViolationReport {
    let mut rep = ViolationReport {
        initial_ok: sys.in_flow_set(sig.value(0)) || sys.in_jump_set(sig.value(0)),
        flow_violations: Vec::new(),
        jump_violations: Vec::new(),
        max_flow_residual: 0.0,
    };
    let mut f = vec![0.0; sig.dim()];
    let last_seg = sig.segment_count() - 1;
    for k in 0..=last_seg {
        let range = sig.segment_range(k);
        for i in range.clone() {
            let t = sig.times()[i];
            let x = sig.value(i);
            if i + 1 == range.end && k < last_seg {
                if !sys.in_jump_set(x) {
                    rep.jump_violations.push(JumpViolation {
                        t,
                        reason: "state is not in the jump set".into(),
                    });
                    continue;
                }
                let next = sig.value(i + 1);
                let miss = sys
                    .jump_targets(x)
                    .iter()
                    .map(|g| dist(g, next))
                    .fold(f64::INFINITY, f64::min);
                if !(miss <= tol) {
                    rep.jump_violations.push(JumpViolation {
                        t,
                        reason: format!("jump residual {miss:e}"),
                    });
                }
            } else if i + 1 < range.end {
                let in_c = sys.in_flow_set(x);
                sys.flow(x, &mut f);
                let d = sig.delta_derivative_at(i).expect("interior grid point");
                let residual = dist(&d, &f);
                rep.max_flow_residual = rep.max_flow_residual.max(residual);
                if !in_c || !(residual <= tol) {
                    rep.flow_violations.push(FlowViolation {
                        t,
                        residual,
                        in_flow_set: in_c,
                    });
                }
            }
        }
    }
    rep
}

/// Whether `ext` extends `base`: the domain of `base` is a subinterval of the
/// domain of `ext`, and values agree on `base`'s grid.
pub fn is_extension(base: &Signal, ext: &Signal, tol: f64) -> bool {
    if base.dim() != ext.dim() || !base.dom().is_subinterval_of(ext.dom()) {
        return false;
    }
    base.iter()
        .all(|(t, x)| ext.sample(t).is_ok_and(|y| dist(x, &y) <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(g: f64, theta: f64) -> FnSystem {
        FnSystem::new(2, |x| x[0] >= -1e-9, move |x, dx| {
            dx[0] = x[1];
            dx[1] = -g;
        })
        .with_jumps(|x| x[0] <= 0.0 && x[1] <= 0.0, move |x| vec![-theta * x[0], -theta * x[1]])
    }

    #[test]
    fn constant_flow_has_no_gaps() {
        let sys = FnSystem::new(1, |_| true, |_, dx| dx[0] = 0.0);
        let cfg = SolverConfig {
            horizon: 2.0,
            ..Default::default()
        };
        let sol = solve(&sys, &[3.0], &cfg).unwrap();
        assert_eq!(sol.reason, Termination::Horizon);
        assert_eq!(sol.signal.segment_count(), 1);
        assert_eq!(*sol.signal.times().last().unwrap(), 2.0);
        assert!(sol.signal.iter().all(|(_, x)| x == [3.0]));
        assert!(validate(&sys, &sol.signal, 1e-12).is_ok());
    }

    #[test]
    fn ball_first_impact_and_unit_gaps() {
        let sol = solve(&ball(2.0, 0.5), &[0.0, 1.0], &SolverConfig::default()).unwrap();
        assert!((sol.jumps[0].t - 1.0).abs() < 1e-8);
        let dom = sol.signal.dom();
        for (s, next) in dom.gaps() {
            assert_eq!(dom.sigma(s).unwrap(), next);
            assert!((next - s - 1.0).abs() < 1e-12);
        }
        for w in sol.jumps.windows(2).take(10) {
            assert!((w[1].after[1] - 0.5 * w[0].after[1]).abs() < 1e-6);
        }
        assert_eq!(sol.reason, Termination::Zeno);
    }

    #[test]
    fn solver_output_validates() {
        let sys = ball(2.0, 0.5);
        let cfg = SolverConfig::default();
        let sol = solve(&sys, &[0.0, 1.0], &cfg).unwrap();
        let rep = validate(&sys, &sol.signal, 10.0 * cfg.step);
        assert!(rep.is_ok(), "{:?}", rep.flow_violations.first());
    }

    #[test]
    fn geometric_gaps() {
        let cfg = SolverConfig {
            gap_policy: GapPolicy::Geometric { r: 0.5 },
            ..Default::default()
        };
        let sol = solve(&ball(2.0, 0.5), &[0.0, 1.0], &cfg).unwrap();
        for (n, (s, next)) in sol.signal.dom().gaps().into_iter().enumerate() {
            assert_eq!(next - s, 0.5f64.powi(n as i32 + 1));
        }
    }

    #[test]
    fn zeno_limit_continues_flow() {
        let sys = FnSystem::new(2, |x| x[0] >= -1e-9, |x, dx| {
            let eta = if x[0] == 0.0 && x[1] == 0.0 { 0.0 } else { 1.0 };
            dx[0] = x[1];
            dx[1] = -2.0 * eta;
        })
        .with_jumps(|x| x[0] <= 0.0 && x[1] <= 0.0, |x| vec![-0.5 * x[0], -0.5 * x[1]])
        .with_zeno_limit(vec![0.0, 0.0]);
        let cfg = SolverConfig {
            gap_policy: GapPolicy::Geometric { r: 0.5 },
            horizon: 3.0,
            ..Default::default()
        };
        let sol = solve(&sys, &[0.0, 1.0], &cfg).unwrap();
        assert_eq!(sol.reason, Termination::Horizon);
        let closure = sol.jumps.last().unwrap();
        assert!(closure.zeno_closure);
        assert!((closure.t_c - 2.0).abs() < 1e-4);
        assert_eq!(sol.signal.last_value(), &[0.0, 0.0]);
        let total: f64 = sol.signal.dom().gaps().iter().map(|(a, b)| b - a).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_initial_state() {
        assert!(matches!(
            solve(&ball(2.0, 0.5), &[-1.0, 1.0], &SolverConfig::default()),
            Err(HybridError::InitialCondition(_))
        ));
    }

    #[test]
    fn validate_flags_known_violations() {
        let dom = GeneralizedTimeScale::interval(0.0, 1.0).unwrap();
        let sig = Signal::from_samples(dom, vec![0.0, 0.5, 1.0], vec![vec![0.0]; 3]).unwrap();
        let sys = FnSystem::new(1, |_| true, |_, dx| dx[0] = 1.0);
        let rep = validate(&sys, &sig, 1e-6);
        assert_eq!(rep.flow_violations.len(), 2);
        assert_eq!(rep.max_flow_residual, 1.0);

        let dom = GeneralizedTimeScale::points(&[0.0, 1.0]).unwrap();
        let sig = Signal::from_samples(dom, vec![0.0, 1.0], vec![vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let rep = validate(&ball(2.0, 0.5), &sig, 1e-6);
        assert_eq!(rep.jump_violations.len(), 1);
    }

    #[test]
    fn extension_checks() {
        let sol = solve(&ball(2.0, 0.5), &[0.0, 1.0], &SolverConfig::default()).unwrap();
        let sig = &sol.signal;
        assert!(is_extension(sig, sig, 0.0));
        let prefix = sig.restrict(0.0, sol.jumps[0].t).unwrap();
        assert!(is_extension(&prefix, sig, 1e-12));
        let dom = GeneralizedTimeScale::interval(0.0, 1.0).unwrap();
        let a = Signal::from_samples(dom.clone(), vec![0.0, 1.0], vec![vec![0.0], vec![0.0]]).unwrap();
        let b = Signal::from_samples(dom, vec![0.0, 1.0], vec![vec![0.0], vec![2e-6]]).unwrap();
        assert!(!is_extension(&a, &b, 1e-6));
    }

    #[test]
    fn config_json() {
        let cfg: SolverConfig =
            serde_json::from_str(r#"{"step":0.01,"gap_policy":{"kind":"geometric","r":0.5}}"#).unwrap();
        assert_eq!(cfg.gap_policy, GapPolicy::Geometric { r: 0.5 });
        assert_eq!(cfg.zeno_run, 8);
        let bad = SolverConfig {
            gap_policy: GapPolicy::Geometric { r: 1.0 },
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
