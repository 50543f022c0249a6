//! Finite-ensemble verification of uniform stability properties.
//!
//! Every check scans the stored grid of every signal. A `pass` verdict is
//! conditional on that grid (recorded in [`Resolution`]); a `fail` verdict
//! carries a witness that re-evaluates to the same numbers.

mod classk;

pub use classk::{ClassKError, ClassKInf};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::calculus::{Distance, Signal};
use crate::numeric::Slack;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("ensemble signals have mixed dimensions ({0} and {1})")]
    MixedDimensions(usize, usize),
    #[error("invalid parameter: {0}")]
    Param(String),
}

/// A finite signal set with its pseudo distance measure.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub signals: Vec<Signal>,
    pub distance: Distance,
    /// Declares that every member has a forward complete extension in the set.
    pub forward_complete_extensions_declared: bool,
}

impl Ensemble {
    pub fn new(signals: Vec<Signal>, distance: Distance) -> Result<Self, StabilityError> {
        if let Some(first) = signals.first() {
            if let Some(other) = signals.iter().find(|s| s.dim() != first.dim()) {
                return Err(StabilityError::MixedDimensions(first.dim(), other.dim()));
            }
        }
        Ok(Ensemble {
            signals,
            distance,
            forward_complete_extensions_declared: false,
        })
    }

    pub fn declare_forward_complete(mut self) -> Self {
        self.forward_complete_extensions_declared = true;
        self
    }

    /// `d_x(t_i)` for signal `k`.
    pub fn distance_at(&self, k: usize, i: usize) -> f64 {
        self.distance.eval(self.signals[k].value(i))
    }

    fn distances(&self, k: usize) -> Vec<f64> {
        self.signals[k].iter().map(|(_, x)| self.distance.eval(x)).collect()
    }

    pub fn resolution(&self) -> Resolution {
        resolution(&self.signals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A violating pair `(s, t)`; for pointwise conditions `s = t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub signal: usize,
    pub i_s: usize,
    pub i_t: usize,
    pub s: f64,
    pub t: f64,
    pub d_s: f64,
    pub d_t: f64,
    /// The inequality `lhs <= rhs` that failed (before slack).
    pub lhs: f64,
    pub rhs: f64,
    pub condition: String,
}

/// Grid resolution the verdict is conditional on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolution {
    pub signals: usize,
    pub samples: usize,
    /// Smallest and largest spacing between consecutive samples of one segment.
    pub min_spacing: Option<f64>,
    pub max_spacing: Option<f64>,
}

fn resolution(signals: &[Signal]) -> Resolution {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for sig in signals {
        for k in 0..sig.segment_count() {
            for w in sig.times()[sig.segment_range(k)].windows(2) {
                lo = lo.min(w[1] - w[0]);
                hi = hi.max(w[1] - w[0]);
            }
        }
    }
    Resolution {
        signals: signals.len(),
        samples: signals.iter().map(Signal::len).sum(),
        min_spacing: lo.is_finite().then_some(lo),
        max_spacing: (hi > 0.0).then_some(hi),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub check: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub checked_pairs: u64,
    /// Smallest `rhs − lhs` seen; negative when the check failed.
    pub margin: f64,
    pub params: Value,
    pub resolution: Resolution,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Accumulates the worst case over a scan.
struct Scan {
    margin: f64,
    worst: Option<(f64, Witness)>,
    pairs: u64,
}

impl Scan {
    fn new() -> Self {
        Scan {
            margin: f64::INFINITY,
            worst: None,
            pairs: 0,
        }
    }

    fn consider(&mut self, lhs: f64, rhs: f64, slack: Slack, witness: impl FnOnce() -> Witness) {
        let margin = rhs - lhs;
        self.margin = self.margin.min(margin);
        if !slack.le(lhs, rhs) && self.worst.as_ref().map_or(true, |(m, _)| margin < *m) {
            self.worst = Some((margin, witness()));
        }
    }

    fn report(self, check: &str, params: Value, res: Resolution) -> StabilityReport {
        StabilityReport {
            check: check.to_string(),
            verdict: if self.worst.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness: self.worst.map(|(_, w)| w),
            checked_pairs: self.pairs,
            margin: self.margin,
            params,
            resolution: res,
        }
    }
}

/// `(max, argmax)` of `v[i..]` for every `i`.
fn suffix_max(v: &[f64]) -> Vec<(f64, usize)> {
    let mut out = vec![(f64::NEG_INFINITY, 0); v.len()];
    let mut best = (f64::NEG_INFINITY, 0);
    for i in (0..v.len()).rev() {
        if v[i] >= best.0 {
            best = (v[i], i);
        }
        out[i] = best;
    }
    out
}

fn pairs_upper(n: usize) -> u64 {
    (n as u64) * (n as u64 + 1) / 2
}

#[allow(clippy::too_many_arguments)]
fn witness(sig: usize, s: &Signal, i_s: usize, i_t: usize, d_s: f64, d_t: f64, lhs: f64, rhs: f64, cond: &str) -> Witness {
    Witness {
        signal: sig,
        i_s,
        i_t,
        s: s.times()[i_s],
        t: s.times()[i_t],
        d_s,
        d_t,
        lhs,
        rhs,
        condition: cond.to_string(),
    }
}

/// Uniform global stability: `d_x(t) ≤ β(d_x(s))` for all grid pairs `t ≥ s`.
pub fn check_ugs(e: &Ensemble, beta: &ClassKInf, slack: Slack) -> StabilityReport {
    let mut scan = Scan::new();
    for (k, sig) in e.signals.iter().enumerate() {
        let d = e.distances(k);
        let sm = suffix_max(&d);
        scan.pairs += pairs_upper(d.len());
        for i in 0..d.len() {
            let (m, j) = sm[i];
            let rhs = beta.eval(d[i]);
            scan.consider(m, rhs, slack, || witness(k, sig, i, j, d[i], m, m, rhs, "d(t) <= beta(d(s))"));
        }
    }
    scan.report("ugs", json!({ "beta": beta, "slack": slack }), e.resolution())
}

/// Attractivity: `d_x(s) ≤ 1/ε` and `t ≥ s + T` imply `d_x(t) < ε`.
pub fn check_attractivity(e: &Ensemble, eps: f64, horizon: f64, slack: Slack) -> Result<StabilityReport, StabilityError> {
    if !(eps > 0.0 && eps < 1.0) || !(horizon > 0.0) {
        return Err(StabilityError::Param(format!("need 0 < eps < 1 and T > 0, got eps = {eps}, T = {horizon}")));
    }
    let mut scan = Scan::new();
    for (k, sig) in e.signals.iter().enumerate() {
        let d = e.distances(k);
        let sm = suffix_max(&d);
        let ts = sig.times();
        let mut j0 = 0;
        for i in 0..d.len() {
            while j0 < d.len() && ts[j0] < ts[i] + horizon {
                j0 += 1;
            }
            if j0 == d.len() {
                break;
            }
            if d[i] > 1.0 / eps {
                continue;
            }
            scan.pairs += (d.len() - j0) as u64;
            let (m, j) = sm[j0];
            // strict inequality: equality with ε already violates
            let lhs = m;
            if lhs >= eps + slack.of(eps) {
                scan.consider(lhs, eps, Slack::ZERO, || witness(k, sig, i, j, d[i], m, m, eps, "d(t) < eps"));
            } else {
                scan.margin = scan.margin.min(eps - lhs);
            }
        }
    }
    Ok(scan.report(
        "attractivity",
        json!({ "eps": eps, "T": horizon, "slack": slack }),
        e.resolution(),
    ))
}

/// K-weak Lyapunov conditions: `α(d) ≤ V ≤ β(d)` pointwise and
/// `V(t) ≤ γ(V(s))` for `t ≥ s`.
pub fn check_k_weak(
    e: &Ensemble,
    v: &dyn Fn(&[f64]) -> f64,
    alpha: &ClassKInf,
    beta: &ClassKInf,
    gamma: &ClassKInf,
    slack: Slack,
) -> StabilityReport {
    let mut scan = Scan::new();
    for (k, sig) in e.signals.iter().enumerate() {
        let d = e.distances(k);
        let vs: Vec<f64> = sig.iter().map(|(_, x)| v(x)).collect();
        for i in 0..d.len() {
            let lo = alpha.eval(d[i]);
            scan.consider(lo, vs[i], slack, || witness(k, sig, i, i, d[i], d[i], lo, vs[i], "alpha(d) <= V"));
            let hi = beta.eval(d[i]);
            scan.consider(vs[i], hi, slack, || witness(k, sig, i, i, d[i], d[i], vs[i], hi, "V <= beta(d)"));
        }
        let sm = suffix_max(&vs);
        scan.pairs += pairs_upper(vs.len());
        for i in 0..vs.len() {
            let (m, j) = sm[i];
            let rhs = gamma.eval(vs[i]);
            scan.consider(m, rhs, slack, || witness(k, sig, i, j, d[i], d[j], m, rhs, "V(t) <= gamma(V(s))"));
        }
    }
    scan.report(
        "kweak",
        json!({ "alpha": alpha, "beta": beta, "gamma": gamma, "slack": slack }),
        e.resolution(),
    )
}

/// UGS envelope `α^{-1} ∘ γ ∘ β` implied by a K-weak Lyapunov functional.
pub fn ugs_bound_from_kweak(alpha: &ClassKInf, beta: &ClassKInf, gamma: &ClassKInf) -> ClassKInf {
    ClassKInf::compose(&alpha.inverse(), &ClassKInf::compose(gamma, beta))
}

/// Maximal runs `[a, b]` of consecutive samples with `ε ≤ d ≤ 1/ε`.
fn band_runs(d: &[f64], eps: f64) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &x) in d.iter().enumerate() {
        let inside = x >= eps && x <= 1.0 / eps;
        match (inside, start) {
            (true, None) => start = Some(i),
            (false, Some(a)) => {
                runs.push((a, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = start {
        runs.push((a, d.len() - 1));
    }
    runs
}

/// Searches for a corridor: grid points `s`, `t ≥ s + T` with
/// `ε ≤ d_x(τ) ≤ 1/ε` on all of `[s, t]`. Passes when none exists.
pub fn falsify_c1(e: &Ensemble, eps: f64, horizon: f64) -> Result<StabilityReport, StabilityError> {
    if !(eps > 0.0 && eps < 1.0) || !(horizon > 0.0) {
        return Err(StabilityError::Param(format!("need 0 < eps < 1 and T > 0, got eps = {eps}, T = {horizon}")));
    }
    let mut earliest: Option<Witness> = None;
    let mut longest = 0.0f64;
    let mut scanned = 0u64;
    for (k, sig) in e.signals.iter().enumerate() {
        let d = e.distances(k);
        let ts = sig.times();
        scanned += d.len() as u64;
        for (a, b) in band_runs(&d, eps) {
            let len = ts[b] - ts[a];
            longest = longest.max(len);
            if len >= horizon {
                let j = a + ts[a..=b].partition_point(|&t| t < ts[a] + horizon);
                let w = witness(k, sig, a, j, d[a], d[j], ts[j] - ts[a], horizon, "corridor: eps <= d <= 1/eps on [s, t]");
                if earliest.as_ref().map_or(true, |p| w.s < p.s) {
                    earliest = Some(w);
                }
                break;
            }
        }
    }
    Ok(StabilityReport {
        check: "c1".into(),
        verdict: if earliest.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness: earliest,
        checked_pairs: scanned,
        margin: horizon - longest,
        params: json!({ "eps": eps, "T": horizon, "longest_run": longest }),
        resolution: e.resolution(),
    })
}

/// UGS plus (C1) over a schedule of `(ε, T)` pairs.
pub fn check_pugas(e: &Ensemble, beta: &ClassKInf, schedule: &[(f64, f64)], slack: Slack) -> Result<StabilityReport, StabilityError> {
    let ugs = check_ugs(e, beta, slack);
    let mut witness = ugs.witness.clone();
    let mut c1 = Vec::new();
    for &(eps, t) in schedule {
        let r = falsify_c1(e, eps, t)?;
        if witness.is_none() {
            witness = r.witness.clone();
        }
        c1.push(json!({ "eps": eps, "T": t, "verdict": r.verdict }));
    }
    let pass = witness.is_none();
    let claim = match (pass, e.forward_complete_extensions_declared) {
        (false, _) => "falsified",
        (true, false) => "p-UGAS consistent at tested resolution",
        (true, true) => "UGAS consistent at tested resolution (forward completeness declared)",
    };
    Ok(StabilityReport {
        check: "pugas".into(),
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witness,
        checked_pairs: ugs.checked_pairs,
        margin: ugs.margin,
        params: json!({ "beta": beta, "ugs": ugs.verdict, "c1": c1, "claim": claim }),
        resolution: ugs.resolution,
    })
}

/// Corollary-style decrease condition: every gap is at most `M`, and every
/// ε-corridor of duration at least `T` decreases `V` by at least `δ`.
/// With `beta` given, also reports the corridor-length bound `k (T + M)`,
/// `k = ⌊β(1/ε)/δ⌋ + 1`.
#[allow(clippy::too_many_arguments)]
pub fn check_corollary1(
    e: &Ensemble,
    v: &dyn Fn(&[f64]) -> f64,
    max_gap: f64,
    eps: f64,
    horizon: f64,
    delta: f64,
    beta: Option<&ClassKInf>,
    slack: Slack,
) -> Result<StabilityReport, StabilityError> {
    if !(max_gap > 0.0 && horizon > 0.0 && delta > 0.0) || !(eps > 0.0 && eps < 1.0) {
        return Err(StabilityError::Param("need M, T, delta > 0 and 0 < eps < 1".into()));
    }
    let mut scan = Scan::new();
    for (k, sig) in e.signals.iter().enumerate() {
        let ts = sig.times();
        for seg in 0..sig.segment_count().saturating_sub(1) {
            let i = sig.segment_range(seg).end - 1;
            let gap = ts[i + 1] - ts[i];
            let (d_s, d_t) = (e.distance_at(k, i), e.distance_at(k, i + 1));
            scan.consider(gap, max_gap, slack, || witness(k, sig, i, i + 1, d_s, d_t, gap, max_gap, "sigma(t) <= t + M"));
        }
        let d = e.distances(k);
        let vs: Vec<f64> = sig.iter().map(|(_, x)| v(x)).collect();
        for (a, b) in band_runs(&d, eps) {
            let sm = suffix_max(&vs[a..=b]);
            let mut j0 = a;
            for i in a..=b {
                while j0 <= b && ts[j0] < ts[i] + horizon {
                    j0 += 1;
                }
                if j0 > b {
                    break;
                }
                scan.pairs += (b + 1 - j0) as u64;
                let (m, off) = sm[j0 - a];
                let j = a + off;
                let rhs = vs[i] - delta;
                scan.consider(m, rhs, slack, || witness(k, sig, i, j, d[i], d[j], m, rhs, "V(t) <= V(s) - delta"));
            }
        }
    }
    let mut params = json!({ "M": max_gap, "eps": eps, "T": horizon, "delta": delta, "slack": slack });
    if let Some(beta) = beta {
        let kk = (beta.eval(1.0 / eps) / delta).floor() + 1.0;
        params["beta"] = json!(beta);
        params["k"] = json!(kk);
        params["corridor_bound"] = json!(kk * (horizon + max_gap));
    }
    Ok(scan.report("corollary1", params, e.resolution()))
}

/// Strict decrease `V^Δ(τ) ≤ −γ(d(τ))` wherever the delta derivative of `V∘x`
/// is available, up to `slack_abs` (typically ten solver steps).
pub fn check_strict_decrease(
    sig: &Signal,
    v: &dyn Fn(&[f64]) -> f64,
    gamma: &ClassKInf,
    d: &Distance,
    slack_abs: f64,
) -> StabilityReport {
    let slack = Slack { abs: slack_abs, rel: 0.0 };
    let mut scan = Scan::new();
    let vsig = sig.map_values(|x| vec![v(x)]).expect("scalar map keeps the grid");
    for i in 0..sig.len() {
        let Ok(dv) = vsig.delta_derivative_at(i) else {
            continue;
        };
        scan.pairs += 1;
        let di = d.eval(sig.value(i));
        let rhs = -gamma.eval(di);
        scan.consider(dv[0], rhs, slack, || witness(0, sig, i, i, di, di, dv[0], rhs, "V^delta <= -gamma(d)"));
    }
    scan.report(
        "strict",
        json!({ "gamma": gamma, "slack": slack_abs }),
        resolution(std::slice::from_ref(sig)),
    )
}

/// Smallest `c` with `V(t) ≤ c V(s)` for all grid pairs `t ≥ s` where `V(s) > 0`.
pub fn fit_linear_gain(signals: &[Signal], v: &dyn Fn(&[f64]) -> f64) -> f64 {
    let mut c = 0.0f64;
    for sig in signals {
        let vs: Vec<f64> = sig.iter().map(|(_, x)| v(x)).collect();
        for (i, &(m, _)) in suffix_max(&vs).iter().enumerate() {
            if vs[i] > 0.0 {
                c = c.max(m / vs[i]);
            }
        }
    }
    c
}

/// Fits `(ρ, M)` with `V(t) ≤ ρ e^{M (t − s)} V(s)` along consecutive samples:
/// `M` is the largest observed logarithmic growth rate of `V` and `ρ ≥ 1` absorbs rounding.
pub fn fit_growth_envelope(signals: &[Signal], v: &dyn Fn(&[f64]) -> f64) -> (f64, f64) {
    let mut m = 0.0f64;
    for sig in signals {
        for k in 0..sig.segment_count() {
            let r = sig.segment_range(k);
            for i in r.start..r.end.saturating_sub(1) {
                let (a, b) = (v(sig.value(i)), v(sig.value(i + 1)));
                if a > 0.0 && b > 0.0 {
                    m = m.max((b.ln() - a.ln()) / (sig.times()[i + 1] - sig.times()[i]));
                }
            }
        }
    }
    let mut rho = 1.0f64;
    for sig in signals {
        for k in 0..sig.segment_count() {
            let r = sig.segment_range(k);
            for i in r.start..r.end.saturating_sub(1) {
                let (a, b) = (v(sig.value(i)), v(sig.value(i + 1)));
                if a > 0.0 {
                    rho = rho.max(b / ((m * (sig.times()[i + 1] - sig.times()[i])).exp() * a));
                }
            }
        }
    }
    (rho, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timescale::GeneralizedTimeScale;

    fn scalar_signal(ts: &[f64], ds: &[f64]) -> Signal {
        let dom = GeneralizedTimeScale::interval(ts[0], *ts.last().unwrap()).unwrap();
        Signal::from_samples(dom, ts.to_vec(), ds.iter().map(|&d| vec![d]).collect()).unwrap()
    }

    fn decaying(n: usize, h: f64) -> Signal {
        let ts: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let ds: Vec<f64> = ts.iter().map(|t| (-t).exp()).collect();
        scalar_signal(&ts, &ds)
    }

    fn ens(sigs: Vec<Signal>) -> Ensemble {
        Ensemble::new(sigs, Distance::Euclidean).unwrap()
    }

    /// O(n²) reference for the UGS scan.
    fn ugs_brute(d: &[f64], beta: &ClassKInf) -> f64 {
        let mut worst = f64::INFINITY;
        for i in 0..d.len() {
            for j in i..d.len() {
                worst = worst.min(beta.eval(d[i]) - d[j]);
            }
        }
        worst
    }

    #[test]
    fn ugs_matches_brute_force() {
        let ds = [1.0, 0.5, 2.0, 0.1, 1.5, 0.3];
        let ts: Vec<f64> = (0..ds.len()).map(|i| i as f64).collect();
        let e = ens(vec![scalar_signal(&ts, &ds)]);
        let beta = ClassKInf::linear(3.0).unwrap();
        let r = check_ugs(&e, &beta, Slack::default());
        assert_eq!(r.margin, ugs_brute(&ds, &beta));
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!((w.i_s, w.i_t), (3, 4));
        assert_eq!(r.checked_pairs, 21);
    }

    #[test]
    fn ugs_constant_and_decay() {
        let e = ens(vec![scalar_signal(&[0.0, 1.0, 2.0], &[2.0, 2.0, 2.0])]);
        let r = check_ugs(&e, &ClassKInf::identity(), Slack::default());
        assert!(r.passed());
        assert_eq!(r.margin, 0.0);
        assert!(check_ugs(&ens(vec![decaying(100, 0.05)]), &ClassKInf::identity(), Slack::default()).passed());
    }

    #[test]
    fn attractivity_cases() {
        let e = ens(vec![decaying(1000, 0.01)]);
        let t = 100f64.ln() + 0.1;
        assert!(check_attractivity(&e, 0.1, t, Slack::default()).unwrap().passed());
        let c = ens(vec![scalar_signal(&[0.0, 1.0, 2.0], &[1.0, 1.0, 1.0])]);
        let r = check_attractivity(&c, 0.5, 1.0, Slack::default()).unwrap();
        assert!(!r.passed());
        assert!(r.witness.unwrap().t >= 1.0);
        let empty = ens(vec![]);
        assert!(check_attractivity(&empty, 0.5, 1.0, Slack::default()).unwrap().passed());
        assert!(check_attractivity(&empty, 1.5, 1.0, Slack::default()).is_err());
    }

    #[test]
    fn c1_corridors() {
        let e = ens(vec![decaying(1000, 0.01)]);
        assert!(falsify_c1(&e, 0.5, 2.0).unwrap().passed());
        let c = ens(vec![scalar_signal(&[0.0, 1.0, 2.0, 3.0], &[1.0; 4])]);
        let r = falsify_c1(&c, 0.9, 2.0).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!((w.s, w.t), (0.0, 2.0));
        assert!(falsify_c1(&c, 0.9, 10.0).unwrap().passed());
    }

    #[test]
    fn kweak_and_composed_bound() {
        let e = ens(vec![decaying(200, 0.02)]);
        let sq = ClassKInf::power(1.0, 2.0).unwrap();
        let v = |x: &[f64]| x[0] * x[0];
        let r = check_k_weak(&e, &v, &sq, &sq, &ClassKInf::identity(), Slack::default());
        assert!(r.passed());
        let bound = ugs_bound_from_kweak(&sq, &sq, &ClassKInf::identity());
        assert!((bound.eval(0.7) - 0.7).abs() < 1e-15);
        assert!(check_ugs(&e, &bound, Slack::default()).passed());
        let up = ens(vec![scalar_signal(&[0.0, 1.0], &[1.0, 2.0])]);
        let r = check_k_weak(&up, &v, &sq, &sq, &ClassKInf::identity(), Slack::default());
        assert_eq!(r.witness.unwrap().condition, "V(t) <= gamma(V(s))");
    }

    #[test]
    fn corollary1_cases() {
        let v = |x: &[f64]| x[0];
        let c = ens(vec![scalar_signal(&[0.0, 1.0, 2.0, 3.0], &[1.0; 4])]);
        let r = check_corollary1(&c, &v, 1.0, 0.5, 1.0, 0.1, None, Slack::default()).unwrap();
        assert_eq!(r.witness.unwrap().condition, "V(t) <= V(s) - delta");

        let dom = GeneralizedTimeScale::points(&[0.0, 3.0]).unwrap();
        let gappy = Signal::from_samples(dom, vec![0.0, 3.0], vec![vec![0.0], vec![0.0]]).unwrap();
        let r = check_corollary1(&ens(vec![gappy]), &v, 2.0, 0.5, 1.0, 0.1, None, Slack::default()).unwrap();
        assert_eq!(r.witness.unwrap().condition, "sigma(t) <= t + M");

        let beta = ClassKInf::power(5.0, 2.0).unwrap();
        let e = ens(vec![decaying(500, 0.01)]);
        let r = check_corollary1(&e, &|x: &[f64]| x[0] * x[0], 1.0, 0.2, 0.5, 0.01, Some(&beta), Slack::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["k"], json!(12501.0));
    }

    #[test]
    fn strict_decrease_cases() {
        let sig = decaying(2000, 1e-3);
        let v = |x: &[f64]| x[0] * x[0];
        let gamma = ClassKInf::power(2.0, 2.0).unwrap();
        assert!(check_strict_decrease(&sig, &v, &gamma, &Distance::Euclidean, 1e-2).passed());
        let up = scalar_signal(&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0]);
        assert!(!check_strict_decrease(&up, &v, &gamma, &Distance::Euclidean, 1e-2).passed());
    }

    #[test]
    fn growth_envelope_fit() {
        let ts: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01).collect();
        let ds: Vec<f64> = ts.iter().map(|t| (3.0 * t).exp()).collect();
        let (rho, m) = fit_growth_envelope(&[scalar_signal(&ts, &ds)], &|x: &[f64]| x[0]);
        assert!((m - 3.0).abs() < 1e-9);
        assert!((1.0..1.0 + 1e-12).contains(&rho));
    }
}
