//! Hybrid time domains, their correspondence with the family ℍ of
//! generalized time scales, and the embedding of switched systems.
//!
//! ℍ is the set of generalized time scales with `Ini = 0` whose gaps all have
//! length one. The map `(t, j) ↦ t + j` sends a hybrid time domain onto a
//! member of ℍ; `t ↦ (T_c(t), N_d(t))` inverts it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Signal, SignalError};
use crate::numeric::geometric_partial_sums;
use crate::timescale::{GeneralizedTimeScale, Segment, TailKind, TimeScaleError, DEFAULT_TOL_T};

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("malformed hybrid time domain: {0}")]
    Malformed(String),
    #[error("time scale is not in H: {0}")]
    NotInH(String),
    #[error("invalid switching signal: {0}")]
    Switching(String),
    #[error("ratio r = {0} must lie in (0, 1]")]
    Ratio(f64),
    #[error("negative time s = {0}")]
    NegativeTime(f64),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error(transparent)]
    Signal(#[from] SignalError),
}

type Result<T> = std::result::Result<T, DomainError>;

/// Breakpoints closer than this are treated as equal when validating input.
const BREAKPOINT_TOL: f64 = 1e-12;

/// One piece `[lo, hi] × {j}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HtdPiece {
    pub lo: f64,
    /// `f64::INFINITY` for an unbounded final piece.
    pub hi: f64,
    pub j: usize,
}

/// A hybrid time domain `∪_j [t_j, t_{j+1}] × {j}` with `t_0 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HtdWire", into = "HtdWire")]
pub struct HybridTimeDomain {
    pieces: Vec<HtdPiece>,
    tail: TailKind,
}

impl HybridTimeDomain {
    pub fn new(pieces: Vec<HtdPiece>, tail: TailKind) -> Result<Self> {
        let bad = |m: String| Err(DomainError::Malformed(m));
        let Some(first) = pieces.first() else {
            return bad("no pieces".into());
        };
        if first.lo != 0.0 {
            return bad(format!("first piece must start at t = 0, got {}", first.lo));
        }
        let mut pieces = pieces;
        let n = pieces.len();
        for k in 0..n {
            let p = pieces[k];
            if p.j != k {
                return bad(format!("piece {k} has jump index {}", p.j));
            }
            if !p.lo.is_finite() || p.hi.is_nan() || p.lo > p.hi {
                return bad(format!("piece {k} has bounds [{}, {}]", p.lo, p.hi));
            }
            if p.hi == f64::INFINITY && !(k + 1 == n && tail == TailKind::Unbounded) {
                return bad(format!("piece {k} is unbounded but is not an unbounded tail"));
            }
            if k + 1 < n {
                let next = pieces[k + 1].lo;
                if (next - p.hi).abs() > BREAKPOINT_TOL {
                    return bad(format!("piece {k} ends at {} but piece {} starts at {next}", p.hi, k + 1));
                }
                pieces[k + 1].lo = p.hi;
            }
        }
        let last = pieces[n - 1];
        match tail {
            TailKind::Unbounded if last.hi != f64::INFINITY => bad("unbounded tail needs hi = +inf".into()),
            TailKind::HalfOpen if !(last.lo < last.hi) => bad("half-open final piece must be non-degenerate".into()),
            _ => Ok(HybridTimeDomain { pieces, tail }),
        }
    }

    pub fn pieces(&self) -> &[HtdPiece] {
        &self.pieces
    }

    pub fn tail(&self) -> TailKind {
        self.tail
    }

    /// Flow-time breakpoints `t_0 = 0, t_1, ..., t_J`.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces.iter().map(|p| p.lo).collect()
    }

    /// Image under `(t, j) ↦ t + j`.
    pub fn to_gts(&self) -> Result<GeneralizedTimeScale> {
        let n = self.pieces.len();
        let segs = self
            .pieces
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let shift = k as f64;
                let last = k + 1 == n;
                match (last, self.tail) {
                    (true, TailKind::Unbounded) => Segment::unbounded(p.lo + shift),
                    (true, TailKind::HalfOpen) => Segment::half_open(p.lo + shift, p.hi + shift),
                    _ => Segment::closed(p.lo + shift, p.hi + shift),
                }
            })
            .collect();
        Ok(GeneralizedTimeScale::from_segments(segs, DEFAULT_TOL_T)?)
    }

    /// Whether `(t, j)` belongs to the domain.
    pub fn contains(&self, t: f64, j: usize) -> bool {
        self.pieces.get(j).is_some_and(|p| {
            let last = j + 1 == self.pieces.len();
            t >= p.lo && (t < p.hi || (t == p.hi && !(last && self.tail == TailKind::HalfOpen)))
        })
    }

    /// A random domain with `1..=max_pieces` pieces; about one flow interval in five is empty.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize) -> Self {
        let n = rng.random_range(1..=max_pieces.max(1));
        let tail = match rng.random_range(0..3) {
            0 => TailKind::Closed,
            1 => TailKind::HalfOpen,
            _ => TailKind::Unbounded,
        };
        let mut t = 0.0;
        let mut pieces = Vec::with_capacity(n);
        for j in 0..n {
            let lo = t;
            let last = j + 1 == n;
            let len = if !last && rng.random_bool(0.2) {
                0.0
            } else {
                rng.random_range(0.01..2.0)
            };
            let hi = if last && tail == TailKind::Unbounded { f64::INFINITY } else { lo + len };
            pieces.push(HtdPiece { lo, hi, j });
            t = hi;
        }
        HybridTimeDomain::new(pieces, tail).expect("generator respects the invariants")
    }
}

/// Whether `I ∈ ℍ`: `Ini(I) = 0` and every gap has length one (within `tol_t`).
pub fn is_in_h(dom: &GeneralizedTimeScale) -> bool {
    h_violation(dom).is_none()
}

fn h_violation(dom: &GeneralizedTimeScale) -> Option<String> {
    let tol = dom.tol();
    let ini = match dom.ini() {
        Ok(v) => v,
        Err(e) => return Some(e.to_string()),
    };
    if ini.abs() > tol {
        return Some(format!("Ini = {ini}, expected 0"));
    }
    if let Some(l) = dom.as_lattice() {
        return ((l.stride - 1.0).abs() > tol).then(|| format!("lattice stride {} is not 1", l.stride));
    }
    dom.gaps()
        .into_iter()
        .find(|(s, n)| ((n - s) - 1.0).abs() > tol)
        .map(|(s, n)| format!("gap at t = {s} has length {}", n - s))
}

/// `t ↦ (T_c(t), N_d(t))` applied to a scale in ℍ.
pub fn to_htd(dom: &GeneralizedTimeScale) -> Result<HybridTimeDomain> {
    if let Some(why) = h_violation(dom) {
        return Err(DomainError::NotInH(why));
    }
    let segs = dom
        .segments()
        .ok_or_else(|| DomainError::NotInH("lattice scales need a horizon; use to_htd_window".into()))?;
    let mut pieces: Vec<HtdPiece> = Vec::with_capacity(segs.len());
    for (k, s) in segs.iter().enumerate() {
        let lo = match pieces.last() {
            Some(prev) => prev.hi,
            None => dom.continuous_part(s.lo)?,
        };
        let hi = if s.is_unbounded() {
            f64::INFINITY
        } else if s.closed_right {
            dom.continuous_part(s.hi)?.max(lo)
        } else {
            lo + s.length()
        };
        pieces.push(HtdPiece { lo, hi, j: k });
    }
    HybridTimeDomain::new(pieces, dom.tail())
}

/// [`to_htd`] on `[0, horizon]_I`; needed for unbounded lattices.
pub fn to_htd_window(dom: &GeneralizedTimeScale, horizon: f64) -> Result<HybridTimeDomain> {
    if let Some(why) = h_violation(dom) {
        return Err(DomainError::NotInH(why));
    }
    to_htd(&dom.restrict(0.0, horizon)?)
}

/// A random member of ℍ.
pub fn random_in_h<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize) -> GeneralizedTimeScale {
    HybridTimeDomain::random(rng, max_pieces)
        .to_gts()
        .expect("image of a valid domain")
}

/// Piecewise-constant right-continuous switching signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SwitchWire", into = "SwitchWire")]
pub struct SwitchingSignal {
    breakpoints: Vec<f64>,
    modes: Vec<u32>,
    /// Set when the breakpoint list is a finite prefix of an infinite set.
    truncated: bool,
}

impl SwitchingSignal {
    /// `modes[k]` holds on `[t_k, t_{k+1})` with `t_0 = 0`.
    pub fn new(breakpoints: Vec<f64>, modes: Vec<u32>) -> Result<Self> {
        if modes.len() != breakpoints.len() + 1 {
            return Err(DomainError::Switching(format!(
                "{} breakpoints need {} modes, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                modes.len()
            )));
        }
        if breakpoints.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(DomainError::Switching("breakpoints must be finite and non-negative".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(DomainError::Switching("breakpoints must be strictly increasing".into()));
        }
        Ok(SwitchingSignal {
            breakpoints,
            modes,
            truncated: false,
        })
    }

    /// Marks the list as a finite prefix of an infinite breakpoint set.
    pub fn truncated(mut self) -> Self {
        self.truncated = true;
        self
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn modes(&self) -> &[u32] {
        &self.modes
    }

    /// `λ(s)`.
    pub fn mode_at(&self, s: f64) -> u32 {
        self.modes[self.breakpoints.partition_point(|&t| t <= s)]
    }

    /// Random signal on `[0, horizon)` with at most `max_switches` switches at
    /// least `min_spacing` apart, alternating among `modes` modes.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, horizon: f64, max_switches: usize, min_spacing: f64, modes: u32) -> Self {
        let n = rng.random_range(0..=max_switches);
        let mut ts: Vec<f64> = (0..n).map(|_| rng.random_range(min_spacing..horizon)).collect();
        ts.sort_by(f64::total_cmp);
        let mut kept: Vec<f64> = Vec::with_capacity(n);
        for t in ts {
            if kept.last().map_or(true, |&p| t - p >= min_spacing) {
                kept.push(t);
            }
        }
        let modes = modes.max(2);
        let mut m = rng.random_range(0..modes);
        let mut ms = vec![m];
        for _ in &kept {
            m = (m + rng.random_range(1..modes)) % modes;
            ms.push(m);
        }
        SwitchingSignal::new(kept, ms).expect("generator respects the invariants")
    }
}

/// Precomputed `S_J^r`.
#[derive(Debug, Clone)]
pub struct Sjr {
    breakpoints: Vec<f64>,
    /// `sums[n] = r + ... + r^n`.
    sums: Vec<f64>,
}

impl Sjr {
    pub fn new(breakpoints: &[f64], r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(DomainError::Ratio(r));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(DomainError::Switching("breakpoints must be strictly increasing".into()));
        }
        Ok(Sjr {
            breakpoints: breakpoints.to_vec(),
            sums: geometric_partial_sums(r, breakpoints.len()),
        })
    }

    /// Shift `Σ_{m=1}^{n} r^m`.
    pub fn shift(&self, n: usize) -> f64 {
        self.sums[n]
    }

    /// Image of `s`: one time, or two at a breakpoint (pre-switch copy first).
    pub fn image(&self, s: f64) -> Result<Vec<f64>> {
        if !(s >= 0.0) {
            return Err(DomainError::NegativeTime(s));
        }
        let n = self.breakpoints.partition_point(|&t| t <= s);
        if n > 0 && self.breakpoints[n - 1] == s {
            Ok(vec![s + self.sums[n - 1], s + self.sums[n]])
        } else {
            Ok(vec![s + self.sums[n]])
        }
    }
}

/// `S_J^r(s)` for breakpoints `J`.
pub fn sjr(breakpoints: &[f64], r: f64, s: f64) -> Result<Vec<f64>> {
    Sjr::new(breakpoints, r)?.image(s)
}

/// Embeds a real-time trajectory `x` with switching signal `λ` as a hybrid
/// solution `(x, λ)` on the scale `∪_s S_J^r(s)`.
///
/// At a breakpoint's two-point image the first copy carries the pre-switch
/// mode, the second the post-switch mode.
pub fn embed_switched(x: &Signal, lambda: &SwitchingSignal, r: f64) -> Result<Signal> {
    let segs = x.dom().segments().expect("signals live on segment-form scales");
    if segs.len() != 1 || segs[0].lo != 0.0 {
        return Err(DomainError::Embedding(
            "trajectory must live on a single real-time interval starting at 0".into(),
        ));
    }
    let src = segs[0];
    let end = *x.times().last().expect("non-empty");
    let bps: Vec<f64> = lambda
        .breakpoints()
        .iter()
        .copied()
        .take_while(|&t| t < end || (src.closed_right && t <= end && t < src.hi))
        .collect();
    if r == 1.0 && lambda.is_truncated() {
        log::warn!("r = 1 with an infinite switching set: the gap budget diverges");
    }
    let map = Sjr::new(&bps, r)?;
    let p = x.dim();

    let mut pieces: Vec<Segment> = Vec::with_capacity(bps.len() + 1);
    let mut times = Vec::with_capacity(x.len() + 2 * bps.len());
    let mut values = Vec::with_capacity((x.len() + 2 * bps.len()) * (p + 1));
    let mut push = |t: f64, v: &[f64], mode: u32| {
        times.push(t);
        values.extend_from_slice(v);
        values.push(f64::from(mode));
    };
    let mut i = 0;
    for k in 0..=bps.len() {
        let s_lo = if k == 0 { 0.0 } else { bps[k - 1] };
        let shift = map.shift(k);
        let mode = lambda.modes()[k.min(lambda.modes().len() - 1)];
        let lo = s_lo + shift;
        if k > 0 {
            push(lo, &x.sample(s_lo)?, mode);
            while i < x.len() && x.times()[i] <= s_lo {
                i += 1;
            }
        }
        let s_hi = bps.get(k).copied();
        while i < x.len() && s_hi.map_or(true, |h| x.times()[i] < h) {
            push(x.times()[i] + shift, x.value(i), mode);
            i += 1;
        }
        let seg = match s_hi {
            Some(h) => {
                push(h + shift, &x.sample(h)?, mode);
                Segment::closed(lo, h + shift)
            }
            None if src.is_unbounded() => Segment::unbounded(lo),
            None if !src.closed_right => Segment::half_open(lo, src.hi + shift),
            None => Segment::closed(lo, end + shift),
        };
        pieces.push(seg);
    }
    let min_gap = pieces
        .windows(2)
        .map(|w| w[1].lo - w[0].hi)
        .fold(f64::INFINITY, f64::min);
    if !(min_gap > 0.0) {
        return Err(DomainError::Embedding(format!(
            "gap r^{} is below floating-point resolution",
            bps.len()
        )));
    }
    let tol = DEFAULT_TOL_T.min(min_gap / 4.0);
    let dom = GeneralizedTimeScale::from_segments(pieces, tol)?;
    Ok(Signal::from_flat(dom, p + 1, times, values)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HtdPieceWire {
    lo: f64,
    hi: Option<f64>,
    j: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HtdWire {
    pieces: Vec<HtdPieceWire>,
    tail: TailKind,
}

impl From<HybridTimeDomain> for HtdWire {
    fn from(h: HybridTimeDomain) -> Self {
        HtdWire {
            pieces: h
                .pieces
                .iter()
                .map(|p| HtdPieceWire {
                    lo: p.lo,
                    hi: p.hi.is_finite().then_some(p.hi),
                    j: p.j,
                })
                .collect(),
            tail: h.tail,
        }
    }
}

impl TryFrom<HtdWire> for HybridTimeDomain {
    type Error = DomainError;

    fn try_from(w: HtdWire) -> Result<Self> {
        let pieces = w
            .pieces
            .into_iter()
            .map(|p| HtdPiece {
                lo: p.lo,
                hi: p.hi.unwrap_or(f64::INFINITY),
                j: p.j,
            })
            .collect();
        HybridTimeDomain::new(pieces, w.tail)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SwitchWire {
    breakpoints: Vec<f64>,
    modes: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    truncated: bool,
}

impl From<SwitchingSignal> for SwitchWire {
    fn from(s: SwitchingSignal) -> Self {
        SwitchWire {
            breakpoints: s.breakpoints,
            modes: s.modes,
            truncated: s.truncated,
        }
    }
}

impl TryFrom<SwitchWire> for SwitchingSignal {
    type Error = DomainError;

    fn try_from(w: SwitchWire) -> Result<Self> {
        let s = SwitchingSignal::new(w.breakpoints, w.modes)?;
        Ok(if w.truncated { s.truncated() } else { s })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(lo: f64, hi: f64, j: usize) -> HtdPiece {
        HtdPiece { lo, hi, j }
    }

    #[test]
    fn htd_to_gts_examples() {
        let h = HybridTimeDomain::new(vec![piece(0.0, 1.0, 0), piece(1.0, 2.0, 1)], TailKind::Closed).unwrap();
        let g = h.to_gts().unwrap();
        assert_eq!(g.segments().unwrap(), &[Segment::closed(0.0, 1.0), Segment::closed(2.0, 3.0)]);

        let h = HybridTimeDomain::new(vec![piece(0.0, f64::INFINITY, 0)], TailKind::Unbounded).unwrap();
        assert_eq!(h.to_gts().unwrap(), GeneralizedTimeScale::half_line(0.0).unwrap());

        let h = HybridTimeDomain::new(
            vec![piece(0.0, 0.0, 0), piece(0.0, 0.0, 1), piece(0.0, 2.0, 2)],
            TailKind::HalfOpen,
        )
        .unwrap();
        assert_eq!(
            h.to_gts().unwrap().segments().unwrap(),
            &[Segment::point(0.0), Segment::point(1.0), Segment::half_open(2.0, 4.0)]
        );
    }

    #[test]
    fn gts_to_htd_examples() {
        let g = GeneralizedTimeScale::from_segments(
            vec![Segment::closed(0.0, 1.0), Segment::closed(2.0, 3.0)],
            DEFAULT_TOL_T,
        )
        .unwrap();
        let h = to_htd(&g).unwrap();
        assert_eq!(h.pieces(), &[piece(0.0, 1.0, 0), piece(1.0, 2.0, 1)]);
        let h = to_htd(&GeneralizedTimeScale::half_line(0.0).unwrap()).unwrap();
        assert_eq!(h.pieces(), &[piece(0.0, f64::INFINITY, 0)]);
        // every lattice point is right-scattered: all time is discrete
        let h = to_htd_window(&GeneralizedTimeScale::lattice(0.0, 1.0).unwrap(), 3.0).unwrap();
        assert_eq!(
            h.pieces(),
            &[piece(0.0, 0.0, 0), piece(0.0, 0.0, 1), piece(0.0, 0.0, 2), piece(0.0, 0.0, 3)]
        );
    }

    #[test]
    fn membership_in_h() {
        let seg = |v: &[(f64, f64)]| {
            GeneralizedTimeScale::from_segments(v.iter().map(|&(a, b)| Segment::closed(a, b)).collect(), DEFAULT_TOL_T)
                .unwrap()
        };
        assert!(is_in_h(&seg(&[(0.0, 1.0), (2.0, 3.0)])));
        assert!(!is_in_h(&seg(&[(0.0, 1.0), (2.5, 3.0)])));
        assert!(!is_in_h(&seg(&[(1.0, 2.0)])));
        let err = to_htd(&seg(&[(0.0, 1.0), (2.5, 3.0)])).unwrap_err();
        assert!(err.to_string().contains("not in H"));
    }

    #[test]
    fn malformed_domains_rejected() {
        assert!(HybridTimeDomain::new(vec![piece(1.0, 2.0, 0)], TailKind::Closed).is_err());
        assert!(HybridTimeDomain::new(vec![piece(0.0, 1.0, 0), piece(1.5, 2.0, 1)], TailKind::Closed).is_err());
        assert!(HybridTimeDomain::new(vec![piece(0.0, 1.0, 0), piece(1.0, 2.0, 3)], TailKind::Closed).is_err());
        assert!(HybridTimeDomain::new(vec![], TailKind::Closed).is_err());
    }

    #[test]
    fn sjr_fixture() {
        let j = [1.0, 2.0];
        assert_eq!(sjr(&j, 0.5, 0.5).unwrap(), vec![0.5]);
        assert_eq!(sjr(&j, 0.5, 1.0).unwrap(), vec![1.0, 1.5]);
        assert_eq!(sjr(&j, 0.5, 2.0).unwrap(), vec![2.5, 2.75]);
        assert_eq!(sjr(&j, 0.5, 3.0).unwrap(), vec![3.75]);
        assert!(matches!(sjr(&j, 0.5, -1.0), Err(DomainError::NegativeTime(_))));
        assert!(matches!(sjr(&j, 1.5, 0.0), Err(DomainError::Ratio(_))));
    }

    fn ramp(a: f64, n: usize) -> Signal {
        let dom = GeneralizedTimeScale::half_open(0.0, a).unwrap();
        let ts: Vec<f64> = (0..n).map(|i| a * i as f64 / n as f64).collect();
        let vals = ts.iter().map(|&t| vec![t]).collect();
        Signal::from_samples(dom, ts, vals).unwrap()
    }

    #[test]
    fn embedding_without_switches_is_identity() {
        let x = ramp(2.0, 20);
        let lam = SwitchingSignal::new(vec![], vec![3]).unwrap();
        let e = embed_switched(&x, &lam, 0.5).unwrap();
        assert_eq!(e.dom().segments().unwrap(), &[Segment::half_open(0.0, 2.0)]);
        assert!(e.iter().all(|(t, v)| v == [t, 3.0]));
    }

    #[test]
    fn embedding_one_switch() {
        let x = ramp(2.0, 20);
        let lam = SwitchingSignal::new(vec![1.0], vec![0, 1]).unwrap();
        let e = embed_switched(&x, &lam, 0.5).unwrap();
        let dom = e.dom();
        assert_eq!(dom.gaps(), vec![(1.0, 1.5)]);
        assert_eq!(dom.continuous_part(1.5).unwrap(), 1.0);
        assert_eq!(e.sample(1.0).unwrap(), vec![1.0, 0.0]);
        assert_eq!(e.sample(1.5).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn json_forms() {
        let h: HybridTimeDomain = serde_json::from_str(
            r#"{"pieces":[{"lo":0,"hi":1,"j":0},{"lo":1,"hi":null,"j":1}],"tail":"unbounded"}"#,
        )
        .unwrap();
        assert_eq!(h.pieces()[1].hi, f64::INFINITY);
        let back: HybridTimeDomain = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
        let s: SwitchingSignal = serde_json::from_str(r#"{"breakpoints":[1,2],"modes":[0,1,0]}"#).unwrap();
        assert_eq!(s.mode_at(1.0), 1);
        assert_eq!(s.mode_at(0.99), 0);
        assert_eq!(s.mode_at(5.0), 0);
    }
}
