//! Generalized time scales.
//!
//! A [`GeneralizedTimeScale`] is an ordered union of disjoint closed segments
//! (isolated points are degenerate segments) where only the final segment may
//! be half-open `[lo, hi)` or unbounded `[lo, ∞)`. That structural rule is what
//! makes every prefix `I_{≤a}` closed. Unbounded uniform lattices
//! `{start + k·stride : k ≥ 0}` are kept in intensional form and materialized
//! per query window.
//!
//! Every time value carries an absolute membership tolerance `tol_t`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::CompensatedSum;

/// Default absolute membership tolerance, in seconds.
pub const DEFAULT_TOL_T: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TimeScaleError {
    #[error("time scale is empty")]
    Empty,
    #[error("t = {t} is not a member of the time scale")]
    NotMember { t: f64 },
    #[error("invalid time scale: {0}")]
    Invalid(String),
    #[error("restriction to [{a}, {b}] is empty")]
    EmptyRestriction { a: f64, b: f64 },
    #[error("invalid window [{a}, {b}]")]
    BadWindow { a: f64, b: f64 },
}

type Result<T> = std::result::Result<T, TimeScaleError>;

/// One building block of a time scale: `[lo, hi]`, `[lo, hi)` or `[lo, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    /// `f64::INFINITY` for an unbounded tail.
    pub hi: f64,
    pub closed_right: bool,
}

impl Segment {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Segment {
            lo,
            hi,
            closed_right: true,
        }
    }

    pub fn point(t: f64) -> Self {
        Segment::closed(t, t)
    }

    pub fn half_open(lo: f64, hi: f64) -> Self {
        Segment {
            lo,
            hi,
            closed_right: false,
        }
    }

    pub fn unbounded(lo: f64) -> Self {
        Segment {
            lo,
            hi: f64::INFINITY,
            closed_right: false,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi == f64::INFINITY
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    fn contains(&self, t: f64, tol: f64) -> bool {
        if t < self.lo - tol {
            return false;
        }
        if self.is_unbounded() {
            true
        } else if self.closed_right {
            t <= self.hi + tol
        } else {
            t < self.hi
        }
    }
}

/// Shape of the final segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    Closed,
    HalfOpen,
    Unbounded,
}

/// The lattice `{start + k·stride : k ∈ Z_+}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub start: f64,
    pub stride: f64,
}

impl Lattice {
    fn point(&self, k: u64) -> f64 {
        self.start + k as f64 * self.stride
    }

    /// Index of the lattice point within `tol` of `t`.
    fn index_of(&self, t: f64, tol: f64) -> Option<u64> {
        let k = ((t - self.start) / self.stride).round();
        if k < 0.0 || !k.is_finite() {
            return None;
        }
        let k = k as u64;
        ((t - self.point(k)).abs() <= tol).then_some(k)
    }

    /// Indices of the lattice points in `[a, b]` (with tolerance).
    fn index_range(&self, a: f64, b: f64, tol: f64) -> Option<(u64, u64)> {
        let lo = ((a - tol - self.start) / self.stride).ceil().max(0.0);
        let hi = ((b + tol - self.start) / self.stride).floor();
        (hi >= lo).then_some((lo as u64, hi as u64))
    }
}

/// `Fin(I)`: the supremum and whether it belongs to `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fin {
    pub value: f64,
    pub attained: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Segments {
        segs: Vec<Segment>,
        /// Lebesgue measure of the scale left of `segs[k].lo`.
        measure_before: Vec<f64>,
        /// Total gap length left of `segs[k].lo`.
        gap_before: Vec<f64>,
    },
    Lattice(Lattice),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct GeneralizedTimeScale {
    repr: Repr,
    tol_t: f64,
}

impl GeneralizedTimeScale {
    /// Builds a scale from an ordered segment list, checking every structural invariant.
    pub fn from_segments(segs: Vec<Segment>, tol_t: f64) -> Result<Self> {
        if !(tol_t > 0.0 && tol_t.is_finite()) {
            return Err(TimeScaleError::Invalid(format!("tol_t must be positive, got {tol_t}")));
        }
        let n = segs.len();
        let mut segs = segs;
        for (k, s) in segs.iter_mut().enumerate() {
            if !s.lo.is_finite() || s.hi.is_nan() || s.hi == f64::NEG_INFINITY {
                return Err(TimeScaleError::Invalid(format!("segment {k} has non-finite bounds")));
            }
            if s.lo > s.hi {
                return Err(TimeScaleError::Invalid(format!(
                    "segment {k}: lo {} > hi {}",
                    s.lo, s.hi
                )));
            }
            if s.is_unbounded() {
                s.closed_right = false;
            }
            if s.is_point() && !s.closed_right {
                return Err(TimeScaleError::Invalid(format!("segment {k} is the empty set [{0}, {0})", s.lo)));
            }
            if !s.closed_right && k + 1 != n {
                return Err(TimeScaleError::Invalid(format!(
                    "only the final segment may be half-open or unbounded (segment {k})"
                )));
            }
        }
        for k in 1..n {
            let gap = segs[k].lo - segs[k - 1].hi;
            if !(gap > tol_t) {
                return Err(TimeScaleError::Invalid(format!(
                    "segments {} and {k} are not separated by more than tol_t (gap {gap})",
                    k - 1
                )));
            }
        }
        Ok(Self::from_segments_unchecked(segs, tol_t))
    }

    fn from_segments_unchecked(segs: Vec<Segment>, tol_t: f64) -> Self {
        let mut measure_before = Vec::with_capacity(segs.len());
        let mut gap_before = Vec::with_capacity(segs.len());
        let mut measure = CompensatedSum::new();
        let mut gaps = CompensatedSum::new();
        for (k, s) in segs.iter().enumerate() {
            if k > 0 {
                gaps.add(s.lo - segs[k - 1].hi);
            }
            measure_before.push(measure.value());
            gap_before.push(gaps.value());
            measure.add(s.length());
        }
        GeneralizedTimeScale {
            repr: Repr::Segments {
                segs,
                measure_before,
                gap_before,
            },
            tol_t,
        }
    }

    pub fn empty() -> Self {
        Self::from_segments_unchecked(Vec::new(), DEFAULT_TOL_T)
    }

    /// `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::from_segments(vec![Segment::closed(lo, hi)], DEFAULT_TOL_T)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64) -> Result<Self> {
        Self::from_segments(vec![Segment::half_open(lo, hi)], DEFAULT_TOL_T)
    }

    /// `[lo, ∞)`.
    pub fn half_line(lo: f64) -> Result<Self> {
        Self::from_segments(vec![Segment::unbounded(lo)], DEFAULT_TOL_T)
    }

    /// A finite set of isolated points (must be strictly increasing).
    pub fn points(ts: &[f64]) -> Result<Self> {
        Self::from_segments(ts.iter().map(|&t| Segment::point(t)).collect(), DEFAULT_TOL_T)
    }

    /// `{start + k·stride : k ≥ 0}`.
    pub fn lattice(start: f64, stride: f64) -> Result<Self> {
        Self::lattice_with_tol(start, stride, DEFAULT_TOL_T)
    }

    pub fn lattice_with_tol(start: f64, stride: f64, tol_t: f64) -> Result<Self> {
        if !start.is_finite() || !(stride > 2.0 * tol_t) || !stride.is_finite() {
            return Err(TimeScaleError::Invalid(format!(
                "lattice needs finite start and stride > 2·tol_t (start {start}, stride {stride})"
            )));
        }
        if !(tol_t > 0.0) {
            return Err(TimeScaleError::Invalid(format!("tol_t must be positive, got {tol_t}")));
        }
        Ok(GeneralizedTimeScale {
            repr: Repr::Lattice(Lattice { start, stride }),
            tol_t,
        })
    }

    /// Same set with a different membership tolerance.
    pub fn with_tol(self, tol_t: f64) -> Result<Self> {
        match self.repr {
            Repr::Segments { segs, .. } => Self::from_segments(segs, tol_t),
            Repr::Lattice(l) => Self::lattice_with_tol(l.start, l.stride, tol_t),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol_t
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.repr, Repr::Segments { segs, .. } if segs.is_empty())
    }

    /// Segment list, `None` for the intensional lattice form.
    pub fn segments(&self) -> Option<&[Segment]> {
        match &self.repr {
            Repr::Segments { segs, .. } => Some(segs),
            Repr::Lattice(_) => None,
        }
    }

    pub fn as_lattice(&self) -> Option<Lattice> {
        match self.repr {
            Repr::Lattice(l) => Some(l),
            Repr::Segments { .. } => None,
        }
    }

    pub fn tail(&self) -> TailKind {
        match &self.repr {
            Repr::Lattice(_) => TailKind::Unbounded,
            Repr::Segments { segs, .. } => match segs.last() {
                Some(s) if s.is_unbounded() => TailKind::Unbounded,
                Some(s) if !s.closed_right => TailKind::HalfOpen,
                _ => TailKind::Closed,
            },
        }
    }

    /// `Ini(I)`.
    pub fn ini(&self) -> Result<f64> {
        match &self.repr {
            Repr::Segments { segs, .. } => segs.first().map(|s| s.lo).ok_or(TimeScaleError::Empty),
            Repr::Lattice(l) => Ok(l.start),
        }
    }

    /// `Fin(I)`, flagged when the supremum is not a member.
    pub fn fin(&self) -> Result<Fin> {
        match &self.repr {
            Repr::Segments { segs, .. } => {
                let last = segs.last().ok_or(TimeScaleError::Empty)?;
                Ok(Fin {
                    value: last.hi,
                    attained: last.closed_right,
                })
            }
            Repr::Lattice(_) => Ok(Fin {
                value: f64::INFINITY,
                attained: false,
            }),
        }
    }

    /// Index of the segment holding `t` (segment form only).
    pub fn locate(&self, t: f64) -> Option<usize> {
        let Repr::Segments { segs, .. } = &self.repr else {
            return None;
        };
        let idx = segs.partition_point(|s| s.lo <= t + self.tol_t);
        if idx == 0 {
            return None;
        }
        segs[idx - 1].contains(t, self.tol_t).then_some(idx - 1)
    }

    pub fn contains(&self, t: f64) -> bool {
        match &self.repr {
            Repr::Segments { .. } => self.locate(t).is_some(),
            Repr::Lattice(l) => l.index_of(t, self.tol_t).is_some(),
        }
    }

    /// Forward jump operator `σ(t) = inf{s ∈ I : s > t}`, with `σ(Fin) = Fin`.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Repr::Segments { segs, .. } => {
                let k = self.locate(t).ok_or(TimeScaleError::NotMember { t })?;
                let s = &segs[k];
                if s.closed_right && t >= s.hi - self.tol_t {
                    Ok(segs.get(k + 1).map_or(t, |next| next.lo))
                } else {
                    Ok(t)
                }
            }
            Repr::Lattice(l) => {
                let k = l.index_of(t, self.tol_t).ok_or(TimeScaleError::NotMember { t })?;
                Ok(l.point(k + 1))
            }
        }
    }

    pub fn is_right_scattered(&self, t: f64) -> Result<bool> {
        Ok(self.sigma(t)? > t)
    }

    /// Right-scattered points of `I` inside `[a, b]`, ascending.
    pub fn gap_points(&self, a: f64, b: f64) -> Vec<f64> {
        if a > b {
            return Vec::new();
        }
        let tol = self.tol_t;
        match &self.repr {
            Repr::Segments { segs, .. } => segs
                .iter()
                .take(segs.len().saturating_sub(1))
                .map(|s| s.hi)
                .filter(|&s| s >= a - tol && s <= b + tol)
                .collect(),
            Repr::Lattice(l) => match l.index_range(a, b, tol) {
                Some((lo, hi)) => (lo..=hi).map(|k| l.point(k)).collect(),
                None => Vec::new(),
            },
        }
    }

    /// All gaps `(s, σ(s))` of a segment-form scale.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        match &self.repr {
            Repr::Segments { segs, .. } => segs.windows(2).map(|w| (w[0].hi, w[1].lo)).collect(),
            Repr::Lattice(_) => Vec::new(),
        }
    }

    /// `[a, b]_I`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(TimeScaleError::BadWindow { a, b });
        }
        let tol = self.tol_t;
        let out: Vec<Segment> = match &self.repr {
            Repr::Segments { segs, .. } => segs
                .iter()
                .filter_map(|s| {
                    if s.lo > b + tol || (s.hi < a - tol) || (!s.closed_right && s.hi <= a) {
                        return None;
                    }
                    let lo = a.max(s.lo).min(s.hi);
                    let (hi, closed_right) = if b < s.hi {
                        (b.max(lo), true)
                    } else {
                        (s.hi, s.closed_right)
                    };
                    Some(Segment { lo, hi, closed_right })
                })
                .collect(),
            Repr::Lattice(l) => {
                if b == f64::INFINITY {
                    let (k0, _) = l.index_range(a, f64::MAX, tol).ok_or(TimeScaleError::EmptyRestriction { a, b })?;
                    return Self::lattice_with_tol(l.point(k0), l.stride, tol);
                }
                match l.index_range(a, b, tol) {
                    Some((lo, hi)) => (lo..=hi).map(|k| Segment::point(l.point(k))).collect(),
                    None => Vec::new(),
                }
            }
        };
        if out.is_empty() {
            return Err(TimeScaleError::EmptyRestriction { a, b });
        }
        Ok(Self::from_segments_unchecked(out, tol))
    }

    /// `I_{≤a}` for a member `a`.
    pub fn truncate_below(&self, a: f64) -> Result<Self> {
        if !self.contains(a) {
            return Err(TimeScaleError::NotMember { t: a });
        }
        self.restrict(self.ini()?, a)
    }

    /// Continuous-time part `T_c(t) = Ini + |[Ini, t]_I|`.
    pub fn continuous_part(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Repr::Segments {
                segs, measure_before, ..
            } => {
                let k = self.locate(t).ok_or(TimeScaleError::NotMember { t })?;
                let s = &segs[k];
                let within = t.clamp(s.lo, s.hi) - s.lo;
                Ok(segs[0].lo + measure_before[k] + within)
            }
            Repr::Lattice(l) => {
                l.index_of(t, self.tol_t).ok_or(TimeScaleError::NotMember { t })?;
                Ok(l.start)
            }
        }
    }

    /// Discrete-time part `N_d(t) = Σ_{s ∈ R(I), s < t} (σ(s) − s)`.
    pub fn discrete_part(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Repr::Segments { gap_before, .. } => {
                let k = self.locate(t).ok_or(TimeScaleError::NotMember { t })?;
                Ok(gap_before[k])
            }
            Repr::Lattice(l) => {
                let k = l.index_of(t, self.tol_t).ok_or(TimeScaleError::NotMember { t })?;
                Ok(k as f64 * l.stride)
            }
        }
    }

    /// Whether `self` is a subinterval of `other`: `self ⊆ other` and
    /// `[s, t]_self = [s, t]_other` for all `s, t ∈ self`.
    pub fn is_subinterval_of(&self, other: &GeneralizedTimeScale) -> bool {
        let tol = self.tol_t.max(other.tol_t);
        if self.is_empty() {
            return true;
        }
        match (&self.repr, &other.repr) {
            (Repr::Lattice(j), Repr::Lattice(i)) => {
                other.contains(j.start) && (j.stride - i.stride).abs() <= tol
            }
            (Repr::Lattice(_), Repr::Segments { .. }) => false,
            (Repr::Segments { segs: js, .. }, Repr::Lattice(l)) => {
                let last = js[js.len() - 1];
                if last.is_unbounded() {
                    return false;
                }
                match other.restrict(js[0].lo - l.stride, last.hi + l.stride) {
                    Ok(window) => self.is_subinterval_of(&window),
                    Err(_) => false,
                }
            }
            (Repr::Segments { segs: js, .. }, Repr::Segments { segs: is, .. }) => {
                let mut hosts = Vec::with_capacity(js.len());
                for j in js {
                    let Some(p) = other.locate(j.lo) else {
                        return false;
                    };
                    let host = &is[p];
                    let covered = if j.is_unbounded() {
                        host.is_unbounded()
                    } else if host.is_unbounded() {
                        true
                    } else if j.closed_right {
                        j.hi <= host.hi + tol && (host.closed_right || j.hi < host.hi)
                    } else {
                        j.hi <= host.hi + tol
                    };
                    if !covered {
                        return false;
                    }
                    hosts.push(p);
                }
                js.windows(2).zip(hosts.windows(2)).all(|(jw, hw)| {
                    hw[1] == hw[0] + 1
                        && (jw[0].hi - is[hw[0]].hi).abs() <= tol
                        && (jw[1].lo - is[hw[1]].lo).abs() <= tol
                })
            }
        }
    }
}

/// Serialized form: `{"segments": [[lo, hi], ...], "tail": ..., "tol_t": ...}` or
/// `{"lattice": {"start": a, "stride": r}}`. An unbounded tail stores `null` as its `hi`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    segments: Option<Vec<(f64, Option<f64>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<TailKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<Lattice>,
    #[serde(default)]
    tol_t: Option<f64>,
}

impl From<GeneralizedTimeScale> for Wire {
    fn from(g: GeneralizedTimeScale) -> Self {
        let tail = g.tail();
        match g.repr {
            Repr::Lattice(l) => Wire {
                segments: None,
                tail: None,
                lattice: Some(l),
                tol_t: Some(g.tol_t),
            },
            Repr::Segments { segs, .. } => Wire {
                segments: Some(
                    segs.iter()
                        .map(|s| (s.lo, (!s.is_unbounded()).then_some(s.hi)))
                        .collect(),
                ),
                tail: Some(tail),
                lattice: None,
                tol_t: Some(g.tol_t),
            },
        }
    }
}

impl TryFrom<Wire> for GeneralizedTimeScale {
    type Error = TimeScaleError;

    fn try_from(w: Wire) -> Result<Self> {
        let tol = w.tol_t.unwrap_or(DEFAULT_TOL_T);
        match (w.segments, w.lattice) {
            (Some(_), Some(_)) => Err(TimeScaleError::Invalid(
                "both \"segments\" and \"lattice\" given".into(),
            )),
            (None, Some(l)) => Self::lattice_with_tol(l.start, l.stride, tol),
            (None, None) => Err(TimeScaleError::Invalid(
                "expected \"segments\" or \"lattice\"".into(),
            )),
            (Some(pairs), None) => {
                let tail = w.tail.unwrap_or(TailKind::Closed);
                let n = pairs.len();
                let mut segs = Vec::with_capacity(n);
                for (k, (lo, hi)) in pairs.into_iter().enumerate() {
                    let last = k + 1 == n;
                    let seg = match (hi, last, tail) {
                        (None, true, TailKind::Unbounded) => Segment::unbounded(lo),
                        (None, _, _) => {
                            return Err(TimeScaleError::Invalid(format!(
                                "segment {k}: null upper bound requires the final segment with an unbounded tail"
                            )))
                        }
                        (Some(_), true, TailKind::Unbounded) => {
                            return Err(TimeScaleError::Invalid(
                                "unbounded tail must store null as its upper bound".into(),
                            ))
                        }
                        (Some(hi), true, TailKind::HalfOpen) => Segment::half_open(lo, hi),
                        (Some(hi), _, _) => Segment::closed(lo, hi),
                    };
                    segs.push(seg);
                }
                Self::from_segments(segs, tol)
            }
        }
    }
}
