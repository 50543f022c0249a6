//! Signals on generalized time scales: lookup, gap extension, delta
//! derivatives, pseudo distances and the trace CSV format.

use std::fmt;
use std::io::{Read, Write};
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::norm;
use crate::timescale::{GeneralizedTimeScale, Segment, TailKind, TimeScaleError};

#[derive(Debug, Error)]
pub enum SignalError {
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error("t = {t} is not in the signal's domain")]
    NotInDomain { t: f64 },
    #[error("t = {t} lies beyond the last stored sample of its segment")]
    BeyondSamples { t: f64 },
    #[error("no neighbouring sample to form a derivative at t = {t}")]
    NoForwardInformation { t: f64 },
    #[error("invalid signal: {0}")]
    Invalid(String),
    #[error("distance map returned {value} at t = {t}")]
    BadDistance { t: f64, value: f64 },
    #[error("signal domain is unbounded")]
    Unbounded,
    #[error("trace csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("trace csv: {0}")]
    Format(String),
}

type Result<T> = std::result::Result<T, SignalError>;

/// A vector-valued function sampled on a segment-form generalized time scale.
///
/// Samples are grouped by segment; every bounded segment is sampled at both
/// of its endpoints, so every right-scattered point `t` and its image `σ(t)`
/// carry their own values.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    dom: GeneralizedTimeScale,
    dim: usize,
    /// `seg_start[k]..seg_start[k+1]` indexes the samples of segment `k`.
    seg_start: Vec<usize>,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl Signal {
    pub fn from_samples(dom: GeneralizedTimeScale, times: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(SignalError::Invalid(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        let dim = values.first().map_or(0, Vec::len);
        if let Some(bad) = values.iter().position(|v| v.len() != dim) {
            return Err(SignalError::Invalid(format!(
                "sample {bad} has dimension {} instead of {dim}",
                values[bad].len()
            )));
        }
        Self::from_flat(dom, dim, times, values.concat())
    }

    /// Builds a signal from row-major values (`times.len() * dim` entries).
    pub fn from_flat(dom: GeneralizedTimeScale, dim: usize, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let segs = dom
            .segments()
            .ok_or_else(|| SignalError::Invalid("lattice domains must be restricted to a window first".into()))?;
        if segs.is_empty() || times.is_empty() {
            return Err(SignalError::Invalid("signal needs a non-empty domain and samples".into()));
        }
        if dim == 0 || values.len() != times.len() * dim {
            return Err(SignalError::Invalid(format!(
                "expected {} values for {} samples of dimension {dim}",
                times.len() * dim.max(1),
                times.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SignalError::Invalid(format!("non-finite value at sample {}", i / dim)));
        }
        if let Some(i) = (1..times.len()).find(|&i| !(times[i] > times[i - 1])) {
            return Err(SignalError::Invalid(format!(
                "sample times not strictly increasing at index {i} ({} after {})",
                times[i],
                times[i - 1]
            )));
        }
        let tol = dom.tol();
        let mut seg_start = Vec::with_capacity(segs.len() + 1);
        let mut i = 0;
        for (k, s) in segs.iter().enumerate() {
            seg_start.push(i);
            while i < times.len() && dom.locate(times[i]) == Some(k) {
                i += 1;
            }
            let grid = &times[seg_start[k]..i];
            let (Some(&first), Some(&last)) = (grid.first(), grid.last()) else {
                return Err(SignalError::Invalid(format!("segment {k} carries no samples")));
            };
            if (first - s.lo).abs() > tol {
                return Err(SignalError::Invalid(format!(
                    "segment {k} must be sampled at its left end {}",
                    s.lo
                )));
            }
            if s.closed_right && (last - s.hi).abs() > tol {
                return Err(SignalError::Invalid(format!(
                    "segment {k} must be sampled at its right end {}",
                    s.hi
                )));
            }
        }
        if i != times.len() {
            return Err(SignalError::NotInDomain { t: times[i] });
        }
        seg_start.push(i);
        Ok(Signal {
            dom,
            dim,
            seg_start,
            times,
            values,
        })
    }

    pub fn dom(&self) -> &GeneralizedTimeScale {
        &self.dom
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// First coordinate of sample `i`; the natural accessor for scalar signals.
    pub fn scalar(&self, i: usize) -> f64 {
        self.values[i * self.dim]
    }

    pub fn last_value(&self) -> &[f64] {
        self.value(self.len() - 1)
    }

    pub fn segment_count(&self) -> usize {
        self.seg_start.len() - 1
    }

    /// Sample indices of segment `k`.
    pub fn segment_range(&self, k: usize) -> Range<usize> {
        self.seg_start[k]..self.seg_start[k + 1]
    }

    /// Segment holding sample `i`.
    pub fn segment_of(&self, i: usize) -> usize {
        self.seg_start.partition_point(|&s| s <= i) - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> + '_ {
        self.times.iter().copied().zip(self.values.chunks_exact(self.dim))
    }

    /// `(T_c(t), N_d(t))` of sample `i`.
    pub fn time_parts(&self, i: usize) -> (f64, f64) {
        let t = self.times[i];
        let k = self.segment_of(i);
        let seg = self.dom.segments().expect("segment form")[k];
        let tc = self.dom.continuous_part(seg.lo).expect("segment start is a member") + (t - seg.lo);
        let td = self.dom.discrete_part(seg.lo).expect("segment start is a member");
        (tc, td)
    }

    /// Value at `t`: the stored sample on a grid hit, else linear
    /// interpolation inside the enclosing segment.
    pub fn sample(&self, t: f64) -> Result<Vec<f64>> {
        let k = self.dom.locate(t).ok_or(SignalError::NotInDomain { t })?;
        let range = self.segment_range(k);
        let grid = &self.times[range.clone()];
        let tol = self.dom.tol();
        let j = grid.partition_point(|&s| s < t);
        for cand in [j.wrapping_sub(1), j] {
            if cand < grid.len() && (grid[cand] - t).abs() <= tol {
                return Ok(self.value(range.start + cand).to_vec());
            }
        }
        if j == 0 || j == grid.len() {
            return Err(SignalError::BeyondSamples { t });
        }
        let (i0, i1) = (range.start + j - 1, range.start + j);
        let w = (t - self.times[i0]) / (self.times[i1] - self.times[i0]);
        Ok(self
            .value(i0)
            .iter()
            .zip(self.value(i1))
            .map(|(a, b)| a + w * (b - a))
            .collect())
    }

    /// Piecewise-linear extension across every gap `(s, σ(s))`, returned on
    /// the single segment `[Ini, last sample]`.
    pub fn extend(&self) -> Result<Signal> {
        if self.dom.tail() == TailKind::Unbounded {
            return Err(SignalError::Unbounded);
        }
        let lo = self.times[0];
        let hi = *self.times.last().expect("non-empty");
        let dom = GeneralizedTimeScale::from_segments(vec![Segment::closed(lo, hi)], self.dom.tol())?;
        Signal::from_flat(dom, self.dim, self.times.clone(), self.values.clone())
    }

    /// Index of the grid point within `tol_t` of `t`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let tol = self.dom.tol();
        let j = self.times.partition_point(|&s| s < t - tol);
        (j < self.times.len() && (self.times[j] - t).abs() <= tol).then_some(j)
    }

    /// Delta derivative at grid point `i`.
    pub fn delta_derivative_at(&self, i: usize) -> Result<Vec<f64>> {
        let t = self.times[i];
        let k = self.segment_of(i);
        let range = self.segment_range(k);
        let (a, b) = if i + 1 < range.end {
            (i, i + 1)
        } else if k + 1 < self.segment_count() {
            // right-scattered: exact weighted difference across the gap
            (i, i + 1)
        } else if i > range.start {
            (i - 1, i)
        } else {
            return Err(SignalError::NoForwardInformation { t });
        };
        Ok(self.quotient(a, b))
    }

    /// Delta derivative at any member `t`.
    pub fn delta_derivative(&self, t: f64) -> Result<Vec<f64>> {
        let k = self.dom.locate(t).ok_or(SignalError::NotInDomain { t })?;
        let range = self.segment_range(k);
        let tol = self.dom.tol();
        if let Some(i) = range.clone().find(|&i| (self.times[i] - t).abs() <= tol) {
            return self.delta_derivative_at(i);
        }
        let j = range.start + self.times[range.clone()].partition_point(|&s| s < t);
        if j == range.start || j == range.end {
            return Err(SignalError::BeyondSamples { t });
        }
        Ok(self.quotient(j - 1, j))
    }

    fn quotient(&self, a: usize, b: usize) -> Vec<f64> {
        let h = self.times[b] - self.times[a];
        self.value(a)
            .iter()
            .zip(self.value(b))
            .map(|(x, y)| (y - x) / h)
            .collect()
    }

    /// Same domain and grid, values mapped pointwise.
    pub fn map_values(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Signal> {
        let mut out = Vec::with_capacity(self.len());
        let mut dim = None;
        for (_, x) in self.iter() {
            let y = f(x);
            if *dim.get_or_insert(y.len()) != y.len() {
                return Err(SignalError::Invalid("mapped values change dimension".into()));
            }
            out.extend(y);
        }
        Signal::from_flat(self.dom.clone(), dim.unwrap_or(0), self.times.clone(), out)
    }

    /// Scalar signal `d(x(t))` on the same domain and grid.
    pub fn pseudo_distance(&self, d: &Distance) -> Result<Signal> {
        let mut out = Vec::with_capacity(self.len());
        for (t, x) in self.iter() {
            let v = d.eval(x);
            if !(v >= 0.0) || !v.is_finite() {
                return Err(SignalError::BadDistance { t, value: v });
            }
            out.push(v);
        }
        Signal::from_flat(self.dom.clone(), 1, self.times.clone(), out)
    }

    /// The signal on `[a, b]_dom`; samples are interpolated where the window cuts a segment.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Signal> {
        let dom = self.dom.restrict(a, b)?;
        let tol = dom.tol();
        let mut times = Vec::new();
        let mut values = Vec::new();
        for s in dom.segments().expect("segment form") {
            let mut push = |t: f64, v: Vec<f64>| {
                times.push(t);
                values.extend(v);
            };
            push(s.lo, self.sample(s.lo)?);
            let k = self.dom.locate(s.lo).expect("restriction stays inside the domain");
            for i in self.segment_range(k) {
                let t = self.times[i];
                if t > s.lo + tol && (t < s.hi - tol || (!s.closed_right && t < s.hi)) {
                    push(t, self.value(i).to_vec());
                }
            }
            if s.closed_right && s.hi > s.lo {
                push(s.hi, self.sample(s.hi)?);
            }
        }
        Signal::from_flat(dom, self.dim, times, values)
    }

    /// Writes the trace CSV: `t,t_c,t_d,x0,...`.
    pub fn write_trace_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let mut header = vec!["t".to_string(), "t_c".into(), "t_d".into()];
        header.extend((0..self.dim).map(|j| format!("x{j}")));
        wr.write_record(&header)?;
        let mut row = Vec::with_capacity(3 + self.dim);
        for i in 0..self.len() {
            let (tc, td) = self.time_parts(i);
            row.clear();
            row.push(self.times[i].to_string());
            row.push(tc.to_string());
            row.push(td.to_string());
            row.extend(self.value(i).iter().map(f64::to_string));
            wr.write_record(&row)?;
        }
        wr.flush().map_err(|e| SignalError::Format(e.to_string()))?;
        Ok(())
    }

    /// Reads a trace CSV back. Segments are recovered from jumps in `t_d`;
    /// the tail is taken as closed.
    pub fn read_trace_csv<R: Read>(r: R) -> Result<Signal> {
        let mut rd = csv::Reader::from_reader(r);
        let header = rd.headers()?.clone();
        if header.len() < 4 || &header[0] != "t" || &header[1] != "t_c" || &header[2] != "t_d" {
            return Err(SignalError::Format("expected header t,t_c,t_d,x0,...".into()));
        }
        let dim = header.len() - 3;
        let mut times = Vec::new();
        let mut tds = Vec::new();
        let mut values = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let parse = |j: usize| -> Result<f64> {
                rec[j]
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| SignalError::Format(format!("line {:?}: {e}", rec.position().map(|p| p.line()))))
            };
            times.push(parse(0)?);
            tds.push(parse(2)?);
            for j in 3..3 + dim {
                values.push(parse(j)?);
            }
        }
        if times.is_empty() {
            return Err(SignalError::Format("trace has no rows".into()));
        }
        let mut segs = Vec::new();
        let mut lo = times[0];
        for i in 1..times.len() {
            if tds[i] > tds[i - 1] {
                segs.push(Segment::closed(lo, times[i - 1]));
                lo = times[i];
            }
        }
        segs.push(Segment::closed(lo, *times.last().expect("non-empty")));
        let dom = GeneralizedTimeScale::from_segments(segs, crate::timescale::DEFAULT_TOL_T)?;
        Signal::from_flat(dom, dim, times, values)
    }
}

pub type PointDistance = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Pointwise distance maps used to build pseudo distance measures.
#[derive(Clone)]
pub enum Distance {
    /// `‖x‖`.
    Euclidean,
    /// Distance to the set where the listed coordinates vanish.
    ToZeroCoords(Vec<usize>),
    Custom(PointDistance),
}

impl Distance {
    pub fn custom(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Distance::Custom(Arc::new(f))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Distance::Euclidean => norm(x),
            Distance::ToZeroCoords(idx) => idx.iter().map(|&j| x[j] * x[j]).sum::<f64>().sqrt(),
            Distance::Custom(f) => f(x),
        }
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Euclidean => f.write_str("Euclidean"),
            Distance::ToZeroCoords(idx) => f.debug_tuple("ToZeroCoords").field(idx).finish(),
            Distance::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// One instant of a real-time projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealTimeEntry {
    pub s: f64,
    pub values: Vec<Vec<f64>>,
}

/// Set-valued function of real time obtained by collapsing gaps.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealTimeTrace {
    pub entries: Vec<RealTimeEntry>,
}

impl RealTimeTrace {
    /// Entry whose `s` lies within `tol` of the query.
    pub fn at(&self, s: f64, tol: f64) -> Option<&RealTimeEntry> {
        let j = self.entries.partition_point(|e| e.s < s - tol);
        self.entries.get(j).filter(|e| (e.s - s).abs() <= tol)
    }
}
