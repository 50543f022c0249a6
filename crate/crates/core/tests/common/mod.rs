#![allow(dead_code)]

use hyts::{GeneralizedTimeScale, Segment, DEFAULT_TOL_T};
use rand::Rng;

/// Random segment-form scale with `1..=max_segs` segments; points, gaps
/// down to 1e-6 and every tail kind occur.
pub fn random_gts<R: Rng + ?Sized>(rng: &mut R, max_segs: usize) -> GeneralizedTimeScale {
    let n = rng.random_range(1..=max_segs);
    let mut t = rng.random_range(-5.0..5.0);
    let mut segs = Vec::with_capacity(n);
    for k in 0..n {
        let len = if rng.random_bool(0.25) { 0.0 } else { rng.random_range(0.0..3.0) };
        let last = k + 1 == n;
        let seg = match (last, rng.random_range(0..3)) {
            (true, 0) if len > 0.0 => Segment::half_open(t, t + len),
            (true, 1) => Segment::unbounded(t),
            _ => Segment::closed(t, t + len),
        };
        segs.push(seg);
        let gap = if rng.random_bool(0.3) { 10f64.powf(rng.random_range(-6.0..0.0)) } else { rng.random_range(0.0..4.0) + 1e-6 };
        t += len + gap;
    }
    GeneralizedTimeScale::from_segments(segs, DEFAULT_TOL_T).expect("generator respects the invariants")
}

/// Uniformly chosen segment, then a uniform point in it (exponential on an unbounded tail).
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, segs: &[Segment]) -> (usize, f64) {
    let k = rng.random_range(0..segs.len());
    let s = segs[k];
    let t = if s.is_unbounded() {
        s.lo - 10.0 * rng.random_range(f64::MIN_POSITIVE..1.0f64).ln()
    } else if s.is_point() {
        s.lo
    } else if s.closed_right {
        rng.random_range(s.lo..=s.hi)
    } else {
        rng.random_range(s.lo..s.hi)
    };
    (k, t)
}

/// `(T_c, N_d)` from first principles: lengths and gaps summed in order.
pub fn oracle_parts(segs: &[Segment], k: usize, t: f64) -> (f64, f64) {
    let mut tc = segs[0].lo;
    let mut nd = 0.0;
    for j in 0..k {
        tc += segs[j].hi - segs[j].lo;
        nd += segs[j + 1].lo - segs[j].hi;
    }
    (tc + (t - segs[k].lo), nd)
}
