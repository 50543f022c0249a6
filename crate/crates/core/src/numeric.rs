//! Small floating-point helpers shared across modules.

/// Neumaier (improved Kahan) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Partial sums `S_n = r + r^2 + ... + r^n` for `n = 0..=count` (so `S_0 = 0`).
pub fn geometric_partial_sums(r: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    let mut acc = CompensatedSum::new();
    out.push(0.0);
    for m in 1..=count {
        acc.add(r.powi(m as i32));
        out.push(acc.value());
    }
    out
}

/// Euclidean norm.
pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Euclidean distance between two equally sized vectors.
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Absolute plus relative slack used by the inequality checkers.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Slack {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Slack {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Slack {
    pub const ZERO: Slack = Slack { abs: 0.0, rel: 0.0 };

    /// Allowed excess over `bound`.
    pub fn of(&self, bound: f64) -> f64 {
        self.abs + self.rel * bound.abs()
    }

    /// `lhs <= rhs` up to slack.
    pub fn le(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.of(rhs)
    }
}
