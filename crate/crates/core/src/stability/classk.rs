//! Class-K∞ functions with closed-form composition and inversion where possible.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassKError {
    #[error("power form needs a > 0 and b > 0, got a = {a}, b = {b}")]
    Power { a: f64, b: f64 },
    #[error("table form: {0}")]
    Table(String),
    #[error("cannot parse class-K∞ function {0:?}; expected identity, linear:c or power:a,b")]
    Parse(String),
}

/// A continuous, strictly increasing, unbounded function with value 0 at 0.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassKInf {
    /// `a·s^b`.
    Power { a: f64, b: f64 },
    /// Linear interpolation through `(xs, ys)` starting at `(0, 0)`, extended
    /// past the last knot with `slope`.
    Table { xs: Vec<f64>, ys: Vec<f64>, slope: f64 },
    /// `outer ∘ inner`.
    Compose(Box<ClassKInf>, Box<ClassKInf>),
}

impl ClassKInf {
    pub fn identity() -> Self {
        ClassKInf::Power { a: 1.0, b: 1.0 }
    }

    pub fn linear(c: f64) -> Result<Self, ClassKError> {
        Self::power(c, 1.0)
    }

    pub fn power(a: f64, b: f64) -> Result<Self, ClassKError> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(ClassKError::Power { a, b });
        }
        Ok(ClassKInf::Power { a, b })
    }

    pub fn table(xs: Vec<f64>, ys: Vec<f64>, slope: f64) -> Result<Self, ClassKError> {
        let bad = |m: &str| Err(ClassKError::Table(m.to_string()));
        if xs.len() != ys.len() || xs.len() < 2 {
            return bad("need at least two knots with matching lengths");
        }
        if xs[0] != 0.0 || ys[0] != 0.0 {
            return bad("first knot must be (0, 0)");
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) || ys.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("knots must be strictly increasing in both coordinates");
        }
        if !(slope > 0.0 && slope.is_finite()) {
            return bad("extrapolation slope must be positive");
        }
        Ok(ClassKInf::Table { xs, ys, slope })
    }

    pub fn eval(&self, s: f64) -> f64 {
        let s = s.max(0.0);
        match self {
            ClassKInf::Power { a, b } => {
                if *b == 1.0 {
                    a * s
                } else {
                    a * s.powf(*b)
                }
            }
            ClassKInf::Table { xs, ys, slope } => interp(xs, ys, *slope, s),
            ClassKInf::Compose(outer, inner) => outer.eval(inner.eval(s)),
        }
    }

    /// `f^{-1}(y)`.
    pub fn eval_inverse(&self, y: f64) -> f64 {
        let y = y.max(0.0);
        match self {
            ClassKInf::Power { a, b } => {
                if *b == 1.0 {
                    y / a
                } else {
                    (y / a).powf(1.0 / b)
                }
            }
            ClassKInf::Table { xs, ys, slope } => interp(ys, xs, 1.0 / slope, y),
            ClassKInf::Compose(outer, inner) => inner.eval_inverse(outer.eval_inverse(y)),
        }
    }

    pub fn inverse(&self) -> ClassKInf {
        match self {
            ClassKInf::Power { a, b } => ClassKInf::Power {
                a: a.powf(-1.0 / b),
                b: 1.0 / b,
            },
            ClassKInf::Table { xs, ys, slope } => ClassKInf::Table {
                xs: ys.clone(),
                ys: xs.clone(),
                slope: 1.0 / slope,
            },
            ClassKInf::Compose(outer, inner) => {
                ClassKInf::Compose(Box::new(inner.inverse()), Box::new(outer.inverse()))
            }
        }
    }

    /// `outer ∘ inner`, in closed form when both are powers.
    pub fn compose(outer: &ClassKInf, inner: &ClassKInf) -> ClassKInf {
        match (outer, inner) {
            (ClassKInf::Power { a: ao, b: bo }, ClassKInf::Power { a: ai, b: bi }) => ClassKInf::Power {
                a: ao * ai.powf(*bo),
                b: bo * bi,
            },
            _ => ClassKInf::Compose(Box::new(outer.clone()), Box::new(inner.clone())),
        }
    }
}

fn interp(xs: &[f64], ys: &[f64], slope: f64, s: f64) -> f64 {
    let n = xs.len();
    if s >= xs[n - 1] {
        return ys[n - 1] + slope * (s - xs[n - 1]);
    }
    let j = xs.partition_point(|&x| x <= s);
    let (x0, x1, y0, y1) = (xs[j - 1], xs[j], ys[j - 1], ys[j]);
    y0 + (y1 - y0) * (s - x0) / (x1 - x0)
}

impl fmt::Display for ClassKInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKInf::Power { a, b } if *a == 1.0 && *b == 1.0 => f.write_str("identity"),
            ClassKInf::Power { a, b } => write!(f, "power:{a},{b}"),
            ClassKInf::Table { xs, .. } => write!(f, "table[{} knots]", xs.len()),
            ClassKInf::Compose(o, i) => write!(f, "({o})∘({i})"),
        }
    }
}

impl FromStr for ClassKInf {
    type Err = ClassKError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ClassKError::Parse(s.to_string());
        let s = s.trim();
        if s == "identity" || s == "id" {
            return Ok(ClassKInf::identity());
        }
        let (kind, args) = s.split_once(':').ok_or_else(err)?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        match (kind, nums.as_slice()) {
            ("linear", [c]) => ClassKInf::linear(*c),
            ("power", [a, b]) => ClassKInf::power(*a, *b),
            _ => Err(err()),
        }
    }
}

impl Serialize for ClassKInf {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}
