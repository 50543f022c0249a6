use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use hyts::domains::random_in_h;
use hyts::scenarios;
use hyts::{to_htd, GeneralizedTimeScale, HybridTimeDomain};
use serde_json::{json, Value};

use crate::{usage, write_json, Status};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    HtdToGts,
    GtsToHtd,
}

#[derive(Args)]
pub struct ConvertArgs {
    direction: Direction,
    /// JSON file holding the object to convert.
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Convert back and verify that the original is recovered.
    #[arg(long)]
    roundtrip: bool,
    /// Round-trip this many random domains instead of reading `--input`.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const BREAKPOINT_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= BREAKPOINT_TOL
}

fn same_htd(a: &HybridTimeDomain, b: &HybridTimeDomain) -> bool {
    a.tail() == b.tail()
        && a.pieces().len() == b.pieces().len()
        && a.pieces().iter().zip(b.pieces()).all(|(p, q)| p.j == q.j && close(p.lo, q.lo) && close(p.hi, q.hi))
}

fn same_gts(a: &GeneralizedTimeScale, b: &GeneralizedTimeScale) -> bool {
    match (a.segments(), b.segments()) {
        (Some(x), Some(y)) => {
            x.len() == y.len()
                && x.iter()
                    .zip(y)
                    .all(|(s, t)| s.closed_right == t.closed_right && close(s.lo, t.lo) && close(s.hi, t.hi))
        }
        _ => a == b,
    }
}

/// Converts one value; the flag reports whether the round trip held.
fn convert_one(dir: Direction, input: &str) -> Result<(Value, Option<bool>)> {
    match dir {
        Direction::HtdToGts => {
            let htd: HybridTimeDomain =
                serde_json::from_str(input).map_err(|e| usage(format!("input is not a hybrid time domain: {e}")))?;
            let gts = htd.to_gts()?;
            let ok = to_htd(&gts).map(|back| same_htd(&htd, &back)).unwrap_or(false);
            Ok((serde_json::to_value(&gts)?, Some(ok)))
        }
        Direction::GtsToHtd => {
            let gts: GeneralizedTimeScale =
                serde_json::from_str(input).map_err(|e| usage(format!("input is not a time scale: {e}")))?;
            let htd = to_htd(&gts)?;
            let ok = htd.to_gts().map(|back| same_gts(&gts, &back)).unwrap_or(false);
            Ok((serde_json::to_value(&htd)?, Some(ok)))
        }
    }
}

pub fn run(args: &ConvertArgs) -> Result<Status> {
    let (doc, ok) = if let Some(n) = args.random {
        let mut rng = scenarios::rng(args.seed);
        let mut failures = Vec::new();
        for k in 0..n {
            let text = match args.direction {
                Direction::HtdToGts => serde_json::to_string(&HybridTimeDomain::random(&mut rng, 20))?,
                Direction::GtsToHtd => serde_json::to_string(&random_in_h(&mut rng, 20))?,
            };
            if convert_one(args.direction, &text)?.1 != Some(true) {
                failures.push(k);
            }
        }
        let ok = failures.is_empty();
        (json!({ "seed": args.seed, "checked": n, "failures": failures }), ok)
    } else {
        let path = args.input.as_ref().expect("clap enforces --input");
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let (value, round) = convert_one(args.direction, &text)?;
        let ok = !args.roundtrip || round == Some(true);
        if args.roundtrip && !ok {
            eprintln!("round trip did not recover the input");
        }
        (value, ok)
    };
    match &args.out {
        Some(path) => write_json(path, &doc)?,
        None => crate::print_json(&doc)?,
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}
