//! `--config` / `--param` handling.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::usage;

/// Scenario parameters as strings; `--param` entries override the config file.
#[derive(Debug, Default)]
pub struct Params {
    map: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

fn flatten(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Array(xs) => xs.iter().map(flatten).collect::<Option<Vec<_>>>().map(|p| p.join(",")),
        _ => None,
    }
}

impl Params {
    pub fn load(config: Option<&Path>, pairs: &[String]) -> Result<Self> {
        let mut map = BTreeMap::new();
        if let Some(path) = config {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let json: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let obj = json
                .as_object()
                .ok_or_else(|| usage(format!("{}: expected a JSON object", path.display())))?;
            for (k, v) in obj {
                let s = flatten(v).ok_or_else(|| usage(format!("{}: unsupported value for {k}", path.display())))?;
                map.insert(k.clone(), s);
            }
        }
        for p in pairs {
            let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("--param {p:?} is not of the form key=value")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params { map, used: RefCell::default() })
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_string());
        self.map.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T> {
        match self.raw(key) {
            Some(s) => s.parse().map_err(|_| usage(format!("parameter {key} = {s:?} is not valid"))),
            None => default.ok_or_else(|| usage(format!("missing required parameter {key}"))),
        }
    }

    pub fn f64(&self, key: &str, default: Option<f64>) -> Result<f64> {
        self.parsed(key, default)
    }

    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            Some(_) => self.f64(key, None).map(Some),
            None => Ok(None),
        }
    }

    pub fn usize(&self, key: &str, default: Option<usize>) -> Result<usize> {
        self.parsed(key, default)
    }

    pub fn bool(&self, key: &str, default: bool) -> Result<bool> {
        self.parsed(key, Some(default))
    }

    pub fn vec2(&self, key: &str) -> Result<Option<[f64; 2]>> {
        let Some(s) = self.raw(key) else {
            return Ok(None);
        };
        let bad = || usage(format!("parameter {key} = {s:?} must be two comma-separated numbers"));
        let xs: Vec<f64> = s.split(',').map(|v| v.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        match xs[..] {
            [a, b] => Ok(Some([a, b])),
            _ => Err(bad()),
        }
    }

    pub fn require_vec2(&self, key: &str) -> Result<[f64; 2]> {
        self.vec2(key)?.ok_or_else(|| usage(format!("missing required parameter {key}")))
    }

    /// Rejects keys the scenario never asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.map.keys().find(|k| !used.contains(*k)) {
            Some(k) => Err(usage(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}
