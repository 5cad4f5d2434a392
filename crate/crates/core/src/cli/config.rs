//! Run configuration: a single flat JSON document.
//!
//! ```json
//! {
//!   "mass": 1.0, "omega": 1.0, "hbar": 1.0,
//!   "kT": 0.0,
//!   "d": 6.0,
//!   "grid": { "q_min": -10, "q_max": 10, "n_q": 512, "p_min": -10, "p_max": 10, "n_p": 512 },
//!   "times": { "start": 0.0, "stop": 3.14159, "count": 16 },
//!   "output_dir": "out",
//!   "format": "csv"
//! }
//! ```
//!
//! Exactly one of `kT` and `nbar` must be present. `mass`, `omega` and `hbar`
//! default to 1, `times` to `[0]`; `grid` defaults to the oracle sizing rule.
//! Unknown keys are rejected.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::oracle::GridSpec;
use crate::{CatConfig, Temperature, ThermalOscillator};

const KEYS: &[&str] = &[
    "mass",
    "omega",
    "hbar",
    "kT",
    "nbar",
    "d",
    "grid",
    "times",
    "output_dir",
    "format",
];
const GRID_KEYS: &[&str] = &["q_min", "q_max", "n_q", "p_min", "p_max", "n_p"];
const TIME_KEYS: &[&str] = &["start", "stop", "count"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub cat: CatConfig,
    pub grid: Option<GridSpec>,
    pub times: Vec<f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// The configured grid, or the default sizing for this cat.
    pub fn grid(&self) -> GridSpec {
        self.grid.unwrap_or_else(|| GridSpec::for_cat(&self.cat))
    }
}

/// Every offending key with the reason it was rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub problems: Vec<(String, String)>,
}

impl ConfigError {
    fn single(key: &str, reason: impl Into<String>) -> Self {
        Self {
            problems: vec![(key.to_owned(), reason.into())],
        }
    }

    pub fn keys(&self) -> Vec<&str> {
        self.problems.iter().map(|(k, _)| k.as_str()).collect()
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config:")?;
        for (key, reason) in &self.problems {
            write!(f, "\n  {key}: {reason}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

#[derive(Default)]
struct Problems(Vec<(String, String)>);

impl Problems {
    fn push(&mut self, key: &str, reason: impl Into<String>) {
        self.0.push((key.to_owned(), reason.into()));
    }

    fn unknown_keys(&mut self, prefix: &str, map: &Map<String, Value>, allowed: &[&str]) {
        for key in map.keys().filter(|k| !allowed.contains(&k.as_str())) {
            self.push(&format!("{prefix}{key}"), "unknown key");
        }
    }

    fn number(&mut self, key: &str, value: Option<&Value>) -> Option<f64> {
        match value? {
            Value::Number(n) => match n.as_f64() {
                Some(x) if x.is_finite() => Some(x),
                _ => {
                    self.push(key, "must be a finite number");
                    None
                }
            },
            _ => {
                self.push(key, "must be a number");
                None
            }
        }
    }

    fn count(&mut self, key: &str, value: Option<&Value>) -> Option<usize> {
        match value?.as_u64() {
            Some(n) => Some(n as usize),
            None => {
                self.push(key, "must be a non-negative integer");
                None
            }
        }
    }

    fn required<T>(&mut self, key: &str, value: Option<T>, present: bool) -> Option<T> {
        if !present {
            self.push(key, "missing");
        }
        value
    }
}

pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        ConfigError::single("config", format!("cannot read {}: {e}", path.display()))
    })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| ConfigError::single("config", format!("not valid JSON: {e}")))?;
    let Value::Object(map) = doc else {
        return Err(ConfigError::single(
            "config",
            "top level must be a JSON object",
        ));
    };
    let mut problems = Problems::default();
    problems.unknown_keys("", &map, KEYS);

    let mass = problems.number("mass", map.get("mass")).unwrap_or(1.0);
    let omega = problems.number("omega", map.get("omega")).unwrap_or(1.0);
    let hbar = problems.number("hbar", map.get("hbar")).unwrap_or(1.0);
    for (key, value) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
        if value <= 0.0 {
            problems.push(key, "must be positive");
        }
    }

    let kt = problems.number("kT", map.get("kT"));
    let nbar = problems.number("nbar", map.get("nbar"));
    let temperature = match (map.contains_key("kT"), map.contains_key("nbar")) {
        (true, true) => {
            problems.push("kT", "give exactly one of kT and nbar");
            problems.push("nbar", "give exactly one of kT and nbar");
            None
        }
        (false, false) => {
            problems.push("kT", "missing (or give nbar)");
            None
        }
        (true, false) => kt.map(Temperature::Energy),
        (false, true) => nbar.map(Temperature::Occupation),
    };
    match temperature {
        Some(Temperature::Energy(x)) if x < 0.0 => problems.push("kT", "must be non-negative"),
        Some(Temperature::Occupation(x)) if x < 0.0 => {
            problems.push("nbar", "must be non-negative")
        }
        _ => {}
    }

    let d = problems.number("d", map.get("d"));
    let d = problems.required("d", d, map.contains_key("d"));
    if matches!(d, Some(x) if x < 0.0) {
        problems.push("d", "must be non-negative");
    }

    let grid = map.get("grid").and_then(|v| parse_grid(&mut problems, v));
    let times = match map.get("times") {
        None => Some(vec![0.0]),
        Some(v) => parse_times(&mut problems, v),
    };

    let output_dir = match map.get("output_dir") {
        None => None,
        Some(Value::String(s)) if !s.is_empty() => Some(PathBuf::from(s)),
        Some(_) => {
            problems.push("output_dir", "must be a non-empty string");
            None
        }
    };
    let format = match map.get("format") {
        None => Format::Csv,
        Some(Value::String(s)) if s == "csv" => Format::Csv,
        Some(Value::String(s)) if s == "json" => Format::Json,
        Some(_) => {
            problems.push("format", "must be \"csv\" or \"json\"");
            Format::Csv
        }
    };

    if !problems.0.is_empty() {
        return Err(ConfigError {
            problems: problems.0,
        });
    }
    let build = || -> Result<CatConfig, ConfigError> {
        let env = ThermalOscillator::new(mass, omega, hbar, temperature.expect("checked"))
            .map_err(|e| ConfigError::single("env", e.to_string()))?;
        CatConfig::new(env, d.expect("checked"))
            .map_err(|e| ConfigError::single("d", e.to_string()))
    };
    Ok(RunConfig {
        cat: build()?,
        grid,
        times: times.expect("checked"),
        output_dir,
        format,
    })
}

fn parse_grid(problems: &mut Problems, value: &Value) -> Option<GridSpec> {
    let Value::Object(map) = value else {
        problems.push("grid", "must be an object");
        return None;
    };
    let before = problems.0.len();
    problems.unknown_keys("grid.", map, GRID_KEYS);
    let mut num = |key: &str| {
        let full = format!("grid.{key}");
        let v = problems.number(&full, map.get(key));
        problems.required(&full, v, map.contains_key(key))
    };
    let (q_min, q_max, p_min, p_max) = (num("q_min"), num("q_max"), num("p_min"), num("p_max"));
    let mut count = |key: &str| {
        let full = format!("grid.{key}");
        let v = problems.count(&full, map.get(key));
        problems.required(&full, v, map.contains_key(key))
    };
    let (n_q, n_p) = (count("n_q"), count("n_p"));
    if problems.0.len() > before {
        return None;
    }
    match GridSpec::new(q_min?, q_max?, n_q?, p_min?, p_max?, n_p?) {
        Ok(spec) => Some(spec),
        Err(e) => {
            problems.push("grid", e.to_string());
            None
        }
    }
}

fn parse_times(problems: &mut Problems, value: &Value) -> Option<Vec<f64>> {
    match value {
        Value::Array(items) => {
            if items.is_empty() {
                problems.push("times", "must not be empty");
                return None;
            }
            let parsed: Vec<Option<f64>> = items
                .iter()
                .enumerate()
                .map(|(i, v)| problems.number(&format!("times[{i}]"), Some(v)))
                .collect();
            parsed.into_iter().collect()
        }
        Value::Object(map) => {
            let before = problems.0.len();
            problems.unknown_keys("times.", map, TIME_KEYS);
            let start = problems.number("times.start", map.get("start"));
            let start = problems.required("times.start", start, map.contains_key("start"));
            let stop = problems.number("times.stop", map.get("stop"));
            let stop = problems.required("times.stop", stop, map.contains_key("stop"));
            let count = problems.count("times.count", map.get("count"));
            let count = problems.required("times.count", count, map.contains_key("count"));
            if count == Some(0) {
                problems.push("times.count", "must be at least 1");
            }
            if problems.0.len() > before {
                return None;
            }
            Some(linspace(start?, stop?, count?))
        }
        _ => {
            problems.push("times", "must be a list or {start, stop, count}");
            None
        }
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let h = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| start + i as f64 * h).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let cfg = parse(r#"{"kT": 0, "d": 6}"#).unwrap();
        assert_eq!(cfg.cat.d(), 6.0);
        assert_eq!(cfg.times, vec![0.0]);
        assert_eq!(cfg.format, Format::Csv);
        assert!(cfg.grid.is_none());
        assert_eq!(cfg.cat.env().mass(), 1.0);
    }

    #[test]
    fn full_config() {
        let cfg = parse(
            r#"{"mass": 2, "omega": 0.5, "hbar": 1, "nbar": 1.5, "d": 3,
                "grid": {"q_min": -5, "q_max": 5, "n_q": 64, "p_min": -4, "p_max": 4, "n_p": 32},
                "times": {"start": 0, "stop": 1, "count": 5},
                "output_dir": "runs/a", "format": "json"}"#,
        )
        .unwrap();
        assert_eq!(cfg.cat.env().nbar(), 1.5);
        assert_eq!(cfg.grid.unwrap().n_q(), 64);
        assert_eq!(cfg.times, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.output_dir, Some(PathBuf::from("runs/a")));
    }

    #[test]
    fn lists_every_offending_key() {
        let err =
            parse(r#"{"kT": 1, "nbar": 2, "d": -1, "mas": 1, "grid": {"n_q": 15}}"#).unwrap_err();
        let keys = err.keys();
        for key in ["kT", "nbar", "d", "mas", "grid.q_min", "grid.n_p"] {
            assert!(keys.contains(&key), "{key} missing from {keys:?}");
        }
    }

    #[test]
    fn missing_temperature_and_separation() {
        let err = parse("{}").unwrap_err();
        assert_eq!(err.keys(), vec!["kT", "d"]);
    }

    #[test]
    fn bad_times() {
        assert!(parse(r#"{"kT": 0, "d": 1, "times": []}"#).is_err());
        assert!(
            parse(r#"{"kT": 0, "d": 1, "times": {"start": 0, "stop": 1, "count": 0}}"#).is_err()
        );
        assert!(parse(r#"{"kT": 0, "d": 1, "times": [0, "x"]}"#).is_err());
        let one =
            parse(r#"{"kT": 0, "d": 1, "times": {"start": 2, "stop": 9, "count": 1}}"#).unwrap();
        assert_eq!(one.times, vec![2.0]);
    }

    #[test]
    fn invalid_grid_values() {
        let err = parse(
            r#"{"kT": 0, "d": 1, "grid": {"q_min": 1, "q_max": -1, "n_q": 64, "p_min": -1, "p_max": 1, "n_p": 64}}"#,
        )
        .unwrap_err();
        assert_eq!(err.keys(), vec!["grid"]);
    }

    #[test]
    fn not_json() {
        assert_eq!(parse("kT = 0").unwrap_err().keys(), vec!["config"]);
        assert_eq!(parse("[1, 2]").unwrap_err().keys(), vec!["config"]);
    }
}
