//! Key=value configuration files.
//!
//! One assignment per line, `#` starts a comment, keys mirror the CLI flag
//! names. Unknown keys are rejected with a diagnostic listing the valid ones.

use spinlock_core::sweep::{Axis, AxisParam, Observable, SchemeChoice, SweepSpec};

/// Parsed assignments in file order.
pub struct KeyValues {
    entries: Vec<(String, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!("line {}: expected 'key = value', got '{line}'", lineno + 1)
            })?;
            entries.push((key.trim().to_string(), value.trim().to_string()));
        }
        Ok(Self { entries })
    }

    /// Last assignment wins, matching how CLI flags override earlier values.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Rejects keys outside the allowed set (`axis.<param>` keys are matched
    /// by the `axis.` prefix when listed).
    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<(), String> {
        for (key, _) in self.entries() {
            let ok = allowed.iter().any(|&a| {
                if a == "axis." {
                    key.starts_with("axis.")
                } else {
                    a == key
                }
            });
            if !ok {
                return Err(format!(
                    "unknown key '{key}'; valid keys: {}",
                    allowed.join(", ")
                ));
            }
        }
        Ok(())
    }
}

pub fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|_| format!("key '{key}': expected a number, got '{value}'"))
}

pub fn parse_u64(key: &str, value: &str) -> Result<u64, String> {
    value
        .parse::<u64>()
        .map_err(|_| format!("key '{key}': expected a non-negative integer, got '{value}'"))
}

pub fn parse_observables(value: &str) -> Result<Vec<Observable>, String> {
    let mut out = Vec::new();
    for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let obs = Observable::from_name(name).ok_or_else(|| {
            format!(
                "unknown observable '{name}'; valid observables: {}",
                Observable::ALL.map(|o| o.name()).join(", ")
            )
        })?;
        if !out.contains(&obs) {
            out.push(obs);
        }
    }
    if out.is_empty() {
        return Err("observable list is empty".into());
    }
    Ok(out)
}

/// Axis value syntax: an explicit comma list, `linspace:start:stop:count`,
/// or `range:start:stop[:step]` for integers.
pub fn parse_axis(param: AxisParam, value: &str) -> Result<Axis<f64>, String> {
    if let Some(rest) = value.strip_prefix("linspace:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(format!(
                "axis.{}: linspace needs start:stop:count, got '{value}'",
                param.name()
            ));
        }
        let start = parse_f64("linspace start", parts[0])?;
        let stop = parse_f64("linspace stop", parts[1])?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("axis.{}: bad linspace count '{}'", param.name(), parts[2]))?;
        if count == 0 {
            return Err(format!("axis.{}: linspace count must be >= 1", param.name()));
        }
        return Ok(Axis::linspace(param, start, stop, count));
    }
    if let Some(rest) = value.strip_prefix("range:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(format!(
                "axis.{}: range needs start:stop[:step], got '{value}'",
                param.name()
            ));
        }
        let start = parse_u64("range start", parts[0])?;
        let stop = parse_u64("range stop", parts[1])?;
        let step = if parts.len() == 3 {
            parse_u64("range step", parts[2])?
        } else {
            1
        };
        if step == 0 || stop < start {
            return Err(format!("axis.{}: empty integer range '{value}'", param.name()));
        }
        let values = (start..=stop)
            .step_by(step as usize)
            .map(|v| v as f64)
            .collect();
        return Ok(Axis::new(param, values));
    }
    let mut values = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        values.push(parse_f64(&format!("axis.{}", param.name()), item)?);
    }
    if values.is_empty() {
        return Err(format!("axis.{} has no values", param.name()));
    }
    Ok(Axis::new(param, values))
}

const SWEEP_SPEC_KEYS: [&str; 15] = [
    "scheme",
    "a",
    "phi",
    "phi-deg",
    "tbar",
    "beta",
    "periods",
    "theta",
    "observables",
    "seed",
    "opt-population",
    "opt-generations",
    "opt-sigma0",
    "opt-decay",
    "axis.",
];

/// Parses a full sweep definition file.
pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec<f64>, String> {
    let kv = KeyValues::parse(text)?;
    kv.reject_unknown(&SWEEP_SPEC_KEYS)?;
    let scheme_name = kv.get("scheme").ok_or("missing 'scheme' (A or B)")?;
    let scheme = SchemeChoice::from_name(scheme_name)
        .ok_or_else(|| format!("bad scheme '{scheme_name}' (expected A or B)"))?;
    let mut spec = SweepSpec::new(scheme);
    if let Some(v) = kv.get("a") {
        spec.a = parse_f64("a", v)?;
    }
    if let Some(v) = kv.get("phi") {
        spec.phi = parse_f64("phi", v)?;
    }
    if let Some(v) = kv.get("phi-deg") {
        if kv.get("phi").is_some() {
            return Err("give either 'phi' or 'phi-deg', not both".into());
        }
        spec.phi = parse_f64("phi-deg", v)?.to_radians();
    }
    if let Some(v) = kv.get("tbar") {
        spec.tbar = parse_f64("tbar", v)?;
    }
    if let Some(v) = kv.get("beta") {
        spec.beta = parse_f64("beta", v)?;
    }
    if let Some(v) = kv.get("periods") {
        spec.periods = parse_u64("periods", v)?;
    }
    if let Some(v) = kv.get("theta") {
        spec.theta = parse_f64("theta", v)?;
    }
    if let Some(v) = kv.get("seed") {
        spec.seed = parse_u64("seed", v)?;
    }
    if let Some(v) = kv.get("opt-population") {
        spec.optimizer.population = parse_u64("opt-population", v)? as usize;
    }
    if let Some(v) = kv.get("opt-generations") {
        spec.optimizer.generations = parse_u64("opt-generations", v)? as usize;
    }
    if let Some(v) = kv.get("opt-sigma0") {
        spec.optimizer.sigma0 = parse_f64("opt-sigma0", v)?;
    }
    if let Some(v) = kv.get("opt-decay") {
        spec.optimizer.decay = parse_f64("opt-decay", v)?;
    }
    if let Some(v) = kv.get("observables") {
        spec.observables = parse_observables(v)?;
    }
    spec.axes.clear();
    for (key, value) in kv.entries() {
        if let Some(name) = key.strip_prefix("axis.") {
            let param = AxisParam::from_name(name).ok_or_else(|| {
                format!("unknown axis parameter '{name}'; valid: a, phi, tbar, beta, periods, theta")
            })?;
            spec.axes.push(parse_axis(param, value)?);
        }
    }
    Ok(spec)
}
