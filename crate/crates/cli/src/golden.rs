//! Golden files: a JSON object mapping dotted field paths of a report to
//! `{"expected": value, "tolerance": t}`. Numbers compare within the
//! tolerance (0 if absent), anything else compares exactly.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
struct Expectation {
    expected: Value,
    #[serde(default)]
    tolerance: f64,
}

/// One line per breached field; empty when everything holds.
pub fn check(report: &Value, golden: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(golden).with_context(|| format!("reading {}", golden.display()))?;
    let expectations: BTreeMap<String, Expectation> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", golden.display()))?;
    let mut breaches = Vec::new();
    for (field, e) in &expectations {
        let pointer = format!("/{}", field.replace('.', "/"));
        let got = report.pointer(&pointer);
        let ok = match (got, &e.expected) {
            (Some(Value::Number(g)), Value::Number(x)) => {
                let (g, x) = (g.as_f64().unwrap_or(f64::NAN), x.as_f64().unwrap_or(f64::NAN));
                (g - x).abs() <= e.tolerance
            }
            (Some(g), x) => g == x,
            (None, _) => false,
        };
        if !ok {
            let got = got.map_or_else(|| "missing".to_string(), Value::to_string);
            breaches.push(format!("{field}: got {got}, expected {} ± {}", e.expected, e.tolerance));
        }
    }
    Ok(breaches)
}

/// Prints breaches to stderr and maps them to the exit code.
pub fn gate(report: &Value, golden: Option<&Path>) -> Result<u8> {
    let Some(path) = golden else { return Ok(0) };
    let breaches = check(report, path)?;
    for b in &breaches {
        eprintln!("golden breach: {b}");
    }
    Ok(u8::from(!breaches.is_empty()))
}

#[cfg(test)]
mod tests {
    use std::io::Write;

    use super::*;

    #[test]
    fn tolerance_and_paths() {
        let report: Value = serde_json::json!({"bound": 1.32153, "curve": {"kind": "x", "a": 0.5}, "list": [1, 2]});
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(
            file,
            r#"{{"bound": {{"expected": 1.3215, "tolerance": 1e-4}},
                "curve.kind": {{"expected": "x"}},
                "curve.a": {{"expected": 0.6, "tolerance": 0.01}},
                "list.1": {{"expected": 2}},
                "absent": {{"expected": 0}}}}"#
        )
        .unwrap();
        let breaches = check(&report, file.path()).unwrap();
        assert_eq!(breaches.len(), 2, "{breaches:?}");
        assert!(breaches.iter().any(|b| b.starts_with("curve.a")));
        assert!(breaches.iter().any(|b| b.starts_with("absent")));
    }
}
