//! Report documents and their JSON and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use galmeasure_core::asymptotics::SeriesValue;
use galmeasure_core::SignedPowerSum;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

pub const TOOL: &str = "galmeasure";
/// Token standing for a divergent sum.
pub const INFINITY: &str = "inf";

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: None,
            input_digest: None,
            parameters: BTreeMap::new(),
            results: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.tool, self.version, self.command).unwrap();
        if let Some(input) = &self.input {
            writeln!(out, "input: {input}").unwrap();
        }
        if let Some(d) = &self.input_digest {
            writeln!(out, "sha256: {d}").unwrap();
        }
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
            writeln!(out, "parameters: {}", params.join(" ")).unwrap();
        }
        out.push('\n');
        render(&mut out, "", &self.results);
        out
    }
}

/// Exact rational as `p/q` in lowest terms, integers included.
pub fn q(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Big integers as decimal strings.
pub fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

pub fn series(v: &SeriesValue) -> Value {
    match v {
        SeriesValue::Finite(r) => q(r),
        SeriesValue::Infinite => Value::String(INFINITY.into()),
    }
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

pub fn power_sum(f: &SignedPowerSum) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| json!({ "coefficient": t.coefficient.to_string(), "n-i": t.numerator, "ratio": q(&f.ratio(t)) }))
        .collect();
    let prefix: Vec<Value> = f.prefix().iter().map(|(e, v)| json!({ "e": e, "value": q(v) })).collect();
    json!({
        "n": f.base(),
        "terms": terms,
        "first-exponent": f.first_exponent(),
        "prefix": prefix,
        "display": f.to_string(),
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn render(out: &mut String, prefix: &str, v: &Value) {
    let Value::Object(map) = v else {
        writeln!(out, "{}", scalar(v)).unwrap();
        return;
    };
    let width = map.keys().filter(|k| is_scalar(&map[*k])).map(|k| prefix.len() + k.len()).max().unwrap_or(0);
    for (k, x) in map {
        if is_scalar(x) {
            writeln!(out, "{:<width$} = {}", format!("{prefix}{k}"), scalar(x)).unwrap();
        }
    }
    for (k, x) in map {
        match x {
            Value::Object(_) => render(out, &format!("{prefix}{k}."), x),
            Value::Array(rows) if !is_scalar(x) => {
                writeln!(out, "\n[{prefix}{k}]").unwrap();
                grid(out, rows);
            }
            _ => {}
        }
    }
}

fn grid(out: &mut String, rows: &[Value]) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    if cols.is_empty() {
        for r in rows {
            writeln!(out, "{}", scalar(r)).unwrap();
        }
        return;
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|row| row[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| {
        vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&cols)).unwrap();
    for row in &cells {
        writeln!(out, "{}", line(row)).unwrap();
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Object(_) | Value::Array(_) if !is_scalar(v) => serde_json::to_string(v).expect("serializable"),
        _ => scalar(v),
    }
}
