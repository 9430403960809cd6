//! Scenario and tower files: UTF-8 JSON tagged with `format-version`.

use std::path::Path;

use galmeasure_core::catalog::{self, CatalogEntry};
use galmeasure_core::{ScenarioSpec, TowerSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const FORMAT_VERSION: &str = "1";
pub const CATALOG_PREFIX: &str = "catalog:";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ScenarioFile {
    pub format_version: String,
    #[serde(flatten)]
    pub scenario: ScenarioSpec,
}

/// A tower file is recognized by its `upper` key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TowerFile {
    pub format_version: String,
    #[serde(flatten)]
    pub tower: TowerSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum InputFile {
    Scenario(ScenarioFile),
    Tower(TowerFile),
}

impl InputFile {
    pub fn from_entry(entry: CatalogEntry) -> Self {
        let format_version = FORMAT_VERSION.to_string();
        match entry {
            CatalogEntry::Scenario(scenario) => InputFile::Scenario(ScenarioFile { format_version, scenario }),
            CatalogEntry::Tower(tower) => InputFile::Tower(TowerFile { format_version, tower }),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InputFile::Scenario(_) => "scenario",
            InputFile::Tower(_) => "tower",
        }
    }

    /// Pretty JSON with a trailing newline; parsing it back reproduces it.
    pub fn canonical(&self) -> String {
        let mut s = match self {
            InputFile::Scenario(f) => serde_json::to_string_pretty(f),
            InputFile::Tower(f) => serde_json::to_string_pretty(f),
        }
        .expect("serializable");
        s.push('\n');
        s
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn malformed(msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid { kind: "MalformedFile", message: msg.to_string() }
}

pub fn parse(text: &str) -> Result<InputFile, CliError> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    let obj = value.as_object().ok_or_else(|| malformed("top level is not a JSON object"))?;
    match obj.get("format-version") {
        Some(Value::String(v)) if v == FORMAT_VERSION => {}
        Some(v) => {
            return Err(CliError::Invalid {
                kind: "UnsupportedVersion",
                message: format!("format-version {v} is not supported (expected \"{FORMAT_VERSION}\")"),
            })
        }
        None => return Err(CliError::Invalid { kind: "UnsupportedVersion", message: "missing format-version".into() }),
    }
    if obj.contains_key("upper") {
        serde_json::from_value(value).map(InputFile::Tower).map_err(malformed)
    } else {
        serde_json::from_value(value).map(InputFile::Scenario).map_err(malformed)
    }
}

/// Resolves `catalog:<id>` or reads a file. Unnamed scenarios take the file stem.
pub fn load(input: &str) -> Result<InputFile, CliError> {
    if let Some(id) = input.strip_prefix(CATALOG_PREFIX) {
        let entry = catalog::entry(id).ok_or_else(|| CliError::Invalid {
            kind: "UnknownCatalogId",
            message: format!("no catalog entry `{id}`"),
        })?;
        return Ok(InputFile::from_entry(entry));
    }
    let path = Path::new(input);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid { kind: "UnreadableInput", message: format!("{input}: {e}") })?;
    let mut file = parse(&text)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario").to_string();
    match &mut file {
        InputFile::Scenario(f) if f.scenario.name.is_empty() => f.scenario.name = stem,
        InputFile::Tower(f) if f.tower.name.is_empty() => f.tower.name = stem,
        _ => {}
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_files_round_trip() {
        for id in catalog::all_ids() {
            let f = load(&format!("catalog:{id}")).unwrap();
            let text = f.canonical();
            let back = parse(&text).unwrap();
            assert_eq!(back, f, "{id}");
            assert_eq!(back.canonical(), text, "{id}");
        }
    }

    #[test]
    fn version_is_checked() {
        let err = parse(r#"{"format-version": "2", "group": {"cyclic": 2}}"#).unwrap_err();
        assert!(matches!(err, CliError::Invalid { kind: "UnsupportedVersion", .. }));
        let err = parse(r#"{"group": {"cyclic": 2}}"#).unwrap_err();
        assert!(matches!(err, CliError::Invalid { kind: "UnsupportedVersion", .. }));
    }

    #[test]
    fn minimal_file_parses() {
        let text = r#"{
            "format-version": "1",
            "group": {"cyclic": 2},
            "g0": [[1, 0]],
            "targets": [{"name": "full", "generators": [[1, 0]]}]
        }"#;
        let InputFile::Scenario(f) = parse(text).unwrap() else { panic!("not a scenario") };
        assert_eq!(f.scenario.g0.len(), 1);
        assert!(f.scenario.complement.is_none());
        assert!(f.scenario.metadata.is_empty());
    }
}
