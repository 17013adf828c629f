//! Configuration ingestion and artifact emission for the command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal error |
//! | 2 | command-line usage error |
//! | 3 | config or rule-base file not found |
//! | 4 | malformed document or schema violation |
//! | 5 | unknown config key |
//! | 6 | value out of range |
//! | 7 | I/O error while writing artifacts |
//! | 8 | rule base failed validation |

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::fuzzy::{FisDocument, FuzzyInferenceSystem, ValidationReport};
use crate::protocols::{Protocol, ProtocolKind};
use crate::sim::{Comparison, SimConfig, SimError, SimRun, CONFIG_KEYS, ENERGY_ALIAS};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("file not found: {}", .0.display())]
    MissingFile(PathBuf),
    #[error("{context}: {message}")]
    Schema { context: String, message: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("rule base is invalid:\n{0}")]
    InvalidRulebase(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl IoError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Internal(_) => 1,
            Self::MissingFile(_) => 3,
            Self::Schema { .. } => 4,
            Self::UnknownKey(_) => 5,
            Self::OutOfRange(_) => 6,
            Self::Io { .. } => 7,
            Self::InvalidRulebase(_) => 8,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl From<SimError> for IoError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::OutOfRange { .. } => Self::OutOfRange(e.to_string()),
            SimError::Deployment(m) => Self::Schema {
                context: "deployment".into(),
                message: m,
            },
            SimError::Mismatch(m) => Self::Schema {
                context: "compare".into(),
                message: m,
            },
            other => Self::Internal(other.to_string()),
        }
    }
}

fn read_document(path: &Path) -> Result<Value, IoError> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => IoError::MissingFile(path.to_path_buf()),
        _ => IoError::io(path, e),
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Schema {
        context: path.display().to_string(),
        message: e.to_string(),
    })
}

fn check_key(key: &str) -> Result<(), IoError> {
    if CONFIG_KEYS.contains(&key) || key == ENERGY_ALIAS {
        Ok(())
    } else {
        Err(IoError::UnknownKey(key.to_string()))
    }
}

/// Parses one `key=value` override. The value is read as JSON when it
/// parses, otherwise as a bare string.
pub fn parse_override(item: &str) -> Result<(String, Value), IoError> {
    let (key, raw) = item.split_once('=').ok_or_else(|| IoError::Schema {
        context: format!("override `{item}`"),
        message: "expected key=value".into(),
    })?;
    let key = key.trim();
    check_key(key)?;
    let value = serde_json::from_str(raw.trim()).unwrap_or_else(|_| Value::String(raw.to_string()));
    Ok((key.to_string(), value))
}

/// Builds a resolved config from a JSON object and overrides.
pub fn config_from_value(mut doc: Value, overrides: &[String]) -> Result<SimConfig, IoError> {
    let obj: &mut Map<String, Value> = doc.as_object_mut().ok_or_else(|| IoError::Schema {
        context: "config".into(),
        message: "top level must be a JSON object".into(),
    })?;
    for key in obj.keys() {
        check_key(key)?;
    }
    for item in overrides {
        let (key, value) = parse_override(item)?;
        // an override wins over either spelling of the energy key
        if key == ENERGY_ALIAS || key == "initial_energy" {
            obj.remove(ENERGY_ALIAS);
            obj.remove("initial_energy");
        }
        obj.insert(key, value);
    }
    let config: SimConfig = serde_json::from_value(doc).map_err(|e| IoError::Schema {
        context: "config".into(),
        message: e.to_string(),
    })?;
    Ok(config.resolve()?)
}

/// Reads, overrides and resolves a run configuration.
pub fn parse_config(path: &Path, overrides: &[String]) -> Result<SimConfig, IoError> {
    config_from_value(read_document(path)?, overrides)
}

/// Protocol variants and seeds for compare mode: every protocol, seeds
/// `base.seed .. base.seed + n`.
pub fn compare_plan(
    base: &SimConfig,
    seeds: u64,
) -> Result<(Vec<ProtocolKind>, Vec<u64>), IoError> {
    if seeds == 0 {
        return Err(IoError::OutOfRange("`seeds` must be at least 1".into()));
    }
    Ok((
        ProtocolKind::ALL.to_vec(),
        (base.seed..base.seed + seeds).collect(),
    ))
}

pub fn metrics_file_name(protocol: ProtocolKind, seed: u64) -> String {
    format!("{protocol}_seed{seed}.metrics.csv")
}

pub fn config_file_name(protocol: ProtocolKind, seed: u64) -> String {
    format!("{protocol}_seed{seed}.resolved_config.json")
}

pub fn rulebase_file_name(protocol: ProtocolKind) -> String {
    format!("{protocol}.rulebase.json")
}

/// Controllers of a protocol keyed by role, as written to disk.
pub fn rulebase_json(protocol: &Protocol) -> Result<String, IoError> {
    let map: BTreeMap<&str, &FuzzyInferenceSystem> = protocol.controllers().into_iter().collect();
    let mut text =
        serde_json::to_string_pretty(&map).map_err(|e| IoError::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, IoError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| IoError::io(&path, e))?;
    Ok(path)
}

fn ensure_dir(dir: &Path) -> Result<(), IoError> {
    fs::create_dir_all(dir).map_err(|e| IoError::io(dir, e))
}

fn config_json(config: &SimConfig) -> Result<String, IoError> {
    let mut text =
        serde_json::to_string_pretty(config).map_err(|e| IoError::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Writes the metrics CSV, resolved config and, for fuzzy protocols, the
/// rule base of one run. Returns the written paths.
pub fn emit_run(run: &SimRun, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    ensure_dir(dir)?;
    let c = &run.config;
    let mut written = vec![
        write(
            dir,
            &metrics_file_name(c.protocol, c.seed),
            &run.metrics_csv(),
        )?,
        write(dir, &config_file_name(c.protocol, c.seed), &config_json(c)?)?,
    ];
    if c.protocol.is_fuzzy() {
        let protocol = c.build_protocol()?;
        written.push(write(
            dir,
            &rulebase_file_name(c.protocol),
            &rulebase_json(&protocol)?,
        )?);
    }
    Ok(written)
}

/// Writes one metrics CSV per run and `comparison.csv`.
pub fn emit_comparison(cmp: &Comparison, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    ensure_dir(dir)?;
    let mut written = Vec::with_capacity(cmp.runs.len() + 1);
    for run in &cmp.runs {
        let c = &run.config;
        written.push(write(
            dir,
            &metrics_file_name(c.protocol, c.seed),
            &run.metrics_csv(),
        )?);
    }
    written.push(write(dir, "comparison.csv", &cmp.to_csv())?);
    Ok(written)
}

/// Writes the built-in rule base of a fuzzy protocol.
pub fn emit_rulebase(kind: ProtocolKind, dir: &Path) -> Result<PathBuf, IoError> {
    if !kind.is_fuzzy() {
        return Err(IoError::OutOfRange(format!(
            "`{kind}` has no fuzzy rule base"
        )));
    }
    ensure_dir(dir)?;
    let protocol = SimConfig::new(kind, 1, [1.0, 1.0]).build_protocol()?;
    write(dir, &rulebase_file_name(kind), &rulebase_json(&protocol)?)
}

/// Loads a rule-base file: either a map of named controllers or a single
/// controller document.
pub fn load_rulebase(path: &Path) -> Result<BTreeMap<String, FisDocument>, IoError> {
    let doc = read_document(path)?;
    let schema = |e: serde_json::Error| IoError::Schema {
        context: path.display().to_string(),
        message: e.to_string(),
    };
    if doc.get("rules").is_some() {
        let one: FisDocument = serde_json::from_value(doc).map_err(schema)?;
        return Ok(BTreeMap::from([(one.name.clone(), one)]));
    }
    serde_json::from_value(doc).map_err(schema)
}

/// Validates every controller in a rule-base file. Returns the reports on
/// success and [`IoError::InvalidRulebase`] naming every failure otherwise.
pub fn validate_rulebase_file(path: &Path) -> Result<Vec<(String, ValidationReport)>, IoError> {
    let docs = load_rulebase(path)?;
    if docs.is_empty() {
        return Err(IoError::InvalidRulebase("file holds no controllers".into()));
    }
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (name, doc) in docs {
        match FuzzyInferenceSystem::try_from(doc) {
            Ok(fis) => {
                let report = fis.validate();
                if !report.is_valid() {
                    failures.push(format!("{name}: {}", report.to_string().trim_end()));
                }
                reports.push((name, report));
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(reports)
    } else {
        Err(IoError::InvalidRulebase(failures.join("\n")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn minimal_config_resolves_with_defaults() {
        let c =
            config_from_value(json!({"protocol":"leach","nodes":30,"area":[60,60]}), &[]).unwrap();
        assert_eq!((c.seed, c.initial_energy, c.rounds), (0, 0.1, 500));
    }

    #[test]
    fn overrides_apply_and_parse_values() {
        let base = json!({"protocol":"leach","nodes":30,"area":[60,60]});
        let c = config_from_value(
            base.clone(),
            &[
                "rounds=10".into(),
                "protocol=eeds".into(),
                "area=[10, 20]".into(),
            ],
        )
        .unwrap();
        assert_eq!(c.rounds, 10);
        assert_eq!(c.protocol, ProtocolKind::Eeds);
        assert_eq!(c.area, [10.0, 20.0]);
        let e = config_from_value(
            json!({"protocol":"leach","nodes":3,"area":[6,6],"energy":0.5}),
            &["initial_energy=0.2".into()],
        )
        .unwrap();
        assert_eq!(e.initial_energy, 0.2);
    }

    #[test]
    fn error_kinds_are_distinct() {
        let base = json!({"protocol":"leach","nodes":30,"area":[60,60]});
        let code = |v: Value, o: &[&str]| {
            let o: Vec<String> = o.iter().map(|s| s.to_string()).collect();
            config_from_value(v, &o).unwrap_err().exit_code()
        };
        assert_eq!(code(base.clone(), &["nodes=0"]), 6);
        assert_eq!(code(base.clone(), &["colour=red"]), 5);
        assert_eq!(
            code(
                json!({"protocol":"leach","nodes":1,"area":[1,1],"bogus":1}),
                &[]
            ),
            5
        );
        assert_eq!(code(json!({"protocol":"leach","area":[1,1]}), &[]), 4);
        assert_eq!(code(base.clone(), &["protocol=aodv"]), 4);
        assert_eq!(code(base, &["rounds"]), 4);
        let missing = parse_config(Path::new("/definitely/not/here.json"), &[]).unwrap_err();
        assert_eq!(missing.exit_code(), 3);
    }

    #[test]
    fn unwritable_directory_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let err = emit_rulebase(ProtocolKind::Eeds, &blocker.join("sub")).unwrap_err();
        assert_eq!(err.exit_code(), 7);
    }

    #[test]
    fn emitted_rulebases_validate() {
        let dir = tempfile::tempdir().unwrap();
        for kind in [ProtocolKind::Eeds, ProtocolKind::F3n] {
            let path = emit_rulebase(kind, dir.path()).unwrap();
            let reports = validate_rulebase_file(&path).unwrap();
            assert_eq!(
                reports.len(),
                if kind == ProtocolKind::Eeds { 2 } else { 1 }
            );
        }
        assert!(emit_rulebase(ProtocolKind::Leach, dir.path()).is_err());
    }

    #[test]
    fn broken_rulebase_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = emit_rulebase(ProtocolKind::F3n, dir.path()).unwrap();
        let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        doc["f3n"]["rules"].as_array_mut().unwrap().pop();
        fs::write(&path, doc.to_string()).unwrap();
        let err = validate_rulebase_file(&path).unwrap_err();
        assert_eq!(err.exit_code(), 8);
        assert!(err.to_string().contains("f3n"));
    }
}
