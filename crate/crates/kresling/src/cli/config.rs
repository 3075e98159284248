//! Config files: named patterns, actuator builds, material curve files, and
//! the comparison dataset. A bundled config ships inside the binary so every
//! command works out of the box; `--config` swaps in a user file whose
//! relative data paths resolve against the file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use csv::Trim;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::Angle;
use crate::geometry::{GeometryError, Handedness, ModulePattern};
use crate::kinematics::{ActuatorSpec, KinematicsError, TypeLabel};
use crate::materials::{self, MaterialsError, StressStrainCurve};

const BUNDLED_CONFIG: &str = include_str!("../../data/config.toml");
const BUNDLED_COMPARISON: &str = include_str!("../../data/comparison.csv");
const BUNDLED_ECOFLEX: &str = include_str!("../../data/materials/ecoflex_00_30.csv");
const BUNDLED_E615: &str = include_str!("../../data/materials/e615.csv");
const BUNDLED_MIXTURE: &str = include_str!("../../data/materials/mixture.csv");

fn embedded_data(path: &str) -> Option<&'static str> {
    match path {
        "comparison.csv" => Some(BUNDLED_COMPARISON),
        "materials/ecoflex_00_30.csv" => Some(BUNDLED_ECOFLEX),
        "materials/e615.csv" => Some(BUNDLED_E615),
        "materials/mixture.csv" => Some(BUNDLED_MIXTURE),
        _ => None,
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path} at line {line} column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("pattern {name}: {source}")]
    BadPattern {
        name: String,
        source: GeometryError,
    },
    #[error("actuator {name}: {source}")]
    BadActuator {
        name: String,
        source: KinematicsError,
    },
    #[error("actuator {actuator} references unknown pattern {pattern}")]
    UnknownPattern { actuator: String, pattern: String },
    #[error("actuator {name}: a handedness list is only valid with type \"custom\"")]
    HandednessListForTyped { name: String },
    #[error("actuator {name}: type \"custom\" needs an explicit handedness list")]
    MissingHandedness { name: String },
    #[error("actuator {name}: handedness list has {got} entries for {modules} modules")]
    HandednessLengthMismatch {
        name: String,
        got: usize,
        modules: usize,
    },
    #[error("unknown actuator {name}; this config defines: {known}")]
    UnknownActuator { name: String, known: String },
    #[error("unknown material {name}; this config defines: {known}")]
    UnknownMaterial { name: String, known: String },
    #[error("this config names no comparison dataset")]
    NoComparisonData,
    #[error("the bundled data set has no file {path}")]
    EmbeddedMissing { path: String },
    #[error("cannot read comparison data {path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("comparison row {row} in {path}: {problem}")]
    BadComparisonRow {
        path: String,
        row: usize,
        problem: String,
    },
    #[error(transparent)]
    Materials(#[from] MaterialsError),
}

/// Raw config document; field layout mirrors the TOML schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    patterns: BTreeMap<String, PatternEntry>,
    #[serde(default)]
    actuators: BTreeMap<String, ActuatorEntry>,
    #[serde(default)]
    materials: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comparison: Option<ComparisonEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternEntry {
    a_mm: f64,
    b_mm: f64,
    c_mm: f64,
    delta0_deg: f64,
    #[serde(default = "default_n_sides")]
    n_sides: u32,
    #[serde(default = "default_handedness")]
    handedness: Handedness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActuatorEntry {
    pattern: String,
    modules: usize,
    #[serde(rename = "type")]
    type_label: TypeLabel,
    /// Explicit per-module handedness; only valid (and then required) for
    /// type "custom".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    handedness: Option<Vec<Handedness>>,
    k_c1_n_per_rad: f64,
    k_c2_n_per_rad: f64,
    #[serde(default)]
    skeleton_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComparisonEntry {
    data: String,
}

fn default_n_sides() -> u32 {
    6
}

fn default_handedness() -> Handedness {
    Handedness::Cw
}

/// Where a referenced data file lives.
#[derive(Debug, Clone, PartialEq)]
enum DataSource {
    Path(PathBuf),
    Embedded {
        label: String,
        text: &'static str,
    },
}

/// An actuator build: the pattern it references plus the assembled spec.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedActuator {
    pattern_name: String,
    spec: ActuatorSpec,
}

impl ResolvedActuator {
    pub fn pattern_name(&self) -> &str {
        &self.pattern_name
    }

    pub fn spec(&self) -> &ActuatorSpec {
        &self.spec
    }
}

/// A parsed and validated config with all references resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    raw: ConfigFile,
    patterns: BTreeMap<String, ModulePattern>,
    actuators: BTreeMap<String, ResolvedActuator>,
    materials: BTreeMap<String, DataSource>,
    comparison: Option<DataSource>,
}

impl ResolvedConfig {
    /// The compiled-in default: the four bundled actuator builds, three
    /// material curves, and the comparison dataset.
    pub fn bundled() -> ResolvedConfig {
        let raw = parse_toml("<bundled>", BUNDLED_CONFIG).expect("bundled config parses");
        resolve(raw, None).expect("bundled config resolves")
    }

    /// Loads a config file; relative data paths resolve against its parent
    /// directory.
    pub fn load(path: &Path) -> Result<ResolvedConfig, ConfigError> {
        let label = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: label.clone(),
            source,
        })?;
        let raw = parse_toml(&label, &text)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        resolve(raw, Some(&dir))
    }

    /// Parses config text whose data references resolve against the bundled
    /// data set (the reload half of a serialize round trip).
    pub fn from_bundled_str(text: &str, label: &str) -> Result<ResolvedConfig, ConfigError> {
        resolve(parse_toml(label, text)?, None)
    }

    /// Serializes back to TOML; reloading the result yields an equal config.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.raw).expect("config document serializes")
    }

    pub fn patterns(&self) -> &BTreeMap<String, ModulePattern> {
        &self.patterns
    }

    pub fn actuators(&self) -> &BTreeMap<String, ResolvedActuator> {
        &self.actuators
    }

    pub fn material_names(&self) -> Vec<&str> {
        self.materials.keys().map(String::as_str).collect()
    }

    pub fn actuator(&self, name: &str) -> Result<&ResolvedActuator, ConfigError> {
        self.actuators
            .get(name)
            .ok_or_else(|| ConfigError::UnknownActuator {
                name: name.to_owned(),
                known: joined_keys(&self.actuators),
            })
    }

    /// Loads and validates the named material's stress–stretch curve.
    pub fn material_curve(&self, name: &str) -> Result<StressStrainCurve, ConfigError> {
        let source = self
            .materials
            .get(name)
            .ok_or_else(|| ConfigError::UnknownMaterial {
                name: name.to_owned(),
                known: joined_keys(&self.materials),
            })?;
        match source {
            DataSource::Path(path) => Ok(materials::read_curve_csv(path)?),
            DataSource::Embedded { label, text } => {
                Ok(materials::read_curve_from(text.as_bytes(), label)?)
            }
        }
    }

    /// Loads and validates the comparison dataset.
    pub fn comparison_rows(&self) -> Result<Vec<ComparisonRow>, ConfigError> {
        let source = self.comparison.as_ref().ok_or(ConfigError::NoComparisonData)?;
        match source {
            DataSource::Path(path) => {
                let label = path.display().to_string();
                let reader = csv::ReaderBuilder::new()
                    .trim(Trim::All)
                    .from_path(path)
                    .map_err(|source| ConfigError::Csv {
                        path: label.clone(),
                        source,
                    })?;
                read_comparison(reader, &label)
            }
            DataSource::Embedded { label, text } => {
                let reader = csv::ReaderBuilder::new()
                    .trim(Trim::All)
                    .from_reader(text.as_bytes());
                read_comparison(reader, label)
            }
        }
    }
}

fn joined_keys<V>(map: &BTreeMap<String, V>) -> String {
    map.keys().cloned().collect::<Vec<_>>().join(", ")
}

fn parse_toml(label: &str, text: &str) -> Result<ConfigFile, ConfigError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| line_col(text, span.start))
            .unwrap_or((0, 0));
        ConfigError::Parse {
            path: label.to_owned(),
            line,
            column,
            message: e.message().replace('\n', " "),
        }
    })
}

/// 1-based line/column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let clamped = offset.min(text.len());
    let mut line = 1;
    let mut column = 1;
    for (i, ch) in text.char_indices() {
        if i >= clamped {
            break;
        }
        if ch == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}

/// Resolves data references against a directory, or against the bundled
/// data set when `dir` is `None`.
fn resolve(raw: ConfigFile, dir: Option<&Path>) -> Result<ResolvedConfig, ConfigError> {
    let locate = |rel: &str| -> Result<DataSource, ConfigError> {
        match dir {
            Some(dir) => Ok(DataSource::Path(dir.join(rel))),
            None => Ok(DataSource::Embedded {
                label: format!("<bundled {rel}>"),
                text: embedded_data(rel).ok_or_else(|| ConfigError::EmbeddedMissing {
                    path: rel.to_owned(),
                })?,
            }),
        }
    };

    let mut patterns = BTreeMap::new();
    for (name, entry) in &raw.patterns {
        let pattern = ModulePattern::new(
            entry.a_mm,
            entry.b_mm,
            entry.c_mm,
            Angle::from_degrees(entry.delta0_deg),
            entry.n_sides,
            entry.handedness,
        )
        .map_err(|source| ConfigError::BadPattern {
            name: name.clone(),
            source,
        })?;
        patterns.insert(name.clone(), pattern);
    }

    let mut actuators = BTreeMap::new();
    for (name, entry) in &raw.actuators {
        let pattern = patterns
            .get(&entry.pattern)
            .ok_or_else(|| ConfigError::UnknownPattern {
                actuator: name.clone(),
                pattern: entry.pattern.clone(),
            })?;
        let build = |spec: Result<ActuatorSpec, KinematicsError>| {
            spec.map_err(|source| ConfigError::BadActuator {
                name: name.clone(),
                source,
            })
        };
        let spec = match (entry.type_label, &entry.handedness) {
            (TypeLabel::Custom, Some(list)) => {
                if list.len() != entry.modules {
                    return Err(ConfigError::HandednessLengthMismatch {
                        name: name.clone(),
                        got: list.len(),
                        modules: entry.modules,
                    });
                }
                let modules = list.iter().map(|&h| pattern.with_handedness(h)).collect();
                build(ActuatorSpec::new(
                    modules,
                    TypeLabel::Custom,
                    entry.skeleton_ratio,
                    entry.k_c1_n_per_rad,
                    entry.k_c2_n_per_rad,
                ))?
            }
            (TypeLabel::Custom, None) => {
                return Err(ConfigError::MissingHandedness { name: name.clone() });
            }
            (_, Some(_)) => {
                return Err(ConfigError::HandednessListForTyped { name: name.clone() });
            }
            (label, None) => build(ActuatorSpec::uniform(
                pattern,
                entry.modules,
                label,
                entry.skeleton_ratio,
                entry.k_c1_n_per_rad,
                entry.k_c2_n_per_rad,
            ))?,
        };
        actuators.insert(
            name.clone(),
            ResolvedActuator {
                pattern_name: entry.pattern.clone(),
                spec,
            },
        );
    }

    let mut materials = BTreeMap::new();
    for (name, rel) in &raw.materials {
        materials.insert(name.clone(), locate(rel)?);
    }
    let comparison = match &raw.comparison {
        Some(entry) => Some(locate(&entry.data)?),
        None => None,
    };

    Ok(ResolvedConfig {
        raw,
        patterns,
        actuators,
        materials,
        comparison,
    })
}

/// One entry of the published-actuator comparison table. Qualifiers record
/// how a printed value was given: empty = exact as printed, `approx` = a
/// "~" value, `min` = a lower bound.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonRow {
    pub name: String,
    pub rotation_deg: f64,
    #[serde(default)]
    pub rotation_qualifier: String,
    pub aspect_ratio: f64,
    #[serde(default)]
    pub aspect_qualifier: String,
    pub pressure_change_kpa: Option<f64>,
    #[serde(default)]
    pub pressure_qualifier: String,
    /// Free-text annotation, e.g. the signed pressure interval behind a
    /// magnitude.
    #[serde(default)]
    pub pressure_note: String,
}

impl ComparisonRow {
    /// Rotation ratio (deg): rotation angle over aspect ratio, always
    /// recomputed from the stored columns.
    pub fn rotation_ratio_deg(&self) -> f64 {
        self.rotation_deg / self.aspect_ratio
    }
}

fn read_comparison<R: std::io::Read>(
    mut reader: csv::Reader<R>,
    label: &str,
) -> Result<Vec<ComparisonRow>, ConfigError> {
    let mut rows = Vec::new();
    for (index, record) in reader.deserialize::<ComparisonRow>().enumerate() {
        let row = record.map_err(|source| ConfigError::Csv {
            path: label.to_owned(),
            source,
        })?;
        let bad = |problem: String| ConfigError::BadComparisonRow {
            path: label.to_owned(),
            row: index + 1,
            problem,
        };
        if !(row.rotation_deg.is_finite() && row.rotation_deg > 0.0) {
            return Err(bad(format!(
                "rotation angle must be positive, got {}",
                row.rotation_deg
            )));
        }
        if !(row.aspect_ratio.is_finite() && row.aspect_ratio > 0.0) {
            return Err(bad(format!(
                "aspect ratio must be positive, got {}",
                row.aspect_ratio
            )));
        }
        for qualifier in [
            &row.rotation_qualifier,
            &row.aspect_qualifier,
            &row.pressure_qualifier,
        ] {
            if !matches!(qualifier.as_str(), "" | "approx" | "min") {
                return Err(bad(format!(
                    "unknown qualifier {qualifier:?} (expected empty, \"approx\" or \"min\")"
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
