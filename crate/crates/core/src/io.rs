//! JSON file formats: lattice specs, pattern families, models and training traces.
//!
//! All element names are written in canonical form, so
//! `save(load(file))` is a fixed point after the first save.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Element, Lattice, LatticeError, LatticeSpec};
use crate::learning::{to_elements, Branch, TrainingTrace};
use crate::matrix::Matrix;
use crate::memory::{MemoryError, MemoryModel, PatternFamily, PatternPair};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("{location}: {source}")]
    Element {
        location: String,
        #[source]
        source: LatticeError,
    },
    #[error("{what}: expected {expected}, found {found}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Memory(#[from] MemoryError),
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory value serializes");
    s.push('\n');
    s
}

pub fn parse_lattice_spec(text: &str) -> Result<LatticeSpec, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_lattice(path: impl AsRef<Path>) -> Result<Lattice, FormatError> {
    let spec = parse_lattice_spec(&fs::read_to_string(path)?)?;
    Ok(Lattice::build(&spec)?)
}

fn parse_at(
    lattice: &Lattice,
    name: &str,
    location: impl FnOnce() -> String,
) -> Result<Element, FormatError> {
    lattice.parse(name).map_err(|source| FormatError::Element {
        location: location(),
        source,
    })
}

fn names(lattice: &Lattice, values: &[Element]) -> Vec<String> {
    values.iter().map(|&e| lattice.name_raw(e)).collect()
}

fn name_rows(lattice: &Lattice, m: &Matrix<Element>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| names(lattice, m.row(i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternEntry {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub n: usize,
    pub m: usize,
    pub patterns: Vec<PatternEntry>,
}

impl PatternFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FormatError> {
        PatternFile::parse(&fs::read_to_string(path)?)
    }

    /// Resolves every name against `lattice`; errors carry the 1-based
    /// pattern number, side and position.
    pub fn to_family(&self, lattice: &Arc<Lattice>) -> Result<PatternFamily, FormatError> {
        let mut pairs = Vec::with_capacity(self.patterns.len());
        for (k, entry) in self.patterns.iter().enumerate() {
            let side = |label: &str, values: &[String], expected: usize| {
                if values.len() != expected {
                    return Err(FormatError::Shape {
                        what: format!("pattern {} {label}", k + 1),
                        expected,
                        found: values.len(),
                    });
                }
                values
                    .iter()
                    .enumerate()
                    .map(|(i, name)| {
                        parse_at(lattice, name, || {
                            format!("pattern {}, {label}[{}]", k + 1, i + 1)
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            };
            let x = side("x", &entry.x, self.n)?;
            let y = side("y", &entry.y, self.m)?;
            pairs.push(PatternPair::new(x, y));
        }
        Ok(PatternFamily::new(lattice.clone(), pairs)?)
    }

    pub fn from_family(family: &PatternFamily) -> Self {
        let l = &**family.lattice();
        PatternFile {
            n: family.n(),
            m: family.m(),
            patterns: family
                .pairs()
                .iter()
                .map(|p| PatternEntry {
                    x: names(l, &p.x),
                    y: names(l, &p.y),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub lattice: LatticeSpec,
    #[serde(rename = "W")]
    pub weights: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
    pub d: Vec<String>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FormatError> {
        ModelFile::parse(&fs::read_to_string(path)?)
    }

    pub fn from_model(model: &MemoryModel) -> Self {
        let l = &**model.lattice();
        ModelFile {
            lattice: l.spec(),
            weights: name_rows(l, model.weights()),
            c: name_rows(l, model.input_thresholds()),
            d: names(l, model.output_thresholds()),
        }
    }

    /// Builds the lattice and the model it carries.
    pub fn to_model(&self) -> Result<MemoryModel, FormatError> {
        let lattice = Arc::new(Lattice::build(&self.lattice)?);
        self.to_model_in(&lattice)
    }

    pub fn to_model_in(&self, lattice: &Arc<Lattice>) -> Result<MemoryModel, FormatError> {
        let matrix = |label: &str, rows: &[Vec<String>]| -> Result<Matrix<Element>, FormatError> {
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, name)| {
                            parse_at(lattice, name, || format!("{label}[{}][{}]", i + 1, j + 1))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cols = parsed.first().map_or(0, Vec::len);
            Matrix::from_rows(parsed).ok_or(FormatError::Shape {
                what: format!("{label} rows"),
                expected: cols,
                found: rows
                    .iter()
                    .map(Vec::len)
                    .find(|&len| len != cols)
                    .unwrap_or(0),
            })
        };
        let weights = matrix("W", &self.weights)?;
        let c = matrix("c", &self.c)?;
        let d = self
            .d
            .iter()
            .enumerate()
            .map(|(j, name)| parse_at(lattice, name, || format!("d[{}]", j + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MemoryModel::new(lattice.clone(), weights, c, d)?)
    }
}

/// One line of a training trace export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    #[serde(rename = "W")]
    pub weights: Vec<Vec<String>>,
    /// `branches[i][j][k]`: rule applied by pattern `k` to connection `(i, j)`
    /// on the update that produced this matrix. Absent for step 0.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branches: Option<Vec<Vec<Vec<Branch>>>>,
    pub converged: bool,
}

pub fn trace_records(
    lattice: &Lattice,
    trace: &TrainingTrace,
) -> Result<Vec<TraceRecord>, FormatError> {
    trace
        .steps()
        .iter()
        .enumerate()
        .map(|(t, sets)| {
            let elements = to_elements(lattice, sets).map_err(|_| LatticeError::NotAtomic)?;
            Ok(TraceRecord {
                step: t,
                weights: name_rows(lattice, &elements),
                branches: t
                    .checked_sub(1)
                    .map(|prev| trace.branches()[prev].to_rows()),
                converged: trace.converged_at() == Some(t),
            })
        })
        .collect()
}

/// Writes one compact JSON object per line.
pub fn write_trace<W: Write>(
    lattice: &Lattice,
    trace: &TrainingTrace,
    mut out: W,
) -> Result<(), FormatError> {
    for record in trace_records(lattice, trace)? {
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
