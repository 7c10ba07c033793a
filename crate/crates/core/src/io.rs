//! JSON form of labeled complexes.
//!
//! ```json
//! {"vars": 2,
//!  "vertices": [{"id": 0, "label": "x1"}, {"id": 1, "label": "x2"}],
//!  "cells": [{"id": 2, "dim": 1, "vertices": [0, 1], "label": "x1*x2",
//!             "facets": [[0, 1], [1, -1]]}, ...]}
//! ```
//!
//! Labels are always written as `x<i>` products. Import re-checks every
//! invariant and rejects rather than repairs.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{LabeledComplex, Sign};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vars: usize,
    pub vertices: Vec<VertexJson>,
    pub cells: Vec<CellJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub id: usize,
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub label: String,
    pub facets: Vec<(usize, i64)>,
}

impl ComplexJson {
    pub fn from_complex(x: &LabeledComplex) -> Self {
        ComplexJson {
            vars: x.n(),
            vertices: x
                .vertex_labels()
                .iter()
                .enumerate()
                .map(|(id, l)| VertexJson {
                    id,
                    label: l.canonical(),
                })
                .collect(),
            cells: x
                .cells()
                .iter()
                .enumerate()
                .map(|(id, c)| CellJson {
                    id,
                    dim: c.dim(),
                    vertices: c.vertices().to_vec(),
                    label: c.label().canonical(),
                    facets: c.facets().iter().map(|&(f, s)| (f, s as i64)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<LabeledComplex> {
        let n = self.vars;
        if n == 0 {
            return Err(Error::Schema("vars must be at least 1".into()));
        }
        let mut vlabel: HashMap<usize, Monomial> = HashMap::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            let m = Monomial::parse(&v.label, n)?;
            if !seen.insert(m.clone()) {
                return Err(Error::DuplicateLabel(m.to_string()));
            }
            if vlabel.insert(v.id, m).is_some() {
                return Err(Error::Schema(format!("duplicate vertex id {}", v.id)));
            }
        }

        let mut pos: HashMap<usize, usize> = HashMap::new();
        for (k, c) in self.cells.iter().enumerate() {
            if pos.insert(c.id, k).is_some() {
                return Err(Error::Schema(format!("duplicate cell id {}", c.id)));
            }
        }
        let mut records = Vec::with_capacity(self.cells.len());
        let mut zero_cells = HashSet::new();
        for c in &self.cells {
            let verts = c
                .vertices
                .iter()
                .map(|v| {
                    vlabel.get(v).cloned().ok_or_else(|| {
                        Error::Schema(format!("cell {} uses unknown vertex {v}", c.id))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if c.dim == 0 {
                zero_cells.extend(c.vertices.iter().copied());
            }
            let facets = c
                .facets
                .iter()
                .map(|&(f, s)| {
                    let k = pos.get(&f).ok_or_else(|| {
                        Error::Schema(format!("cell {} has dangling facet {f}", c.id))
                    })?;
                    if s != 1 && s != -1 {
                        return Err(Error::Schema(format!("cell {} has sign {s}", c.id)));
                    }
                    Ok((*k, s as Sign))
                })
                .collect::<Result<Vec<_>>>()?;
            records.push((c.dim, verts, facets));
        }
        if let Some(v) = vlabel.keys().find(|v| !zero_cells.contains(v)) {
            return Err(Error::Schema(format!("vertex {v} has no 0-cell")));
        }

        let x = LabeledComplex::from_parts(n, records)?;
        for c in &self.cells {
            let mut ids: Vec<Monomial> = c.vertices.iter().map(|v| vlabel[v].clone()).collect();
            ids.sort();
            let id = x.find_by_labels(&ids).expect("imported cell exists");
            let want = Monomial::parse(&c.label, n)?;
            if x.cell(id).label() != &want {
                return Err(Error::Schema(format!(
                    "cell {} has label {} but its vertices give {}",
                    c.id,
                    want,
                    x.cell(id).label()
                )));
            }
            if x.cell(id).dim() != c.dim {
                return Err(Error::Schema(format!("cell {} has inconsistent dim", c.id)));
            }
        }
        Ok(x)
    }
}

/// Pretty JSON with a trailing newline; byte-identical for equal complexes.
pub fn to_json_string(x: &LabeledComplex) -> String {
    let mut s = serde_json::to_string_pretty(&ComplexJson::from_complex(x)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json_str(s: &str) -> Result<LabeledComplex> {
    let j: ComplexJson = serde_json::from_str(s)?;
    j.to_complex()
}

pub fn export_json(x: &LabeledComplex, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json_string(x))?;
    Ok(())
}

pub fn import_json(path: impl AsRef<Path>) -> Result<LabeledComplex> {
    from_json_str(&fs::read_to_string(path)?)
}

/// Serialize any report as pretty JSON with a trailing newline.
pub fn report_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
