//! Cellular chain complexes, exact verification of resolutions, and Betti
//! tables read off from cells.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::complex::LabeledComplex;
use crate::error::{Error, Result};
use crate::lattice::LcmLattice;
use crate::linalg::{Field, ReducedHomology, SparseMatrix};
use crate::monomial::{canonical_cmp, Monomial};

/// The augmented cellular chain complex of a labeled complex. Basis
/// elements of `C_i` are the `i`-cells in id order; entries are facet signs.
/// The multidegree of an entry is the label ratio of the two cells.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    offsets: Vec<usize>,
    labels: Vec<Monomial>,
    /// `d[0]` is the augmentation `C_0 → k`; `d[i]` maps `C_i → C_{i-1}`.
    d: Vec<SparseMatrix>,
}

pub fn chain_complex(x: &LabeledComplex) -> Result<ChainComplex> {
    let top = x.dim().map_or(0, |d| d + 1);
    let mut offsets = vec![0; top + 1];
    for c in x.cells() {
        offsets[c.dim() + 1] += 1;
    }
    for i in 1..offsets.len() {
        offsets[i] += offsets[i - 1];
    }
    let mut d = Vec::with_capacity(top);
    for i in 0..top {
        let rows = if i == 0 {
            1
        } else {
            offsets[i] - offsets[i - 1]
        };
        let mut m = SparseMatrix::new(rows);
        for id in offsets[i]..offsets[i + 1] {
            let cell = x.cell(id);
            if i == 0 {
                m.push_col(vec![(0, 1)]);
                continue;
            }
            let mut col = Vec::with_capacity(cell.facets().len());
            for &(f, s) in cell.facets() {
                if s == 0 {
                    return Err(Error::IncidenceMissing(id));
                }
                col.push((f - offsets[i - 1], s as i64));
            }
            m.push_col(col);
        }
        d.push(m);
    }
    Ok(ChainComplex {
        offsets,
        labels: x.cells().iter().map(|c| c.label().clone()).collect(),
        d,
    })
}

impl ChainComplex {
    /// Number of homological degrees `i >= 0` with cells.
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Cell ids forming the basis of `C_i`.
    pub fn basis(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// `∂_i`; `i = 0` is the augmentation.
    pub fn differential(&self, i: usize) -> &SparseMatrix {
        &self.d[i]
    }

    /// Multidegree `m_F / m_F'` of entry `(row, col)` of `∂_i`, `i >= 1`.
    pub fn ratio(&self, i: usize, row: usize, col: usize) -> Result<Monomial> {
        let f = &self.labels[self.offsets[i] + col];
        let g = &self.labels[self.offsets[i - 1] + row];
        f.quotient(g)?
            .ok_or_else(|| Error::NotRegular(format!("label {g} does not divide {f}")))
    }

    /// First cell `σ` (by id) with `∂∂σ ≠ 0`, the augmentation included.
    pub fn first_boundary_failure(&self) -> Option<usize> {
        for i in 1..self.d.len() {
            let prod = self.d[i - 1]
                .mul(&self.d[i])
                .expect("consecutive shapes agree");
            if let Some(j) = (0..prod.ncols()).find(|&j| !prod.col(j).is_empty()) {
                return Some(self.offsets[i] + j);
            }
        }
        None
    }

    /// Every nonzero entry joins cells whose labels divide one another.
    pub fn multidegrees_consistent(&self) -> bool {
        (1..self.d.len()).all(|i| {
            (0..self.d[i].ncols()).all(|j| {
                self.d[i]
                    .col(j)
                    .iter()
                    .all(|&(r, _)| self.ratio(i, r, j).is_ok())
            })
        })
    }

    /// Reduced homology of the subcomplex on the kept cells, which must be
    /// closed under taking faces.
    pub fn restricted_homology(&self, keep: &[bool], field: Field) -> ReducedHomology {
        let mut sizes = vec![1];
        let mut boundaries = Vec::new();
        let mut prev_map: Vec<usize> = vec![0];
        for i in 0..self.d.len() {
            let range = self.basis(i);
            let mut map = vec![usize::MAX; range.len()];
            let mut m = SparseMatrix::new(*sizes.last().unwrap());
            for (j, id) in range.enumerate() {
                if !keep[id] {
                    continue;
                }
                map[j] = m.ncols();
                let col = self.d[i]
                    .col(j)
                    .iter()
                    .map(|&(r, v)| (prev_map[r], v))
                    .collect();
                m.push_col(col);
            }
            if m.ncols() == 0 {
                break;
            }
            sizes.push(m.ncols());
            boundaries.push(m);
            prev_map = map;
        }
        ReducedHomology::from_boundaries(&sizes, &boundaries, field)
    }

    pub fn homology(&self, field: Field) -> ReducedHomology {
        self.restricted_homology(&vec![true; self.labels.len()], field)
    }

    fn kept_at(&self, b: &Monomial) -> Vec<bool> {
        self.labels.iter().map(|l| l.divides_unchecked(b)).collect()
    }
}

pub fn check_boundary_squared_zero(c: &ChainComplex) -> bool {
    c.first_boundary_failure().is_none()
}

/// Reduced homology of the whole complex; the empty complex has
/// `H̃_{-1} = 1`.
pub fn homology_dims(x: &LabeledComplex, field: Field) -> Result<ReducedHomology> {
    Ok(chain_complex(x)?.homology(field))
}

/// First facet relation `(cell, facet)` whose two labels coincide.
pub fn minimality_witness(x: &LabeledComplex) -> Option<(usize, usize)> {
    x.cells().iter().enumerate().find_map(|(id, c)| {
        c.facets()
            .iter()
            .find(|&&(f, _)| x.cell(f).label() == c.label())
            .map(|&(f, _)| (id, f))
    })
}

pub fn check_minimal(x: &LabeledComplex) -> bool {
    minimality_witness(x).is_none()
}

/// SHA-256 of a canonical text form of the complex, signs included.
pub fn complex_digest(x: &LabeledComplex) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={}\n", x.n()));
    for v in x.vertex_labels() {
        h.update(format!("v {}\n", v.canonical()));
    }
    for c in x.cells() {
        h.update(format!(
            "c {} {:?} {:?}\n",
            c.dim(),
            c.vertices(),
            c.facets()
        ));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<usize>,
    /// Reduced homology dimensions starting at `H̃_{-1}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: String,
    pub cells: usize,
    pub acyclic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub field: String,
    pub vars: usize,
    pub f_vector: Vec<usize>,
    pub complex_digest: String,
    pub lattice_degrees: usize,
    pub checks: Vec<Check>,
    pub degrees: Vec<DegreeCheck>,
}

impl VerificationReport {
    fn check(&self, name: &str) -> &Check {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("report carries every check")
    }

    pub fn boundary_squared_zero(&self) -> bool {
        self.check("boundary_squared_zero").passed
    }

    pub fn acyclic(&self) -> bool {
        self.check("acyclic").passed
    }

    pub fn minimal(&self) -> bool {
        self.check("minimal").passed
    }

    /// `∂² = 0` and every lattice restriction acyclic.
    pub fn is_resolution(&self) -> bool {
        self.boundary_squared_zero() && self.acyclic()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing_degrees(&self) -> impl Iterator<Item = &DegreeCheck> {
        self.degrees.iter().filter(|d| !d.acyclic)
    }

    /// Witness of the acyclicity check, if it failed.
    pub fn acyclicity_witness(&self) -> Option<&Witness> {
        self.check("acyclic").witness.as_ref()
    }
}

/// Check that `x` supports a free resolution of the ideal generated by
/// `gens`: `∂² = 0` and `X_{⪯b}` acyclic for every non-bottom lcm-lattice
/// element `b`. Minimality is reported alongside. `jobs = 0` uses all cores.
pub fn verify_resolution(
    x: &LabeledComplex,
    gens: &[Monomial],
    field: Field,
    jobs: usize,
) -> Result<VerificationReport> {
    let mut want = gens.to_vec();
    want.sort_by(canonical_cmp);
    want.dedup();
    if want != x.vertex_labels() {
        let missing: Vec<String> = want
            .iter()
            .filter(|g| !x.vertex_labels().contains(g))
            .map(|g| g.to_string())
            .collect();
        let extra: Vec<String> = x
            .vertex_labels()
            .iter()
            .filter(|v| !want.contains(v))
            .map(|v| v.to_string())
            .collect();
        return Err(Error::VertexMismatch(format!(
            "missing [{}], extra [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    let c = chain_complex(x)?;
    let bsq_fail = c.first_boundary_failure();

    let lattice = LcmLattice::build(&want)?;
    let degrees = &lattice.elements()[1..];
    let run = || -> Vec<DegreeCheck> {
        degrees
            .par_iter()
            .map(|b| degree_check(&c, &want, b, field))
            .collect()
    };
    let results = if jobs == 1 {
        degrees
            .iter()
            .map(|b| degree_check(&c, &want, b, field))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)
    };

    let acyclic_witness = results.iter().find(|d| !d.acyclic).map(|d| Witness {
        degree: Some(d.degree.clone()),
        cell: None,
        homology: d.homology.clone(),
    });
    let min_witness = minimality_witness(x);
    Ok(VerificationReport {
        field: field.to_string(),
        vars: x.n(),
        f_vector: x.f_vector(),
        complex_digest: complex_digest(x),
        lattice_degrees: degrees.len(),
        checks: vec![
            Check {
                name: "boundary_squared_zero",
                passed: bsq_fail.is_none(),
                witness: bsq_fail.map(|id| Witness {
                    degree: Some(x.cell(id).label().canonical()),
                    cell: Some(id),
                    homology: None,
                }),
            },
            Check {
                name: "acyclic",
                passed: acyclic_witness.is_none(),
                witness: acyclic_witness,
            },
            Check {
                name: "minimal",
                passed: min_witness.is_none(),
                witness: min_witness.map(|(id, _)| Witness {
                    degree: Some(x.cell(id).label().canonical()),
                    cell: Some(id),
                    homology: None,
                }),
            },
        ],
        degrees: results,
    })
}

fn degree_check(c: &ChainComplex, gens: &[Monomial], b: &Monomial, field: Field) -> DegreeCheck {
    let keep = c.kept_at(b);
    let cells = keep.iter().filter(|&&k| k).count();
    let (acyclic, hom) = if cells == 0 {
        // an empty restriction is fine exactly when the ideal is zero in degree b
        let zero_strand = !gens.iter().any(|g| g.divides_unchecked(b));
        (zero_strand, vec![1])
    } else {
        let h = c.restricted_homology(&keep, field);
        (h.is_acyclic(), h.dims().to_vec())
    };
    DegreeCheck {
        degree: b.canonical(),
        cells,
        acyclic,
        homology: (!acyclic).then_some(hom),
    }
}

/// Multigraded Betti numbers `β_{i,b}`, stored sparsely in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: Vec<(usize, Monomial, u64)>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Monomial, u64)>) -> Self {
        let mut v: Vec<(usize, Monomial, u64)> = entries.into_iter().filter(|e| e.2 != 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| canonical_cmp(&a.1, &b.1)));
        let mut merged: Vec<(usize, Monomial, u64)> = Vec::with_capacity(v.len());
        for e in v {
            match merged.last_mut() {
                Some(last) if last.0 == e.0 && last.1 == e.1 => last.2 += e.2,
                _ => merged.push(e),
            }
        }
        BettiTable { entries: merged }
    }

    pub fn entries(&self) -> &[(usize, Monomial, u64)] {
        &self.entries
    }

    pub fn get(&self, i: usize, b: &Monomial) -> u64 {
        self.entries
            .iter()
            .find(|e| e.0 == i && &e.1 == b)
            .map_or(0, |e| e.2)
    }

    /// `β_i` for `i = 0..`, without trailing zeros.
    pub fn totals(&self) -> Vec<u64> {
        let mut t = Vec::new();
        for (i, _, v) in &self.entries {
            if t.len() <= *i {
                t.resize(i + 1, 0);
            }
            t[*i] += v;
        }
        t
    }

    /// Distinct multidegrees with a nonzero Betti number.
    pub fn support(&self) -> Vec<&Monomial> {
        let mut s: Vec<&Monomial> = self.entries.iter().map(|e| &e.1).collect();
        s.sort_by(|a, b| canonical_cmp(a, b));
        s.dedup();
        s
    }

    pub fn to_json(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(i, b, v)| BettiEntry {
                i: *i,
                degree: b.canonical(),
                value: *v,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BettiEntry {
    pub i: usize,
    pub degree: String,
    pub value: u64,
}

/// `β_{i,b}` = number of `i`-cells labeled `b`, for a complex certified by
/// `report` as a minimal resolution.
pub fn betti_from_cells(x: &LabeledComplex, report: &VerificationReport) -> Result<BettiTable> {
    if report.complex_digest != complex_digest(x) {
        return Err(Error::NotVerified(
            "report belongs to a different complex".into(),
        ));
    }
    if !report.is_resolution() {
        return Err(Error::NotVerified("not a resolution".into()));
    }
    if !report.minimal() {
        return Err(Error::NotVerified("resolution is not minimal".into()));
    }
    Ok(BettiTable::from_entries(
        x.cells().iter().map(|c| (c.dim(), c.label().clone(), 1)),
    ))
}
