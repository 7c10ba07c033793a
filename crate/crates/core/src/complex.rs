//! Labeled regular cell complexes, stored as face posets.
//!
//! A cell is identified by its vertex set. Vertices carry distinct monomial
//! labels, and every cell is labeled by the lcm of its vertex labels. No
//! geometry is kept; regularity is checked through its combinatorial shadow,
//! the diamond property.
//!
//! Canonical numbering: vertices ascend by degree and are rlex-descending
//! within a degree; cells are sorted by `(dim, sorted vertex ids)`. Every
//! constructor returns a complex in canonical form, so two complexes with
//! the same cells compare equal.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial};

/// Sign of a facet relation; `0` marks a relation without an assigned sign.
pub type Sign = i8;

/// `(dim, vertex labels, facets as (record position, sign))`.
pub type CellRecord = (usize, Vec<Monomial>, Vec<(usize, Sign)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    dim: usize,
    vertices: Vec<usize>,
    label: Monomial,
    facets: Vec<(usize, Sign)>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn label(&self) -> &Monomial {
        &self.label
    }

    /// `(facet cell id, sign)`, sorted by cell id.
    pub fn facets(&self) -> &[(usize, Sign)] {
        &self.facets
    }

    pub fn sign_of(&self, facet: usize) -> Option<Sign> {
        self.facets
            .iter()
            .find(|(f, _)| *f == facet)
            .map(|&(_, s)| s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    n: usize,
    vertex_labels: Vec<Monomial>,
    cells: Vec<Cell>,
    index: HashMap<Vec<usize>, usize>,
}

/// Cell under construction: vertices as canonical-sorted labels, facets as
/// indices into the builder.
struct RawCell {
    dim: usize,
    verts: Vec<Monomial>,
    facets: Vec<(usize, Sign)>,
}

struct Builder {
    n: usize,
    cells: Vec<RawCell>,
    index: HashMap<Vec<Monomial>, usize>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            cells: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn from_complex(x: &LabeledComplex) -> Self {
        let mut b = Builder::new(x.n);
        for c in &x.cells {
            let verts = c
                .vertices
                .iter()
                .map(|&v| x.vertex_labels[v].clone())
                .collect();
            b.push_new(c.dim, verts, c.facets.clone());
        }
        b
    }

    fn push_new(&mut self, dim: usize, verts: Vec<Monomial>, facets: Vec<(usize, Sign)>) -> usize {
        let id = self.cells.len();
        self.index.insert(verts.clone(), id);
        self.cells.push(RawCell { dim, verts, facets });
        id
    }

    /// Insert a cell or, if its vertex set is already present, check that the
    /// two copies agree and keep the existing one (with its signs).
    fn insert(
        &mut self,
        dim: usize,
        mut verts: Vec<Monomial>,
        facets: Vec<(usize, Sign)>,
    ) -> Result<usize> {
        verts.sort_by(canonical_cmp);
        if let Some(&id) = self.index.get(&verts) {
            let old = &self.cells[id];
            let mut a: Vec<usize> = old.facets.iter().map(|f| f.0).collect();
            let mut b: Vec<usize> = facets.iter().map(|f| f.0).collect();
            a.sort_unstable();
            b.sort_unstable();
            if old.dim != dim || a != b {
                return Err(Error::InconsistentGlue(show_labels(&verts)));
            }
            return Ok(id);
        }
        Ok(self.push_new(dim, verts, facets))
    }

    fn finish(self) -> Result<LabeledComplex> {
        let n = self.n;
        let mut vertex_labels: Vec<Monomial> = self
            .cells
            .iter()
            .filter(|c| c.dim == 0)
            .map(|c| {
                if c.verts.len() != 1 {
                    Err(Error::NotRegular(format!(
                        "0-cell with vertices {}",
                        show_labels(&c.verts)
                    )))
                } else {
                    Ok(c.verts[0].clone())
                }
            })
            .collect::<Result<_>>()?;
        if let Some(v) = vertex_labels.iter().find(|v| v.ambient() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: v.ambient(),
            });
        }
        vertex_labels.sort_by(canonical_cmp);
        if let Some(w) = vertex_labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let vid: HashMap<&Monomial, usize> = vertex_labels
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        let mut keyed = Vec::with_capacity(self.cells.len());
        for (raw, c) in self.cells.iter().enumerate() {
            let mut ids = Vec::with_capacity(c.verts.len());
            for v in &c.verts {
                let id = vid
                    .get(v)
                    .ok_or_else(|| Error::NotRegular(format!("vertex {v} has no 0-cell")))?;
                ids.push(*id);
            }
            ids.sort_unstable();
            keyed.push((c.dim, ids, raw));
        }
        keyed.sort();
        let mut new_id = vec![0; self.cells.len()];
        for (i, (_, _, raw)) in keyed.iter().enumerate() {
            new_id[*raw] = i;
        }

        let mut cells = Vec::with_capacity(keyed.len());
        let mut index = HashMap::with_capacity(keyed.len());
        for (i, (dim, ids, raw)) in keyed.into_iter().enumerate() {
            let raw_cell = &self.cells[raw];
            let mut facets: Vec<(usize, Sign)> = raw_cell
                .facets
                .iter()
                .map(|&(f, s)| (new_id[f], s))
                .collect();
            facets.sort_unstable();
            let label = ids
                .iter()
                .skip(1)
                .fold(vertex_labels[ids[0]].clone(), |acc, &v| {
                    acc.lcm_unchecked(&vertex_labels[v])
                });
            index.insert(ids.clone(), i);
            cells.push(Cell {
                dim,
                vertices: ids,
                label,
                facets,
            });
        }
        let x = LabeledComplex {
            n,
            vertex_labels,
            cells,
            index,
        };
        x.validate()?;
        Ok(x)
    }
}

fn show_labels(ms: &[Monomial]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

impl LabeledComplex {
    /// The empty complex in `n` variables.
    pub fn empty(n: usize) -> Self {
        LabeledComplex {
            n,
            vertex_labels: Vec::new(),
            cells: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex labels in canonical order; a vertex id is a position here.
    pub fn vertex_labels(&self) -> &[Monomial] {
        &self.vertex_labels
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.last().map(|c| c.dim)
    }

    /// Cell id with exactly this (sorted) vertex id set.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Cell id with exactly this set of vertex labels.
    pub fn find_by_labels(&self, labels: &[Monomial]) -> Option<usize> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            ids.push(self.vertex_labels.iter().position(|v| v == l)?);
        }
        ids.sort_unstable();
        self.find(&ids)
    }

    pub fn vertex_label_set(&self, cell: usize) -> Vec<Monomial> {
        self.cells[cell]
            .vertices
            .iter()
            .map(|&v| self.vertex_labels[v].clone())
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    /// True when every facet relation carries a sign.
    pub fn has_incidence(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.facets.iter().all(|&(_, s)| s != 0))
    }

    /// Same cells (vertex sets, dims, labels, facet relations), signs ignored.
    pub fn same_cells(&self, other: &LabeledComplex) -> bool {
        self.n == other.n
            && self.vertex_labels == other.vertex_labels
            && self.cells.len() == other.cells.len()
            && self.cells.iter().zip(&other.cells).all(|(a, b)| {
                a.dim == b.dim
                    && a.vertices == b.vertices
                    && a.label == b.label
                    && a.facets
                        .iter()
                        .map(|f| f.0)
                        .eq(b.facets.iter().map(|f| f.0))
            })
    }

    fn validate(&self) -> Result<()> {
        for (id, c) in self.cells.iter().enumerate() {
            match c.dim {
                0 => {
                    if c.vertices.len() != 1 || !c.facets.is_empty() {
                        return Err(Error::NotRegular(format!("malformed 0-cell {id}")));
                    }
                }
                1 if c.facets.len() != 2 || c.vertices.len() != 2 => {
                    return Err(Error::NotRegular(format!(
                        "edge {} does not have two endpoints",
                        c.label
                    )));
                }
                _ => {}
            }
            for &(f, _) in &c.facets {
                let fc = &self.cells[f];
                if fc.dim + 1 != c.dim || !is_subset(&fc.vertices, &c.vertices) {
                    return Err(Error::NotRegular(format!(
                        "cell {id} has an ill-formed facet {f}"
                    )));
                }
            }
            if c.dim >= 2 {
                let mut count: HashMap<usize, usize> = HashMap::new();
                for &(f, _) in &c.facets {
                    for &(r, _) in &self.cells[f].facets {
                        *count.entry(r).or_default() += 1;
                    }
                }
                if let Some((r, k)) = count.iter().find(|(_, &k)| k != 2) {
                    return Err(Error::NotRegular(format!(
                        "diamond property fails: face {r} lies in {k} facets of cell {id}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Build a complex from cells given as `(dim, vertex labels)`; facet
    /// relations are derived from vertex inclusion, signs are left unassigned.
    pub fn from_cells(n: usize, cells: &[(usize, Vec<Monomial>)]) -> Result<Self> {
        let mut order: Vec<&(usize, Vec<Monomial>)> = cells.iter().collect();
        order.sort_by_key(|c| c.0);
        let mut b = Builder::new(n);
        let mut by_dim: BTreeMap<usize, Vec<(usize, HashSet<Monomial>)>> = BTreeMap::new();
        for (dim, verts) in order {
            let vs: HashSet<Monomial> = verts.iter().cloned().collect();
            if vs.len() != verts.len() {
                return Err(Error::DuplicateLabel(show_labels(verts)));
            }
            let facets: Vec<(usize, Sign)> = if *dim == 0 {
                Vec::new()
            } else {
                by_dim
                    .get(&(dim - 1))
                    .map(|lower| {
                        lower
                            .iter()
                            .filter(|(_, fs)| fs.is_subset(&vs))
                            .map(|(id, _)| (*id, 0))
                            .collect()
                    })
                    .unwrap_or_default()
            };
            let id = b.insert(*dim, verts.clone(), facets)?;
            by_dim.entry(*dim).or_default().push((id, vs));
        }
        b.finish()
    }

    /// Build a complex from explicit cell records `(dim, vertex labels,
    /// facets)`, where facets are `(position in records, sign)`.
    pub fn from_parts(n: usize, records: Vec<CellRecord>) -> Result<Self> {
        let mut b = Builder::new(n);
        let count = records.len();
        for (dim, mut verts, facets) in records {
            verts.sort_by(canonical_cmp);
            if verts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateLabel(show_labels(&verts)));
            }
            if b.index.contains_key(&verts) {
                return Err(Error::NotRegular(format!(
                    "duplicate cell {}",
                    show_labels(&verts)
                )));
            }
            if let Some(&(f, _)) = facets.iter().find(|(f, _)| *f >= count) {
                return Err(Error::NotRegular(format!("dangling facet {f}")));
            }
            b.push_new(dim, verts, facets);
        }
        b.finish()
    }

    /// The full simplex on the given vertex labels, with the standard
    /// simplicial signs.
    pub fn simplex(labels: &[Monomial]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyInput("simplex vertices"));
        }
        assert!(
            labels.len() <= 24,
            "simplex on {} vertices is too large",
            labels.len()
        );
        let n = labels[0].ambient();
        let mut sorted = labels.to_vec();
        sorted.sort_by(canonical_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let k = sorted.len();
        let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
        masks.sort_by_key(|m| m.count_ones());
        let mut raw_of_mask = HashMap::with_capacity(masks.len());
        let mut b = Builder::new(n);
        for &mask in &masks {
            let members: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let facets = if members.len() == 1 {
                Vec::new()
            } else {
                members
                    .iter()
                    .enumerate()
                    .map(|(pos, &i)| {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        (raw_of_mask[&(mask & !(1 << i))], sign)
                    })
                    .collect()
            };
            let verts = members.iter().map(|&i| sorted[i].clone()).collect();
            raw_of_mask.insert(mask, b.push_new(members.len() - 1, verts, facets));
        }
        b.finish()
    }

    /// Cartesian product: cells `A×B` with vertex labels `a·b` and
    /// label `label(A)·label(B)`. Signs follow the tensor rule
    /// `ε(A×B, A'×B) = ε(A,A')`, `ε(A×B, A×B') = (-1)^{dim A} ε(B,B')`.
    pub fn product(&self, other: &LabeledComplex) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut seen = HashSet::new();
        let mut vprod =
            vec![Vec::with_capacity(other.vertex_labels.len()); self.vertex_labels.len()];
        for (i, a) in self.vertex_labels.iter().enumerate() {
            for b in &other.vertex_labels {
                let p = a.mul(b)?;
                if !seen.insert(p.clone()) {
                    return Err(Error::ProductCollision(p.to_string()));
                }
                vprod[i].push(p);
            }
        }
        let ny = other.cells.len();
        let mut b = Builder::new(self.n);
        for (ia, ca) in self.cells.iter().enumerate() {
            for (ib, cb) in other.cells.iter().enumerate() {
                let mut verts = Vec::with_capacity(ca.vertices.len() * cb.vertices.len());
                for &va in &ca.vertices {
                    for &vb in &cb.vertices {
                        verts.push(vprod[va][vb].clone());
                    }
                }
                verts.sort_by(canonical_cmp);
                let mut facets = Vec::with_capacity(ca.facets.len() + cb.facets.len());
                for &(fa, s) in &ca.facets {
                    facets.push((fa * ny + ib, s));
                }
                let twist: Sign = if ca.dim % 2 == 0 { 1 } else { -1 };
                for &(fb, s) in &cb.facets {
                    facets.push((ia * ny + fb, twist * s));
                }
                b.push_new(ca.dim + cb.dim, verts, facets);
            }
        }
        b.finish()
    }

    /// Glue two complexes along the cells they share (identified by vertex
    /// label sets). Shared cells keep the signs of `self`.
    pub fn union(&self, other: &LabeledComplex) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut b = Builder::from_complex(self);
        let mut map = Vec::with_capacity(other.cells.len());
        for c in &other.cells {
            let verts = c
                .vertices
                .iter()
                .map(|&v| other.vertex_labels[v].clone())
                .collect();
            let facets = c.facets.iter().map(|&(f, s)| (map[f], s)).collect();
            map.push(b.insert(c.dim, verts, facets)?);
        }
        b.finish()
    }

    /// Multiply every vertex label by `mu`.
    pub fn scale_labels(&self, mu: &Monomial) -> Result<Self> {
        let mut b = Builder::new(self.n);
        let scaled = self
            .vertex_labels
            .iter()
            .map(|v| v.mul(mu))
            .collect::<Result<Vec<_>>>()?;
        for c in &self.cells {
            let verts = c.vertices.iter().map(|&v| scaled[v].clone()).collect();
            b.push_new(c.dim, verts, c.facets.clone());
        }
        b.finish()
    }

    /// Subcomplex of the cells accepted by `keep`; `keep` must accept every
    /// face of an accepted cell.
    fn subcomplex(&self, keep: impl Fn(&Cell) -> bool) -> Result<Self> {
        let mut b = Builder::new(self.n);
        let mut map: Vec<Option<usize>> = vec![None; self.cells.len()];
        for (id, c) in self.cells.iter().enumerate() {
            if !keep(c) {
                continue;
            }
            let facets = c
                .facets
                .iter()
                .map(|&(f, s)| {
                    map[f].map(|g| (g, s)).ok_or_else(|| {
                        Error::NotRegular(format!("subcomplex drops a face of cell {id}"))
                    })
                })
                .collect::<Result<_>>()?;
            let verts = c
                .vertices
                .iter()
                .map(|&v| self.vertex_labels[v].clone())
                .collect();
            map[id] = Some(b.push_new(c.dim, verts, facets));
        }
        b.finish()
    }

    /// `X_{⪯b}`: all cells whose label divides `b`.
    pub fn restrict(&self, b: &Monomial) -> Result<Self> {
        if b.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: b.ambient(),
            });
        }
        self.subcomplex(|c| c.label.divides_unchecked(b))
    }

    /// Restriction to an explicit set of surviving vertex ids.
    pub fn restrict_to_vertices(&self, keep: &[bool]) -> Result<Self> {
        self.subcomplex(|c| c.vertices.iter().all(|&v| keep[v]))
    }

    /// All cells whose vertex labels lie in `labels`.
    pub fn spanned_subcomplex(&self, labels: &[Monomial]) -> Result<Self> {
        let pos: HashMap<&Monomial, usize> = self
            .vertex_labels
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut keep = vec![false; self.vertex_labels.len()];
        for l in labels {
            let i = pos.get(l).ok_or_else(|| Error::NotAVertex(l.to_string()))?;
            keep[*i] = true;
        }
        self.restrict_to_vertices(&keep)
    }

    /// Remove cells that are not faces of any remaining cell.
    pub fn without_cells(&self, ids: &[usize]) -> Result<Self> {
        let drop: HashSet<&[usize]> = ids.iter().map(|&i| &self.cells[i].vertices[..]).collect();
        self.subcomplex(|c| !drop.contains(&c.vertices[..]))
    }

    /// Overwrite one facet sign.
    pub fn set_incidence(&mut self, cell: usize, facet: usize, sign: Sign) -> Result<()> {
        let slot = self.cells[cell]
            .facets
            .iter_mut()
            .find(|(f, _)| *f == facet)
            .ok_or_else(|| Error::NotRegular(format!("{facet} is not a facet of {cell}")))?;
        slot.1 = sign;
        Ok(())
    }

    /// Recompute every facet sign so that the two paths from a cell to any
    /// codimension-2 face cancel.
    ///
    /// Edges get `+1` on the endpoint that comes first in canonical order
    /// (the rlex-greater label) and `-1` on the other. For higher cells the
    /// facet with the lexicographically least vertex list gets `+1` and the
    /// remaining signs follow by breadth-first search over the facet-ridge
    /// graph.
    pub fn assign_incidence(&self) -> Result<Self> {
        let mut out = self.clone();
        for id in 0..out.cells.len() {
            let dim = out.cells[id].dim;
            match dim {
                0 => {}
                1 => {
                    let fs = &mut out.cells[id].facets;
                    let first = fs[0].0.min(fs[1].0);
                    for (f, s) in fs.iter_mut() {
                        *s = if *f == first { 1 } else { -1 };
                    }
                }
                _ => {
                    let signs = orient_cell(&out, id)?;
                    for (f, s) in out.cells[id].facets.iter_mut() {
                        *s = signs[f];
                    }
                }
            }
        }
        Ok(out)
    }
}

fn orient_cell(x: &LabeledComplex, id: usize) -> Result<HashMap<usize, Sign>> {
    let cell = &x.cells[id];
    // ridge -> [(facet, ε(facet, ridge))]
    let mut ridges: HashMap<usize, Vec<(usize, Sign)>> = HashMap::new();
    for &(f, _) in &cell.facets {
        for &(r, s) in &x.cells[f].facets {
            ridges.entry(r).or_default().push((f, s));
        }
    }
    let mut adjacency: HashMap<usize, Vec<(usize, Sign)>> = HashMap::new();
    for (r, fs) in &ridges {
        let [(f1, s1), (f2, s2)] = fs[..] else {
            return Err(Error::IncidenceContradiction {
                cell: id,
                reason: format!("ridge {r} lies in {} facets", fs.len()),
            });
        };
        if s1 == 0 || s2 == 0 {
            return Err(Error::IncidenceMissing(f1.min(f2)));
        }
        // ε(σ,f2) = -ε(σ,f1)·ε(f1,r)·ε(f2,r)
        let rel = -s1 * s2;
        adjacency.entry(f1).or_default().push((f2, rel));
        adjacency.entry(f2).or_default().push((f1, rel));
    }
    let start = cell
        .facets
        .iter()
        .map(|f| f.0)
        .min()
        .expect("cell of dim >= 2 has facets");
    let mut sign: HashMap<usize, Sign> = HashMap::from([(start, 1)]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let sf = sign[&f];
        for &(g, rel) in adjacency.get(&f).map(|v| v.as_slice()).unwrap_or(&[]) {
            let want = sf * rel;
            match sign.get(&g) {
                None => {
                    sign.insert(g, want);
                    queue.push_back(g);
                }
                Some(&have) if have != want => {
                    return Err(Error::IncidenceContradiction {
                        cell: id,
                        reason: format!("facets {f} and {g} admit no coherent orientation"),
                    });
                }
                _ => {}
            }
        }
    }
    if sign.len() != cell.facets.len() {
        return Err(Error::IncidenceContradiction {
            cell: id,
            reason: "facet-ridge graph is disconnected".into(),
        });
    }
    Ok(sign)
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}
