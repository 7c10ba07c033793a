//! Brute-force oracles: multigraded Betti numbers from upper Koszul
//! simplicial complexes, and ideal intersection by pairwise lcms.

use rayon::prelude::*;

use crate::borel::minimal_generators;
use crate::error::{Error, Result};
use crate::lattice::LcmLattice;
use crate::linalg::{Field, ReducedHomology, SparseMatrix};
use crate::monomial::{canonical_cmp, Monomial};
use crate::resolution::BettiTable;

/// A finite simplicial complex on variable indices. The void complex has
/// no faces at all; `{∅}` has exactly the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    /// Sorted by size, then lexicographically.
    faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces.
    pub fn from_faces(faces: &[Vec<usize>]) -> Self {
        let mut all = std::collections::BTreeSet::new();
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for mask in 0u64..(1 << f.len()) {
                all.insert(
                    (0..f.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| f[i])
                        .collect::<Vec<_>>(),
                );
            }
        }
        let mut faces: Vec<Vec<usize>> = all.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut vertices: Vec<usize> = faces.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        SimplicialComplex { vertices, faces }
    }

    pub fn void() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            faces: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.faces
            .binary_search_by(|g| g.len().cmp(&f.len()).then_with(|| g.cmp(&f)))
            .is_ok()
    }

    pub fn reduced_homology(&self, field: Field) -> ReducedHomology {
        let top = self.faces.last().map_or(0, |f| f.len());
        // sizes[k + 1] = number of faces with k + 1 elements
        let mut sizes = vec![0; top + 1];
        for f in &self.faces {
            sizes[f.len()] += 1;
        }
        let mut start = vec![0; top + 2];
        for k in 0..=top {
            start[k + 1] = start[k] + sizes[k];
        }
        let mut boundaries = Vec::with_capacity(top);
        for size in 1..=top {
            let mut m = SparseMatrix::new(sizes[size - 1]);
            for f in &self.faces[start[size]..start[size + 1]] {
                let col = (0..f.len())
                    .map(|drop| {
                        let g: Vec<usize> = f
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        let row = self.faces[start[size - 1]..start[size]]
                            .binary_search(&g)
                            .expect("complex is closed under faces");
                        (row, if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                m.push_col(col);
            }
            boundaries.push(m);
        }
        ReducedHomology::from_boundaries(&sizes, &boundaries, field)
    }
}

/// `K^b(I) = { squarefree τ ⊆ supp(b) : x^b / x^τ ∈ I }`.
pub fn upper_koszul(gens: &[Monomial], b: &Monomial) -> Result<SimplicialComplex> {
    for g in gens {
        if g.ambient() != b.ambient() {
            return Err(Error::AmbientMismatch {
                left: b.ambient(),
                right: g.ambient(),
            });
        }
    }
    let supp: Vec<usize> = b.support().collect();
    if supp.len() > 20 {
        return Err(Error::Overflow);
    }
    let mut faces = Vec::new();
    for mask in 0u32..(1 << supp.len()) {
        let mut e = b.exps().to_vec();
        let mut tau = Vec::new();
        for (k, &v) in supp.iter().enumerate() {
            if mask & (1 << k) != 0 {
                e[v - 1] -= 1;
                tau.push(v);
            }
        }
        let q = Monomial::new(e);
        if gens.iter().any(|g| g.divides_unchecked(&q)) {
            faces.push(tau);
        }
    }
    if faces.is_empty() {
        return Ok(SimplicialComplex::void());
    }
    Ok(SimplicialComplex::from_faces(&faces))
}

/// `β_{i,b} = dim H̃_{i-1}(K^b)` for each `b` in `degrees`.
pub fn betti_via_koszul(
    gens: &[Monomial],
    degrees: &[Monomial],
    field: Field,
) -> Result<BettiTable> {
    let per_degree: Vec<Vec<(usize, Monomial, u64)>> = degrees
        .par_iter()
        .map(|b| {
            let h = upper_koszul(gens, b)?.reduced_homology(field);
            Ok(h.dims()
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(j, &d)| (j, b.clone(), d as u64))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(BettiTable::from_entries(per_degree.into_iter().flatten()))
}

/// Koszul Betti numbers over the lcm-lattice, which carries all of them.
pub fn betti_via_koszul_lattice(gens: &[Monomial], field: Field) -> Result<BettiTable> {
    let lattice = LcmLattice::build(gens)?;
    betti_via_koszul(gens, &lattice.elements()[1..], field)
}

/// Every divisor of `m`, including `1` and `m`.
pub fn divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(m.ambient())];
    for (i, &e) in m.exps().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            for k in 0..=e {
                let mut x = d.exps().to_vec();
                x[i] = k;
                next.push(Monomial::new(x));
            }
        }
        out = next;
    }
    out.sort_by(canonical_cmp);
    out
}

/// Minimal generators of `(A) ∩ (B)`: minimalized pairwise lcms.
pub fn brute_intersection(a: &[Monomial], b: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut lcms = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            lcms.push(x.lcm(y)?);
        }
    }
    let mut out = minimal_generators(lcms);
    out.sort_by(canonical_cmp);
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::{ek_betti, expand_principal, intersect_borel, BorelIdeal};

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn ms(s: &str, n: usize) -> Vec<Monomial> {
        s.split(',').map(|t| m(t, n)).collect()
    }

    #[test]
    fn upper_koszul_examples() {
        let k = upper_koszul(&ms("a,b", 2), &m("ab", 2)).unwrap();
        assert_eq!(k.faces(), &[vec![], vec![1], vec![2]]);
        let k = upper_koszul(&ms("a", 2), &m("a", 2)).unwrap();
        assert_eq!(k.faces(), &[Vec::<usize>::new()]);
        assert_eq!(k.reduced_homology(Field::Rational).get(-1), 1);
        let k = upper_koszul(&ms("a^2", 2), &m("ab", 2)).unwrap();
        assert!(k.is_void());
        assert!(k.reduced_homology(Field::Rational).is_acyclic());
    }

    #[test]
    fn koszul_betti_examples() {
        let b = betti_via_koszul_lattice(&ms("a,b", 2), Field::Rational).unwrap();
        assert_eq!(b.get(0, &m("a", 2)), 1);
        assert_eq!(b.get(0, &m("b", 2)), 1);
        assert_eq!(b.get(1, &m("ab", 2)), 1);
        assert_eq!(b.totals(), vec![2, 1]);

        for (n, want) in [(3, vec![6, 8, 3]), (4, vec![10, 20, 15, 4])] {
            let ideal = BorelIdeal::principal(&Monomial::var_power(n, n, 2)).unwrap();
            let b = betti_via_koszul_lattice(ideal.generators(), Field::Rational).unwrap();
            assert_eq!(b.totals(), want);
            let ek: Vec<u64> = ek_betti(&ideal);
            assert_eq!(b.totals(), ek);
        }
    }

    #[test]
    fn betti_degree_set_independence() {
        let ideal = BorelIdeal::from_borel_gens(&ms("ab^2,a^2c", 3)).unwrap();
        let gens = ideal.generators();
        let lattice = betti_via_koszul_lattice(gens, Field::Rational).unwrap();
        let top = gens
            .iter()
            .skip(1)
            .fold(gens[0].clone(), |a, g| a.lcm(g).unwrap());
        let all = betti_via_koszul(gens, &divisors(&top), Field::Rational).unwrap();
        assert_eq!(lattice, all);
        // β_0 is supported exactly on G(I)
        let zeroth: Vec<&Monomial> = lattice
            .entries()
            .iter()
            .filter(|e| e.0 == 0)
            .map(|e| {
                assert_eq!(e.2, 1);
                &e.1
            })
            .collect();
        assert_eq!(zeroth.len(), gens.len());
        assert!(zeroth.iter().all(|z| gens.contains(z)));
    }

    #[test]
    fn brute_intersection_examples() {
        let a = expand_principal(&m("b^5c", 3)).unwrap();
        let b = expand_principal(&m("ab^3c^2", 3)).unwrap();
        let got = brute_intersection(a.generators(), b.generators()).unwrap();
        assert_eq!(got, expand_principal(&m("ab^4c", 3)).unwrap().generators());
        assert_eq!(
            brute_intersection(a.generators(), a.generators()).unwrap(),
            a.generators()
        );

        let mm = m("ab^4c^3d", 4);
        let j = BorelIdeal::from_borel_gens(&ms("a^2b^4cd^2,a^3bc^2d^3", 4)).unwrap();
        let got = brute_intersection(expand_principal(&mm).unwrap().generators(), j.generators())
            .unwrap();
        let want = BorelIdeal::from_borel_gens(&ms("a^3b^2c^3d,a^2b^4c^2d", 4)).unwrap();
        assert_eq!(got, want.generators());
        assert_eq!(
            intersect_borel(&mm, &j).unwrap().generators(),
            want.generators()
        );
    }

    #[test]
    fn divisor_enumeration() {
        let d = divisors(&m("a^2b", 2));
        assert_eq!(d.len(), 6);
        assert_eq!(d[0], Monomial::one(2));
        assert_eq!(d[5], m("a^2b", 2));
    }

    #[test]
    fn simplicial_closure_and_membership() {
        let k = SimplicialComplex::from_faces(&[vec![1, 2, 3]]);
        assert_eq!(k.faces().len(), 8);
        assert!(k.contains(&[3, 1]));
        assert!(!k.contains(&[4]));
        assert!(k.reduced_homology(Field::Rational).is_acyclic());
        let hollow = SimplicialComplex::from_faces(&[vec![1, 2], vec![2, 3], vec![1, 3]]);
        assert_eq!(hollow.reduced_homology(Field::Rational).get(1), 1);
    }
}
