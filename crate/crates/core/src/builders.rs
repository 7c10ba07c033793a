//! The recursive constructions `P_d`, `Q(m)` and `Q(m_1, ..., m_s)`, plus
//! extraction of `Q(I)` from `P_d(x_1..x_n)` as a cross-check.
//!
//! Every public builder returns a complex with freshly assigned incidence
//! signs, so recursive and extracted complexes agree sign for sign.

use std::collections::HashMap;

use crate::borel::{l4_decompose, BorelIdeal, L4Decomposition, PrincipalForm};
use crate::complex::LabeledComplex;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarRange};

/// Memo tables for the recursions. Intermediate complexes carry whatever
/// signs the constructors produced; signs are reassigned once on output.
#[derive(Default)]
pub struct Builder {
    n: Option<usize>,
    p: HashMap<(VarRange, u32), LabeledComplex>,
    q: HashMap<Monomial, LabeledComplex>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    fn ambient(&mut self, n: usize) -> Result<()> {
        match self.n {
            Some(m) if m != n => Err(Error::AmbientMismatch { left: m, right: n }),
            _ => {
                self.n = Some(n);
                Ok(())
            }
        }
    }

    fn raw_p(&mut self, n: usize, range: VarRange, d: u32) -> Result<LabeledComplex> {
        if let Some(x) = self.p.get(&(range, d)) {
            return Ok(x.clone());
        }
        let x = if d == 1 {
            let vars: Vec<Monomial> = range.vars().map(|i| Monomial::var(n, i)).collect();
            LabeledComplex::simplex(&vars)?
        } else {
            let mut acc: Option<LabeledComplex> = None;
            for k in range.vars() {
                let head: Vec<Monomial> = (range.lo()..=k).map(|i| Monomial::var(n, i)).collect();
                let tail = self.raw_p(n, VarRange::new(k, range.hi(), n)?, d - 1)?;
                let c_k = LabeledComplex::simplex(&head)?.product(&tail)?;
                acc = Some(match acc {
                    None => c_k,
                    Some(a) => a.union(&c_k)?,
                });
            }
            acc.expect("variable ranges are nonempty")
        };
        self.p.insert((range, d), x.clone());
        Ok(x)
    }

    fn raw_q(&mut self, m: &Monomial) -> Result<LabeledComplex> {
        if let Some(x) = self.q.get(m) {
            return Ok(x.clone());
        }
        let n = m.ambient();
        let x = match l4_decompose(&PrincipalForm::from_monomial(m)?)? {
            L4Decomposition::Power { d, range } => self.raw_p(n, range, d)?,
            L4Decomposition::ScaledPower { scale, d, range } => {
                self.raw_p(n, range, d)?.scale_labels(&scale)?
            }
            L4Decomposition::Sum { power, terms } => {
                let mut acc: Option<LabeledComplex> = None;
                for (nk, range) in terms {
                    let q_nk = self.raw_q(&nk.to_monomial())?;
                    let c_k = q_nk.product(&self.raw_p(n, range, power)?)?;
                    acc = Some(match acc {
                        None => c_k,
                        Some(a) => a.union(&c_k)?,
                    });
                }
                acc.ok_or(Error::EmptyInput("principal decomposition"))?
            }
        };
        self.q.insert(m.clone(), x.clone());
        Ok(x)
    }

    /// `P_d` on the variables of `range`, in a ring of `n` variables.
    pub fn build_p(&mut self, n: usize, range: VarRange, d: u32) -> Result<LabeledComplex> {
        if d == 0 {
            return Err(Error::UnitMonomial);
        }
        self.ambient(n)?;
        self.raw_p(n, range, d)?.assign_incidence()
    }

    pub fn build_q_principal(&mut self, m: &Monomial) -> Result<LabeledComplex> {
        if m.is_one() {
            return Err(Error::UnitMonomial);
        }
        self.ambient(m.ambient())?;
        self.raw_q(m)?.assign_incidence()
    }

    /// `Q(m_1) ∪ ... ∪ Q(m_s)` over the Borel generators of `ideal`.
    pub fn build_q_union(&mut self, ideal: &BorelIdeal) -> Result<LabeledComplex> {
        let stages = self.raw_stages(ideal)?;
        stages
            .into_iter()
            .next()
            .expect("ideal has a Borel generator")
            .assign_incidence()
    }

    /// The partial unions `X_j = Q(m_j) ∪ ... ∪ Q(m_s)` for `j = 1..s`,
    /// each paired with the ideal `<m_j, ..., m_s>` it should resolve.
    pub fn q_union_stages(
        &mut self,
        ideal: &BorelIdeal,
    ) -> Result<Vec<(BorelIdeal, LabeledComplex)>> {
        let gens = ideal.borel_gens();
        self.raw_stages(ideal)?
            .into_iter()
            .enumerate()
            .map(|(j, x)| {
                Ok((
                    BorelIdeal::from_borel_gens(&gens[j..])?,
                    x.assign_incidence()?,
                ))
            })
            .collect()
    }

    fn raw_stages(&mut self, ideal: &BorelIdeal) -> Result<Vec<LabeledComplex>> {
        self.ambient(ideal.n())?;
        let gens = ideal.borel_gens();
        let mut stages = Vec::with_capacity(gens.len());
        let mut acc: Option<LabeledComplex> = None;
        for m in gens.iter().rev() {
            let q = self.raw_q(m)?;
            let x = match acc {
                None => q,
                Some(a) => q.union(&a)?,
            };
            stages.push(x.clone());
            acc = Some(x);
        }
        stages.reverse();
        Ok(stages)
    }

    /// The subcomplex of `P_d(x_1..x_n)` spanned by `G(I)`.
    pub fn extract_q(&mut self, ideal: &BorelIdeal) -> Result<LabeledComplex> {
        let n = ideal.n();
        self.ambient(n)?;
        let full = self.raw_p(n, VarRange::new(1, n, n)?, ideal.degree())?;
        full.spanned_subcomplex(ideal.generators())?
            .assign_incidence()
    }
}

/// `P_d(x_lo..x_hi)` in `n` variables.
pub fn build_p(n: usize, range: VarRange, d: u32) -> Result<LabeledComplex> {
    Builder::new().build_p(n, range, d)
}

pub fn build_q_principal(m: &Monomial) -> Result<LabeledComplex> {
    Builder::new().build_q_principal(m)
}

pub fn build_q_union(ideal: &BorelIdeal) -> Result<LabeledComplex> {
    Builder::new().build_q_union(ideal)
}

pub fn extract_q(ideal: &BorelIdeal) -> Result<LabeledComplex> {
    Builder::new().extract_q(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::random_borel_minimal;
    use crate::monomial::monomials_of_degree;

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn full(n: usize) -> VarRange {
        VarRange::new(1, n, n).unwrap()
    }

    fn binom(a: usize, b: usize) -> usize {
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn p_examples() {
        assert_eq!(build_p(3, full(3), 1).unwrap().f_vector(), vec![3, 3, 1]);
        let path = build_p(2, full(2), 2).unwrap();
        assert_eq!(path.f_vector(), vec![3, 2]);
        assert!(path.find_by_labels(&[m("a^2", 2), m("ab", 2)]).is_some());
        assert!(path.find_by_labels(&[m("ab", 2), m("b^2", 2)]).is_some());

        let p2 = build_p(3, full(3), 2).unwrap();
        assert_eq!(p2.f_vector(), vec![6, 8, 3]);
        for cell in [
            vec!["a^2", "ab", "ac"],
            vec!["ac", "bc", "c^2"],
            vec!["ab", "ac", "b^2", "bc"],
        ] {
            let labels: Vec<Monomial> = cell.iter().map(|s| m(s, 3)).collect();
            let id = p2.find_by_labels(&labels).unwrap();
            assert_eq!(p2.cell(id).dim(), 2);
        }
        assert_eq!(
            build_p(4, full(4), 2).unwrap().f_vector(),
            vec![10, 20, 15, 4]
        );
    }

    #[test]
    fn p_structure() {
        let mut b = Builder::new();
        for n in 1..=4usize {
            for d in 1..=4u32 {
                let x = b.build_p(4, VarRange::new(1, n, 4).unwrap(), d).unwrap();
                let f = x.f_vector();
                assert_eq!(f[0], binom(n + d as usize - 1, n - 1));
                let euler: i64 = f
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
                    .sum();
                assert_eq!(euler, 1, "n={n} d={d}");
                assert_eq!(x.dim(), Some(n - 1));
                let want = monomials_of_degree(4, VarRange::new(1, n, 4).unwrap(), d);
                assert_eq!(x.vertex_labels(), &want[..]);
                // purity: every cell lies in a top cell
                let mut covered = vec![false; x.len()];
                for id in (0..x.len()).rev() {
                    if x.cell(id).dim() == n - 1 {
                        covered[id] = true;
                    }
                    if covered[id] {
                        for &(f, _) in x.cell(id).facets() {
                            covered[f] = true;
                        }
                    }
                }
                assert!(covered.iter().all(|&c| c));
                // P_d(x_2..x_n) sits inside P_d(x_1..x_n)
                if n >= 2 {
                    let sub = b.build_p(4, VarRange::new(2, n, 4).unwrap(), d).unwrap();
                    let spanned = x.spanned_subcomplex(sub.vertex_labels()).unwrap();
                    assert!(spanned.same_cells(&sub));
                }
            }
        }
    }

    #[test]
    fn q_examples() {
        let q = build_q_principal(&m("bc", 3)).unwrap();
        assert_eq!(q.f_vector(), vec![5, 6, 2]);
        let p = build_p(3, full(3), 2).unwrap();
        let gens = BorelIdeal::principal(&m("bc", 3)).unwrap();
        assert!(q.same_cells(&p.spanned_subcomplex(gens.generators()).unwrap()));

        assert_eq!(build_q_principal(&m("bd^2", 4)).unwrap().f_vector()[0], 16);
        assert_eq!(
            build_q_principal(&m("c^3", 3)).unwrap(),
            build_p(3, full(3), 3).unwrap()
        );
        let scaled = build_q_principal(&m("a^2c", 3)).unwrap();
        let want = build_p(3, full(3), 1)
            .unwrap()
            .scale_labels(&m("a^2", 3))
            .unwrap();
        assert!(scaled.same_cells(&want));
        assert!(build_q_principal(&Monomial::one(3)).is_err());
    }

    #[test]
    fn recursive_equals_extracted_for_all_principal_ideals() {
        let mut b = Builder::new();
        for d in 1..=4u32 {
            for g in monomials_of_degree(4, full(4), d) {
                let ideal = BorelIdeal::principal(&g).unwrap();
                let rec = b.build_q_principal(&g).unwrap();
                let ext = b.extract_q(&ideal).unwrap();
                assert_eq!(rec, ext, "Q({g})");
                assert_eq!(rec.vertex_labels(), ideal.generators());
            }
        }
    }

    #[test]
    fn union_equals_extracted() {
        let ideal = BorelIdeal::from_borel_gens(&[m("ab^3c^2", 3), m("a^2c^4", 3)]).unwrap();
        assert_eq!(build_q_union(&ideal).unwrap(), extract_q(&ideal).unwrap());
        for seed in 0..30 {
            let ideal = random_borel_minimal(4, 3, 3, seed).unwrap();
            let mut b = Builder::new();
            let x = b.build_q_union(&ideal).unwrap();
            assert_eq!(x, b.extract_q(&ideal).unwrap(), "seed {seed}");
            assert_eq!(x.vertex_labels(), ideal.generators());
        }
    }

    #[test]
    fn stages_cover_suffix_ideals() {
        let ideal = BorelIdeal::from_borel_gens(&[m("ab^3c^2", 3), m("a^2c^4", 3)]).unwrap();
        let stages = Builder::new().q_union_stages(&ideal).unwrap();
        assert_eq!(stages.len(), 2);
        for (j, x) in &stages {
            assert_eq!(x.vertex_labels(), j.generators());
        }
        assert_eq!(stages[0].1, build_q_union(&ideal).unwrap());
    }

    #[test]
    fn builder_rejects_mixed_rings() {
        let mut b = Builder::new();
        b.build_p(3, full(3), 2).unwrap();
        assert!(b.build_p(4, full(4), 2).is_err());
    }
}
