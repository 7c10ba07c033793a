//! The lcm-lattice of a monomial ideal: covers, rankedness, and the
//! natural edge labelling by the largest variable index of a quotient.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::borel::minimal_generators;
use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial};

/// Default cap on the number of maximal chains enumerated per interval.
pub const DEFAULT_CHAIN_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct LcmLattice {
    n: usize,
    atoms: Vec<Monomial>,
    /// Canonical order; the bottom `1` comes first.
    elements: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Upper covers of each element, in canonical order.
    covers: Vec<Vec<usize>>,
}

impl LcmLattice {
    /// Join closure of the minimal generators of `gens`, plus the bottom `1`.
    pub fn build(gens: &[Monomial]) -> Result<Self> {
        let first = gens
            .first()
            .ok_or(Error::EmptyInput("lattice generators"))?;
        let n = first.ambient();
        if let Some(g) = gens.iter().find(|g| g.ambient() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: g.ambient(),
            });
        }
        let mut atoms = minimal_generators(gens.to_vec());
        atoms.sort_by(canonical_cmp);
        atoms.dedup();
        if atoms.iter().any(Monomial::is_one) {
            return Err(Error::UnitMonomial);
        }

        let mut seen: HashSet<Monomial> = atoms.iter().cloned().collect();
        let mut queue: VecDeque<Monomial> = atoms.iter().cloned().collect();
        while let Some(e) = queue.pop_front() {
            for g in &atoms {
                let j = e.lcm_unchecked(g);
                if !seen.contains(&j) {
                    seen.insert(j.clone());
                    queue.push_back(j);
                }
            }
        }
        let mut elements: Vec<Monomial> = seen.into_iter().collect();
        elements.push(Monomial::one(n));
        elements.sort_by(canonical_cmp);
        let index: HashMap<Monomial, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        // Upper covers of m are the minimal elements of {lcm(m, g)} \ {m}.
        let covers = elements
            .iter()
            .map(|m| {
                let mut cand: Vec<Monomial> = atoms
                    .iter()
                    .map(|g| m.lcm_unchecked(g))
                    .filter(|j| j != m)
                    .collect();
                cand.sort_by(canonical_cmp);
                cand.dedup();
                let mut ids: Vec<usize> = cand
                    .iter()
                    .filter(|c| !cand.iter().any(|o| o != *c && o.divides_unchecked(c)))
                    .map(|c| index[c])
                    .collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        Ok(LcmLattice {
            n,
            atoms,
            elements,
            index,
            covers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Monomial] {
        &self.atoms
    }

    /// All elements in canonical order, bottom first.
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &Monomial {
        &self.elements[0]
    }

    pub fn top(&self) -> &Monomial {
        self.elements.last().expect("lattice has a bottom")
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    fn id(&self, m: &Monomial) -> Result<usize> {
        self.index
            .get(m)
            .copied()
            .ok_or_else(|| Error::NotInLattice(m.to_string()))
    }

    /// Upper covers of `m`.
    pub fn covers(&self, m: &Monomial) -> Result<Vec<&Monomial>> {
        Ok(self.covers[self.id(m)?]
            .iter()
            .map(|&j| &self.elements[j])
            .collect())
    }

    /// All cover pairs `(m, n)` in canonical order of `m`, then of `n`.
    pub fn cover_pairs(&self) -> Vec<(&Monomial, &Monomial)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, cs)| {
                cs.iter()
                    .map(move |&j| (&self.elements[i], &self.elements[j]))
            })
            .collect()
    }

    /// Rankedness by exact chain-length bookkeeping from the bottom.
    pub fn is_ranked(&self) -> RankReport {
        let len = self.elements.len();
        // (length, predecessor) of the shortest and longest chains from 0̂
        let mut short: Vec<Option<(usize, usize)>> = vec![None; len];
        let mut long: Vec<Option<(usize, usize)>> = vec![None; len];
        short[0] = Some((0, 0));
        long[0] = Some((0, 0));
        // canonical order is a linear extension: covers raise the degree
        for i in 0..len {
            let (ls, _) = short[i].expect("every element is reachable from the bottom");
            let (ll, _) = long[i].expect("every element is reachable from the bottom");
            for &j in &self.covers[i] {
                if short[j].is_none_or(|(l, _)| ls + 1 < l) {
                    short[j] = Some((ls + 1, i));
                }
                if long[j].is_none_or(|(l, _)| ll + 1 > l) {
                    long[j] = Some((ll + 1, i));
                }
            }
        }

        let degree_criterion = self.degree_criterion();
        let bad = (0..len).find(|&i| short[i].unwrap().0 != long[i].unwrap().0);
        let witness = bad.map(|x| {
            let trace = |table: &[Option<(usize, usize)>]| {
                let mut chain = vec![x];
                let mut cur = x;
                while cur != 0 {
                    cur = table[cur].unwrap().1;
                    chain.push(cur);
                }
                chain.reverse();
                chain
            };
            let short_chain = trace(&short);
            let long_chain = trace(&long);
            let jump = short_chain
                .windows(2)
                .chain(long_chain.windows(2))
                .filter(|w| w[0] != 0)
                .max_by_key(|w| self.elements[w[1]].degree() - self.elements[w[0]].degree())
                .map(|w| (self.show(w[0]), self.show(w[1])));
            RankWitness {
                element: self.show(x),
                short_chain: short_chain.iter().map(|&i| self.show(i)).collect(),
                long_chain: long_chain.iter().map(|&i| self.show(i)).collect(),
                jump_cover: jump,
            }
        });
        RankReport {
            ranked: witness.is_none(),
            elements: len,
            covers: self.covers.iter().map(Vec::len).sum(),
            length: long[len - 1].unwrap().0,
            degree_criterion,
            witness,
        }
    }

    /// For equigenerated atoms: every cover above an atom raises the degree
    /// by exactly one. `None` when the atoms have mixed degrees.
    fn degree_criterion(&self) -> Option<DegreeCriterion> {
        let d = self.atoms[0].degree();
        if self.atoms.iter().any(|a| a.degree() != d) {
            return None;
        }
        let bad = self
            .cover_pairs()
            .into_iter()
            .find(|(m, c)| !m.is_one() && c.degree() != m.degree() + 1);
        Some(DegreeCriterion {
            holds: bad.is_none(),
            failing_cover: bad.map(|(m, c)| (m.to_string(), c.to_string())),
        })
    }

    fn show(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    /// Enumerate the maximal chains of `[lower, upper]`, labelling each cover
    /// `m → n` by the largest variable index of `n/m`. Chains run bottom-up.
    pub fn natural_label_check(
        &self,
        lower: &Monomial,
        upper: &Monomial,
        budget: usize,
    ) -> Result<LabelReport> {
        let lo = self.id(lower)?;
        let hi = self.id(upper)?;
        if !lower.divides_unchecked(upper) {
            return Err(Error::EmptyInterval {
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
        let mut report = LabelReport {
            lower: lower.to_string(),
            upper: upper.to_string(),
            chains: 0,
            rising: 0,
            falling: 0,
            rising_chain_exists: false,
            falling_chain_exists: false,
            first_rising: None,
            first_falling: None,
        };
        let mut stack: Vec<(usize, Vec<usize>, Vec<usize>)> = vec![(lo, vec![lo], vec![])];
        while let Some((cur, chain, labels)) = stack.pop() {
            if cur == hi {
                report.chains += 1;
                if report.chains > budget {
                    return Err(Error::ChainBudget(budget));
                }
                let rising = labels.windows(2).all(|w| w[0] < w[1]);
                let falling = labels.windows(2).all(|w| w[0] > w[1]);
                let record = || LabeledChain {
                    elements: chain.iter().map(|&i| self.show(i)).collect(),
                    labels: labels.clone(),
                };
                if rising {
                    report.rising += 1;
                    report.first_rising.get_or_insert_with(record);
                }
                if falling {
                    report.falling += 1;
                    report.first_falling.get_or_insert_with(record);
                }
                continue;
            }
            for &j in self.covers[cur].iter().rev() {
                if !self.elements[j].divides_unchecked(upper) {
                    continue;
                }
                let q = self.elements[j]
                    .quotient(&self.elements[cur])?
                    .expect("covers are multiples");
                let mut c = chain.clone();
                c.push(j);
                let mut l = labels.clone();
                l.push(q.max_index()?);
                stack.push((j, c, l));
            }
        }
        report.rising_chain_exists = report.rising > 0;
        report.falling_chain_exists = report.falling > 0;
        Ok(report)
    }

    /// Machine-readable dump of elements and covers.
    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            vars: self.n,
            elements: self.elements.iter().map(Monomial::canonical).collect(),
            covers: self
                .covers
                .iter()
                .enumerate()
                .flat_map(|(i, cs)| cs.iter().map(move |&j| [i, j]))
                .collect(),
        }
    }
}

/// Convenience wrapper for [`LcmLattice::build`].
pub fn build_lattice(gens: &[Monomial]) -> Result<LcmLattice> {
    LcmLattice::build(gens)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankReport {
    pub ranked: bool,
    pub elements: usize,
    pub covers: usize,
    /// Length of the longest maximal chain.
    pub length: usize,
    pub degree_criterion: Option<DegreeCriterion>,
    pub witness: Option<RankWitness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCriterion {
    pub holds: bool,
    pub failing_cover: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankWitness {
    /// Least element (canonical order) below which maximal chains differ in length.
    pub element: String,
    pub short_chain: Vec<String>,
    pub long_chain: Vec<String>,
    /// Cover above the bottom, on either chain, with the largest degree jump.
    pub jump_cover: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LabeledChain {
    pub elements: Vec<String>,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LabelReport {
    pub lower: String,
    pub upper: String,
    pub chains: usize,
    pub rising: usize,
    pub falling: usize,
    pub rising_chain_exists: bool,
    pub falling_chain_exists: bool,
    pub first_rising: Option<LabeledChain>,
    pub first_falling: Option<LabeledChain>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LatticeJson {
    pub vars: usize,
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}
