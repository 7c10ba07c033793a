//! Borel fixed ideals generated in a single degree.
//!
//! A [`BorelIdeal`] keeps both descriptions of the ideal: the Borel-minimal
//! generators `m_1 ≻ ... ≻ m_s` (rlex-descending) and the expanded minimal
//! monomial generating set `G(I)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, sort_canonical, Monomial, VarRange};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelIdeal {
    n: usize,
    d: u32,
    borel_gens: Vec<Monomial>,
    expanded: Vec<Monomial>,
}

impl BorelIdeal {
    /// The principal Borel ideal `<m>`.
    pub fn principal(m: &Monomial) -> Result<Self> {
        expand_principal(m)
    }

    /// Borel ideal generated (in the Borel sense) by `ms`, all of one degree.
    /// Redundant generators are dropped.
    pub fn from_borel_gens(ms: &[Monomial]) -> Result<Self> {
        let borel_gens = borel_minimalize(ms)?;
        let n = borel_gens[0].ambient();
        let d = borel_gens[0].degree();
        if d == 0 {
            return Err(Error::UnitMonomial);
        }
        let mut seen = HashSet::new();
        let mut expanded = Vec::new();
        for g in &borel_gens {
            for x in principal_generators(g)? {
                if seen.insert(x.clone()) {
                    expanded.push(x);
                }
            }
        }
        sort_canonical(&mut expanded);
        Ok(BorelIdeal {
            n,
            d,
            borel_gens,
            expanded,
        })
    }

    /// Ideal given by its explicit minimal generating set, which must be
    /// closed under Borel moves.
    pub fn from_generators(ms: &[Monomial]) -> Result<Self> {
        if !is_borel_fixed(ms)? {
            let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            return Err(Error::NotBorelFixed(shown.join(", ")));
        }
        Self::from_borel_gens(ms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Borel-minimal generators, rlex-descending.
    pub fn borel_gens(&self) -> &[Monomial] {
        &self.borel_gens
    }

    /// `G(I)`, rlex-descending.
    pub fn generators(&self) -> &[Monomial] {
        &self.expanded
    }

    /// Membership of an arbitrary monomial in the ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.expanded.iter().any(|g| g.divides_unchecked(m))
    }
}

/// `m ∈ <gen>` for monomials of equal degree: every suffix sum of `m` is
/// bounded by the corresponding suffix sum of `gen`.
pub fn in_principal(m: &Monomial, gen: &Monomial) -> bool {
    if m.ambient() != gen.ambient() || m.degree() != gen.degree() {
        return false;
    }
    m.suffix_sums()
        .iter()
        .zip(gen.suffix_sums())
        .all(|(a, b)| *a <= b)
}

/// `G(<m>)`, rlex-descending.
pub fn principal_generators(m: &Monomial) -> Result<Vec<Monomial>> {
    let top = m.max_index()?;
    let range = VarRange::new(1, top, m.ambient())?;
    Ok(monomials_of_degree(m.ambient(), range, m.degree())
        .into_iter()
        .filter(|c| in_principal(c, m))
        .collect())
}

pub fn expand_principal(m: &Monomial) -> Result<BorelIdeal> {
    let expanded = principal_generators(m)?;
    Ok(BorelIdeal {
        n: m.ambient(),
        d: m.degree(),
        borel_gens: vec![m.clone()],
        expanded,
    })
}

fn common_degree(ms: &[Monomial], what: &'static str) -> Result<Option<u32>> {
    let Some(first) = ms.first() else {
        return Ok(None);
    };
    for m in ms {
        if m.ambient() != first.ambient() {
            return Err(Error::AmbientMismatch {
                left: first.ambient(),
                right: m.ambient(),
            });
        }
        if m.degree() != first.degree() {
            return Err(Error::MixedDegrees(what));
        }
    }
    Ok(Some(first.degree()))
}

/// Whether a set of same-degree monomials is closed under Borel moves.
pub fn is_borel_fixed(gens: &[Monomial]) -> Result<bool> {
    common_degree(gens, "Borel-fixed test")?;
    let set: HashSet<&Monomial> = gens.iter().collect();
    Ok(gens
        .iter()
        .all(|m| m.borel_moves().all(|mv| set.contains(&mv))))
}

/// Drop every monomial lying in the Borel ideal generated by the others;
/// output is rlex-descending.
pub fn borel_minimalize(ms: &[Monomial]) -> Result<Vec<Monomial>> {
    if ms.is_empty() {
        return Err(Error::EmptyInput("Borel generators"));
    }
    common_degree(ms, "Borel generators")?;
    let unique: BTreeSet<&Monomial> = ms.iter().collect();
    let mut out: Vec<Monomial> = unique
        .iter()
        .filter(|m| !unique.iter().any(|o| o != *m && in_principal(m, o)))
        .map(|m| (*m).clone())
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// The monomial `MIN(m1, m2)` with `<m1> ∩ <m2> = <MIN(m1, m2)>`.
///
/// Built right to left: `μ_i = min(a_i+...+a_n, b_i+...+b_n) - (μ_{i+1}+...+μ_n)`.
pub fn min_monomial(m1: &Monomial, m2: &Monomial) -> Result<Monomial> {
    m1.check_same_ring(m2)?;
    if m1.degree() != m2.degree() {
        return Err(Error::DegreeMismatch {
            left: m1.degree(),
            right: m2.degree(),
        });
    }
    let (sa, sb) = (m1.suffix_sums(), m2.suffix_sums());
    let n = m1.ambient();
    let mut mu = vec![0u32; n];
    let mut tail = 0u32;
    for i in (0..n).rev() {
        mu[i] = sa[i].min(sb[i]) - tail;
        tail += mu[i];
    }
    Ok(Monomial::new(mu))
}

/// `<m> ∩ J`, generated in the Borel sense by the `MIN(m, n_k)`.
pub fn intersect_borel(m: &Monomial, j: &BorelIdeal) -> Result<BorelIdeal> {
    if m.degree() != j.degree() {
        return Err(Error::DegreeMismatch {
            left: m.degree(),
            right: j.degree(),
        });
    }
    let mins = j
        .borel_gens()
        .iter()
        .map(|g| min_monomial(m, g))
        .collect::<Result<Vec<_>>>()?;
    BorelIdeal::from_borel_gens(&mins)
}

/// Minimal generators of the Borel ideal generated by monomials of
/// possibly different degrees.
pub fn borel_closure_generators(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    if gens.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    let mut all = BTreeSet::new();
    for g in gens {
        if g.ambient() != gens[0].ambient() {
            return Err(Error::AmbientMismatch {
                left: gens[0].ambient(),
                right: g.ambient(),
            });
        }
        all.extend(principal_generators(g)?);
    }
    Ok(minimal_generators(all.into_iter().collect()))
}

/// Remove every monomial divisible by another one; rlex/canonical order.
pub fn minimal_generators(ms: Vec<Monomial>) -> Vec<Monomial> {
    let unique: BTreeSet<Monomial> = ms.into_iter().collect();
    let mut out: Vec<Monomial> = unique
        .iter()
        .filter(|m| !unique.iter().any(|o| o != *m && o.divides_unchecked(m)))
        .cloned()
        .collect();
    sort_canonical(&mut out);
    out
}

/// `G(A)·G(B)`, asserting `|G(AB)| = |G(A)|·|G(B)|` (all products distinct
/// and none divisible by another).
pub fn product_of_generator_sets(a: &[Monomial], b: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let p = x.mul(y)?;
            if !seen.insert(p.clone()) {
                return Err(Error::ProductCollision(p.to_string()));
            }
            out.push(p);
        }
    }
    let minimal = minimal_generators(out.clone());
    if minimal.len() != out.len() {
        return Err(Error::ProductCollision(
            "product generating set is not minimal".into(),
        ));
    }
    Ok(minimal)
}

/// `m = x_{λ1}^{d1} ... x_{λs}^{ds}` with `λ1 < ... < λs` and all `dj > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalForm {
    n: usize,
    lambdas: Vec<usize>,
    ds: Vec<u32>,
}

impl PrincipalForm {
    pub fn new(n: usize, lambdas: Vec<usize>, ds: Vec<u32>) -> Result<Self> {
        let bad = |why: &str| Err(Error::MalformedPrincipalForm(why.to_string()));
        if lambdas.is_empty() || lambdas.len() != ds.len() {
            return bad("need s >= 1 indices with matching exponents");
        }
        if lambdas[0] == 0 || *lambdas.last().unwrap() > n {
            return bad("index outside the ambient ring");
        }
        if lambdas.windows(2).any(|w| w[0] >= w[1]) {
            return bad("indices must be strictly increasing");
        }
        if ds.contains(&0) {
            return bad("exponents must be positive");
        }
        Ok(PrincipalForm { n, lambdas, ds })
    }

    pub fn from_monomial(m: &Monomial) -> Result<Self> {
        if m.is_one() {
            return Err(Error::UnitMonomial);
        }
        let lambdas: Vec<usize> = m.support().collect();
        let ds = lambdas.iter().map(|&i| m.exp(i)).collect();
        Ok(PrincipalForm {
            n: m.ambient(),
            lambdas,
            ds,
        })
    }

    pub fn to_monomial(&self) -> Monomial {
        let mut exps = vec![0; self.n];
        for (&l, &d) in self.lambdas.iter().zip(&self.ds) {
            exps[l - 1] = d;
        }
        Monomial::new(exps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[usize] {
        &self.lambdas
    }

    pub fn ds(&self) -> &[u32] {
        &self.ds
    }
}

/// How a principal Borel ideal `<m>` splits for the recursive construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum L4Decomposition {
    /// `m = x_λ^d`: `<m> = (x_1, ..., x_λ)^d`.
    Power { d: u32, range: VarRange },
    /// `m = x_1^{d1} x_λ^{d2}`: `<m> = x_1^{d1} (x_1, ..., x_λ)^{d2}`.
    ScaledPower {
        scale: Monomial,
        d: u32,
        range: VarRange,
    },
    /// `<m> = Σ_k N_k (x_k, ..., x_{λs})^{ds}` for `k = 1..λ_{s-1}`.
    Sum {
        power: u32,
        terms: Vec<(PrincipalForm, VarRange)>,
    },
}

/// Split `<m>` into the principal pieces `N_k` and variable ranges
/// `(x_k, ..., x_{λs})`, where for `λ_j < k <= λ_{j+1}` (`j < s-1`)
/// `N_k = <x_{λ1}^{d1} ... x_{λj}^{dj} x_k^{d_{j+1}+...+d_{s-1}}>`.
pub fn l4_decompose(pf: &PrincipalForm) -> Result<L4Decomposition> {
    let pf = PrincipalForm::new(pf.n, pf.lambdas.clone(), pf.ds.clone())?;
    let n = pf.n;
    let s = pf.s();
    let last = pf.lambdas[s - 1];
    let d_last = pf.ds[s - 1];
    if s == 1 {
        return Ok(L4Decomposition::Power {
            d: d_last,
            range: VarRange::new(1, last, n)?,
        });
    }
    let cut = pf.lambdas[s - 2];
    if cut == 1 {
        return Ok(L4Decomposition::ScaledPower {
            scale: Monomial::var_power(n, 1, pf.ds[0]),
            d: d_last,
            range: VarRange::new(1, last, n)?,
        });
    }
    let mut terms = Vec::with_capacity(cut);
    for k in 1..=cut {
        // j = number of λ's strictly below k; j <= s - 2 because k <= λ_{s-1}
        let j = pf.lambdas.iter().take_while(|&&l| l < k).count();
        let mut lambdas = pf.lambdas[..j].to_vec();
        let mut ds = pf.ds[..j].to_vec();
        lambdas.push(k);
        ds.push(pf.ds[j..s - 1].iter().sum());
        terms.push((
            PrincipalForm::new(n, lambdas, ds)?,
            VarRange::new(k, last, n)?,
        ));
    }
    Ok(L4Decomposition::Sum {
        power: d_last,
        terms,
    })
}

/// Total Betti numbers from generator statistics:
/// `β_i = Σ_{m ∈ G(I)} C(max(m) - 1, i)`, trailing zeros trimmed.
pub fn ek_betti(ideal: &BorelIdeal) -> Vec<u64> {
    let mut beta = vec![0u64; ideal.n().max(1)];
    for g in ideal.generators() {
        let k = g.max_index().expect("generators have positive degree") - 1;
        let mut binom = 1u64;
        for (i, slot) in beta.iter_mut().enumerate().take(k + 1) {
            *slot += binom;
            binom = binom * (k - i) as u64 / (i + 1) as u64;
        }
    }
    trim_trailing_zeros(beta)
}

pub(crate) fn trim_trailing_zeros(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Seeded random Borel ideal: `s` uniform draws among the degree-`d`
/// monomials in `n` variables, Borel-minimalized.
pub fn random_borel_minimal(n: usize, d: u32, s: usize, seed: u64) -> Result<BorelIdeal> {
    if s == 0 {
        return Err(Error::EmptyInput("generator count"));
    }
    if d == 0 {
        return Err(Error::UnitMonomial);
    }
    let pool = monomials_of_degree(n, VarRange::new(1, n, n)?, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Monomial> = (0..s)
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    BorelIdeal::from_borel_gens(&draws)
}

/// rlex-descending check for a list of same-degree monomials.
pub fn is_rlex_descending(ms: &[Monomial]) -> bool {
    ms.windows(2)
        .all(|w| w[0].rlex_cmp(&w[1]) == Ok(Ordering::Greater))
}

impl Monomial {
    fn check_same_ring(&self, other: &Monomial) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn set(ms: &[Monomial]) -> BTreeSet<Monomial> {
        ms.iter().cloned().collect()
    }

    fn parse_set(s: &str, n: usize) -> BTreeSet<Monomial> {
        s.split(',').map(|t| m(t, n)).collect()
    }

    /// Transitive closure of `{m}` under Borel moves.
    fn move_closure(start: &Monomial) -> BTreeSet<Monomial> {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in x.borel_moves() {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Minimal generators of the intersection by pairwise lcm.
    fn brute_meet(a: &[Monomial], b: &[Monomial]) -> BTreeSet<Monomial> {
        let all = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x.lcm(y).unwrap()))
            .collect();
        set(&minimal_generators(all))
    }

    fn all_monomials(n: usize, d: u32) -> Vec<Monomial> {
        monomials_of_degree(n, VarRange::new(1, n, n).unwrap(), d)
    }

    #[test]
    fn expand_principal_examples() {
        let i = expand_principal(&m("bc", 3)).unwrap();
        assert_eq!(set(i.generators()), parse_set("a^2,ab,b^2,ac,bc", 3));
        let i = expand_principal(&m("c^3", 3)).unwrap();
        assert_eq!(i.generators().len(), 10);
        assert_eq!(
            expand_principal(&m("a^3", 3)).unwrap().generators(),
            &[m("a^3", 3)]
        );
        assert_eq!(
            expand_principal(&Monomial::one(3)),
            Err(Error::UnitMonomial)
        );
    }

    #[test]
    fn expansion_equals_move_closure() {
        for n in 1..=4 {
            for d in 1..=5 {
                for g in all_monomials(n, d) {
                    let ex = set(&principal_generators(&g).unwrap());
                    assert_eq!(ex, move_closure(&g), "generator {g}");
                }
            }
        }
    }

    #[test]
    fn borel_fixed_examples() {
        let ms: Vec<_> = parse_set("a^2,ab,b^2,ac,bc", 3).into_iter().collect();
        assert!(is_borel_fixed(&ms).unwrap());
        assert!(!is_borel_fixed(&[m("bc", 3)]).unwrap());
        assert!(is_borel_fixed(&[m("a^4", 2)]).unwrap());
        assert!(is_borel_fixed(&[m("a", 2), m("ab", 2)]).is_err());
        assert!(BorelIdeal::from_generators(&[m("bc", 3)]).is_err());
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(
            borel_minimalize(&[m("ab^4c", 3), m("a^2b^3c", 3)]).unwrap(),
            vec![m("ab^4c", 3)]
        );
        assert_eq!(
            borel_minimalize(&[m("bc", 3), m("a^2", 3)]).unwrap(),
            vec![m("bc", 3)]
        );
        assert_eq!(borel_minimalize(&[m("ab", 3)]).unwrap(), vec![m("ab", 3)]);
        assert!(borel_minimalize(&[]).is_err());
        let out = borel_minimalize(&[m("a^2c^4", 3), m("b^5c", 3), m("ab^3c^2", 3)]).unwrap();
        assert_eq!(out, vec![m("b^5c", 3), m("ab^3c^2", 3), m("a^2c^4", 3)]);
        assert!(is_rlex_descending(&out));
    }

    #[test]
    fn min_monomial_examples() {
        assert_eq!(
            min_monomial(&m("b^5c", 3), &m("ab^3c^2", 3)).unwrap(),
            m("ab^4c", 3)
        );
        assert_eq!(
            min_monomial(&m("b^5c", 3), &m("a^2c^4", 3)).unwrap(),
            m("a^2b^3c", 3)
        );
        let x = m("ab^2c^3", 3);
        assert_eq!(min_monomial(&x, &x).unwrap(), x);
        assert!(min_monomial(&m("a", 3), &m("ab", 3)).is_err());
    }

    #[test]
    fn min_monomial_matches_brute_intersection_exhaustively() {
        for n in 1..=3 {
            for d in 1..=4 {
                let ms = all_monomials(n, d);
                for a in &ms {
                    for b in &ms {
                        let got = min_monomial(a, b).unwrap();
                        assert_eq!(got, min_monomial(b, a).unwrap());
                        let want = brute_meet(
                            &principal_generators(a).unwrap(),
                            &principal_generators(b).unwrap(),
                        );
                        assert_eq!(set(&principal_generators(&got).unwrap()), want, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn intersect_borel_examples() {
        let j = BorelIdeal::from_borel_gens(&[m("a^2b^4cd^2", 4), m("a^3bc^2d^3", 4)]).unwrap();
        let got = intersect_borel(&m("ab^4c^3d", 4), &j).unwrap();
        assert_eq!(
            set(got.borel_gens()),
            set(&[m("a^3b^2c^3d", 4), m("a^2b^4c^2d", 4)])
        );

        let j = BorelIdeal::from_borel_gens(&[m("ab^3c^2", 3), m("a^2c^4", 3)]).unwrap();
        let got = intersect_borel(&m("b^5c", 3), &j).unwrap();
        assert_eq!(got.borel_gens(), &[m("ab^4c", 3)]);

        let x = m("b^2c", 3);
        let got = intersect_borel(&x, &BorelIdeal::principal(&x).unwrap()).unwrap();
        assert_eq!(got.borel_gens(), &[x]);
    }

    #[test]
    fn intersect_borel_generators_sit_above_m() {
        for seed in 0..40 {
            let j = random_borel_minimal(4, 3, 3, seed).unwrap();
            for x in all_monomials(4, 3) {
                let got = intersect_borel(&x, &j).unwrap();
                let want = brute_meet(&principal_generators(&x).unwrap(), j.generators());
                assert_eq!(set(got.generators()), want);
                for g in got.borel_gens() {
                    let ord = g.rlex_cmp(&x).unwrap();
                    if j.contains(&x) {
                        assert_ne!(ord, Ordering::Less);
                    } else {
                        assert_eq!(ord, Ordering::Greater);
                    }
                }
            }
        }
    }

    fn expand_term(n_k: &PrincipalForm, range: VarRange, power: u32) -> BTreeSet<Monomial> {
        let a = principal_generators(&n_k.to_monomial()).unwrap();
        let b = monomials_of_degree(n_k.n(), range, power);
        set(&product_of_generator_sets(&a, &b).unwrap())
    }

    /// Plain ideal product, no cardinality assertion.
    fn product_ideal(n_k: &PrincipalForm, range: VarRange, power: u32) -> BTreeSet<Monomial> {
        let a = principal_generators(&n_k.to_monomial()).unwrap();
        let b = monomials_of_degree(n_k.n(), range, power);
        let all = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x.mul(y).unwrap()))
            .collect();
        set(&minimal_generators(all))
    }

    #[test]
    fn decomposition_examples() {
        let pf = PrincipalForm::from_monomial(&m("bd^2", 4)).unwrap();
        let L4Decomposition::Sum { power, terms } = l4_decompose(&pf).unwrap() else {
            panic!("expected a sum")
        };
        assert_eq!(power, 2);
        let shown: Vec<(Monomial, VarRange)> =
            terms.iter().map(|(f, r)| (f.to_monomial(), *r)).collect();
        assert_eq!(
            shown,
            vec![
                (m("a", 4), VarRange::new(1, 4, 4).unwrap()),
                (m("b", 4), VarRange::new(2, 4, 4).unwrap()),
            ]
        );

        let pf = PrincipalForm::from_monomial(&m("bcd", 4)).unwrap();
        let L4Decomposition::Sum { power, terms } = l4_decompose(&pf).unwrap() else {
            panic!("expected a sum")
        };
        assert_eq!(power, 1);
        let shown: Vec<(Monomial, usize)> = terms
            .iter()
            .map(|(f, r)| (f.to_monomial(), r.lo()))
            .collect();
        assert_eq!(
            shown,
            vec![(m("a^2", 4), 1), (m("b^2", 4), 2), (m("bc", 4), 3)]
        );

        let pf = PrincipalForm::from_monomial(&m("c^3", 3)).unwrap();
        assert_eq!(
            l4_decompose(&pf).unwrap(),
            L4Decomposition::Power {
                d: 3,
                range: VarRange::new(1, 3, 3).unwrap()
            }
        );
        let pf = PrincipalForm::from_monomial(&m("a^2c", 3)).unwrap();
        assert!(matches!(
            l4_decompose(&pf).unwrap(),
            L4Decomposition::ScaledPower { d: 1, .. }
        ));
        assert!(PrincipalForm::new(3, vec![2, 1], vec![1, 1]).is_err());
        assert!(PrincipalForm::new(3, vec![1, 2], vec![1, 0]).is_err());
    }

    #[test]
    fn decomposition_sum_and_intersection_identities() {
        for n in 2..=4 {
            for d in 2..=5 {
                for g in all_monomials(n, d) {
                    let pf = PrincipalForm::from_monomial(&g).unwrap();
                    let L4Decomposition::Sum { power, terms } = l4_decompose(&pf).unwrap() else {
                        continue;
                    };
                    let mu = pf.lambdas()[pf.s() - 1];
                    let mut union = BTreeSet::new();
                    for (nk, r) in &terms {
                        union.extend(expand_term(nk, *r, power));
                    }
                    assert_eq!(union, set(&principal_generators(&g).unwrap()), "{g}");

                    for j in 0..terms.len().saturating_sub(1) {
                        let (nj, _) = &terms[j];
                        let (nj1, _) = &terms[j + 1];
                        let full = VarRange::new(1, mu, n).unwrap();
                        let upper = VarRange::new(j + 2, mu, n).unwrap();
                        let left = product_ideal(nj, full, power);
                        let right = expand_term(nj1, upper, power);
                        let lhs = brute_meet(
                            &left.iter().cloned().collect::<Vec<_>>(),
                            &right.iter().cloned().collect::<Vec<_>>(),
                        );
                        assert_eq!(lhs, expand_term(nj, upper, power), "{g} j={}", j + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_degree_closure() {
        let gens = [m("ab", 4), m("ac", 4), m("ad^2", 4), m("b^2cd^2", 4)];
        let got = set(&borel_closure_generators(&gens).unwrap());
        let want = parse_set(
            "a^2,ab,b^5,ac,b^4c,b^3c^2,b^2c^3,b^4d,b^3cd,b^2c^2d,ad^2,b^3d^2,b^2cd^2",
            4,
        );
        assert_eq!(got.len(), 13);
        assert_eq!(got, want);
    }

    #[test]
    fn random_ideals_are_deterministic_and_borel() {
        for seed in 0..30 {
            let a = random_borel_minimal(4, 3, 3, seed).unwrap();
            let b = random_borel_minimal(4, 3, 3, seed).unwrap();
            assert_eq!(a, b);
            assert!(a.borel_gens().len() <= 3);
            assert!(is_borel_fixed(a.generators()).unwrap());
            assert!(is_rlex_descending(a.borel_gens()));
        }
        let p = random_borel_minimal(3, 2, 1, 5).unwrap();
        assert_eq!(p.borel_gens().len(), 1);
    }

    #[test]
    fn ek_counts() {
        let i = BorelIdeal::principal(&m("a", 3)).unwrap();
        assert_eq!(ek_betti(&i), vec![1]);
    }
}
