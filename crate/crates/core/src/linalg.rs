//! Exact ranks of sparse integer matrices over `Q` or `F_p`.
//!
//! Over `Q` the elimination is fraction-free: columns are reduced by
//! integer combinations `p·v - v_r·pivot` and divided by their content, so
//! no rational arithmetic is needed and entries stay small.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(Field::Prime(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("p:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!(
            "{s:?} (expected q or p:<prime>)"
        )))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

/// Integer matrix stored by columns; each column is a list of
/// `(row, value)` with distinct rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix {
            rows,
            cols: Vec::new(),
        }
    }

    pub fn push_col(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.retain(|&(_, v)| v != 0);
        entries.sort_unstable_by_key(|&(r, _)| r);
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rows));
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        self.cols.push(entries);
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    /// `self · other`, or `None` on a shape mismatch.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if self.ncols() != other.nrows() {
            return None;
        }
        let mut out = SparseMatrix::new(self.rows);
        for col in &other.cols {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in col {
                for &(r, w) in &self.cols[k] {
                    *acc.entry(r).or_default() += v * w;
                }
            }
            out.push_col(acc.into_iter().collect());
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => rank_rational(self),
            Field::Prime(p) => rank_mod_p(self, p),
        }
    }
}

/// Reduced homology dimensions `H̃_k` for `k >= -1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ReducedHomology {
    /// `dims[k + 1] = dim H̃_k`.
    dims: Vec<usize>,
}

impl ReducedHomology {
    /// From an augmented chain complex: `sizes[k + 1] = dim C_k` for
    /// `k >= -1`, and `boundaries[k]` is `∂_k: C_k → C_{k-1}` for `k >= 0`.
    pub fn from_boundaries(sizes: &[usize], boundaries: &[SparseMatrix], field: Field) -> Self {
        assert_eq!(boundaries.len() + 1, sizes.len());
        let ranks: Vec<usize> = boundaries.iter().map(|b| b.rank(field)).collect();
        let dims = (0..sizes.len())
            .map(|j| {
                // j = k + 1; ∂_k is boundaries[j - 1], ∂_{k+1} is boundaries[j]
                let out = if j == 0 { 0 } else { ranks[j - 1] };
                let inc = ranks.get(j).copied().unwrap_or(0);
                sizes[j] - out - inc
            })
            .collect();
        ReducedHomology { dims }
    }

    /// `dim H̃_k`, zero outside the stored range.
    pub fn get(&self, k: isize) -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|j| self.dims.get(j).copied())
            .unwrap_or(0)
    }

    /// Raw dimensions, starting at `k = -1`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Lowest `k` with `H̃_k ≠ 0`, with its dimension.
    pub fn first_nonzero(&self) -> Option<(isize, usize)> {
        self.dims
            .iter()
            .position(|&d| d != 0)
            .map(|j| (j as isize - 1, self.dims[j]))
    }
}

fn rank_rational(m: &SparseMatrix) -> usize {
    // pivot row -> reduced column whose smallest row index is the key
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for col in &m.cols {
        let mut v: Vec<(usize, BigInt)> = col.iter().map(|&(r, x)| (r, BigInt::from(x))).collect();
        while let Some(lead) = v.first().map(|e| e.0) {
            let Some(p) = pivots.get(&lead) else {
                normalize(&mut v);
                pivots.insert(lead, v);
                break;
            };
            v = eliminate(&v, p);
        }
    }
    pivots.len()
}

/// `p_lead·v - v_lead·p`, which cancels the shared leading row.
fn eliminate(v: &[(usize, BigInt)], p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &p[0].1;
    let b = &v[0].1;
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        let (row, val) = if take_v {
            let r = (v[i].0, a * &v[i].1);
            i += 1;
            r
        } else if take_p {
            let r = (p[j].0, -(b * &p[j].1));
            j += 1;
            r
        } else {
            let r = (v[i].0, a * &v[i].1 - b * &p[j].1);
            i += 1;
            j += 1;
            r
        };
        if !val.is_zero() {
            out.push((row, val));
        }
    }
    normalize(&mut out);
    out
}

fn normalize(v: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for col in &m.cols {
        let mut v: Vec<(usize, u64)> = col
            .iter()
            .map(|&(r, x)| (r, reduce(x)))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(lead, lv)) = v.first() {
            let Some(piv) = pivots.get(&lead) else {
                let inv = mod_pow(lv, p - 2, p);
                for (_, x) in v.iter_mut() {
                    *x = *x * inv % p;
                }
                pivots.insert(lead, v);
                break;
            };
            // pivots are monic, so v - v_lead·piv kills the leading entry
            let mut out = Vec::with_capacity(v.len() + piv.len());
            let (mut i, mut j) = (1, 1);
            while i < v.len() || j < piv.len() {
                let (row, val) = if j >= piv.len() || (i < v.len() && v[i].0 < piv[j].0) {
                    i += 1;
                    (v[i - 1].0, v[i - 1].1)
                } else if i >= v.len() || piv[j].0 < v[i].0 {
                    j += 1;
                    (piv[j - 1].0, (p - lv * piv[j - 1].1 % p) % p)
                } else {
                    i += 1;
                    j += 1;
                    (v[i - 1].0, (v[i - 1].1 + p - lv * piv[j - 1].1 % p) % p)
                };
                if val != 0 {
                    out.push((row, val));
                }
            }
            v = out;
        }
    }
    pivots.len()
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
