//! Monomials over a fixed ambient ring `k[x1, ..., xn]`.
//!
//! Variables are 1-based everywhere in the public API: `exp(1)` is the
//! exponent of `x1`. For `n <= 4` the letters `a, b, c, d` are used on
//! output; on input the letters `a..z` are always accepted as aliases of
//! `x1..x26`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial in a fixed number of variables.
///
/// The derived `Ord` is lexicographic on the exponent vector and only serves
/// as a deterministic key order; the term order of the construction is
/// [`Monomial::rlex_cmp`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The unit monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// `x_i^e` in `n` variables.
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        assert!((1..=n).contains(&i), "variable index {i} outside 1..={n}");
        let mut exps = vec![0; n];
        exps[i - 1] = e;
        Monomial { exps }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_power(n, i, 1)
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices `i` with `x_i | self`, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }

    /// `out[i-1] = a_i + a_{i+1} + ... + a_n`.
    pub fn suffix_sums(&self) -> Vec<u32> {
        let mut out = vec![0; self.exps.len()];
        let mut acc = 0;
        for i in (0..self.exps.len()).rev() {
            acc += self.exps[i];
            out[i] = acc;
        }
        out
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::AmbientMismatch {
                left: self.exps.len(),
                right: other.exps.len(),
            });
        }
        Ok(())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Product of two monomials, with overflow checking.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.check_ambient(other)?;
        if !other.divides_unchecked(self) {
            return Ok(None);
        }
        Ok(Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }))
    }

    /// Largest `i` with `x_i | self`.
    pub fn max_index(&self) -> Result<usize> {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .map(|i| i + 1)
            .ok_or(Error::UnitMonomial)
    }

    /// Reverse lexicographic comparison of two monomials of one degree.
    ///
    /// `Greater` means `self ≻ other`: the rightmost non-zero entry of
    /// `e(self) - e(other)` is negative.
    pub fn rlex_cmp(&self, other: &Monomial) -> Result<Ordering> {
        self.check_ambient(other)?;
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return Err(Error::DegreeMismatch {
                left: da,
                right: db,
            });
        }
        Ok(self.rlex_cmp_unchecked(other))
    }

    pub(crate) fn rlex_cmp_unchecked(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // a - b < 0 at the rightmost difference
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    /// The Borel move `m_{t->s} = (m / x_t) x_s` for `s < t`.
    pub fn borel_move(&self, t: usize, s: usize) -> Result<Monomial> {
        let n = self.exps.len();
        let illegal = || Error::IllegalMove {
            monomial: self.to_string(),
            from: t,
            to: s,
        };
        if s == 0 || s >= t || t > n || self.exps[t - 1] == 0 {
            return Err(illegal());
        }
        let mut exps = self.exps.clone();
        exps[t - 1] -= 1;
        exps[s - 1] = exps[s - 1].checked_add(1).ok_or(Error::Overflow)?;
        Ok(Monomial { exps })
    }

    /// All legal Borel moves of this monomial.
    pub fn borel_moves(&self) -> impl Iterator<Item = Monomial> + '_ {
        let n = self.exps.len();
        (2..=n)
            .filter(move |&t| self.exps[t - 1] > 0)
            .flat_map(move |t| (1..t).map(move |s| (t, s)))
            .map(move |(t, s)| {
                let mut exps = self.exps.clone();
                exps[t - 1] -= 1;
                exps[s - 1] += 1;
                Monomial { exps }
            })
    }

    /// Parse a monomial in `n` variables.
    ///
    /// Grammar: `1` or factors separated by optional `*`, each factor being
    /// `x<INT>` or a letter, optionally followed by `^<INT>`. Whitespace is
    /// ignored and repeated factors multiply.
    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut exps = vec![0u32; n];
        if chars == ['1'] {
            return Ok(Monomial { exps });
        }
        let read_int = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return None;
            }
            chars[start..*pos].iter().collect::<String>().parse().ok()
        };
        let mut pos = 0;
        let mut expect_factor = true;
        while pos < chars.len() {
            let c = chars[pos];
            if c == '*' {
                if expect_factor {
                    return Err(Error::Parse(format!("unexpected '*' in {text:?}")));
                }
                expect_factor = true;
                pos += 1;
                continue;
            }
            if !c.is_ascii_lowercase() {
                return Err(Error::Parse(format!("unexpected {c:?} in {text:?}")));
            }
            pos += 1;
            let var = if c == 'x' && pos < chars.len() && chars[pos].is_ascii_digit() {
                read_int(&mut pos).ok_or_else(|| Error::Parse(format!("bad index in {text:?}")))?
                    as usize
            } else {
                (c as u8 - b'a') as usize + 1
            };
            if var == 0 || var > n {
                return Err(Error::Parse(format!(
                    "variable x{var} outside x1..x{n} in {text:?}"
                )));
            }
            let mut e = 1u64;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                e = read_int(&mut pos)
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {text:?}")))?;
            }
            let e = u32::try_from(e).map_err(|_| Error::Overflow)?;
            exps[var - 1] = exps[var - 1].checked_add(e).ok_or(Error::Overflow)?;
            expect_factor = false;
        }
        if expect_factor {
            return Err(Error::Parse(format!("dangling '*' in {text:?}")));
        }
        Ok(Monomial { exps })
    }

    /// Canonical `x1^2*x3` form, independent of the ambient size.
    pub fn canonical(&self) -> String {
        self.render(false)
    }

    fn render(&self, letters: bool) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in self.support() {
            let name = if letters {
                ((b'a' + (i - 1) as u8) as char).to_string()
            } else {
                format!("x{i}")
            };
            match self.exps[i - 1] {
                1 => parts.push(name),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.exps.len() <= 4))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Vertex order used for canonical numbering: ascending degree, then
/// rlex-descending within a degree.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.rlex_cmp_unchecked(a))
}

/// Sort rlex-descending (`m_1 ≻ m_2 ≻ ...`); ties across degrees fall back
/// to [`canonical_cmp`].
pub fn sort_canonical(ms: &mut [Monomial]) {
    ms.sort_by(canonical_cmp);
}

/// A contiguous range of variables `x_lo, ..., x_hi` (1-based, inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarRange {
    lo: usize,
    hi: usize,
}

impl VarRange {
    pub fn new(lo: usize, hi: usize, n: usize) -> Result<Self> {
        if lo == 0 || lo > hi || hi > n {
            return Err(Error::Parse(format!(
                "variable range x{lo}..x{hi} invalid in {n} variables"
            )));
        }
        Ok(VarRange { lo, hi })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vars(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for VarRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x{}..x{})", self.lo, self.hi)
    }
}

/// All monomials of degree `d` in the variables of `range`, within an
/// ambient ring of `n` variables, sorted rlex-descending.
pub fn monomials_of_degree(n: usize, range: VarRange, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, hi: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == hi {
            exps[pos - 1] = left;
            out.push(Monomial { exps: exps.clone() });
            exps[pos - 1] = 0;
            return;
        }
        for e in 0..=left {
            exps[pos - 1] = e;
            rec(pos + 1, hi, left - e, exps, out);
        }
        exps[pos - 1] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0; n];
    rec(range.lo, range.hi, d, &mut exps, &mut out);
    sort_canonical(&mut out);
    out
}
