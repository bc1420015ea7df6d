//! Bit-vector and F2 matrix kernels.
//!
//! A [`Parity`] is a word-packed vector in F2^n. Bit `i` is variable `x_i`;
//! in every textual form the leftmost character is `x_0`, so `x_0 ⊕ x_2 ⊕ x_3`
//! over five variables reads `10110`.
//!
//! A [`WireState`] is the invertible matrix whose row `w` is the parity
//! currently carried by wire `w`. CNOT gates act on it as row additions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// An XOR of a subset of `n` boolean variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Parity {
    len: usize,
    words: Vec<u64>,
}

impl Parity {
    pub fn zeros(len: usize) -> Self {
        Parity {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with only bit `i` set.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut p = Parity::zeros(len);
        p.set(i, true);
        p
    }

    /// Builds a parity from the positions of its set bits.
    pub fn from_indices<I>(len: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut p = Parity::zeros(len);
        for i in indices {
            if i >= len {
                return Err(Error::IndexOutOfRange { index: i, len });
            }
            p.set(i, true);
        }
        Ok(p)
    }

    /// Builds a parity from the low `len` bits of `value`, bit `i` of the
    /// integer becoming variable `x_i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        debug_assert!(len >= 64 || value >> len == 0);
        let mut p = Parity::zeros(len);
        if len > 0 {
            p.words[0] = value;
        }
        p
    }

    /// Returns the low 64 bits as an integer (bit `i` = `x_i`).
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of set bits.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place `self ^= other`.
    #[inline]
    pub fn xor_assign(&mut self, other: &Parity) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Parity) -> Parity {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// `|self ⊕ other|` without allocating.
    #[inline]
    pub fn xor_weight(&self, other: &Parity) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// F2 inner product `⟨self, other⟩`.
    #[inline]
    pub fn dot(&self, other: &Parity) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// The coordinate update dual to `CNOT(control, target)`: bit `control`
    /// becomes `s_control ⊕ s_target`.
    ///
    /// The gate adds wire `control` into wire `target`, so a parity written
    /// in the wire basis changes at position `control`, not `target`.
    pub fn rewrite_under_cnot(&mut self, control: usize, target: usize) {
        debug_assert_ne!(control, target);
        if self.get(target) {
            self.flip(control);
        }
    }
}

/// Free-function form of [`Parity::weight`].
pub fn hamming_weight(p: &Parity) -> usize {
    p.weight()
}

/// Returns `s` with bit `control` replaced by `s_control ⊕ s_target`.
pub fn parity_rewrite_under_cnot(s: &Parity, control: usize, target: usize) -> Result<Parity> {
    check_gate(control, target, s.len())?;
    let mut out = s.clone();
    out.rewrite_under_cnot(control, target);
    Ok(out)
}

pub(crate) fn check_gate(control: usize, target: usize, n: usize) -> Result<()> {
    if control == target {
        return Err(Error::InvalidGate { control, target });
    }
    for w in [control, target] {
        if w >= n {
            return Err(Error::IndexOutOfRange { index: w, len: n });
        }
    }
    Ok(())
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            self.current = *self.words.get(self.word_idx)?;
        }
    }
}

// Lexicographic on the textual form: leftmost (x_0) is the most significant
// character and '0' < '1'.
impl Ord for Parity {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                return if (a >> first) & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Parity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parity({self})")
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = Parity::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => p.set(i, true),
                _ => return Err(Error::BadBitstring(s.to_string())),
            }
        }
        Ok(p)
    }
}

/// The parities carried by each of `n` wires; always an invertible matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WireState {
    rows: Vec<Parity>,
}

impl WireState {
    pub fn identity(n: usize) -> Self {
        WireState {
            rows: (0..n).map(|i| Parity::unit(n, i)).collect(),
        }
    }

    /// Wraps explicit rows. Fails if they are not a square invertible matrix.
    pub fn from_rows(rows: Vec<Parity>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.iter().map(Parity::len).find(|&l| l != n).unwrap_or(n),
            });
        }
        if rank(&rows) != n {
            return Err(Error::Singular);
        }
        Ok(WireState { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Parity] {
        &self.rows
    }

    pub fn row(&self, wire: usize) -> &Parity {
        &self.rows[wire]
    }

    /// `row[target] ^= row[control]`.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_gate(control, target, self.n())?;
        self.apply_cnot_unchecked(control, target);
        Ok(())
    }

    pub(crate) fn apply_cnot_unchecked(&mut self, control: usize, target: usize) {
        let (c, t) = if control < target {
            let (lo, hi) = self.rows.split_at_mut(target);
            (&lo[control], &mut hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(control);
            (&hi[0], &mut lo[target])
        };
        t.xor_assign(c);
        debug_assert!(!t.is_zero());
    }

    /// Unit lower triangular: the diagonal is all ones and nothing sits
    /// above it.
    pub fn is_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.get(i) && r.ones().last() == Some(i))
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for r in &self.rows {
            if r.weight() != 1 {
                return false;
            }
            let c = r.first_one().unwrap();
            if std::mem::replace(&mut seen[c], true) {
                return false;
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.weight() == 1 && r.get(i))
    }

    /// `|A|_∞`, the largest row weight.
    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(Parity::weight).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> usize {
        self.rows.iter().map(Parity::weight).sum()
    }

    /// For a permutation matrix, `perm[w]` is the variable carried by wire
    /// `w`. `None` otherwise.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_permutation() {
            return None;
        }
        Some(self.rows.iter().map(|r| r.first_one().unwrap()).collect())
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.rows) == self.n()
    }

    /// The wire carrying exactly `p`, if any.
    pub fn wire_of(&self, p: &Parity) -> Option<usize> {
        self.rows.iter().position(|r| r == p)
    }
}

impl fmt::Debug for WireState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| r.to_string())).finish()
    }
}

/// Rank over F2.
pub fn rank(rows: &[Parity]) -> usize {
    let mut basis: Vec<Parity> = Vec::new();
    // Each basis vector is reduced on its pivot column.
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = v.first_one() {
            for b in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&v);
                }
            }
            basis.push(v);
            pivots.push(p);
        }
    }
    basis.len()
}
