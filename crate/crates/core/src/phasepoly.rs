//! Generalized Ising Hamiltonians as real-weighted sums of parities.
//!
//! `H = Σ_s b_s Z^s` where `Z^s` is the product of `Z_i` over the set bits
//! of `s`. With `Z|x⟩ = (−1)^x |x⟩` the energy of a bitstring `x` is
//! `Σ_s b_s (−1)^⟨s,x⟩`. Constant terms are global phases and never stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::f2::Parity;

/// Coefficients with magnitude at or below this are treated as zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PhasePolynomial {
    n: usize,
    terms: BTreeMap<Parity, f64>,
}

impl PhasePolynomial {
    pub fn new(n: usize) -> Self {
        PhasePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds `Σ b_I Π_{i∈I} Z_i` from index sets. Duplicate sets are merged.
    pub fn from_terms<I, S>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: IntoIterator<Item = usize>,
    {
        let mut poly = PhasePolynomial::new(n);
        for (set, coeff) in terms {
            let parity = Parity::from_indices(n, set)?;
            poly.add_term(parity, coeff)?;
        }
        Ok(poly)
    }

    /// Ising form of `min x^T Q x` over `x ∈ {0,1}^n`, reading only the upper
    /// triangle and diagonal of `q`.
    ///
    /// Substitutes `x_i = (1 − z_i)/2`; the dropped constant is the only
    /// difference between `x^T Q x` and the returned energy.
    pub fn from_qubo(q: &[Vec<f64>]) -> Result<Self> {
        let n = q.len();
        for (row, r) in q.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row,
                    cols: r.len(),
                });
            }
        }
        let mut poly = PhasePolynomial::new(n);
        for (i, row) in q.iter().enumerate() {
            let d = row[i];
            if d != 0.0 {
                // q x_i = q/2 − (q/2) z_i
                poly.add_term(Parity::unit(n, i), -d / 2.0)?;
            }
            for (j, &c) in row.iter().enumerate().skip(i + 1) {
                if c != 0.0 {
                    // c x_i x_j = c/4 (1 − z_i − z_j + z_i z_j)
                    poly.add_term(Parity::unit(n, i), -c / 4.0)?;
                    poly.add_term(Parity::unit(n, j), -c / 4.0)?;
                    poly.add_term(Parity::from_indices(n, [i, j])?, c / 4.0)?;
                }
            }
        }
        Ok(poly)
    }

    /// Adds `coeff` to the weight of `parity`, removing it if the sum
    /// cancels to zero.
    pub fn add_term(&mut self, parity: Parity, coeff: f64) -> Result<()> {
        if parity.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: parity.len(),
            });
        }
        if parity.is_zero() {
            return Err(Error::ConstantTerm);
        }
        let entry = self.terms.entry(parity);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + coeff;
                if v.abs() <= ZERO_TOL {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if coeff.abs() > ZERO_TOL {
                    e.insert(coeff);
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, parity: &Parity) -> f64 {
        self.terms.get(parity).copied().unwrap_or(0.0)
    }

    /// Terms in ascending bitstring order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Parity, f64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn parities(&self) -> impl Iterator<Item = &Parity> + '_ {
        self.terms.keys()
    }

    /// Terms as (index set, coefficient), the inverse of [`from_terms`](Self::from_terms).
    pub fn index_terms(&self) -> Vec<(Vec<usize>, f64)> {
        self.terms().map(|(p, c)| (p.ones().collect(), c)).collect()
    }

    /// `Σ_s b_s (−1)^⟨s,x⟩`.
    pub fn energy(&self, x: &Parity) -> f64 {
        self.terms().map(|(s, b)| if s.dot(x) { -b } else { b }).sum()
    }

    /// Upper bound on CNOTs when every term is built as its own phase
    /// gadget: `Σ_k 2(k−1)|S_k|`.
    pub fn ladder_upper_bound(&self) -> usize {
        self.parities().map(|p| 2 * p.weight().saturating_sub(1)).sum()
    }

    /// True iff no term has weight above `degree`.
    pub fn is_sparse_bounded(&self, degree: usize) -> bool {
        self.parities().all(|p| p.weight() <= degree)
    }

    pub fn max_weight(&self) -> usize {
        self.parities().map(Parity::weight).max().unwrap_or(0)
    }

    /// Largest coefficient difference against `other`, over the union of
    /// supports. Infinite if the variable counts differ.
    pub fn max_coefficient_diff(&self, other: &PhasePolynomial) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let a = self.terms().map(|(p, c)| (c - other.coefficient(p)).abs());
        let b = other
            .terms()
            .filter(|(p, _)| !self.terms.contains_key(*p))
            .map(|(_, c)| c.abs());
        a.chain(b).fold(0.0, f64::max)
    }

    /// Serializes as `.pn` text: an `n=` header, then `<bits> <coeff>` lines.
    /// `comments` are emitted as leading `#` lines.
    pub fn to_pn(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "n={}", self.n);
        for (p, c) in self.terms() {
            let _ = writeln!(out, "{p} {c:?}");
        }
        out
    }

    /// Parses `.pn` text. Without an `n=` header the first term fixes `n`.
    pub fn from_pn<R: BufRead>(reader: R) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut poly: Option<PhasePolynomial> = None;
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let body = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line[..],
            }
            .trim();
            if body.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            if let Some(rest) = body.strip_prefix("n=") {
                if poly.is_some() || n.is_some() {
                    return Err(perr("header must precede all terms".into()));
                }
                let v = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| perr(format!("bad header: {e}")))?;
                n = Some(v);
                continue;
            }
            let mut fields = body.split_whitespace();
            let (bits, coeff) = match (fields.next(), fields.next(), fields.next()) {
                (Some(b), Some(c), None) => (b, c),
                _ => return Err(perr("expected `<bitstring> <coefficient>`".into())),
            };
            let parity: Parity = bits.parse().map_err(|e: Error| perr(e.to_string()))?;
            let coeff: f64 = coeff
                .parse()
                .map_err(|e| perr(format!("bad coefficient {coeff:?}: {e}")))?;
            if !coeff.is_finite() {
                return Err(perr(format!("non-finite coefficient {coeff}")));
            }
            let expected = *n.get_or_insert(parity.len());
            if parity.len() != expected {
                return Err(perr(format!(
                    "bitstring has length {}, expected {expected}",
                    parity.len()
                )));
            }
            let poly = poly.get_or_insert_with(|| PhasePolynomial::new(expected));
            poly.add_term(parity, coeff).map_err(|e| perr(e.to_string()))?;
        }
        Ok(poly.unwrap_or_else(|| PhasePolynomial::new(n.unwrap_or(0))))
    }
}
