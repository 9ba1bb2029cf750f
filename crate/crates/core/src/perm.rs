//! Permutations in one-line notation, embeddings, and flattening.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` stored in one-line notation together with its
/// inverse.
///
/// Positions handed to and returned from the methods here are 0-based
/// indices; values are the permutation entries `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    values: Vec<usize>,
    // inverse[v] = index of value v; inverse[0] is unused.
    inverse: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line values, checking that they are a
    /// rearrangement of `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut inverse = vec![usize::MAX; n + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::OutOfRange {
                    index: i + 1,
                    value: v as i64,
                    len: n,
                });
            }
            if inverse[v] != usize::MAX {
                return Err(Error::DuplicateValue {
                    index: i + 1,
                    value: v.to_string(),
                });
            }
            inverse[v] = i;
        }
        Ok(Permutation { values, inverse })
    }

    /// The identity permutation `1 2 .. n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
            inverse: std::iter::once(usize::MAX).chain(0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at 0-based index `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos]
    }

    /// 0-based index of `value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.inverse[value]
    }

    /// `a` stands left of `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.inverse[a] < self.inverse[b]
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }
}

/// Serialized as the plain list of values.
impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

/// Parses whitespace-separated integers into a permutation.
///
/// Errors name the first offending token (1-based).
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let n = tokens.len();
    let mut parsed = Vec::with_capacity(n);
    for (i, tok) in tokens.iter().enumerate() {
        let v: i64 = tok.parse().map_err(|_| Error::InvalidToken {
            index: i + 1,
            token: tok.to_string(),
        })?;
        parsed.push(v);
    }
    let mut seen = vec![false; n + 1];
    let mut values = Vec::with_capacity(n);
    for (i, &v) in parsed.iter().enumerate() {
        if v < 1 || v as u64 > n as u64 {
            return Err(Error::OutOfRange {
                index: i + 1,
                value: v,
                len: n,
            });
        }
        let v = v as usize;
        if seen[v] {
            return Err(Error::DuplicateValue {
                index: i + 1,
                value: v.to_string(),
            });
        }
        seen[v] = true;
        values.push(v);
    }
    Permutation::new(values)
}

/// Replaces the smallest entry by 1, the second smallest by 2, and so on.
///
/// Works for any totally ordered entries (integers, exact rationals, or
/// finite floats); equal or incomparable entries are rejected.
pub fn flatten<T: PartialOrd>(seq: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    let mut bad = None;
    order.sort_by(|&a, &b| {
        seq[a].partial_cmp(&seq[b]).unwrap_or_else(|| {
            bad.get_or_insert(a.max(b));
            Ordering::Equal
        })
    });
    if let Some(i) = bad {
        return Err(Error::Incomparable { index: i + 1 });
    }
    for w in order.windows(2) {
        if seq[w[0]].partial_cmp(&seq[w[1]]) != Some(Ordering::Less) {
            return Err(Error::DuplicateValue {
                index: w[0].max(w[1]) + 1,
                value: format!("at entry {}", w[0].min(w[1]) + 1),
            });
        }
    }
    let mut values = vec![0; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank + 1;
    }
    Permutation::new(values)
}

/// A matching of a pattern into a text: strictly increasing 1-based text
/// positions, one per pattern position, with the text values found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

impl Embedding {
    /// Reads the values at the given 1-based positions of `text`.
    pub fn from_positions(text: &Permutation, positions: Vec<usize>) -> Result<Self> {
        let mut values = Vec::with_capacity(positions.len());
        for &p in &positions {
            if p == 0 || p > text.len() {
                return Err(Error::OutOfRange {
                    index: values.len() + 1,
                    value: p as i64,
                    len: text.len(),
                });
            }
            values.push(text.at(p - 1));
        }
        Ok(Embedding { positions, values })
    }

    pub fn empty() -> Self {
        Embedding {
            positions: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Checks that `e` is a matching of `pattern` into `text`.
///
/// Only a length mismatch between `e` and `pattern` is an error; every
/// other defect (positions out of range or not increasing, values that do
/// not agree with `text`, wrong relative order) yields `Ok(false)`.
pub fn is_embedding(pattern: &Permutation, text: &Permutation, e: &Embedding) -> Result<bool> {
    let k = pattern.len();
    if e.positions.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: e.positions.len(),
        });
    }
    if e.values.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: e.values.len(),
        });
    }
    let n = text.len();
    for (i, &p) in e.positions.iter().enumerate() {
        if p == 0 || p > n || text.at(p - 1) != e.values[i] {
            return Ok(false);
        }
        if i > 0 && e.positions[i - 1] >= p {
            return Ok(false);
        }
    }
    // Walking the pattern positions in order of increasing pattern value
    // must visit strictly increasing text values.
    let mut last = 0;
    for value in 1..=k {
        let tv = e.values[pattern.position_of(value)];
        if tv <= last {
            return Ok(false);
        }
        last = tv;
    }
    Ok(true)
}
