//! Matching functions: assignments of pattern runs to overlapping blocks of
//! text runs.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::runs::RunDecomposition;

/// A matching function, stored as the first text run (0-based) of every
/// block. Block `i` spans text runs `starts[i]..=starts[i+1]`; the last block
/// runs to the end of the text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatchingFunction {
    starts: Vec<usize>,
}

impl MatchingFunction {
    pub fn new(starts: Vec<usize>) -> Self {
        MatchingFunction { starts }
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn block_count(&self) -> usize {
        self.starts.len()
    }

    /// First and last text run of block `i`.
    pub fn block_runs(&self, i: usize, text_runs: usize) -> (usize, usize) {
        let end = match self.starts.get(i + 1) {
            Some(&s) => s,
            None => text_runs - 1,
        };
        (self.starts[i], end)
    }

    /// First and last text position (0-based, inclusive) of block `i`.
    pub fn block_span(&self, i: usize, text: &RunDecomposition) -> (usize, usize) {
        let (a, b) = self.block_runs(i, text.count());
        (text.run(a).start, text.run(b).end)
    }

    /// `run(F(i))` for every block.
    pub fn run_counts(&self, text_runs: usize) -> Vec<usize> {
        (0..self.starts.len())
            .map(|i| {
                let (a, b) = self.block_runs(i, text_runs);
                b - a + 1
            })
            .collect()
    }

    /// Checks the block discipline against the run structure of the pattern
    /// and the (padded) text.
    pub fn validate(&self, pattern: &RunDecomposition, text: &RunDecomposition) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMatchingFunction(msg));
        let r = pattern.count();
        let t = text.count();
        if self.starts.len() != r {
            return bad(format!("{} blocks for {} pattern runs", self.starts.len(), r));
        }
        if r == 0 {
            return Ok(());
        }
        if self.starts[0] != 0 {
            return bad("the first block must start at the first text run".into());
        }
        for i in 1..r {
            let s = self.starts[i];
            if s >= t {
                return bad(format!("block {} starts beyond the last text run", i + 1));
            }
            if s <= self.starts[i - 1] {
                return bad(format!("block {} does not start after block {}", i + 1, i));
            }
            if text.run(s).direction != pattern.run(i).direction {
                return bad(format!(
                    "block {} starts with a run {} but pattern run {} is {}",
                    i + 1,
                    text.run(s).direction.symbol(),
                    i + 1,
                    pattern.run(i).direction.symbol()
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MatchingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.starts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s + 1)?;
        }
        Ok(())
    }
}

/// Lazily yields every matching function in lexicographic order of block
/// starts.
#[derive(Clone, Debug)]
pub struct MatchingFunctions {
    text_runs: usize,
    current: Option<Vec<usize>>,
    fresh: bool,
}

impl MatchingFunctions {
    pub fn new(pattern: &RunDecomposition, text: &RunDecomposition) -> Self {
        let r = pattern.count();
        let t = text.count();
        let current = first_starts(pattern, text);
        debug_assert!(current.as_ref().is_none_or(|s| s.len() == r && t > 0));
        MatchingFunctions {
            text_runs: t,
            current,
            fresh: true,
        }
    }

    fn advance(&mut self) {
        let t = self.text_runs;
        let Some(starts) = self.current.as_mut() else {
            return;
        };
        let r = starts.len();
        for i in (1..r).rev() {
            let candidate = starts[i] + 2;
            if candidate + (r - 1 - i) < t {
                starts[i] = candidate;
                for j in i + 1..r {
                    starts[j] = starts[j - 1] + 1;
                }
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for MatchingFunctions {
    type Item = MatchingFunction;

    fn next(&mut self) -> Option<MatchingFunction> {
        if !self.fresh {
            self.advance();
        }
        self.fresh = false;
        self.current.clone().map(MatchingFunction::new)
    }
}

// The second block starts at the first text run after the first one whose
// direction matches the second pattern run. Starting it at the first text run
// would leave the first block a single monotone run against the direction of
// the first pattern run, which holds at least two values, so such functions
// can never succeed and are not produced.
fn second_start(pattern: &RunDecomposition, text: &RunDecomposition) -> usize {
    if text.run(0).direction == pattern.run(1).direction {
        2
    } else {
        1
    }
}

// Directions alternate in both permutations, so once the second block start
// has the right direction every later start is one run further.
fn first_starts(pattern: &RunDecomposition, text: &RunDecomposition) -> Option<Vec<usize>> {
    let r = pattern.count();
    let t = text.count();
    if r == 0 || t == 0 {
        return None;
    }
    let mut starts = vec![0];
    if r > 1 {
        starts.push(second_start(pattern, text));
        for j in 2..r {
            starts.push(starts[j - 1] + 1);
        }
        if starts[r - 1] >= t {
            return None;
        }
    }
    Some(starts)
}

/// Number of matching functions, without enumerating them.
///
/// Block starts after the first are `c + 2d_1` with `c` in `{1, 2}`, then each one `1 + 2d_i`
/// further, so the count is a stars-and-bars binomial. Saturates at
/// `u128::MAX`.
pub fn count_matching_functions(pattern: &RunDecomposition, text: &RunDecomposition) -> u128 {
    let r = pattern.count();
    let t = text.count();
    if r == 0 || t == 0 {
        return 0;
    }
    if r == 1 {
        return 1;
    }
    let c = second_start(pattern, text);
    if c + r - 2 > t - 1 {
        return 0;
    }
    let slack = (t - 1 - c - (r - 2)) / 2;
    binomial(slack + r - 1, r - 1)
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
