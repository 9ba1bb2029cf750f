//! Brute-force reference implementations.
//!
//! These share no code with the run-based matcher and serve as ground truth
//! in tests and from the command line.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::binomial;
use crate::perm::{Embedding, Permutation};

/// Largest search space (number of subsets) the brute-force routines will
/// walk unless told otherwise.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

fn check_budget(size: u128, budget: u128) -> Result<()> {
    if size > budget {
        Err(Error::BudgetExceeded { size, budget })
    } else {
        Ok(())
    }
}

/// First matching of `pattern` into `text` in lexicographic order of
/// position sets.
pub fn brute_force_match(pattern: &Permutation, text: &Permutation) -> Result<Option<Embedding>> {
    brute_force_match_with_budget(pattern, text, DEFAULT_BUDGET)
}

pub fn brute_force_match_with_budget(
    pattern: &Permutation,
    text: &Permutation,
    budget: u128,
) -> Result<Option<Embedding>> {
    let k = pattern.len();
    let n = text.len();
    if k > n {
        return Ok(None);
    }
    check_budget(binomial(n, k), budget)?;
    let mut chosen = Vec::with_capacity(k);
    if extend(pattern.values(), text.values(), 0, &mut chosen) {
        let positions = chosen.iter().map(|p| p + 1).collect();
        return Embedding::from_positions(text, positions).map(Some);
    }
    Ok(None)
}

// Depth-first over positions; a new position is kept only if its value
// compares with every earlier pick as the pattern demands.
fn extend(pattern: &[usize], text: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
    let d = chosen.len();
    if d == pattern.len() {
        return true;
    }
    let last_start = text.len() - (pattern.len() - d);
    for p in from..=last_start {
        let v = text[p];
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(i, &q)| (pattern[i] < pattern[d]) == (text[q] < v));
        if consistent {
            chosen.push(p);
            if extend(pattern, text, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Length of a longest increasing subsequence (patience sorting).
pub fn lis_length(p: &Permutation) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &v in p.values() {
        let i = tails.partition_point(|&t| t < v);
        if i == tails.len() {
            tails.push(v);
        } else {
            tails[i] = v;
        }
    }
    tails.len()
}

/// First `k`-clique of `g` in lexicographic order.
pub fn has_clique(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    has_clique_with_budget(g, k, DEFAULT_BUDGET)
}

pub fn has_clique_with_budget(g: &Graph, k: usize, budget: u128) -> Result<Option<Vec<usize>>> {
    let l = g.vertex_count();
    if k > l {
        return Ok(None);
    }
    check_budget(binomial(l, k), budget)?;
    let mut chosen = Vec::with_capacity(k);
    Ok(grow(g, k, 1, &mut chosen).then_some(chosen))
}

fn grow(g: &Graph, k: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for v in from..=g.vertex_count() {
        if chosen.iter().all(|&u| g.has_edge(u, v)) {
            chosen.push(v);
            if grow(g, k, v + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
