//! The pattern graph of a permutation and a path decomposition whose width
//! is at most the number of runs.

use std::fmt;

use serde::Serialize;

use crate::perm::Permutation;
use crate::runs::RunDecomposition;

/// Graph on the positions `1..=m` of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternGraph {
    pub vertices: usize,
    /// `(i, i+1)` for neighbouring positions.
    pub adjacent: Vec<(usize, usize)>,
    /// `(pos(v), pos(v+1))` for `v = 1..m-1`, in order of `v`.
    pub consecutive: Vec<(usize, usize)>,
}

impl PatternGraph {
    /// The union of both edge sets as sorted `(low, high)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut all: Vec<(usize, usize)> = self
            .adjacent
            .iter()
            .chain(&self.consecutive)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn build_pattern_graph(p: &Permutation) -> PatternGraph {
    let m = p.len();
    let adjacent = (1..m).map(|i| (i, i + 1)).collect();
    let consecutive = (1..m)
        .map(|v| (p.position_of(v) + 1, p.position_of(v + 1) + 1))
        .collect();
    PatternGraph {
        vertices: m,
        adjacent,
        consecutive,
    }
}

/// Bags of positions, each kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        PathDecomposition { bags }
    }

    /// Largest bag size minus one (0 for no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }
}

/// One line per bag, positions separated by spaces.
impl fmt::Display for PathDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bag in &self.bags {
            let line: Vec<String> = bag.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Runs as value sets, each extended by the extremum just before it.
pub fn extended_runs(p: &Permutation) -> Vec<Vec<usize>> {
    let dec = RunDecomposition::new(p);
    dec.runs()
        .iter()
        .map(|run| {
            let from = run.start.saturating_sub(1);
            p.values()[from..=run.end].to_vec()
        })
        .collect()
}

/// Bag `v` holds position `v`'s value and, for every extended run meeting
/// `1..v-1`, the largest such value, all translated to positions.
pub fn lemma_decomposition(p: &Permutation) -> PathDecomposition {
    let runs = extended_runs(p);
    let bags = (1..=p.len())
        .map(|v| {
            let mut values: Vec<usize> = runs
                .iter()
                .filter_map(|r| r.iter().copied().filter(|&x| x < v).max())
                .collect();
            values.push(v);
            values.into_iter().map(|x| p.position_of(x) + 1).collect()
        })
        .collect();
    PathDecomposition::new(bags)
}

/// Checks vertex coverage, edge coverage and contiguity of every vertex's
/// bags. The width is reported whether or not the decomposition is valid.
pub fn validate_decomposition(g: &PatternGraph, d: &PathDecomposition) -> (bool, usize) {
    let width = d.width();
    let m = g.vertices;
    let in_bag = |bag: &Vec<usize>, x: usize| bag.binary_search(&x).is_ok();
    if d.bags.iter().flatten().any(|&x| x == 0 || x > m) {
        return (false, width);
    }
    for x in 1..=m {
        let hits: Vec<usize> = (0..d.bags.len()).filter(|&i| in_bag(&d.bags[i], x)).collect();
        let Some((&first, &last)) = hits.first().zip(hits.last()) else {
            return (false, width);
        };
        if last - first + 1 != hits.len() {
            return (false, width);
        }
    }
    let covered = g
        .edges()
        .iter()
        .all(|&(a, b)| d.bags.iter().any(|bag| in_bag(bag, a) && in_bag(bag, b)));
    (covered, width)
}
