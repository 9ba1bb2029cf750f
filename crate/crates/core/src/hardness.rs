//! Pattern matching instances built from Clique instances.
//!
//! The pattern lists the vertices `1..k` followed by every pair `xy` with
//! `x < y <= k`; the text lists the vertices of the graph followed by its
//! edges. Every block is enclosed by a pair of guard elements, repeated
//! symbols become increasing values inside an interval, and a long
//! decreasing guard block closes both permutations.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{flatten, Embedding, Permutation};
use crate::runs::RunDecomposition;

/// What sits at one position of a generated permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Slot {
    Open(usize),
    Close(usize),
    /// The larger element of the pair standing for vertex `j`.
    VertexHigh(usize),
    VertexLow(usize),
    /// Occurrence of a vertex inside edge block `block` (0-based).
    EdgeEnd {
        block: usize,
        vertex: usize,
    },
    GuardBlock(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardnessInstance {
    pub pattern: Permutation,
    pub text: Permutation,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    /// Largest pattern value, `4 + 2l² + 2k²`.
    pub p_max: usize,
    /// Largest text value.
    pub t_max: usize,
    pub pattern_guard_block: usize,
    pub text_guard_block: usize,
    /// 1-based positions of the bracket guards.
    pub pattern_guards: Vec<usize>,
    pub text_guards: Vec<usize>,
    /// Number of non-guard values in each permutation.
    pub pattern_core: usize,
    pub text_core: usize,
    #[serde(skip)]
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pattern_layout: Vec<Slot>,
    #[serde(skip)]
    text_layout: Vec<Slot>,
}

struct Built {
    values: Vec<usize>,
    layout: Vec<Slot>,
    guards: Vec<usize>,
    core: usize,
    max: usize,
}

// Assembles one side. `vertices` are listed first, then one block per pair
// in `pairs`.
fn build(vertices: usize, pairs: &[(usize, usize)], guard_block: usize) -> Result<Built> {
    let mut layout = Vec::new();
    let mut pair = 0;
    layout.push(Slot::Open(pair));
    for j in 1..=vertices {
        layout.push(Slot::VertexHigh(j));
        layout.push(Slot::VertexLow(j));
    }
    layout.push(Slot::Close(pair));
    for (block, &(u, v)) in pairs.iter().enumerate() {
        pair += 1;
        layout.push(Slot::Open(pair));
        layout.push(Slot::EdgeEnd { block, vertex: u });
        layout.push(Slot::EdgeEnd { block, vertex: v });
        layout.push(Slot::Close(pair));
    }
    let pairs_total = pair + 1;

    // Interval keys: vertex j owns [j*S, j*S + S-1]; the dotted part uses
    // the top and bottom of the interval, later occurrences climb from the
    // bottom in order of appearance.
    let mut occurrences = vec![0usize; vertices + 1];
    for &(u, v) in pairs {
        occurrences[u] += 1;
        occurrences[v] += 1;
    }
    let scale = 10.max(occurrences.iter().max().copied().unwrap_or(0) + 2);
    let mut fill = vec![0usize; vertices + 1];
    let mut keys = Vec::new();
    for slot in &layout {
        match *slot {
            Slot::VertexHigh(j) => keys.push(j * scale + scale - 1),
            Slot::VertexLow(j) => keys.push(j * scale),
            Slot::EdgeEnd { vertex, .. } => {
                fill[vertex] += 1;
                keys.push(vertex * scale + fill[vertex]);
            }
            _ => {}
        }
    }
    let core_ranks = flatten(&keys)?.into_values();
    let core = core_ranks.len();
    let max = core + guard_block + 2 * pairs_total;

    let mut values = Vec::with_capacity(layout.len() + guard_block);
    let mut guards = Vec::new();
    let mut ranks = core_ranks.into_iter();
    for (pos, slot) in layout.iter().enumerate() {
        let v = match *slot {
            Slot::Open(i) => max - 2 * i - 1,
            Slot::Close(i) => max - 2 * i,
            _ => ranks.next().expect("one rank per core slot"),
        };
        if matches!(slot, Slot::Open(_) | Slot::Close(_)) {
            guards.push(pos + 1);
        }
        values.push(v);
    }
    for idx in 0..guard_block {
        layout.push(Slot::GuardBlock(idx));
        values.push(core + guard_block - idx);
    }
    Ok(Built {
        values,
        layout,
        guards,
        core,
        max,
    })
}

/// Builds the instance for `(g, k)`; `k` must lie in `1..=l`.
pub fn reduce_clique(g: &Graph, k: usize) -> Result<HardnessInstance> {
    let l = g.vertex_count();
    if k == 0 || k > l {
        return Err(Error::CliqueSize { k, l });
    }
    let guard_block = 2 + 2 * l * l;
    let pattern_pairs: Vec<(usize, usize)> = (1..=k).flat_map(|x| (x + 1..=k).map(move |y| (x, y))).collect();
    let p = build(k, &pattern_pairs, guard_block)?;
    let t = build(l, g.edges(), guard_block)?;
    Ok(HardnessInstance {
        pattern: Permutation::new(p.values)?,
        text: Permutation::new(t.values)?,
        k,
        l,
        m: g.edge_count(),
        p_max: p.max,
        t_max: t.max,
        pattern_guard_block: guard_block,
        text_guard_block: guard_block,
        pattern_guards: p.guards,
        text_guards: t.guards,
        pattern_core: p.core,
        text_core: t.core,
        edges: g.edges().to_vec(),
        pattern_layout: p.layout,
        text_layout: t.layout,
    })
}

impl HardnessInstance {
    /// The pattern's non-guard values in order, re-flattened.
    pub fn pattern_core_values(&self) -> Permutation {
        let core: Vec<usize> = self
            .pattern
            .values()
            .iter()
            .zip(&self.pattern_layout)
            .filter(|(_, s)| !matches!(s, Slot::Open(_) | Slot::Close(_) | Slot::GuardBlock(_)))
            .map(|(&v, _)| v)
            .collect();
        flatten(&core).expect("distinct values")
    }

    /// Checks the size formulas of the construction.
    pub fn check_structure(&self) -> Result<()> {
        let (k, l) = (self.k, self.l);
        let fail = |what: &str| Err(Error::Structure(what.to_string()));
        if self.p_max != 4 + 2 * l * l + 2 * k * k {
            return fail("largest pattern value");
        }
        if self.pattern.len() != self.p_max {
            return fail("pattern length");
        }
        if self.pattern_guard_block != 2 + 2 * l * l {
            return fail("guard block length");
        }
        if self.pattern_core != k + k * k {
            return fail("pattern core size");
        }
        if RunDecomposition::new(&self.pattern).count() > 3 + 2 * k * k {
            return fail("pattern runs");
        }
        if self.text.len() > 4 * (1 + l * l) {
            return fail("text length");
        }
        if self.text.len() != self.t_max {
            return fail("largest text value");
        }
        Ok(())
    }

    /// `key=value` lines describing the instance.
    pub fn metadata(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "k={}", self.k);
        let _ = writeln!(out, "l={}", self.l);
        let _ = writeln!(out, "m={}", self.m);
        let _ = writeln!(out, "pattern_length={}", self.pattern.len());
        let _ = writeln!(out, "text_length={}", self.text.len());
        let _ = writeln!(out, "p_max={}", self.p_max);
        let _ = writeln!(out, "t_max={}", self.t_max);
        let _ = writeln!(out, "pattern_guard_block={}", self.pattern_guard_block);
        let _ = writeln!(out, "text_guard_block={}", self.text_guard_block);
        let _ = writeln!(out, "pattern_core={}", self.pattern_core);
        let _ = writeln!(out, "text_core={}", self.text_core);
        let _ = writeln!(out, "pattern_runs={}", RunDecomposition::new(&self.pattern).count());
        let _ = writeln!(out, "text_runs={}", RunDecomposition::new(&self.text).count());
        let _ = writeln!(out, "pattern_guards={}", join(&self.pattern_guards));
        let _ = writeln!(out, "text_guards={}", join(&self.text_guards));
        out
    }

    /// Pattern line, text line, a blank line, then the metadata block.
    pub fn format(&self) -> String {
        format!("{}\n{}\n\n{}", self.pattern, self.text, self.metadata())
    }
}

/// The matching that sends pattern vertex `i` to the `i`-th smallest clique
/// vertex, pattern edge blocks to the matching graph edge blocks and guards
/// to guards.
pub fn clique_to_embedding(inst: &HardnessInstance, g: &Graph, clique: &[usize]) -> Result<Embedding> {
    if g.vertex_count() != inst.l || g.edges() != inst.edges.as_slice() {
        return Err(Error::InvalidClique("graph differs from the reduced one".into()));
    }
    let mut c = clique.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() != inst.k || clique.len() != inst.k {
        return Err(Error::InvalidClique(format!("expected {} distinct vertices", inst.k)));
    }
    if let Some(&v) = c.iter().find(|&&v| v == 0 || v > inst.l) {
        return Err(Error::InvalidClique(format!("vertex {v} is not in the graph")));
    }
    let edge_index: HashMap<(usize, usize), usize> = inst.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pattern_pairs: Vec<(usize, usize)> = (1..=inst.k)
        .flat_map(|x| (x + 1..=inst.k).map(move |y| (x, y)))
        .collect();
    let mut block_target = Vec::with_capacity(pattern_pairs.len());
    for &(x, y) in &pattern_pairs {
        let e = (c[x - 1], c[y - 1]);
        let idx = edge_index
            .get(&e)
            .ok_or_else(|| Error::InvalidClique(format!("{} and {} are not adjacent", e.0, e.1)))?;
        block_target.push(*idx);
    }
    let text_pos: HashMap<Slot, usize> = inst.text_layout.iter().enumerate().map(|(i, &s)| (s, i + 1)).collect();
    let pair_target = |i: usize| if i == 0 { 0 } else { block_target[i - 1] + 1 };
    let positions = inst
        .pattern_layout
        .iter()
        .map(|slot| {
            let target = match *slot {
                Slot::Open(i) => Slot::Open(pair_target(i)),
                Slot::Close(i) => Slot::Close(pair_target(i)),
                Slot::VertexHigh(x) => Slot::VertexHigh(c[x - 1]),
                Slot::VertexLow(x) => Slot::VertexLow(c[x - 1]),
                Slot::EdgeEnd { block, vertex } => Slot::EdgeEnd {
                    block: block_target[block],
                    vertex: c[vertex - 1],
                },
                Slot::GuardBlock(i) => Slot::GuardBlock(i),
            };
            text_pos[&target]
        })
        .collect();
    Embedding::from_positions(&inst.text, positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_embedding;

    fn sample_graph() -> Graph {
        Graph::new(6, [(1, 2), (1, 6), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 6)]).unwrap()
    }

    #[test]
    fn sample_graph_pattern() {
        let inst = reduce_clique(&sample_graph(), 3).unwrap();
        assert_eq!(
            inst.pattern_core_values().values(),
            &[4, 1, 8, 5, 12, 9, 2, 6, 3, 10, 7, 11]
        );
        assert_eq!(inst.p_max, 94);
        assert_eq!(inst.pattern_guard_block, 74);
        assert_eq!(inst.pattern.len(), 94);
        assert_eq!(inst.pattern_guards, vec![1, 8, 9, 12, 13, 16, 17, 20]);
        // The first bracket pair holds the two largest values.
        assert_eq!(inst.pattern.at(0), 93);
        assert_eq!(inst.pattern.at(7), 94);
        inst.check_structure().unwrap();
    }

    #[test]
    fn sample_graph_clique_embeds() {
        let g = sample_graph();
        let inst = reduce_clique(&g, 3).unwrap();
        let e = clique_to_embedding(&inst, &g, &[2, 3, 5]).unwrap();
        assert!(is_embedding(&inst.pattern, &inst.text, &e).unwrap());
        assert!(clique_to_embedding(&inst, &g, &[1, 2, 3]).is_err());
        assert!(clique_to_embedding(&inst, &g, &[2, 3]).is_err());
    }

    #[test]
    fn single_vertex_clique() {
        let g = Graph::empty(3);
        let inst = reduce_clique(&g, 1).unwrap();
        inst.check_structure().unwrap();
        let e = clique_to_embedding(&inst, &g, &[2]).unwrap();
        assert!(is_embedding(&inst.pattern, &inst.text, &e).unwrap());
    }

    #[test]
    fn rejects_bad_k() {
        assert_eq!(
            reduce_clique(&Graph::empty(2), 3),
            Err(Error::CliqueSize { k: 3, l: 2 })
        );
        assert!(reduce_clique(&Graph::empty(2), 0).is_err());
    }

    #[test]
    fn deterministic_and_formatted() {
        let a = reduce_clique(&sample_graph(), 3).unwrap();
        let b = reduce_clique(&sample_graph(), 3).unwrap();
        assert_eq!(a.format(), b.format());
        let text = a.format();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap().split(' ').count(), 94);
        assert!(text.contains("\np_max=94\n"));
    }

    #[test]
    fn many_occurrences_stay_in_their_interval() {
        let g = Graph::complete(12);
        let inst = reduce_clique(&g, 4).unwrap();
        inst.check_structure().unwrap();
        let e = clique_to_embedding(&inst, &g, &[3, 7, 11, 12]).unwrap();
        assert!(is_embedding(&inst.pattern, &inst.text, &e).unwrap());
    }
}
