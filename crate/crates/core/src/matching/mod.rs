//! Exact pattern matching by alternating runs.
//!
//! The text is padded so that its last run differs in direction from the
//! pattern's, every matching function is tried in lexicographic order, and
//! for each one the table `X_0..X_k` is built. The first function with a
//! nonempty `X_k` yields the witness.

mod dp;
mod function;
mod pad;
mod rep;

use rayon::prelude::*;
use serde::Serialize;

pub use dp::{BoundReport, DpContext, DpLevel, DpTable, DpTuple, TABLE_GROWTH};
pub use function::{binomial, count_matching_functions, MatchingFunction, MatchingFunctions};
pub use pad::{pad_text, Padding};
pub use rep::{d_rep, u_rep};

use crate::error::Result;
use crate::perm::{Embedding, Permutation};
use crate::runs::{Direction, RunDecomposition};
use dp::PatternShape;

/// A pattern/text pair with the padded text and run structures precomputed.
#[derive(Clone, Debug)]
pub struct PpmInstance {
    pattern: Permutation,
    text: Permutation,
    padded: Permutation,
    padding: Padding,
    pattern_runs: RunDecomposition,
    text_runs: RunDecomposition,
    shape: PatternShape,
}

impl PpmInstance {
    pub fn new(pattern: Permutation, text: Permutation) -> Self {
        let (padded, padding) = pad_text(&pattern, &text);
        let pattern_runs = RunDecomposition::new(&pattern);
        let text_runs = RunDecomposition::new(&padded);
        let shape = PatternShape::new(pattern.values(), &pattern_runs);
        PpmInstance {
            pattern,
            text,
            padded,
            padding,
            pattern_runs,
            text_runs,
            shape,
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn text(&self) -> &Permutation {
        &self.text
    }

    pub fn padded_text(&self) -> &Permutation {
        &self.padded
    }

    pub fn padding(&self) -> Padding {
        self.padding
    }

    pub fn pattern_runs(&self) -> &RunDecomposition {
        &self.pattern_runs
    }

    /// Runs of the padded text.
    pub fn text_runs(&self) -> &RunDecomposition {
        &self.text_runs
    }

    pub(crate) fn shape(&self) -> &PatternShape {
        &self.shape
    }

    pub fn matching_functions(&self) -> MatchingFunctions {
        MatchingFunctions::new(&self.pattern_runs, &self.text_runs)
    }

    pub fn matching_function_count(&self) -> u128 {
        count_matching_functions(&self.pattern_runs, &self.text_runs)
    }

    /// Table machinery for `f`, which must be valid for the padded text.
    pub fn context(&self, f: &MatchingFunction) -> Result<DpContext<'_>> {
        DpContext::new(self, f)
    }

    fn embedding_from_values(&self, values: &[usize]) -> Embedding {
        // values[κ-1] is the text value matched to pattern value κ.
        let positions = self
            .pattern
            .values()
            .iter()
            .map(|&pv| self.text.position_of(values[pv - 1]) + 1)
            .collect();
        Embedding::from_positions(&self.text, positions).expect("witnesses never use the padding element")
    }
}

/// All matching functions of `pattern` against an already padded text.
pub fn enumerate_matching_functions(pattern: &Permutation, padded_text: &Permutation) -> MatchingFunctions {
    MatchingFunctions::new(&RunDecomposition::new(pattern), &RunDecomposition::new(padded_text))
}

/// The full table for one matching function given on the padded text.
pub fn dp_trace(pattern: &Permutation, text: &Permutation, f: &MatchingFunction) -> Result<DpTable> {
    let inst = PpmInstance::new(pattern.clone(), text.clone());
    let ctx = inst.context(f)?;
    Ok(ctx.run())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchOptions {
    /// Evaluate matching functions on the rayon pool, in chunks.
    pub parallel: bool,
    /// Skip matching functions with a block that lacks a long enough
    /// monotone subsequence for its pattern run.
    pub prune: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            parallel: false,
            prune: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MatchStats {
    pub pattern_runs: usize,
    /// Runs of the text as given.
    pub text_runs: usize,
    /// Runs of the padded text, which the size bounds refer to.
    pub padded_text_runs: usize,
    pub matching_functions: u128,
    /// Matching functions whose table was built.
    pub evaluated: usize,
    /// Matching functions skipped by the monotone-length check.
    pub pruned: usize,
    /// Largest `|X_κ|` seen in any evaluated table.
    pub max_table: usize,
    pub bounds: BoundReport,
    /// The matching function that produced the witness.
    pub winner: Option<MatchingFunction>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchOutcome {
    pub embedding: Option<Embedding>,
    pub stats: MatchStats,
}

/// Finds a matching of `pattern` into `text`, if any.
pub fn find_embedding(pattern: &Permutation, text: &Permutation) -> Option<Embedding> {
    find_embedding_with(pattern, text, MatchOptions::default()).embedding
}

enum Evaluation {
    Pruned,
    Built {
        max_table: usize,
        bounds: BoundReport,
        witness: Option<Vec<usize>>,
    },
}

const CHUNK: usize = 256;

pub fn find_embedding_with(pattern: &Permutation, text: &Permutation, opts: MatchOptions) -> MatchOutcome {
    let k = pattern.len();
    let n = text.len();
    let mut stats = MatchStats {
        pattern_runs: RunDecomposition::new(pattern).count(),
        text_runs: RunDecomposition::new(text).count(),
        ..MatchStats::default()
    };
    if k == 0 {
        return MatchOutcome {
            embedding: Some(Embedding::empty()),
            stats,
        };
    }
    if k > n {
        return MatchOutcome { embedding: None, stats };
    }
    if k == 1 {
        // The padding element could be picked for a lone value, so this
        // case is answered directly.
        let embedding = Embedding::from_positions(text, vec![1]).ok();
        return MatchOutcome { embedding, stats };
    }

    let inst = PpmInstance::new(pattern.clone(), text.clone());
    stats.padded_text_runs = inst.text_runs().count();
    stats.matching_functions = inst.matching_function_count();
    let feasible = opts.prune.then(|| Feasibility::new(&inst));
    let evaluate = |f: &MatchingFunction| -> Evaluation {
        if let Some(check) = &feasible {
            if !check.admits(f) {
                return Evaluation::Pruned;
            }
        }
        let table = DpContext::new_unchecked(&inst, f).run();
        Evaluation::Built {
            max_table: table.max_size(),
            bounds: table.bound_report(),
            witness: table.witness_values(&inst.shape().run_of_value),
        }
    };

    let mut functions = inst.matching_functions();
    loop {
        let chunk: Vec<MatchingFunction> = if opts.parallel {
            functions.by_ref().take(CHUNK).collect()
        } else {
            functions.next().into_iter().collect()
        };
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Evaluation> = if opts.parallel {
            chunk.par_iter().map(evaluate).collect()
        } else {
            chunk.iter().map(evaluate).collect()
        };
        // Fold in canonical order so the stats match a sequential scan.
        for (f, result) in chunk.into_iter().zip(results) {
            match result {
                Evaluation::Pruned => stats.pruned += 1,
                Evaluation::Built {
                    max_table,
                    bounds,
                    witness,
                } => {
                    stats.evaluated += 1;
                    stats.max_table = stats.max_table.max(max_table);
                    stats.bounds.add(bounds);
                    if let Some(values) = witness {
                        stats.winner = Some(f);
                        return MatchOutcome {
                            embedding: Some(inst.embedding_from_values(&values)),
                            stats,
                        };
                    }
                }
            }
        }
    }
    MatchOutcome { embedding: None, stats }
}

/// Longest monotone subsequence lengths of every run interval of the padded
/// text, used to discard matching functions that cannot host a pattern run.
struct Feasibility {
    // up[a][b - a]: longest increasing subsequence of text runs a..=b.
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    need: Vec<(Direction, usize)>,
    text_runs: usize,
}

impl Feasibility {
    fn new(inst: &PpmInstance) -> Self {
        let runs = inst.text_runs();
        let values = inst.padded_text().values();
        let t = runs.count();
        let mut up = Vec::with_capacity(t);
        let mut down = Vec::with_capacity(t);
        for a in 0..t {
            let mut inc: Vec<usize> = Vec::new();
            let mut dec: Vec<usize> = Vec::new();
            let mut row_up = Vec::with_capacity(t - a);
            let mut row_down = Vec::with_capacity(t - a);
            for b in a..t {
                let run = runs.run(b);
                for &v in &values[run.start..=run.end] {
                    let i = inc.partition_point(|&y| y < v);
                    if i == inc.len() {
                        inc.push(v);
                    } else {
                        inc[i] = v;
                    }
                    let j = dec.partition_point(|&y| y > v);
                    if j == dec.len() {
                        dec.push(v);
                    } else {
                        dec[j] = v;
                    }
                }
                row_up.push(inc.len());
                row_down.push(dec.len());
            }
            up.push(row_up);
            down.push(row_down);
        }
        let need = inst
            .pattern_runs()
            .runs()
            .iter()
            .map(|r| (r.direction, r.len()))
            .collect();
        Feasibility {
            up,
            down,
            need,
            text_runs: t,
        }
    }

    fn admits(&self, f: &MatchingFunction) -> bool {
        self.need.iter().enumerate().all(|(i, &(dir, len))| {
            let (a, b) = f.block_runs(i, self.text_runs);
            let have = match dir {
                Direction::Up => self.up[a][b - a],
                Direction::Down => self.down[a][b - a],
            };
            have >= len
        })
    }
}
