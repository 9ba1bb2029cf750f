//! The dynamic program over tuples of per-run choices.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::function::MatchingFunction;
use super::pad::Padding;
use super::rep::rep_offsets;
use super::PpmInstance;
use crate::error::Result;
use crate::runs::{Direction, RunDecomposition};

/// Growth rate of the worst-case table size per text run.
pub const TABLE_GROWTH: f64 = 1.2611;

/// Run membership of every pattern value.
#[derive(Clone, Debug)]
pub(crate) struct PatternShape {
    /// `run_of_value[v]` for `v` in `1..=k`; entry 0 is the first run.
    pub run_of_value: Vec<usize>,
    /// Whether `v` is the largest value of its run.
    pub is_run_max: Vec<bool>,
    pub directions: Vec<Direction>,
}

impl PatternShape {
    pub fn new(pattern: &[usize], runs: &RunDecomposition) -> Self {
        let k = pattern.len();
        let mut run_of_value = vec![0; k + 1];
        let mut run_max = vec![0; runs.count()];
        for (pos, &v) in pattern.iter().enumerate() {
            let r = runs.run_of_position(pos);
            run_of_value[v] = r;
            run_max[r] = run_max[r].max(v);
        }
        let mut is_run_max = vec![false; k + 1];
        for &m in &run_max {
            is_run_max[m] = true;
        }
        PatternShape {
            run_of_value,
            is_run_max,
            directions: runs.runs().iter().map(|r| r.direction).collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Block {
    start: usize,
    values: Vec<usize>,
    vale: Vec<usize>,
    larger_right: Vec<bool>,
    larger_left: Vec<bool>,
}

impl Block {
    fn new(start: usize, values: &[usize]) -> Self {
        let len = values.len();
        let dec = RunDecomposition::of_slice(values);
        let vale = (0..len).map(|p| dec.vale_of_position(p)).collect();
        let mut larger_right = vec![false; len];
        let mut best = 0;
        for o in (0..len).rev() {
            larger_right[o] = best > values[o];
            best = best.max(values[o]);
        }
        let mut larger_left = vec![false; len];
        best = 0;
        for o in 0..len {
            larger_left[o] = best > values[o];
            best = best.max(values[o]);
        }
        Block {
            start,
            values: values.to_vec(),
            vale,
            larger_right,
            larger_left,
        }
    }
}

/// One element of a table level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DpTuple {
    /// One entry per pattern run; 0 means nothing placed in that run yet.
    pub coords: Vec<usize>,
    /// Index of the producing tuple in the previous level.
    pub parent: Option<usize>,
    /// Pattern value whose placement created this tuple (0 for the root).
    pub placed: usize,
}

/// The set `X_κ` for one `κ`, sorted by coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DpLevel {
    pub kappa: usize,
    /// Size of the candidate set before the reduction rules.
    pub produced: usize,
    pub tuples: Vec<DpTuple>,
    /// Number of distinct vales among the nonzero entries of each
    /// coordinate, taken over the candidate set.
    pub vale_counts: Vec<usize>,
}

impl DpLevel {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn coords(&self) -> Vec<Vec<usize>> {
        self.tuples.iter().map(|t| t.coords.clone()).collect()
    }
}

/// Counts of table levels that break one of the size bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `|X_κ| > Π run(F(i))/2`.
    pub product: usize,
    /// `|X_κ| > 1.2611^run(T)`.
    pub exponential: usize,
    /// `v_κ^r > run(F(r))/2` for the block `r` that `κ` is placed in, while
    /// `κ` is not its run's maximum. Other blocks are not checked: after an
    /// R2 step a block may already span more vales, and later levels inherit
    /// that component unchanged.
    pub vale: usize,
}

impl BoundReport {
    pub fn add(&mut self, other: BoundReport) {
        self.product += other.product;
        self.exponential += other.exponential;
        self.vale += other.vale;
    }

    pub fn is_clean(&self) -> bool {
        self.product == 0 && self.exponential == 0 && self.vale == 0
    }
}

/// All levels `X_0..X_k` for one matching function. Values are those of
/// the original (unpadded) text.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DpTable {
    pub function: MatchingFunction,
    pub levels: Vec<DpLevel>,
    /// `run(F(i))` for each block.
    pub block_runs: Vec<usize>,
    /// Runs of the padded text.
    pub text_runs: usize,
    /// Whether `κ` is the largest value of its pattern run, by `κ`.
    #[serde(skip)]
    run_max_at: Vec<bool>,
    #[serde(skip)]
    run_of_value: Vec<usize>,
}

impl DpTable {
    pub fn product_bound(&self) -> f64 {
        self.block_runs.iter().map(|&r| r as f64 / 2.0).product()
    }

    pub fn exponential_bound(&self) -> f64 {
        TABLE_GROWTH.powi(self.text_runs as i32)
    }

    /// Largest `|X_κ|` over `κ ≥ 1`.
    pub fn max_size(&self) -> usize {
        self.levels.iter().skip(1).map(DpLevel::len).max().unwrap_or(0)
    }

    pub fn is_success(&self) -> bool {
        self.levels.last().is_some_and(|l| !l.is_empty())
    }

    /// Checks every level `κ ≥ 1` against the size bounds.
    pub fn bound_report(&self) -> BoundReport {
        let product = self.product_bound();
        let exponential = self.exponential_bound();
        let mut report = BoundReport::default();
        for level in self.levels.iter().skip(1) {
            let size = level.len() as f64;
            if size > product + 1e-9 {
                report.product += 1;
            }
            if size > exponential + 1e-9 {
                report.exponential += 1;
            }
            let r = self.run_of_value[level.kappa];
            if !self.run_max_at[level.kappa] && 2 * level.vale_counts[r] > self.block_runs[r] {
                report.vale += 1;
            }
        }
        report
    }

    /// Text values assigned to the pattern values `1..=k`, read off the
    /// parent chain of the first tuple of `X_k`.
    pub(crate) fn witness_values(&self, run_of_value: &[usize]) -> Option<Vec<usize>> {
        let k = self.levels.len() - 1;
        let mut idx = if self.levels[k].is_empty() { return None } else { 0 };
        let mut out = vec![0; k];
        for kappa in (1..=k).rev() {
            let t = &self.levels[kappa].tuples[idx];
            out[kappa - 1] = t.coords[run_of_value[kappa]];
            idx = t.parent.expect("non-root tuples have parents");
        }
        Some(out)
    }
}

/// The table machinery for one instance and one matching function.
pub struct DpContext<'a> {
    inst: &'a PpmInstance,
    function: MatchingFunction,
    blocks: Vec<Block>,
    block_runs: Vec<usize>,
}

impl<'a> DpContext<'a> {
    pub(crate) fn new(inst: &'a PpmInstance, f: &MatchingFunction) -> Result<Self> {
        f.validate(inst.pattern_runs(), inst.text_runs())?;
        Ok(Self::new_unchecked(inst, f))
    }

    pub(crate) fn new_unchecked(inst: &'a PpmInstance, f: &MatchingFunction) -> Self {
        let text = inst.padded_text().values();
        let blocks = (0..f.block_count())
            .map(|i| {
                let (a, b) = f.block_span(i, inst.text_runs());
                Block::new(a, &text[a..=b])
            })
            .collect();
        DpContext {
            inst,
            function: f.clone(),
            blocks,
            block_runs: f.run_counts(inst.text_runs().count()),
        }
    }

    pub fn function(&self) -> &MatchingFunction {
        &self.function
    }

    /// Values (in block `i`) of the elements of `F(i)`.
    pub fn block(&self, i: usize) -> Vec<usize> {
        let pad = self.inst.padding();
        self.blocks[i].values.iter().map(|&v| pad.to_original(v)).collect()
    }

    fn padding(&self) -> Padding {
        self.inst.padding()
    }

    fn offset(&self, i: usize, v: usize) -> usize {
        self.inst.padded_text().position_of(v) - self.blocks[i].start
    }

    /// Allowed values for `κ` given a tuple of `X_{κ−1}`, in increasing
    /// order. Tuple entries and results use original text values.
    pub fn candidates(&self, kappa: usize, coords: &[usize]) -> Vec<usize> {
        let pad = self.padding();
        let raw: Vec<usize> = coords.iter().map(|&v| pad.to_padded(v)).collect();
        self.candidates_raw(kappa, &raw)
            .into_iter()
            .map(|v| pad.to_original(v))
            .collect()
    }

    fn candidates_raw(&self, kappa: usize, coords: &[usize]) -> Vec<usize> {
        let shape = self.inst.shape();
        let r = shape.run_of_value[kappa];
        let threshold = coords[shape.run_of_value[kappa - 1]];
        let anchor = coords[r];
        let block = &self.blocks[r];
        let dir = shape.directions[r];
        let len = block.values.len();
        let range = if anchor == 0 {
            0..len
        } else {
            let o = self.offset(r, anchor);
            match dir {
                Direction::Up => o + 1..len,
                Direction::Down => 0..o,
            }
        };
        let needs_room = !shape.is_run_max[kappa];
        let mut out: Vec<usize> = rep_offsets(&block.values, range, threshold)
            .into_iter()
            .filter(|&o| {
                !needs_room
                    || match dir {
                        Direction::Up => block.larger_right[o],
                        Direction::Down => block.larger_left[o],
                    }
            })
            .map(|o| block.values[o])
            .collect();
        out.sort_unstable();
        out
    }

    /// Builds `X_κ` from `X_{κ−1}`. Both levels use original text values.
    pub fn step(&self, kappa: usize, prev: &[DpTuple]) -> DpLevel {
        let pad = self.padding();
        let raw_prev: Vec<DpTuple> = prev
            .iter()
            .map(|t| DpTuple {
                coords: t.coords.iter().map(|&v| pad.to_padded(v)).collect(),
                ..t.clone()
            })
            .collect();
        let mut level = self.step_raw(kappa, &raw_prev);
        self.to_original(&mut level);
        level
    }

    fn to_original(&self, level: &mut DpLevel) {
        let pad = self.padding();
        if pad.shift() == 0 {
            return;
        }
        for t in &mut level.tuples {
            for c in &mut t.coords {
                *c = pad.to_original(*c);
            }
        }
    }

    fn vale_of(&self, i: usize, v: usize) -> usize {
        if v == 0 {
            usize::MAX
        } else {
            self.blocks[i].vale[self.offset(i, v)]
        }
    }

    fn step_raw(&self, kappa: usize, prev: &[DpTuple]) -> DpLevel {
        let shape = self.inst.shape();
        let r = shape.run_of_value[kappa];
        let runs = self.blocks.len();

        // X'_κ, deduplicated, first producer wins.
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut produced: Vec<DpTuple> = Vec::new();
        for (pi, x) in prev.iter().enumerate() {
            for nu in self.candidates_raw(kappa, &x.coords) {
                let mut coords = x.coords.clone();
                coords[r] = nu;
                if seen.insert(coords.clone()) {
                    produced.push(DpTuple {
                        coords,
                        parent: Some(pi),
                        placed: kappa,
                    });
                }
            }
        }

        let vale_counts = (0..runs)
            .map(|i| {
                produced
                    .iter()
                    .filter(|t| t.coords[i] != 0)
                    .map(|t| self.vale_of(i, t.coords[i]))
                    .collect::<HashSet<_>>()
                    .len()
            })
            .collect();

        // (R1): one tuple per vale class, smallest at r(κ), then smallest
        // coordinate vector.
        let mut classes: HashMap<Vec<usize>, usize> = HashMap::new();
        for (idx, t) in produced.iter().enumerate() {
            let key: Vec<usize> = (0..runs).map(|i| self.vale_of(i, t.coords[i])).collect();
            classes
                .entry(key)
                .and_modify(|best| {
                    let b = &produced[*best];
                    if (t.coords[r], &t.coords) < (b.coords[r], &b.coords) {
                        *best = idx;
                    }
                })
                .or_insert(idx);
        }
        let mut kept: Vec<usize> = classes.into_values().collect();

        // (R2): once the run of κ is complete only the smallest choice there
        // matters.
        if shape.is_run_max[kappa] {
            let mut groups: HashMap<Vec<usize>, usize> = HashMap::new();
            for &idx in &kept {
                let mut key = produced[idx].coords.clone();
                key[r] = 0;
                groups
                    .entry(key)
                    .and_modify(|best| {
                        if produced[idx].coords[r] < produced[*best].coords[r] {
                            *best = idx;
                        }
                    })
                    .or_insert(idx);
            }
            kept = groups.into_values().collect();
        }

        let produced_len = produced.len();
        let mut tuples: Vec<DpTuple> = kept
            .into_iter()
            .map(|idx| std::mem::replace(&mut produced[idx], placeholder()))
            .collect();
        tuples.sort_by(|a, b| a.coords.cmp(&b.coords));
        DpLevel {
            kappa,
            produced: produced_len,
            tuples,
            vale_counts,
        }
    }

    /// Runs the whole table, stopping early once a level is empty (later
    /// levels are then recorded as empty).
    pub fn run(&self) -> DpTable {
        let shape = self.inst.shape();
        let k = self.inst.pattern().len();
        let runs = self.blocks.len();
        let root = DpTuple {
            coords: vec![0; runs],
            parent: None,
            placed: 0,
        };
        let mut levels = vec![DpLevel {
            kappa: 0,
            produced: 1,
            tuples: vec![root],
            vale_counts: vec![0; runs],
        }];
        for kappa in 1..=k {
            let level = if levels[kappa - 1].is_empty() {
                DpLevel {
                    kappa,
                    produced: 0,
                    tuples: Vec::new(),
                    vale_counts: vec![0; runs],
                }
            } else {
                self.step_raw(kappa, &levels[kappa - 1].tuples)
            };
            levels.push(level);
        }
        for level in &mut levels {
            self.to_original(level);
        }
        DpTable {
            function: self.function.clone(),
            levels,
            block_runs: self.block_runs.clone(),
            text_runs: self.inst.text_runs().count(),
            run_max_at: shape.is_run_max.clone(),
            run_of_value: shape.run_of_value.clone(),
        }
    }
}

fn placeholder() -> DpTuple {
    DpTuple {
        coords: Vec::new(),
        parent: None,
        placed: 0,
    }
}
