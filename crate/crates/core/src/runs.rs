//! Alternating runs, valleys, peaks and vales.
//!
//! Everything here works on plain slices of distinct values so that the same
//! code serves whole permutations and contiguous blocks of a text.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

/// One alternating run: a maximal monotone stretch `start..=end` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub direction: Direction,
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.start <= pos && pos <= self.end
    }
}

/// Valley/peak flags of a sequence of distinct values.
///
/// Boundary elements are compared against their single neighbour; a lone
/// element is both a valley and a peak.
pub fn extrema(seq: &[usize]) -> (Vec<bool>, Vec<bool>) {
    let n = seq.len();
    let mut valley = vec![false; n];
    let mut peak = vec![false; n];
    for i in 0..n {
        let below_left = i == 0 || seq[i - 1] > seq[i];
        let below_right = i + 1 == n || seq[i + 1] > seq[i];
        let above_left = i == 0 || seq[i - 1] < seq[i];
        let above_right = i + 1 == n || seq[i + 1] < seq[i];
        valley[i] = below_left && below_right;
        peak[i] = above_left && above_right;
    }
    (valley, peak)
}

/// Values of the valleys of `seq`, in left-to-right order.
pub fn valleys_of(seq: &[usize]) -> Vec<usize> {
    let (valley, _) = extrema(seq);
    seq.iter().zip(valley).filter_map(|(&v, is)| is.then_some(v)).collect()
}

/// Splits `seq` into alternating runs.
///
/// The first run starts at the first element and ends at the second local
/// extremum; every later run starts right after an extremum. A single
/// element forms one run, reported as `Up`.
pub fn runs_of(seq: &[usize]) -> Vec<Run> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Run {
            direction: Direction::Up,
            start: 0,
            end: 0,
        }];
    }
    let mut runs = Vec::new();
    let mut start = 0;
    let mut direction = if seq[0] < seq[1] {
        Direction::Up
    } else {
        Direction::Down
    };
    for i in 1..n - 1 {
        let turns = match direction {
            Direction::Up => seq[i] > seq[i + 1],
            Direction::Down => seq[i] < seq[i + 1],
        };
        if turns {
            runs.push(Run {
                direction,
                start,
                end: i,
            });
            start = i + 1;
            direction = direction.flip();
        }
    }
    runs.push(Run {
        direction,
        start,
        end: n - 1,
    });
    runs
}

/// Vale index of every element of a sequence with the given runs.
///
/// A vale is a run down followed by a run up. A leading run up and a
/// trailing run down form vales of their own.
pub fn vales_from_runs(runs: &[Run], len: usize) -> Vec<usize> {
    let mut vale = vec![0; len];
    let mut current: Option<usize> = None;
    let mut next = 0;
    for (idx, run) in runs.iter().enumerate() {
        let id = match (run.direction, current) {
            (Direction::Up, Some(id)) if idx > 0 => id,
            _ => {
                let id = next;
                next += 1;
                id
            }
        };
        current = Some(id);
        for slot in &mut vale[run.start..=run.end] {
            *slot = id;
        }
    }
    vale
}

/// Run structure of a permutation with position and vale lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    runs: Vec<Run>,
    run_of_position: Vec<usize>,
    vale_of_position: Vec<usize>,
    valley: Vec<bool>,
    peak: Vec<bool>,
    values: Vec<usize>,
}

impl RunDecomposition {
    /// Decomposes `seq`; an empty sequence gives zero runs.
    pub fn of_slice(seq: &[usize]) -> Self {
        let runs = runs_of(seq);
        let mut run_of_position = vec![0; seq.len()];
        for (i, run) in runs.iter().enumerate() {
            for slot in &mut run_of_position[run.start..=run.end] {
                *slot = i;
            }
        }
        let vale_of_position = vales_from_runs(&runs, seq.len());
        let (valley, peak) = extrema(seq);
        RunDecomposition {
            runs,
            run_of_position,
            vale_of_position,
            valley,
            peak,
            values: seq.to_vec(),
        }
    }

    pub fn new(p: &Permutation) -> Self {
        Self::of_slice(p.values())
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Number of alternating runs.
    pub fn count(&self) -> usize {
        self.runs.len()
    }

    pub fn run(&self, idx: usize) -> Run {
        self.runs[idx]
    }

    pub fn run_of_position(&self, pos: usize) -> usize {
        self.run_of_position[pos]
    }

    pub fn vale_of_position(&self, pos: usize) -> usize {
        self.vale_of_position[pos]
    }

    pub fn vale_count(&self) -> usize {
        self.vale_of_position.last().map_or(0, |v| v + 1)
    }

    pub fn last_direction(&self) -> Option<Direction> {
        self.runs.last().map(|r| r.direction)
    }

    pub fn valleys(&self) -> BTreeSet<usize> {
        self.pick(&self.valley)
    }

    pub fn peaks(&self) -> BTreeSet<usize> {
        self.pick(&self.peak)
    }

    /// Number of elements that are a valley or a peak.
    pub fn extremum_count(&self) -> usize {
        self.valley.iter().zip(&self.peak).filter(|(v, p)| **v || **p).count()
    }

    /// Values of each vale, left to right.
    pub fn vales(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vale_count()];
        for (pos, &v) in self.values.iter().enumerate() {
            out[self.vale_of_position[pos]].push(v);
        }
        out
    }

    /// Values of each run, left to right.
    pub fn run_values(&self) -> Vec<&[usize]> {
        self.runs.iter().map(|r| &self.values[r.start..=r.end]).collect()
    }

    fn pick(&self, flags: &[bool]) -> BTreeSet<usize> {
        self.values
            .iter()
            .zip(flags)
            .filter_map(|(&v, &f)| f.then_some(v))
            .collect()
    }
}

/// Convenience wrapper: `vale_of_value[v]` for a whole permutation.
pub fn vales(p: &Permutation) -> Vec<usize> {
    let d = RunDecomposition::new(p);
    let mut out = vec![usize::MAX; p.len() + 1];
    for pos in 0..p.len() {
        out[p.at(pos)] = d.vale_of_position(pos);
    }
    out
}
