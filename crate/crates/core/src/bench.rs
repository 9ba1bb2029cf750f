//! Seeded random benchmarks of the matcher.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{find_embedding_with, MatchOptions, TABLE_GROWTH};
use crate::oracle::brute_force_match_with_budget;
use crate::perm::Permutation;

/// Uniform random permutation of `1..=n` (Fisher-Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    Permutation::new(values).expect("a shuffle of 1..=n")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Match,
    NoMatch,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Match => "match",
            Outcome::NoMatch => "no_match",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub k: usize,
    pub run_t: usize,
    pub run_p: usize,
    pub matching_functions: u128,
    pub max_x: usize,
    pub wall_time_us: u128,
    pub outcome: Outcome,
}

impl BenchRecord {
    /// `max |X_κ| <= 1.2611^run(T)`.
    pub fn within_bound(&self) -> bool {
        self.max_x as f64 <= TABLE_GROWTH.powi(self.run_t as i32) + 1e-9
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    /// Instances per `(n, k)` cell.
    pub instances: usize,
    pub seed: u64,
    /// Compare every outcome with the brute-force oracle.
    pub verify: bool,
    pub budget: u128,
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ns: vec![12],
            ks: vec![4],
            instances: 100,
            seed: 0,
            verify: false,
            budget: crate::oracle::DEFAULT_BUDGET,
            parallel: false,
        }
    }
}

/// Runs every cell of the grid in order, drawing text then pattern from a
/// single generator seeded with `config.seed`.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let opts = MatchOptions {
        parallel: config.parallel,
        prune: true,
    };
    let mut out = Vec::new();
    for &n in &config.ns {
        for &k in &config.ks {
            for _ in 0..config.instances {
                let text = random_permutation(n, &mut rng);
                let pattern = random_permutation(k, &mut rng);
                let start = Instant::now();
                let result = find_embedding_with(&pattern, &text, opts);
                let wall_time_us = start.elapsed().as_micros();
                let record = BenchRecord {
                    n,
                    k,
                    run_t: result.stats.text_runs,
                    run_p: result.stats.pattern_runs,
                    matching_functions: result.stats.matching_functions,
                    max_x: result.stats.max_table,
                    wall_time_us,
                    outcome: if result.embedding.is_some() {
                        Outcome::Match
                    } else {
                        Outcome::NoMatch
                    },
                };
                if !record.within_bound() {
                    return Err(Error::BoundViolated(format!(
                        "max table size {} exceeds the bound for {} text runs ({pattern} in {text})",
                        record.max_x, record.run_t
                    )));
                }
                if config.verify {
                    let expected = brute_force_match_with_budget(&pattern, &text, config.budget)?;
                    if expected.is_some() != (record.outcome == Outcome::Match) {
                        return Err(Error::OracleDisagreement(format!("{pattern} in {text}")));
                    }
                }
                out.push(record);
            }
        }
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "n,k,run_t,run_p,matching_functions,max_x,wall_time_us,outcome";

/// CSV with a leading `# seed=` comment line.
pub fn to_csv(records: &[BenchRecord], seed: u64) -> String {
    let mut out = format!("# seed={seed}\n{CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.run_t,
            r.run_p,
            r.matching_functions,
            r.max_x,
            r.wall_time_us,
            r.outcome.as_str()
        );
    }
    out
}
