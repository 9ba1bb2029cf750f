//! Exact permutation pattern matching by alternating runs.
//!
//! The crate also carries brute-force reference implementations, the
//! pattern graph path decomposition bounded by the number of runs, and a
//! generator for Clique-derived pattern matching instances.

pub mod bench;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod matching;
pub mod oracle;
pub mod pathwidth;
pub mod perm;
pub mod runs;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hardness::{clique_to_embedding, reduce_clique, HardnessInstance};
pub use matching::{
    d_rep, dp_trace, enumerate_matching_functions, find_embedding, find_embedding_with, pad_text, u_rep, DpTable,
    MatchOptions, MatchOutcome, MatchStats, MatchingFunction, PpmInstance,
};
pub use oracle::{brute_force_match, has_clique, lis_length};
pub use pathwidth::{
    build_pattern_graph, lemma_decomposition, validate_decomposition, PathDecomposition, PatternGraph,
};
pub use perm::{flatten, is_embedding, parse_permutation, Embedding, Permutation};
pub use runs::{vales, Direction, Run, RunDecomposition};
