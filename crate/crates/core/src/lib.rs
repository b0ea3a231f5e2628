//! Exact and structural k-pebbling numbers.
//!
//! The [`engine`] computes pebbling numbers exactly by exhaustive search;
//! the other modules derive values and bounds from graph structure (path
//! partitions of trees, block-cutpoint reductions, diameter-two arguments)
//! that the engine then checks at small scale.

pub mod blocks;
pub mod bounds;
pub mod diam2;
pub mod engine;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod io;
pub mod partition;

pub use blocks::{block_cutpoint_graph, is_clique_block, BlockCutTree};
pub use bounds::{
    blockcut_bound, build_b_prime, clique_block_pebbling, fractional_estimate, BPrime,
    BlockcutBound, CliqueBlockValue, FractionalEstimate,
};
pub use diam2::{
    audit_claim, build_extremal, claim_stats, detect_cheap, extremal_config, kpd2_bound,
    psv_bound, CheapPattern, CheapSolution, ClaimAudit, ClaimStats, Extremal, ExtremalSpec,
};
pub use engine::{
    apply_move, greedy_is_solvable, is_solvable, normalize_solution, pebbling_number,
    pebbling_number_global, potential, solution_cost, verify_solution, Configuration,
    GlobalPebbling, Move, Pebbling, PebblingOptions, SearchOptions, SearchStats, Solution, Solver,
};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, RootedTree, Vertex, DEFAULT_WEIGHT};
pub use io::LabeledGraph;
pub use partition::{
    corollary_formula, f_value, maximal_partition, r_maximal_partition, unsolvable_config,
    PathPartition, TreePath,
};
