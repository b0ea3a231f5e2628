//! Benchmark inputs shared by the criterion benches.

use pebblekit_core::{families, Graph, Vertex};

/// Rooted instances of increasing difficulty for the exact oracle.
pub fn oracle_cases() -> Vec<(&'static str, Graph, Vertex, u64)> {
    vec![
        ("K6 k=2", families::complete(6), 0, 2),
        ("C5 k=2", families::cycle(5), 0, 2),
        ("bowtie k=2", families::bowtie(), 0, 2),
        ("P7 end k=2", families::path(7), 0, 2),
        ("P7 middle k=2", families::path(7), 3, 2),
        ("spider 3,2,1 k=2", families::spider(&[3, 2, 1]), 3, 2),
        ("P9 end k=1", families::path(9), 0, 1),
    ]
}
