//! Named graph families used throughout the tests and the CLI.

use crate::graph::{Graph, Vertex};

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges).expect("family constructions are connected")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    build(n, &edges)
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    build(n, &edges)
}

/// Two triangles `{0,1,2}` and `{2,3,4}` sharing vertex 2.
pub fn bowtie() -> Graph {
    build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
}

/// Legs of the given lengths hanging off center 0, numbered leg by leg
/// outward from the center.
pub fn spider(legs: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    build(next, &edges)
}

/// `t` triangles sharing the center vertex 0.
pub fn friendship(t: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..t {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    build(2 * t + 1, &edges)
}

/// `K_4` on `{0,1,2,3}` with a triangle `{3,4,5}` hanging off vertex 3.
pub fn k4_with_pendant_triangle() -> Graph {
    build(
        6,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (3, 5),
            (4, 5),
        ],
    )
}

/// `t` triangles glued end to end: `{0,1,2}, {2,3,4}, ...`.
pub fn triangle_path(t: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..t {
        let (a, b, c) = (2 * i, 2 * i + 1, 2 * i + 2);
        edges.extend([(a, b), (a, c), (b, c)]);
    }
    build(2 * t + 1, &edges)
}
