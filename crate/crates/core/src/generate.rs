//! Exhaustive and random graph families for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::engine::Configuration;
use crate::graph::{Graph, Vertex};

/// Every tree on `0..n` in which each vertex `i > 0` has a parent below
/// `i`: `(n-1)!` labeled trees covering every unlabeled shape.
pub fn parent_sequence_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    loop {
        let edges: Vec<_> = (1..n).map(|v| (parent[v], v)).collect();
        out.push(Graph::from_edges(n, &edges).expect("parent sequences give trees"));
        // odometer over parent[i] in 0..i
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if parent[i] + 1 < i {
                parent[i] += 1;
                break;
            }
            parent[i] = 0;
            i -= 1;
        }
    }
}

/// Every connected labeled simple graph on `n` vertices, in order of the
/// edge bitmask over pairs `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "exhaustive enumeration is limited to 7 vertices");
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            out.push(g);
        }
    }
    out
}

/// A uniformly random recursive tree on `n` vertices with edge weights
/// drawn from `weights`.
pub fn random_weighted_tree<R: Rng>(rng: &mut R, n: usize, weights: &[u64]) -> Graph {
    let edges: Vec<_> = (1..n)
        .map(|v| (rng.gen_range(0..v), v, *weights.choose(rng).expect("weights")))
        .collect();
    Graph::from_weighted_edges(n, &edges).expect("recursive trees are connected")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    K2,
    K3,
    K4,
    C4,
    C5,
}

impl BlockKind {
    pub const ALL: [BlockKind; 5] = [
        BlockKind::K2,
        BlockKind::K3,
        BlockKind::K4,
        BlockKind::C4,
        BlockKind::C5,
    ];

    pub fn size(self) -> usize {
        match self {
            BlockKind::K2 => 2,
            BlockKind::K3 => 3,
            BlockKind::K4 | BlockKind::C4 => 4,
            BlockKind::C5 => 5,
        }
    }

    /// Edges on local vertices `0..size`.
    fn edges(self) -> Vec<(Vertex, Vertex)> {
        let s = self.size();
        match self {
            BlockKind::K2 | BlockKind::K3 | BlockKind::K4 => (0..s)
                .flat_map(|u| (u + 1..s).map(move |v| (u, v)))
                .collect(),
            BlockKind::C4 | BlockKind::C5 => (0..s).map(|i| (i, (i + 1) % s)).collect(),
        }
    }
}

/// Glues random blocks at random existing vertices until the next block
/// would exceed `max_n` vertices or a coin flip stops early. At least two
/// blocks whenever they fit.
pub fn random_block_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    assert!(max_n >= 2);
    let fits = |n: usize, k: BlockKind| n + k.size() - 1 <= max_n;
    let first: Vec<BlockKind> = BlockKind::ALL.into_iter().filter(|&k| k.size() <= max_n).collect();
    let kind = *first.choose(rng).expect("K2 always fits");
    let mut n = kind.size();
    let mut edges = kind.edges();
    let mut blocks = 1;
    loop {
        let options: Vec<BlockKind> = BlockKind::ALL.into_iter().filter(|&k| fits(n, k)).collect();
        if options.is_empty() || (blocks >= 2 && rng.gen_bool(0.25)) {
            break;
        }
        let kind = *options.choose(rng).expect("nonempty");
        let at = rng.gen_range(0..n);
        // local vertex 0 is the shared cut vertex
        let map = |i: usize| if i == 0 { at } else { n + i - 1 };
        edges.extend(kind.edges().into_iter().map(|(u, v)| (map(u), map(v))));
        n += kind.size() - 1;
        blocks += 1;
    }
    Graph::from_edges(n, &edges).expect("glued blocks are connected")
}

/// A random connected graph of diameter at most 2 on `n` vertices, by
/// rejection from `G(n, p)` with `p` itself drawn at random.
pub fn random_diameter_two<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 1);
    loop {
        let p = rng.gen_range(0.25..0.9);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            if g.diameter() <= 2 {
                return g;
            }
        }
    }
}

/// `size` pebbles dropped one at a time on uniformly random vertices other
/// than `avoid`.
pub fn random_configuration<R: Rng>(rng: &mut R, n: usize, size: u64, avoid: Option<Vertex>) -> Configuration {
    let targets: Vec<Vertex> = (0..n).filter(|&v| Some(v) != avoid).collect();
    let mut c = Configuration::zeros(n);
    for _ in 0..size {
        c[*targets.choose(rng).expect("some vertex to place on")] += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_counts() {
        assert_eq!(parent_sequence_trees(1).len(), 1);
        assert_eq!(parent_sequence_trees(4).len(), 6);
        let trees = parent_sequence_trees(6);
        assert_eq!(trees.len(), 120);
        assert!(trees.iter().all(Graph::is_tree));
    }

    #[test]
    fn connected_graph_counts() {
        // OEIS A001187: connected labeled graphs.
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn random_families_respect_their_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_block_graph(&mut rng, 9);
            assert!(g.n() <= 9);
            let t = random_weighted_tree(&mut rng, 6, &[1, 2, 3]);
            assert!(t.is_tree());
            assert!(t.edges().iter().all(|e| (1..=3).contains(&e.weight)));
            let d = random_diameter_two(&mut rng, 7);
            assert!(d.diameter() <= 2);
            let c = random_configuration(&mut rng, 7, 12, Some(3));
            assert_eq!(c.size(), 12);
            assert_eq!(c[3], 0);
        }
    }
}
