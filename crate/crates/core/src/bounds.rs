//! Upper bounds and exact values from block structure.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::blocks::{block_cutpoint_graph, is_clique_block};
use crate::engine::{pebbling_number, pebbling_number_global, PebblingOptions};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, DEFAULT_WEIGHT};
use crate::partition::{corollary_formula, f_value, r_maximal_partition, PathPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BNode {
    /// The auxiliary root `r'`.
    Aux,
    /// Stands for `r` when `r` is not a cut vertex.
    Root(Vertex),
    Block(usize),
    Cut(Vertex),
}

/// The weight of a block edge: `pi(B_i, x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEdge {
    /// Tree nodes joined by the edge, parent first.
    pub nodes: (usize, usize),
    pub block: usize,
    pub attach: Vertex,
    pub pi: u64,
}

/// `B'(G)` hung from `r'`: a weighted tree on block nodes, cut vertex
/// nodes, and `r'` (node 0). The edge from a block to its root-side vertex
/// `x_i` weighs `pi(B_i, x_i)`; every other edge weighs 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPrime {
    pub nodes: Vec<BNode>,
    pub tree: Graph,
    pub block_edges: Vec<BlockEdge>,
}

/// `pi(B, x)` for one block, exact. Cliques with all weights 2 take the
/// closed form `|B|`; a single edge takes its weight.
pub fn block_pebbling(g: &Graph, block: &[Vertex], x: Vertex, budget: Option<u64>) -> Result<u64> {
    let sub = g.induced_subgraph(block)?;
    let local = block.iter().position(|&v| v == x).ok_or(Error::VertexOutOfRange {
        vertex: x,
        n: block.len(),
    })?;
    if block.len() == 2 {
        return Ok(sub.edges()[0].weight);
    }
    if sub.has_uniform_weight(DEFAULT_WEIGHT) && g.is_clique(block) {
        return Ok(block.len() as u64);
    }
    let opts = PebblingOptions {
        budget,
        ..Default::default()
    };
    Ok(pebbling_number(&sub, local, 1, opts)?.value)
}

pub fn build_b_prime(g: &Graph, r: Vertex, budget: Option<u64>) -> Result<BPrime> {
    g.check_vertex(r)?;
    let bc = block_cutpoint_graph(g);
    let mut nodes = vec![BNode::Aux];
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut block_edges = Vec::new();

    let top = if bc.is_cut_vertex(r) { BNode::Cut(r) } else { BNode::Root(r) };
    nodes.push(top);
    edges.push((0, 1, 1));

    let mut block_seen = vec![false; bc.blocks.len()];
    let mut cut_seen = vec![false; g.n()];
    // (tree node, graph vertex it stands for)
    let mut frontier = vec![(1usize, r)];
    cut_seen[r] = true;
    while let Some((parent, x)) = frontier.pop() {
        for b in bc.blocks_containing(x) {
            if block_seen[b] {
                continue;
            }
            block_seen[b] = true;
            let pi = match block_pebbling(g, &bc.blocks[b], x, budget) {
                Err(Error::BudgetExceeded { .. }) => {
                    return Err(Error::BlockOracleBudgetExceeded { block: b })
                }
                other => other?,
            };
            let bn = nodes.len();
            nodes.push(BNode::Block(b));
            edges.push((parent, bn, pi));
            block_edges.push(BlockEdge {
                nodes: (parent, bn),
                block: b,
                attach: x,
                pi,
            });
            for &c in &bc.blocks[b] {
                if bc.is_cut_vertex(c) && !cut_seen[c] {
                    cut_seen[c] = true;
                    let cn = nodes.len();
                    nodes.push(BNode::Cut(c));
                    edges.push((bn, cn, 1));
                    frontier.push((cn, c));
                }
            }
        }
    }
    debug_assert!(block_seen.iter().all(|&s| s));
    let tree = Graph::new(nodes.len(), edges.iter().map(|&(u, v, w)| (u, v, Some(w))))?;
    Ok(BPrime {
        nodes,
        tree,
        block_edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockcutBound {
    pub b_prime: BPrime,
    pub partition: PathPartition,
    pub value: BigUint,
}

/// `f_k^w(B'(G), r')`, an upper bound on `pi_k(G, r)`.
pub fn blockcut_bound(g: &Graph, r: Vertex, k: u64, budget: Option<u64>) -> Result<BlockcutBound> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let b_prime = build_b_prime(g, r, budget)?;
    let partition = r_maximal_partition(&b_prime.tree, 0)?;
    let value = f_value(&partition, k);
    Ok(BlockcutBound {
        b_prime,
        partition,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueBlockValue {
    pub tree: Graph,
    pub partition: PathPartition,
    pub value: BigUint,
}

/// Exact `pi_k(G, r)` for graphs whose blocks are all cliques, from the
/// path partition of the breadth-first spanning tree at `r`.
pub fn clique_block_pebbling(g: &Graph, r: Vertex, k: u64) -> Result<CliqueBlockValue> {
    g.check_vertex(r)?;
    if !is_clique_block(g) {
        return Err(Error::NotCliqueBlock);
    }
    if !g.has_uniform_weight(DEFAULT_WEIGHT) {
        return Err(Error::NonUniformWeights);
    }
    let tree = g.bfs_spanning_tree(r).to_graph();
    let partition = r_maximal_partition(&tree, r)?;
    let value = corollary_formula(g.n(), &partition.lengths(), k)?;
    Ok(CliqueBlockValue {
        tree,
        partition,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalEstimate {
    /// `pi_k(G)` for `k = 1..=k_max`.
    pub values: Vec<u64>,
    /// `pi_k(G) / k`.
    pub ratios: Vec<Ratio<u64>>,
    /// `2^diam(G)`, the limit of the ratios.
    pub limit: BigUint,
}

pub fn fractional_estimate(g: &Graph, k_max: u64, opts: PebblingOptions) -> Result<FractionalEstimate> {
    let mut values = Vec::new();
    let mut ratios = Vec::new();
    for k in 1..=k_max {
        let v = pebbling_number_global(g, k, opts)?.value;
        values.push(v);
        ratios.push(Ratio::new(v, k));
    }
    let limit = BigUint::from(1u32) << g.diameter();
    Ok(FractionalEstimate {
        values,
        ratios,
        limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn bowtie_b_prime_is_a_weighted_path() {
        let b = build_b_prime(&families::bowtie(), 0, None).unwrap();
        assert_eq!(
            b.nodes,
            vec![BNode::Aux, BNode::Root(0), BNode::Block(0), BNode::Cut(2), BNode::Block(1)]
        );
        let weights: Vec<u64> = b.tree.edges().iter().map(|e| e.weight).collect();
        assert_eq!(weights, vec![1, 3, 1, 3]);
        assert_eq!(blockcut_bound(&families::bowtie(), 0, 1, None).unwrap().value, big(9));
    }

    #[test]
    fn root_at_a_cut_vertex() {
        let b = build_b_prime(&families::bowtie(), 2, None).unwrap();
        assert_eq!(b.nodes[1], BNode::Cut(2));
        assert_eq!(b.tree.degree(1), 3);
        assert_eq!(blockcut_bound(&families::bowtie(), 2, 1, None).unwrap().value, big(5));
    }

    #[test]
    fn single_block() {
        for n in 3..6 {
            let v = blockcut_bound(&families::complete(n), 0, 2, None).unwrap().value;
            assert_eq!(v, big(2 * n as u64));
        }
        // C_5 has pi(C_5, x) = 5.
        let v = blockcut_bound(&families::cycle(5), 0, 1, None).unwrap().value;
        assert_eq!(v, big(5));
    }

    #[test]
    fn trees_reduce_to_their_own_formula() {
        let s = families::spider(&[3, 2, 1]);
        for r in 0..s.n() {
            for k in 1..3 {
                let direct = f_value(&r_maximal_partition(&s, r).unwrap(), k);
                assert_eq!(blockcut_bound(&s, r, k, None).unwrap().value, direct);
            }
        }
    }

    #[test]
    fn block_budget_surfaces() {
        let err = build_b_prime(&families::cycle(5), 0, Some(1)).unwrap_err();
        assert!(matches!(err, Error::BlockOracleBudgetExceeded { .. }));
    }

    #[test]
    fn clique_block_examples() {
        for k in 1..4 {
            let v = clique_block_pebbling(&families::bowtie(), 0, k).unwrap().value;
            assert_eq!(v, big(4 * k + 2));
            let v = clique_block_pebbling(&families::complete(5), 0, k).unwrap().value;
            assert_eq!(v, big(5 + 2 * (k - 1)));
            let v = clique_block_pebbling(&families::path(4), 0, k).unwrap().value;
            assert_eq!(v, big(8 * k));
        }
        assert_eq!(
            clique_block_pebbling(&families::cycle(4), 0, 1).unwrap_err(),
            Error::NotCliqueBlock
        );
    }

    #[test]
    fn fractional_complete_graph() {
        let f = fractional_estimate(&families::complete(4), 3, PebblingOptions::default()).unwrap();
        assert_eq!(f.values, vec![4, 6, 8]);
        assert_eq!(f.ratios[2], Ratio::new(8, 3));
        assert_eq!(f.limit, big(2));
    }
}
