//! Block-cutpoint decomposition.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// Blocks (maximal subgraphs without a cut vertex) and cut vertices of a
/// connected graph, joined into the bipartite block-cutpoint tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutTree {
    /// Vertex sets, each sorted; listed by smallest vertex, then
    /// lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    /// `(block index, cut vertex)` whenever the cut vertex lies in the block.
    pub tree_edges: Vec<(usize, Vertex)>,
}

impl BlockCutTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Indices of the blocks containing `v`, ascending.
    pub fn blocks_containing(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].binary_search(&v).is_ok())
            .collect()
    }

    /// Checks that the block-cutpoint graph is a tree: it is connected and
    /// has one edge fewer than nodes.
    pub fn is_tree(&self) -> bool {
        let nb = self.blocks.len();
        let nodes = nb + self.cut_vertices.len();
        if self.tree_edges.len() + 1 != nodes {
            return false;
        }
        // union-find over block nodes 0..nb and cut nodes nb..
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(b, c) in &self.tree_edges {
            let Ok(ci) = self.cut_vertices.binary_search(&c) else {
                return false;
            };
            let (x, y) = (find(&mut parent, b), find(&mut parent, nb + ci));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        true
    }
}

/// Biconnected components via Hopcroft-Tarjan. Bridges come out as
/// two-vertex blocks; a single-vertex graph is one block.
pub fn block_cutpoint_graph(g: &Graph) -> BlockCutTree {
    let n = g.n();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    if n == 1 {
        blocks.push(vec![0]);
    } else {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        // (vertex, dfs parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, UNSEEN, 0)];
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, p) = (top.0, top.1);
            if top.2 < g.neighbors(v).len() {
                let w = g.neighbors(v)[top.2].0;
                top.2 += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != p && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
        }
    }
    blocks.sort();

    let mut membership = vec![0usize; n];
    for block in &blocks {
        for &v in block {
            membership[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| membership[v] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            if membership[v] >= 2 {
                tree_edges.push((b, v));
            }
        }
    }
    BlockCutTree {
        blocks,
        cut_vertices,
        tree_edges,
    }
}

/// True iff every block induces a complete subgraph.
pub fn is_clique_block(g: &Graph) -> bool {
    block_cutpoint_graph(g)
        .blocks
        .iter()
        .all(|b| g.is_clique(b))
}
