//! Undirected edge-weighted graphs on dense vertex ids.
//!
//! Edge weights are pebble exchange rates: a move across an edge of weight
//! `w` removes `w` pebbles from one endpoint and adds one to the other.
//! Weights never influence distances, which are plain hop counts.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Weight of an edge when none is given: the ordinary two-for-one move.
pub const DEFAULT_WEIGHT: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: u64,
}

/// A connected, simple, undirected graph with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<(Vertex, u64)>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds and validates a graph. Edges given without a weight get
    /// [`DEFAULT_WEIGHT`].
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Option<u64>)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj: Vec<Vec<(Vertex, u64)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let weight = w.unwrap_or(DEFAULT_WEIGHT);
            if weight < 1 {
                return Err(Error::BadWeight { u, v, weight });
            }
            let (a, b) = (u.min(v), u.max(v));
            if adj[a].iter().any(|&(x, _)| x == b) {
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[a].push((b, weight));
            adj[b].push((a, weight));
            list.push(Edge { u: a, v: b, weight });
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        list.sort_unstable();
        let g = Graph { n, adj, edges: list };
        if g.distances_raw(0).iter().any(Option::is_none) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    /// Unit-free convenience constructor: every edge gets the default weight.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    pub fn from_weighted_edges(n: usize, edges: &[(Vertex, Vertex, u64)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(u, v, w)| (u, v, Some(w))))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges with `u < v`, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the connecting edge weight, sorted by neighbor.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<u64> {
        let nbrs = self.adj.get(u)?;
        nbrs.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| nbrs[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// True when every edge carries weight `w`.
    pub fn has_uniform_weight(&self, w: u64) -> bool {
        self.edges.iter().all(|e| e.weight == w)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    fn distances_raw(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distances from `v` to every vertex.
    pub fn distances_from(&self, v: Vertex) -> Vec<usize> {
        self.distances_raw(v)
            .into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect()
    }

    pub fn eccentricity(&self, v: Vertex) -> usize {
        self.distances_from(v).into_iter().max().unwrap_or(0)
    }

    /// Largest hop distance between any two vertices.
    pub fn diameter(&self) -> usize {
        (0..self.n).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    /// Breadth-first spanning tree rooted at `root`. Each vertex's parent is
    /// its lowest-indexed neighbor one level closer to the root, so tree
    /// distances from the root equal graph distances.
    pub fn bfs_spanning_tree(&self, root: Vertex) -> RootedTree {
        let dist = self.distances_from(root);
        let mut parent = vec![None; self.n];
        let mut parent_weight = vec![0; self.n];
        for v in 0..self.n {
            if v == root {
                continue;
            }
            let &(p, w) = self.adj[v]
                .iter()
                .find(|&&(u, _)| dist[u] + 1 == dist[v])
                .expect("every non-root vertex has a neighbor one level up");
            parent[v] = Some(p);
            parent_weight[v] = w;
        }
        RootedTree {
            root,
            parent,
            parent_weight,
        }
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    /// Fails with [`Error::DisconnectedGraph`] if the induced graph is not
    /// connected.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| (index[e.u], index[e.v], Some(e.weight)));
        Graph::new(vertices.len(), edges)
    }

    /// True when the vertex set induces a complete subgraph.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| self.has_edge(u, v))
        })
    }
}

/// A spanning tree given by parent pointers, carrying the weights of the
/// source graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub root: Vertex,
    pub parent: Vec<Option<Vertex>>,
    /// Weight of the edge to the parent; unused for the root.
    pub parent_weight: Vec<u64>,
}

impl RootedTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Depth of every vertex below the root.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.n();
        let mut depth = vec![usize::MAX; n];
        depth[self.root] = 0;
        for v in 0..n {
            let mut chain = Vec::new();
            let mut x = v;
            while depth[x] == usize::MAX {
                chain.push(x);
                x = self.parent[x].expect("non-root vertices have parents");
            }
            let mut d = depth[x];
            for &y in chain.iter().rev() {
                d += 1;
                depth[y] = d;
            }
        }
        depth
    }

    pub fn to_graph(&self) -> Graph {
        let edges = (0..self.n())
            .filter_map(|v| self.parent[v].map(|p| (p, v, Some(self.parent_weight[v]))));
        Graph::new(self.n(), edges).expect("a rooted tree is a connected simple graph")
    }
}
