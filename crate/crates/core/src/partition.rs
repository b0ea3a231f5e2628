//! Path partitions of weighted trees.
//!
//! An r-path partition splits the edges of a tree into paths `P_1, ..., P_t`
//! added one at a time: `P_i` meets the tree built so far (the root plus
//! `P_1..P_{i-1}`) in exactly one vertex `x_i`, which is an end of `P_i`.
//! The other end `y_i` is a leaf of the tree. The weight of a path is the
//! product of its edge weights.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePath {
    /// Vertices from the attachment vertex `x_i` to the outer leaf `y_i`.
    pub vertices: Vec<Vertex>,
    pub weight: BigUint,
}

impl TreePath {
    pub fn attachment(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn outer(&self) -> Vertex {
        *self.vertices.last().expect("paths have at least one edge")
    }

    /// Number of edges `a_i`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPartition {
    pub root: Vertex,
    pub paths: Vec<TreePath>,
}

impl PathPartition {
    /// Edge counts `a_1, ..., a_t`.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(TreePath::len).collect()
    }

    /// Checks that the paths cover every edge of `t` exactly once and that
    /// each path meets the previously built tree in its first vertex only.
    pub fn is_valid_for(&self, t: &Graph) -> bool {
        let mut built = vec![false; t.n()];
        built[self.root] = true;
        let mut used = 0;
        for p in &self.paths {
            if p.vertices.len() < 2 || !built[p.attachment()] {
                return false;
            }
            if p.vertices[1..].iter().any(|&v| built[v]) {
                return false;
            }
            let mut w = BigUint::one();
            for pair in p.vertices.windows(2) {
                match t.weight(pair[0], pair[1]) {
                    Some(x) => w *= x,
                    None => return false,
                }
            }
            if w != p.weight {
                return false;
            }
            for &v in &p.vertices[1..] {
                built[v] = true;
            }
            used += p.len();
        }
        used == t.edges().len() && built.iter().all(|&b| b)
    }
}

/// Children lists of `t` hung from `r`.
fn children(t: &Graph, r: Vertex) -> Vec<Vec<Vertex>> {
    let mut kids = vec![Vec::new(); t.n()];
    let mut stack = vec![(r, usize::MAX)];
    while let Some((u, from)) = stack.pop() {
        for &(v, _) in t.neighbors(u) {
            if v != from {
                kids[u].push(v);
                stack.push((v, u));
            }
        }
    }
    kids
}

/// Ranking of candidate paths: heavier, then more edges, then the
/// lexicographically smaller vertex sequence.
fn better(a: &TreePath, b: &TreePath) -> bool {
    (&a.weight, a.len())
        .cmp(&(&b.weight, b.len()))
        .then_with(|| b.vertices.cmp(&a.vertices))
        .is_gt()
}

/// Best downward path starting at `x` through `first`, ending at a leaf.
fn best_descent(t: &Graph, kids: &[Vec<Vertex>], x: Vertex, first: Vertex) -> TreePath {
    let mut best: Option<TreePath> = None;
    let w0 = t.weight(x, first).expect("child edge");
    let mut stack = vec![(vec![x, first], BigUint::from(w0))];
    while let Some((verts, w)) = stack.pop() {
        let end = *verts.last().expect("nonempty");
        if kids[end].is_empty() {
            let cand = TreePath {
                vertices: verts,
                weight: w,
            };
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
            continue;
        }
        for &c in &kids[end] {
            let mut next = verts.clone();
            next.push(c);
            let wc = &w * t.weight(end, c).expect("child edge");
            stack.push((next, wc));
        }
    }
    best.expect("every descent ends at a leaf")
}

/// The greedy r-maximal partition: each step takes the heaviest path
/// hanging from the built tree.
pub fn r_maximal_partition(t: &Graph, r: Vertex) -> Result<PathPartition> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    t.check_vertex(r)?;
    let kids = children(t, r);
    let mut built = vec![false; t.n()];
    built[r] = true;
    let mut paths: Vec<TreePath> = Vec::new();
    loop {
        let mut best: Option<TreePath> = None;
        for x in (0..t.n()).filter(|&x| built[x]) {
            for &c in kids[x].iter().filter(|&&c| !built[c]) {
                let cand = best_descent(t, &kids, x, c);
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    best = Some(cand);
                }
            }
        }
        let Some(p) = best else { break };
        if let Some(prev) = paths.last() {
            assert!(prev.weight >= p.weight, "greedy weights never increase");
        }
        for &v in &p.vertices[1..] {
            built[v] = true;
        }
        paths.push(p);
    }
    Ok(PathPartition { root: r, paths })
}

/// Roots the tree at an end of a heaviest path (more edges, then the
/// smallest end, on ties) and returns its r-maximal partition.
pub fn maximal_partition(t: &Graph) -> Result<PathPartition> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let leaves: Vec<Vertex> = (0..t.n()).filter(|&v| t.degree(v) <= 1).collect();
    let mut best: Option<(BigUint, usize, Vertex)> = None;
    for &u in &leaves {
        // heaviest path from u: weights and hop counts to every vertex
        let mut w = vec![BigUint::zero(); t.n()];
        let mut hops = vec![0usize; t.n()];
        let mut seen = vec![false; t.n()];
        w[u] = BigUint::one();
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &(y, wt) in t.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    w[y] = &w[x] * wt;
                    hops[y] = hops[x] + 1;
                    stack.push(y);
                }
            }
        }
        for &v in &leaves {
            if v == u && t.n() > 1 {
                continue;
            }
            let key = (w[v].clone(), hops[v], u.min(v));
            let take = match &best {
                None => true,
                Some((bw, bh, bv)) => (&key.0, key.1)
                    .cmp(&(bw, *bh))
                    .then_with(|| bv.cmp(&key.2))
                    .is_gt(),
            };
            if take {
                best = Some(key);
            }
        }
    }
    let root = best.map_or(0, |b| b.2);
    r_maximal_partition(t, root)
}

/// `k w(P_1) + sum_{i>=2} w(P_i) - t + 1`; a single vertex gives `k`.
pub fn f_value(p: &PathPartition, k: u64) -> BigUint {
    let Some((first, rest)) = p.paths.split_first() else {
        return BigUint::from(k);
    };
    let mut total = &first.weight * k + BigUint::one();
    for q in rest {
        total += &q.weight;
    }
    total - BigUint::from(p.paths.len())
}

/// `w(P_i) - 1` pebbles on every outer leaf `y_i`.
pub fn unsolvable_config(t: &Graph, p: &PathPartition) -> Result<Configuration> {
    let mut c = Configuration::zeros(t.n());
    for q in &p.paths {
        let w = (&q.weight - 1u32).to_u64().ok_or_else(|| {
            Error::PreconditionViolated("path weight does not fit in a pebble count".into())
        })?;
        c[q.outer()] = w;
    }
    Ok(c)
}

/// `n + 2^{a_1}(k-1) + sum_i (2^{a_i} - a_i - 1)` for non-increasing
/// positive lengths with `n = 1 + sum a_i`.
pub fn corollary_formula(n: usize, lengths: &[usize], k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if lengths.contains(&0) || lengths.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::PreconditionViolated(
            "path lengths must be positive and non-increasing".into(),
        ));
    }
    if n != 1 + lengths.iter().sum::<usize>() {
        return Err(Error::PreconditionViolated(
            "vertex count must be one more than the total path length".into(),
        ));
    }
    let pow = |a: usize| BigUint::one() << a;
    let mut total = BigUint::from(n);
    if let Some(&a1) = lengths.first() {
        total += pow(a1) * (k - 1);
    } else {
        total += k - 1;
    }
    for &a in lengths {
        total += pow(a) - BigUint::from(a + 1);
    }
    Ok(total)
}
