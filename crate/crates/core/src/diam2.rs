//! Diameter-two graphs: the extremal construction, cheap solutions, and the
//! counting argument behind `pi_k(G) <= n + 7k - 6`.
//!
//! A cheap solution moves one pebble to the root while consuming at most
//! seven pebbles. When none exists, the vertices holding 1, 2 or 3 pebbles
//! force enough empty vertices around the root that `|C| <= n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{solution_cost, verify_solution, Configuration, Move, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A small graph glued into the extremal construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Attachment {
    /// `n` isolated vertices.
    pub fn isolated(n: usize) -> Self {
        Attachment {
            n,
            edges: Vec::new(),
        }
    }

    /// Smallest vertex of each connected component.
    fn component_leaders(&self) -> Vec<Vertex> {
        let mut comp: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut comp, u), find(&mut comp, v));
            comp[a.max(b)] = a.min(b);
        }
        (0..self.n).filter(|&v| find(&mut comp, v) == v).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub hp: Attachment,
    pub hq: Attachment,
    pub hr: Attachment,
    pub hc: Attachment,
}

impl ExtremalSpec {
    /// Isolated-vertex attachments of the given sizes.
    pub fn isolated(hp: usize, hq: usize, hr: usize, hc: usize) -> Self {
        ExtremalSpec {
            hp: Attachment::isolated(hp),
            hq: Attachment::isolated(hq),
            hr: Attachment::isolated(hr),
            hc: Attachment::isolated(hc),
        }
    }
}

/// Fixed vertex ids of the core; attachment vertices follow in the order
/// `H_p, H_q, H_r, H_c`.
pub const A: Vertex = 0;
pub const B: Vertex = 1;
pub const C: Vertex = 2;
pub const P: Vertex = 3;
pub const Q: Vertex = 4;
pub const R: Vertex = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub graph: Graph,
    pub spec: ExtremalSpec,
    /// Vertices of `H_p`, `H_q`, `H_r`, `H_c` in the built graph.
    pub attached: [Vec<Vertex>; 4],
}

impl Extremal {
    pub fn root(&self) -> Vertex {
        R
    }
}

/// The 6-cycle `(a, r, b, q, c, p)` with the triangle `abc`, plus the
/// attachments: `H_p` joined to `a, c`; `H_q` to `b, c`; `H_r` to `a, b`;
/// `H_c` to `a, b, c`. One vertex per component of `H_p, H_q, H_r` is also
/// joined to `p, q, r` respectively.
pub fn build_extremal(spec: &ExtremalSpec) -> Result<Extremal> {
    let mut edges = vec![(A, R), (R, B), (B, Q), (Q, C), (C, P), (P, A), (A, B), (B, C), (A, C)];
    let parts: [(&Attachment, &[Vertex], Option<Vertex>); 4] = [
        (&spec.hp, &[A, C], Some(P)),
        (&spec.hq, &[B, C], Some(Q)),
        (&spec.hr, &[A, B], Some(R)),
        (&spec.hc, &[A, B, C], None),
    ];
    let mut next = 6;
    let mut attached: [Vec<Vertex>; 4] = Default::default();
    for (i, (h, hubs, anchor)) in parts.into_iter().enumerate() {
        let ids: Vec<Vertex> = (next..next + h.n).collect();
        next += h.n;
        for &v in &ids {
            edges.extend(hubs.iter().map(|&x| (x, v)));
        }
        for &(u, v) in &h.edges {
            if u >= h.n || v >= h.n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n: h.n,
                });
            }
            edges.push((ids[u], ids[v]));
        }
        if let Some(anchor) = anchor {
            edges.extend(h.component_leaders().into_iter().map(|l| (anchor, ids[l])));
        }
        attached[i] = ids;
    }
    if next < 6 {
        return Err(Error::SpecTooSmall(next));
    }
    let graph = Graph::from_edges(next, &edges)?;
    let diam = graph.diameter();
    if diam > 2 {
        return Err(Error::DiameterTooLarge(diam));
    }
    Ok(Extremal {
        graph,
        spec: spec.clone(),
        attached,
    })
}

/// `4k - 1` pebbles on `p`, 3 on `q`, one on every attachment vertex:
/// `n + 4k - 4` pebbles that cannot put `k` on `r`.
pub fn extremal_config(x: &Extremal, k: u64) -> Result<Configuration> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let mut c = Configuration::zeros(x.graph.n());
    c[P] = 4 * k - 1;
    c[Q] = 3;
    for v in x.attached.iter().flatten() {
        c[*v] = 1;
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheapPattern {
    C1,
    C2,
    C3,
    C4A,
    C4B,
    C5,
    C6,
    C7,
}

impl CheapPattern {
    pub const ALL: [CheapPattern; 8] = [
        CheapPattern::C1,
        CheapPattern::C2,
        CheapPattern::C3,
        CheapPattern::C4A,
        CheapPattern::C4B,
        CheapPattern::C5,
        CheapPattern::C6,
        CheapPattern::C7,
    ];

    /// Pebbles consumed, counting the one that lands on the root.
    pub fn cost(self) -> u64 {
        match self {
            CheapPattern::C1 => 1,
            CheapPattern::C2 => 2,
            CheapPattern::C3 => 3,
            CheapPattern::C4A | CheapPattern::C4B => 4,
            CheapPattern::C5 => 5,
            CheapPattern::C6 => 6,
            CheapPattern::C7 => 7,
        }
    }
}

impl fmt::Display for CheapPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheapSolution {
    pub pattern: CheapPattern,
    /// The pattern's vertices in the order its description names them.
    pub witness: Vec<Vertex>,
    pub solution: Solution,
}

fn require_diameter_two(g: &Graph) -> Result<()> {
    match g.diameter() {
        d if d > 2 => Err(Error::DiameterTooLarge(d)),
        _ => Ok(()),
    }
}

/// Finds a cheap solution, trying patterns by cost and witnesses in
/// lexicographic order. Every returned solution replays and consumes
/// exactly its pattern's cost.
pub fn detect_cheap(g: &Graph, c: &Configuration, r: Vertex) -> Result<Option<CheapSolution>> {
    require_diameter_two(g)?;
    c.check_len(g)?;
    g.check_vertex(r)?;
    let found = Detector { g, c, r }.find();
    if let Some(s) = &found {
        let ok = verify_solution(g, c, r, 1, &s.solution)
            && solution_cost(g, c, &s.solution)? == s.pattern.cost();
        assert!(ok, "cheap solution {} failed its replay", s.pattern);
    }
    Ok(found)
}

struct Detector<'a> {
    g: &'a Graph,
    c: &'a Configuration,
    r: Vertex,
}

impl Detector<'_> {
    fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.g.has_edge(u, v)
    }

    fn holding(&self, at_least: u64) -> Vec<Vertex> {
        (0..self.g.n())
            .filter(|&v| v != self.r && self.c[v] >= at_least)
            .collect()
    }

    fn common(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g
            .neighbors(u)
            .iter()
            .map(|&(w, _)| w)
            .filter(move |&w| self.g.has_edge(w, v))
    }

    fn done(&self, pattern: CheapPattern, witness: Vec<Vertex>, moves: Vec<(Vertex, Vertex)>) -> CheapSolution {
        CheapSolution {
            pattern,
            witness,
            solution: Solution {
                root: self.r,
                k: 1,
                moves: moves.into_iter().map(|(a, b)| Move::new(a, b)).collect(),
            },
        }
    }

    /// Two moves from `v` (holding 4) to a common neighbor with the root,
    /// then one to the root. `v` must not be adjacent to the root.
    fn four_stack(&self, v: Vertex) -> Option<(Vertex, [(Vertex, Vertex); 3])> {
        let x = self.common(v, self.r).next()?;
        Some((x, [(v, x), (v, x), (x, self.r)]))
    }

    fn find(&self) -> Option<CheapSolution> {
        use CheapPattern::*;
        let r = self.r;
        let c = self.c;
        if c[r] >= 1 {
            return Some(self.done(C1, vec![r], vec![]));
        }
        let two = self.holding(2);
        let three = self.holding(3);
        for &v in &two {
            if self.adj(v, r) {
                return Some(self.done(C2, vec![v], vec![(v, r)]));
            }
        }
        for &(w, _) in self.g.neighbors(r) {
            if c[w] < 1 {
                continue;
            }
            for &(u, _) in self.g.neighbors(w) {
                if u != r && c[u] >= 2 {
                    return Some(self.done(C3, vec![w, u], vec![(u, w), (w, r)]));
                }
            }
        }
        // From here no neighbor of r holds 2, so every vertex in `two` is
        // at distance exactly 2 from r.
        for v in self.holding(4) {
            if let Some((x, moves)) = self.four_stack(v) {
                return Some(self.done(C4A, vec![v, x], moves.to_vec()));
            }
        }
        for (i, &u) in two.iter().enumerate() {
            for &v in &two[i + 1..] {
                if let Some(w) = self.common(u, v).find(|&w| w != r && self.adj(w, r)) {
                    return Some(self.done(C4B, vec![u, v, w], vec![(u, w), (v, w), (w, r)]));
                }
            }
        }
        for &u in &three {
            for &v in &two {
                if u == v || !self.adj(u, v) {
                    continue;
                }
                if let Some((x, rest)) = self.four_stack(u) {
                    let mut moves = vec![(v, u)];
                    moves.extend(rest);
                    return Some(self.done(C5, vec![u, v, x], moves));
                }
            }
        }
        for (i, &u) in three.iter().enumerate() {
            for &v in &three[i + 1..] {
                let Some(w) = self.common(u, v).find(|&w| c[w] >= 1) else {
                    continue;
                };
                if let Some((x, rest)) = self.four_stack(v) {
                    let mut moves = vec![(u, w), (w, v)];
                    moves.extend(rest);
                    return Some(self.done(C6, vec![u, v, w, x], moves));
                }
            }
        }
        for (i, &x) in three.iter().enumerate() {
            for (j, &y) in three.iter().enumerate().skip(i + 1) {
                for &z in &three[j + 1..] {
                    let shared = self.common(x, y).find(|&w| self.adj(w, z));
                    let Some(w) = shared else { continue };
                    if let Some((t, rest)) = self.four_stack(z) {
                        let mut moves = vec![(x, w), (y, w), (w, z)];
                        moves.extend(rest);
                        return Some(self.done(C7, vec![x, y, z, w, t], moves));
                    }
                }
            }
        }
        None
    }
}

/// The vertex classes used by the counting argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimStats {
    /// `n_by_count[i]`: vertices holding exactly `i` pebbles, `i <= 3`.
    pub n_by_count: [Vec<Vertex>; 4],
    /// Vertices holding 4 or more.
    pub heavy: Vec<Vertex>,
    /// Neighbors of `r` adjacent to some vertex holding exactly 2.
    pub n2r: Vec<Vertex>,
    /// Neighbors of `r` adjacent to some vertex holding exactly 3.
    pub n3r: Vec<Vertex>,
    /// Vertices adjacent to two distinct vertices holding exactly 3.
    pub n33: Vec<Vertex>,
    /// Empty vertices outside `n3r`, `n33` and `n2r`.
    pub n0_prime: Vec<Vertex>,
}

pub fn claim_stats(g: &Graph, c: &Configuration, r: Vertex) -> Result<ClaimStats> {
    require_diameter_two(g)?;
    c.check_len(g)?;
    g.check_vertex(r)?;
    let n = g.n();
    let mut n_by_count: [Vec<Vertex>; 4] = Default::default();
    let mut heavy = Vec::new();
    for v in 0..n {
        match c[v] {
            x @ 0..=3 => n_by_count[x as usize].push(v),
            _ => heavy.push(v),
        }
    }
    let touches = |w: Vertex, set: &[Vertex]| set.iter().filter(|&&u| g.has_edge(u, w)).count();
    let near_r = |set: &[Vertex]| -> Vec<Vertex> {
        (0..n)
            .filter(|&w| g.has_edge(w, r) && touches(w, set) > 0)
            .collect()
    };
    let n2r = near_r(&n_by_count[2]);
    let n3r = near_r(&n_by_count[3]);
    let n33: Vec<Vertex> = (0..n).filter(|&w| touches(w, &n_by_count[3]) >= 2).collect();
    let n0_prime = n_by_count[0]
        .iter()
        .copied()
        .filter(|v| !n3r.contains(v) && !n33.contains(v) && !n2r.contains(v))
        .collect();
    Ok(ClaimStats {
        n_by_count,
        heavy,
        n2r,
        n3r,
        n33,
        n0_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimAudit {
    pub stats: ClaimStats,
    pub checks: Vec<ClaimCheck>,
}

impl ClaimAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Checks the six counting statements on a configuration with no cheap
/// solution:
/// S1 `N_{2,r}` and `N_{3,r}` hold no pebbles; S2 neither does `N_{3,3}`;
/// S3 `n_{2,r} >= n_2` and `n_{3,r} >= n_3`; S4 `|C| = 3 n_3 + 2 n_2 + n_1`;
/// S5 `n = n_0' + n_{3,r} + n_{3,3} + n_{2,r} + n_1 + n_2 + n_3` with `r`
/// in `N_0'`; S6 `n_{3,3} >= n_3 (n_3 - 1) / 2`.
pub fn audit_claim(g: &Graph, c: &Configuration, r: Vertex) -> Result<ClaimAudit> {
    if let Some(s) = detect_cheap(g, c, r)? {
        return Err(Error::PreconditionViolated(format!(
            "configuration admits the cheap solution {}",
            s.pattern
        )));
    }
    let st = claim_stats(g, c, r)?;
    let [n0, n1, n2, n3] = &st.n_by_count;
    let (c1, c2, c3) = (n1.len(), n2.len(), n3.len());
    let classes = st.n0_prime.len() + st.n3r.len() + st.n33.len() + st.n2r.len() + c1 + c2 + c3;
    let checks = [
        ("S1", subset(&st.n2r, n0) && subset(&st.n3r, n0)),
        ("S2", subset(&st.n33, n0)),
        ("S3", st.n2r.len() >= c2 && st.n3r.len() >= c3),
        (
            "S4",
            st.heavy.is_empty() && c.size() == (3 * c3 + 2 * c2 + c1) as u64,
        ),
        ("S5", classes == g.n() && st.n0_prime.contains(&r)),
        ("S6", st.n33.len() >= c3 * c3.saturating_sub(1) / 2),
    ];
    Ok(ClaimAudit {
        checks: checks
            .into_iter()
            .map(|(name, holds)| ClaimCheck {
                name: name.to_string(),
                holds,
            })
            .collect(),
        stats: st,
    })
}

/// `n + 7k - 6`: proven for diameter two.
pub fn kpd2_bound(n: u64, k: u64) -> u64 {
    n + 7 * k - 6
}

/// `n + 1`: proven for diameter two and `k = 1`.
pub fn psv_bound(n: u64) -> u64 {
    n + 1
}

/// `n + 4k - 3`: conjectured, and attained by the extremal graph.
pub fn conjectured_bound(n: u64, k: u64) -> u64 {
    n + 4 * k - 3
}
