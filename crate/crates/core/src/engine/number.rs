//! Exact k-pebbling numbers by branch and bound over unsolvable
//! configurations.
//!
//! `pi_k(G, r)` is one more than the largest k-fold r-unsolvable
//! configuration. Unsolvable configurations are closed under removing
//! pebbles, so the largest one is found by assigning vertices one at a time:
//! each prefix is itself unsolvable, the feasible values at the next vertex
//! form an interval `0..=X` found by binary search, and the last vertex
//! simply takes its maximum. Vertices with large single-vertex capacity go
//! first. A branch is cut once the prefix plus the capacities of the
//! remaining vertices, each measured against the prefix alone, cannot beat
//! the best configuration found so far.

use std::cmp::Reverse;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::search::{SearchOptions, SearchStats, Solver};
use super::{path_costs, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PebblingOptions {
    /// Potential pruning inside each solvability search.
    pub prune: bool,
    /// Cap on search states explored over the whole computation.
    pub budget: Option<u64>,
    /// A value already known to satisfy `pi_k(G, r) >= lower_bound`; the
    /// search then only looks for unsolvable configurations of size at
    /// least `lower_bound - 1`.
    pub lower_bound: Option<u64>,
}

impl Default for PebblingOptions {
    fn default() -> Self {
        PebblingOptions {
            prune: true,
            budget: None,
            lower_bound: None,
        }
    }
}

/// A rooted pebbling number with a maximum unsolvable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pebbling {
    pub root: Vertex,
    pub k: u64,
    pub value: u64,
    /// An unsolvable configuration of size `value - 1`.
    pub witness: Configuration,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalPebbling {
    pub k: u64,
    pub value: u64,
    /// Smallest root attaining the maximum.
    pub root: Vertex,
    pub per_root: Vec<Pebbling>,
}

struct Search<'g> {
    solver: Solver<'g>,
    k: u64,
    order: Vec<Vertex>,
    /// `suffix_caps[i]` bounds the pebbles on `order[i..]`.
    suffix_caps: Vec<u64>,
    caps: Vec<u64>,
    best: Option<u64>,
    witness: Option<Configuration>,
    answers: FxHashMap<Configuration, bool>,
}

impl Search<'_> {
    fn unsolvable(&mut self, c: &Configuration) -> Result<bool> {
        if let Some(&ans) = self.answers.get(c) {
            return Ok(ans);
        }
        let ans = !self.solver.is_solvable(c, self.k)?;
        self.answers.insert(c.clone(), ans);
        Ok(ans)
    }

    /// Largest `x <= cap` with `c + x` on `v` unsolvable; `c` itself must
    /// be unsolvable.
    fn max_feasible(&mut self, c: &mut Configuration, v: Vertex, cap: u64) -> Result<u64> {
        let (mut lo, mut hi) = (0, cap);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            c[v] = mid;
            if self.unsolvable(c)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        c[v] = 0;
        Ok(lo)
    }

    fn descend(&mut self, pos: usize, c: &mut Configuration, sum: u64) -> Result<()> {
        let v = self.order[pos];
        let top = self.max_feasible(c, v, self.caps[v])?;
        if pos + 1 == self.order.len() {
            let total = sum + top;
            if self.best.is_none_or(|b| total > b) {
                self.best = Some(total);
                let mut w = c.clone();
                w[v] = top;
                self.witness = Some(w);
            }
            return Ok(());
        }
        // Remaining capacities given the prefix alone bound every extension.
        let mut rest = self.suffix_caps[pos + 1];
        if self.best.is_some_and(|b| sum + top + rest > b) {
            let mut cond = 0;
            for i in pos + 1..self.order.len() {
                let u = self.order[i];
                cond += self.max_feasible(c, u, self.caps[u])?;
            }
            rest = rest.min(cond);
        }
        for x in (0..=top).rev() {
            if self.best.is_some_and(|b| sum + x + rest <= b) {
                break;
            }
            c[v] = x;
            self.descend(pos + 1, c, sum + x)?;
        }
        c[v] = 0;
        Ok(())
    }
}

/// Exact `pi_k(G, r)` with a maximum unsolvable witness.
pub fn pebbling_number(g: &Graph, r: Vertex, k: u64, opts: PebblingOptions) -> Result<Pebbling> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let search_opts = SearchOptions {
        prune: opts.prune,
        greedy: false,
        budget: opts.budget,
    };
    let solver = Solver::new(g, r, search_opts)?;
    let n = g.n();
    let dist = g.distances_from(r);
    let cost = path_costs(g, r);

    let mut search = Search {
        solver,
        k,
        order: Vec::new(),
        suffix_caps: Vec::new(),
        caps: vec![0; n],
        best: opts.lower_bound.and_then(|l| l.checked_sub(2)),
        witness: None,
        answers: FxHashMap::default(),
    };

    // Single-vertex capacities: k * cost(v) pebbles on v always suffice.
    let mut probe = Configuration::zeros(n);
    for (v, &cv) in cost.iter().enumerate() {
        search.caps[v] = if v == r {
            k - 1
        } else {
            let upper = (k as u128 * cv).min(u64::MAX as u128) as u64 - 1;
            search.max_feasible(&mut probe, v, upper)?
        };
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(search.caps[v]), Reverse(dist[v]), v));
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + search.caps[order[i]];
    }
    search.order = order;
    search.suffix_caps = suffix;

    let mut c = Configuration::zeros(n);
    search.descend(0, &mut c, 0)?;

    let stats = search.solver.stats();
    match (search.best, search.witness) {
        (Some(best), Some(witness)) => Ok(Pebbling {
            root: r,
            k,
            value: best + 1,
            witness,
            stats,
        }),
        _ => Err(Error::InvalidLowerBound(opts.lower_bound.unwrap_or(0))),
    }
}

/// `pi_k(G)`: the maximum of `pi_k(G, r)` over all roots.
pub fn pebbling_number_global(g: &Graph, k: u64, opts: PebblingOptions) -> Result<GlobalPebbling> {
    let per_root = (0..g.n())
        .map(|r| pebbling_number(g, r, k, opts))
        .collect::<Result<Vec<_>>>()?;
    let best = per_root
        .iter()
        .max_by_key(|p| (p.value, std::cmp::Reverse(p.root)))
        .expect("graphs have at least one vertex");
    Ok(GlobalPebbling {
        k,
        value: best.value,
        root: best.root,
        per_root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_solvable;
    use crate::families;

    fn pi(g: &Graph, r: Vertex, k: u64) -> u64 {
        pebbling_number(g, r, k, PebblingOptions::default()).unwrap().value
    }

    #[test]
    fn complete_graph_values() {
        assert_eq!(pi(&families::complete(5), 0, 1), 5);
        assert_eq!(pi(&families::complete(4), 0, 3), 8);
    }

    #[test]
    fn path_values() {
        assert_eq!(pi(&families::path(4), 0, 1), 8);
        assert_eq!(pi(&families::path(3), 0, 2), 8);
        assert_eq!(pi(&families::path(1), 0, 3), 3);
    }

    #[test]
    fn global_values() {
        let p3 = pebbling_number_global(&families::path(3), 1, PebblingOptions::default()).unwrap();
        assert_eq!(p3.value, 4);
        assert_eq!(p3.root, 0);
        let bowtie = pebbling_number_global(&families::bowtie(), 1, PebblingOptions::default()).unwrap();
        assert_eq!(bowtie.value, 6);
    }

    #[test]
    fn witness_is_maximal_and_unsolvable() {
        let g = families::bowtie();
        let p = pebbling_number(&g, 0, 2, PebblingOptions::default()).unwrap();
        assert_eq!(p.witness.size(), p.value - 1);
        assert!(is_solvable(&g, &p.witness, 0, 2).unwrap().0.is_none());
    }

    #[test]
    fn weighted_edge() {
        let g = Graph::from_weighted_edges(2, &[(0, 1, 5)]).unwrap();
        assert_eq!(pi(&g, 0, 1), 5);
        assert_eq!(pi(&g, 0, 2), 10);
    }

    #[test]
    fn lower_bound_hint() {
        let g = families::path(4);
        let opts = PebblingOptions {
            lower_bound: Some(8),
            ..Default::default()
        };
        assert_eq!(pebbling_number(&g, 0, 1, opts).unwrap().value, 8);
        let bogus = PebblingOptions {
            lower_bound: Some(9),
            ..Default::default()
        };
        assert_eq!(
            pebbling_number(&g, 0, 1, bogus),
            Err(Error::InvalidLowerBound(9))
        );
    }

    #[test]
    fn budget_exceeded_surfaces() {
        let opts = PebblingOptions {
            budget: Some(10),
            ..Default::default()
        };
        assert!(matches!(
            pebbling_number(&families::path(5), 0, 2, opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
