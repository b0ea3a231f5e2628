//! Depth-first k-fold solvability search.
//!
//! States are the off-root pebble counts together with the number of
//! pebbles still owed to the root. Moves never leave the root: a pebble
//! taken off the root can bring back at most one pebble, so such moves
//! never help. Only definitively failed states are memoized; a failure that
//! depended on cutting a cycle through a state still on the stack (possible
//! only with weight-1 edges) is not recorded.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::{path_costs, Configuration, Move, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip states whose potential is below the remaining need.
    pub prune: bool,
    /// Only allow moves that strictly decrease the distance to the root.
    pub greedy: bool,
    /// Cap on states explored over the solver's lifetime.
    pub budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            greedy: false,
            budget: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub explored: u64,
    pub pruned: u64,
    pub memo_hits: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: Self) {
        self.explored += rhs.explored;
        self.pruned += rhs.pruned;
        self.memo_hits += rhs.memo_hits;
    }
}

const KEY_WORDS: usize = 4;
const NEED_BITS: u32 = 16;
type Key = [u64; KEY_WORDS];

#[derive(Clone, Copy)]
struct Arc {
    from: Vertex,
    to: Vertex,
    weight: u64,
}

struct Frame {
    key: Key,
    arc: usize,
    low: usize,
    applied: Option<Arc>,
}

/// Reusable solver for one graph and root. The failure memo persists across
/// queries, which is what makes scanning many configurations affordable.
pub struct Solver<'g> {
    graph: &'g Graph,
    root: Vertex,
    opts: SearchOptions,
    arcs: Vec<Arc>,
    slot_offset: Vec<u32>,
    bits: u32,
    scale: Vec<u128>,
    denom: u128,
    failed: FxHashSet<Key>,
    on_stack: FxHashMap<Key, usize>,
    stats: SearchStats,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph, root: Vertex, opts: SearchOptions) -> Result<Self> {
        graph.check_vertex(root)?;
        let n = graph.n();
        let others = n - 1;
        // Field widths divide 64 so no field straddles two words.
        let bits = match others {
            0..=7 => 32,
            8..=15 => 16,
            16..=30 => 8,
            31..=60 => 4,
            _ => return Err(Error::StateTooWide),
        };
        let mut slot_offset = vec![u32::MAX; n];
        let mut next = 0;
        for (v, off) in slot_offset.iter_mut().enumerate() {
            if v != root {
                *off = next * bits;
                next += 1;
            }
        }

        let dist = graph.distances_from(root);
        let mut arcs: Vec<Arc> = Vec::new();
        for u in (0..n).filter(|&u| u != root) {
            for &(v, weight) in graph.neighbors(u) {
                if opts.greedy && dist[v] >= dist[u] {
                    continue;
                }
                arcs.push(Arc { from: u, to: v, weight });
            }
        }
        // Toward the root first, nearest targets first.
        arcs.sort_by_key(|a| {
            (
                dist[a.to] as i64 - dist[a.from] as i64,
                dist[a.to],
                a.from,
                a.to,
            )
        });

        let cost = path_costs(graph, root);
        let mut denom: Option<u128> = Some(1);
        for &c in &cost {
            denom = denom.and_then(|d| {
                let l = d / gcd(d, c);
                l.checked_mul(c).filter(|&x| x <= u64::MAX as u128)
            });
        }
        let (scale, denom) = match denom {
            Some(d) => (cost.iter().map(|&c| d / c).collect(), d),
            // Too large to scale exactly; pruning is switched off.
            None => (vec![0; n], 0),
        };

        Ok(Solver {
            graph,
            root,
            opts,
            arcs,
            slot_offset,
            bits,
            scale,
            denom,
            failed: FxHashSet::default(),
            on_stack: FxHashMap::default(),
            stats: SearchStats::default(),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Number of memoized failed states.
    pub fn memo_len(&self) -> usize {
        self.failed.len()
    }

    fn pruning(&self) -> bool {
        self.opts.prune && self.denom > 0
    }

    fn set_field(key: &mut Key, offset: u32, bits: u32, value: u64) {
        let word = (offset / 64) as usize;
        let shift = offset % 64;
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        key[word] = (key[word] & !(mask << shift)) | ((value & mask) << shift);
    }

    fn encode(&self, counts: &[u64], need: u64) -> Result<Key> {
        let limit = (1u64 << self.bits) - 1;
        let mut key = [0u64; KEY_WORDS];
        for (v, &c) in counts.iter().enumerate() {
            if v == self.root {
                continue;
            }
            if c > limit {
                return Err(Error::StateTooWide);
            }
            Self::set_field(&mut key, self.slot_offset[v], self.bits, c);
        }
        if need >= 1 << NEED_BITS {
            return Err(Error::StateTooWide);
        }
        Self::set_field(&mut key, 256 - NEED_BITS, NEED_BITS, need);
        Ok(key)
    }

    fn scaled_potential(&self, counts: &[u64]) -> u128 {
        counts
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.root)
            .map(|(v, &c)| c as u128 * self.scale[v])
            .sum()
    }

    fn charge(&mut self) -> Result<()> {
        self.stats.explored += 1;
        match self.opts.budget {
            Some(b) if self.stats.explored > b => Err(Error::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    /// True iff `c` is `k`-fold solvable for this solver's root.
    pub fn is_solvable(&mut self, c: &Configuration, k: u64) -> Result<bool> {
        Ok(self.solve(c, k)?.is_some())
    }

    /// Searches for a `k`-fold solution of `c`, returning a replayable
    /// certificate when one exists.
    pub fn solve(&mut self, c: &Configuration, k: u64) -> Result<Option<Solution>> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        c.check_len(self.graph)?;
        let root = self.root;
        let done = |moves| Some(Solution { root, k, moves });
        let need = k.saturating_sub(c[root]);
        if need == 0 {
            return Ok(done(Vec::new()));
        }
        let mut counts = c.counts().to_vec();
        let start = self.encode(&counts, need)?;
        if self.failed.contains(&start) {
            self.stats.memo_hits += 1;
            return Ok(None);
        }
        let mut pot = self.scaled_potential(&counts);
        if self.pruning() && pot < need as u128 * self.denom {
            self.stats.pruned += 1;
            self.failed.insert(start);
            return Ok(None);
        }
        self.charge()?;
        self.on_stack.clear();
        self.on_stack.insert(start, 0);
        let mut need = need;
        let mut stack = vec![Frame {
            key: start,
            arc: 0,
            low: usize::MAX,
            applied: None,
        }];

        let limit = (1u64 << self.bits) - 1;
        let need_offset = 256 - NEED_BITS;
        while let Some(top) = stack.last_mut() {
            let next = self.arcs[top.arc..]
                .iter()
                .position(|a| counts[a.from] >= a.weight)
                .map(|i| top.arc + i);
            let Some(ai) = next else {
                let frame = stack.pop().expect("non-empty");
                let depth = stack.len();
                self.on_stack.remove(&frame.key);
                if frame.low >= depth {
                    self.failed.insert(frame.key);
                }
                if let Some(parent) = stack.last_mut() {
                    parent.low = parent.low.min(frame.low);
                }
                if let Some(a) = frame.applied {
                    counts[a.from] += a.weight;
                    if a.to == root {
                        need += 1;
                    } else {
                        counts[a.to] -= 1;
                        pot -= self.scale[a.to];
                    }
                    pot += a.weight as u128 * self.scale[a.from];
                }
                continue;
            };
            top.arc = ai + 1;
            let a = self.arcs[ai];
            let mut key = top.key;

            // Apply the move.
            counts[a.from] -= a.weight;
            pot -= a.weight as u128 * self.scale[a.from];
            Self::set_field(&mut key, self.slot_offset[a.from], self.bits, counts[a.from]);
            if a.to == root {
                need -= 1;
                if need == 0 {
                    let mut moves: Vec<Move> = stack
                        .iter()
                        .filter_map(|f| f.applied)
                        .map(|x| Move::new(x.from, x.to))
                        .collect();
                    moves.push(Move::new(a.from, a.to));
                    self.on_stack.clear();
                    return Ok(done(moves));
                }
                Self::set_field(&mut key, need_offset, NEED_BITS, need);
            } else {
                counts[a.to] += 1;
                pot += self.scale[a.to];
                if counts[a.to] > limit {
                    return Err(Error::StateTooWide);
                }
                Self::set_field(&mut key, self.slot_offset[a.to], self.bits, counts[a.to]);
            }

            let skip = if self.failed.contains(&key) {
                self.stats.memo_hits += 1;
                true
            } else if let Some(&d) = self.on_stack.get(&key) {
                let top = stack.last_mut().expect("non-empty");
                top.low = top.low.min(d);
                true
            } else if self.pruning() && pot < need as u128 * self.denom {
                self.stats.pruned += 1;
                self.failed.insert(key);
                true
            } else {
                false
            };

            if skip {
                counts[a.from] += a.weight;
                pot += a.weight as u128 * self.scale[a.from];
                if a.to == root {
                    need += 1;
                } else {
                    counts[a.to] -= 1;
                    pot -= self.scale[a.to];
                }
                continue;
            }

            if let Err(e) = self.charge() {
                self.on_stack.clear();
                return Err(e);
            }
            self.on_stack.insert(key, stack.len());
            stack.push(Frame {
                key,
                arc: 0,
                low: usize::MAX,
                applied: Some(a),
            });
        }
        Ok(None)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One-shot solvability query with potential pruning.
pub fn is_solvable(
    g: &Graph,
    c: &Configuration,
    r: Vertex,
    k: u64,
) -> Result<(Option<Solution>, SearchStats)> {
    let mut solver = Solver::new(g, r, SearchOptions::default())?;
    let sol = solver.solve(c, k)?;
    Ok((sol, solver.stats()))
}

/// Like [`is_solvable`] but restricted to greedy moves.
pub fn greedy_is_solvable(g: &Graph, c: &Configuration, r: Vertex, k: u64) -> Result<Option<Solution>> {
    let opts = SearchOptions {
        greedy: true,
        ..SearchOptions::default()
    };
    Solver::new(g, r, opts)?.solve(c, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::verify_solution;
    use crate::families;

    fn cfg(v: &[u64]) -> Configuration {
        Configuration::new(v.to_vec())
    }

    #[test]
    fn one_move_on_a_triangle() {
        let g = families::complete(3);
        let c = cfg(&[0, 2, 0]);
        let (sol, _) = is_solvable(&g, &c, 0, 1).unwrap();
        let sol = sol.unwrap();
        assert_eq!(sol.moves, vec![Move::new(1, 0)]);
        assert!(verify_solution(&g, &c, 0, 1, &sol));
    }

    #[test]
    fn low_potential_is_pruned() {
        let g = families::path(3);
        let (sol, stats) = is_solvable(&g, &cfg(&[0, 0, 3]), 0, 1).unwrap();
        assert!(sol.is_none());
        assert_eq!(stats.pruned, 1);
        assert_eq!(stats.explored, 0);
    }

    #[test]
    fn star_leaf_root_example() {
        // K_{1,3}, center 0, root leaf 1: 3 on leaf 2 and 1 on leaf 3.
        let g = families::star(4);
        let c = cfg(&[0, 0, 3, 1]);
        for prune in [true, false] {
            let mut s = Solver::new(&g, 1, SearchOptions { prune, ..Default::default() }).unwrap();
            assert!(!s.is_solvable(&c, 1).unwrap());
        }
        assert!(is_solvable(&g, &cfg(&[0, 0, 4, 1]), 1, 1).unwrap().0.is_some());
    }

    #[test]
    fn root_pebbles_count_toward_k() {
        let g = families::path(2);
        let (sol, _) = is_solvable(&g, &cfg(&[3, 0]), 0, 3).unwrap();
        assert_eq!(sol.unwrap().moves, vec![]);
        let (sol, _) = is_solvable(&g, &cfg(&[2, 2]), 0, 3).unwrap();
        assert_eq!(sol.unwrap().moves, vec![Move::new(1, 0)]);
        let (sol, _) = is_solvable(&g, &cfg(&[2, 1]), 0, 3).unwrap();
        assert!(sol.is_none());
    }

    #[test]
    fn k_fold_on_complete_graph() {
        // pi_2(K_4) = 6: five pebbles 1,1,3 off the root are not enough.
        let g = families::complete(4);
        assert!(is_solvable(&g, &cfg(&[0, 1, 1, 3]), 0, 2).unwrap().0.is_none());
        let (sol, _) = is_solvable(&g, &cfg(&[0, 2, 2, 2]), 0, 2).unwrap();
        assert!(verify_solution(&g, &cfg(&[0, 2, 2, 2]), 0, 2, &sol.unwrap()));
    }

    #[test]
    fn greedy_examples() {
        let c4 = families::cycle(4);
        let c = cfg(&[0, 1, 2, 1]);
        let sol = greedy_is_solvable(&c4, &c, 0, 1).unwrap().unwrap();
        assert!(verify_solution(&c4, &c, 0, 1, &sol));

        let p3 = families::path(3);
        let c = cfg(&[0, 0, 2]);
        assert!(greedy_is_solvable(&p3, &c, 0, 1).unwrap().is_none());
        assert!(is_solvable(&p3, &c, 0, 1).unwrap().0.is_none());
    }

    #[test]
    fn greedy_can_be_weaker_than_general() {
        // C_5 rooted at 0: the only solution moves sideways from 2 to 3.
        let c5 = families::cycle(5);
        let c = cfg(&[0, 0, 2, 1, 1]);
        assert!(is_solvable(&c5, &c, 0, 1).unwrap().0.is_some());
        assert!(greedy_is_solvable(&c5, &c, 0, 1).unwrap().is_none());
    }

    #[test]
    fn weight_one_cycles_terminate() {
        // A weight-1 triangle lets pebbles circulate forever.
        let g = Graph::from_weighted_edges(4, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 5)]).unwrap();
        for prune in [true, false] {
            let mut s = Solver::new(&g, 3, SearchOptions { prune, ..Default::default() }).unwrap();
            assert!(!s.is_solvable(&cfg(&[2, 1, 1, 0]), 1).unwrap());
            assert!(s.is_solvable(&cfg(&[2, 2, 1, 0]), 1).unwrap());
            assert!(!s.is_solvable(&cfg(&[3, 1, 0, 0]), 1).unwrap());
            assert!(s.is_solvable(&cfg(&[0, 0, 5, 0]), 1).unwrap());
        }
    }

    #[test]
    fn memo_is_safe_across_queries_with_weight_one_edges() {
        // Same queries in different orders must agree.
        let g = Graph::from_weighted_edges(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 2), (3, 4, 3), (1, 4, 2)],
        )
        .unwrap();
        let configs: Vec<Configuration> = (0..40u64)
            .map(|i| cfg(&[i % 3, (i / 3) % 3, (i / 9) % 3, 0, (i / 27) % 2]))
            .collect();
        let mut fresh = Vec::new();
        for c in &configs {
            let mut s = Solver::new(&g, 3, SearchOptions { prune: false, ..Default::default() }).unwrap();
            fresh.push(s.is_solvable(c, 1).unwrap());
        }
        let mut shared = Solver::new(&g, 3, SearchOptions::default()).unwrap();
        for (c, &want) in configs.iter().zip(&fresh).rev() {
            assert_eq!(shared.is_solvable(c, 1).unwrap(), want, "{c}");
        }
    }

    #[test]
    fn budget_is_an_error() {
        let g = families::path(6);
        let mut s = Solver::new(
            &g,
            0,
            SearchOptions {
                budget: Some(3),
                prune: false,
                ..Default::default()
            },
        )
        .unwrap();
        let c = cfg(&[0, 1, 1, 1, 1, 31]);
        assert_eq!(s.solve(&c, 1), Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn zero_k_rejected() {
        let g = families::path(2);
        assert_eq!(is_solvable(&g, &cfg(&[0, 0]), 0, 0).unwrap_err(), Error::ZeroK);
    }
}
