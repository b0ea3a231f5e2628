//! Configurations, weighted pebbling moves, and the exhaustive solver.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

mod normalize;
mod number;
mod search;

pub use normalize::{is_acyclic, normalize_solution};
pub use number::{pebbling_number, pebbling_number_global, GlobalPebbling, PebblingOptions, Pebbling};
pub use search::{greedy_is_solvable, is_solvable, SearchOptions, SearchStats, Solver};

/// Pebble counts indexed by vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<u64>);

impl Configuration {
    pub fn new(counts: Vec<u64>) -> Self {
        Configuration(counts)
    }

    pub fn zeros(n: usize) -> Self {
        Configuration(vec![0; n])
    }

    /// `count` pebbles on `v`, nothing elsewhere.
    pub fn single(n: usize, v: Vertex, count: u64) -> Self {
        let mut c = Self::zeros(n);
        c.0[v] = count;
        c
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of pebbles.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn counts_mut(&mut self) -> &mut [u64] {
        &mut self.0
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.0
    }

    pub fn check_len(&self, g: &Graph) -> Result<()> {
        if self.0.len() == g.n() {
            Ok(())
        } else {
            Err(Error::ConfigLength {
                expected: g.n(),
                got: self.0.len(),
            })
        }
    }
}

impl std::ops::Index<Vertex> for Configuration {
    type Output = u64;
    fn index(&self, v: Vertex) -> &u64 {
        &self.0[v]
    }
}

impl std::ops::IndexMut<Vertex> for Configuration {
    fn index_mut(&mut self, v: Vertex) -> &mut u64 {
        &mut self.0[v]
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Move { from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// A replayable certificate that `k` pebbles can be brought to `root`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub root: Vertex,
    pub k: u64,
    pub moves: Vec<Move>,
}

/// Applies one move: `w_e` pebbles leave `from`, one arrives at `to`.
pub fn apply_move(g: &Graph, c: &Configuration, m: Move) -> Result<Configuration> {
    let mut next = c.clone();
    apply_move_in_place(g, &mut next, m)?;
    Ok(next)
}

pub(crate) fn apply_move_in_place(g: &Graph, c: &mut Configuration, m: Move) -> Result<()> {
    let w = g.weight(m.from, m.to).ok_or(Error::NotAnEdge {
        from: m.from,
        to: m.to,
    })?;
    let have = c.0[m.from];
    if have < w {
        return Err(Error::InsufficientPebbles {
            vertex: m.from,
            have,
            need: w,
        });
    }
    c.0[m.from] -= w;
    c.0[m.to] += 1;
    Ok(())
}

/// Replays `s` from `c` and reports whether every move is legal and the
/// root ends with at least `k` pebbles. Shares no code with the search.
pub fn verify_solution(g: &Graph, c: &Configuration, r: Vertex, k: u64, s: &Solution) -> bool {
    if c.len() != g.n() || r >= g.n() {
        return false;
    }
    let mut counts = c.counts().to_vec();
    for m in &s.moves {
        if m.from >= g.n() || m.to >= g.n() {
            return false;
        }
        let Some(w) = g.weight(m.from, m.to) else {
            return false;
        };
        if counts[m.from] < w {
            return false;
        }
        counts[m.from] -= w;
        counts[m.to] += 1;
    }
    counts[r] >= k
}

/// Replays `s` from `c`, returning the final configuration.
pub fn replay(g: &Graph, c: &Configuration, moves: &[Move]) -> Result<Configuration> {
    let mut cur = c.clone();
    for &m in moves {
        apply_move_in_place(g, &mut cur, m)?;
    }
    Ok(cur)
}

/// Cheapest cost, as a product of edge weights, of any path from each
/// vertex to `r`. `cost[r] = 1`. Saturates at `u128::MAX`.
pub fn path_costs(g: &Graph, r: Vertex) -> Vec<u128> {
    let mut cost = vec![u128::MAX; g.n()];
    cost[r] = 1;
    let mut heap = BinaryHeap::from([Reverse((1u128, r))]);
    while let Some(Reverse((c, u))) = heap.pop() {
        if c > cost[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let next = c.saturating_mul(w as u128);
            if next < cost[v] {
                cost[v] = next;
                heap.push(Reverse((next, v)));
            }
        }
    }
    cost
}

/// `sum_v C(v) / cost(v)` with `cost` from [`path_costs`]. No move ever
/// increases it, so a value below `k` proves `k`-fold unsolvability.
pub fn potential(g: &Graph, c: &Configuration, r: Vertex) -> Ratio<u128> {
    let cost = path_costs(g, r);
    c.counts()
        .iter()
        .zip(&cost)
        .filter(|(&x, _)| x > 0)
        .fold(Ratio::from_integer(0), |acc, (&x, &cv)| {
            acc + Ratio::new(x as u128, cv)
        })
}

/// Pebbles used by a solution: everything that left the board plus the
/// `k` pebbles consumed at the root.
pub fn solution_cost(g: &Graph, c: &Configuration, s: &Solution) -> Result<u64> {
    let end = replay(g, c, &s.moves)?;
    Ok(c.size() - end.size() + s.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn apply_move_examples() {
        let p2 = families::path(2);
        let c = Configuration::new(vec![2, 0]);
        assert_eq!(
            apply_move(&p2, &c, Move::new(0, 1)).unwrap(),
            Configuration::new(vec![0, 1])
        );

        let heavy = Graph::from_weighted_edges(2, &[(0, 1, 3)]).unwrap();
        let c = Configuration::new(vec![3, 0]);
        assert_eq!(
            apply_move(&heavy, &c, Move::new(0, 1)).unwrap(),
            Configuration::new(vec![0, 1])
        );

        let c = Configuration::new(vec![1, 0]);
        assert_eq!(
            apply_move(&p2, &c, Move::new(0, 1)),
            Err(Error::InsufficientPebbles { vertex: 0, have: 1, need: 2 })
        );
        assert!(matches!(
            apply_move(&families::path(3), &Configuration::new(vec![4, 0, 0]), Move::new(0, 2)),
            Err(Error::NotAnEdge { .. })
        ));
    }

    #[test]
    fn potential_examples() {
        let p3 = families::path(3);
        assert_eq!(
            potential(&p3, &Configuration::new(vec![3, 0, 0]), 2),
            Ratio::new(3, 4)
        );
        for k in 1..5 {
            assert_eq!(
                potential(&p3, &Configuration::single(3, 1, k), 1),
                Ratio::from_integer(k as u128)
            );
        }
        let bowtie = families::bowtie();
        assert_eq!(
            potential(&bowtie, &Configuration::single(5, 4, 3), 0),
            Ratio::new(3, 4)
        );
    }

    #[test]
    fn path_costs_take_the_cheapest_product() {
        // 0 -5- 1, 0 -2- 2 -2- 1: going around is cheaper.
        let g = Graph::from_weighted_edges(3, &[(0, 1, 5), (0, 2, 2), (1, 2, 2)]).unwrap();
        assert_eq!(path_costs(&g, 0), vec![1, 4, 2]);
    }

    #[test]
    fn verify_examples() {
        let p3 = families::path(3);
        let c = Configuration::new(vec![1, 0, 0]);
        let empty = Solution { root: 0, k: 1, moves: vec![] };
        assert!(verify_solution(&p3, &c, 0, 1, &empty));
        assert!(!verify_solution(&p3, &c, 0, 2, &empty));

        let c = Configuration::new(vec![0, 0, 4]);
        let good = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(2, 1), Move::new(2, 1), Move::new(1, 0)],
        };
        assert!(verify_solution(&p3, &c, 0, 1, &good));
        let illegal = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(2, 0)],
        };
        assert!(!verify_solution(&p3, &c, 0, 1, &illegal));
        let short = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(2, 1), Move::new(1, 0)],
        };
        assert!(!verify_solution(&p3, &c, 0, 1, &short));
        assert_eq!(solution_cost(&p3, &c, &good).unwrap(), 4);
    }
}
