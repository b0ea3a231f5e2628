//! Cycle cancellation for solutions.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{verify_solution, Configuration, Move, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Arc multiplicities of a move list, `mult[u][v]`.
fn arc_counts(n: usize, moves: &[Move]) -> Vec<Vec<u64>> {
    let mut mult = vec![vec![0u64; n]; n];
    for m in moves {
        mult[m.from][m.to] += 1;
    }
    mult
}

/// Some directed cycle among arcs with positive multiplicity, as a vertex
/// sequence `v0 v1 ... vk` with an arc from each vertex to the next and
/// from `vk` back to `v0`.
fn find_cycle(mult: &[Vec<u64>]) -> Option<Vec<Vertex>> {
    let n = mult.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = vec![start];
        let mut next = vec![0usize];
        state[start] = 1;
        while let Some(&u) = path.last() {
            let i = next.last_mut().expect("parallel stacks");
            let Some(v) = (*i..n).find(|&v| mult[u][v] > 0) else {
                state[u] = 2;
                path.pop();
                next.pop();
                continue;
            };
            *i = v + 1;
            match state[v] {
                0 => {
                    state[v] = 1;
                    path.push(v);
                    next.push(0);
                }
                1 => {
                    let at = path.iter().position(|&x| x == v).expect("on stack");
                    return Some(path[at..].to_vec());
                }
                _ => {}
            }
        }
    }
    None
}

pub fn is_acyclic(n: usize, moves: &[Move]) -> bool {
    find_cycle(&arc_counts(n, moves)).is_none()
}

/// Removes directed cycles from the move digraph of a valid solution.
///
/// One unit of every arc on a cycle is cancelled until none remain; every
/// vertex on a cycle loses one arriving pebble and keeps at least one it
/// would have sent, so counts only grow. The remaining moves are replayed
/// vertex by vertex in topological order (smallest id first among ready
/// vertices). An already acyclic solution is returned unchanged.
pub fn normalize_solution(g: &Graph, c: &Configuration, s: &Solution) -> Result<Solution> {
    if !verify_solution(g, c, s.root, s.k, s) {
        return Err(Error::NormalizationFailed);
    }
    let n = g.n();
    let mut mult = arc_counts(n, &s.moves);
    if find_cycle(&mult).is_none() {
        return Ok(s.clone());
    }
    while let Some(cycle) = find_cycle(&mult) {
        for (i, &u) in cycle.iter().enumerate() {
            let v = cycle[(i + 1) % cycle.len()];
            mult[u][v] -= 1;
        }
    }

    let mut indeg = vec![0usize; n];
    for row in &mult {
        for (v, &m) in row.iter().enumerate() {
            if m > 0 {
                indeg[v] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut moves = Vec::new();
    while let Some(Reverse(u)) = ready.pop() {
        for v in 0..n {
            let m = mult[u][v];
            if m == 0 {
                continue;
            }
            moves.extend(std::iter::repeat_n(Move::new(u, v), m as usize));
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    let out = Solution {
        root: s.root,
        k: s.k,
        moves,
    };
    if verify_solution(g, c, s.root, s.k, &out) && is_acyclic(n, &out.moves) {
        Ok(out)
    } else {
        Err(Error::NormalizationFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn acyclic_solution_is_a_fixed_point() {
        let g = families::path(3);
        let c = Configuration::new(vec![0, 0, 4]);
        let s = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(2, 1), Move::new(2, 1), Move::new(1, 0)],
        };
        assert_eq!(normalize_solution(&g, &c, &s).unwrap(), s);
    }

    #[test]
    fn two_cycle_is_cancelled() {
        let g = families::path(3);
        let c = Configuration::new(vec![0, 3, 4]);
        let s = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(2, 1), Move::new(1, 2), Move::new(1, 0)],
        };
        assert!(verify_solution(&g, &c, 0, 1, &s));
        let out = normalize_solution(&g, &c, &s).unwrap();
        assert_eq!(out.moves, vec![Move::new(1, 0)]);
    }

    #[test]
    fn triangle_cycle_is_cancelled() {
        let g = families::complete(4);
        let c = Configuration::new(vec![0, 3, 1, 1]);
        let s = Solution {
            root: 0,
            k: 1,
            moves: vec![
                Move::new(1, 2),
                Move::new(2, 3),
                Move::new(3, 1),
                Move::new(1, 0),
            ],
        };
        assert!(verify_solution(&g, &c, 0, 1, &s));
        let out = normalize_solution(&g, &c, &s).unwrap();
        assert_eq!(out.moves, vec![Move::new(1, 0)]);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let g = families::path(2);
        let c = Configuration::new(vec![0, 1]);
        let s = Solution {
            root: 0,
            k: 1,
            moves: vec![Move::new(1, 0)],
        };
        assert_eq!(normalize_solution(&g, &c, &s), Err(Error::NormalizationFailed));
    }
}
