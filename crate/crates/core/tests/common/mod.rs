//! Independent brute-force checkers shared by the integration tests. None of
//! them call into the code paths they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use oddcycles::decompose::ChordedCycle;
use oddcycles::generators::gnp;
use oddcycles::invariants::is_two_connected;
use oddcycles::{Graph, Vertex};

/// `C_n` on `0..n` plus the chord between positions `a` and `b`.
pub fn cycle_with_chord(n: usize, a: usize, b: usize) -> (Graph, ChordedCycle) {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.push((a, b));
    let g = Graph::from_edges(n, edges).unwrap();
    let c = ChordedCycle::new((0..n).collect(), (a.min(b), a.max(b))).unwrap();
    (g, c)
}

/// Lengths of all simple paths starting in `A` and ending in `B`, by
/// exhaustive DFS.
pub fn brute_ab_lengths(g: &Graph, in_a: &[bool], in_b: &[bool]) -> BTreeSet<usize> {
    fn dfs(g: &Graph, v: Vertex, len: usize, on: &mut [bool], in_b: &[bool], out: &mut BTreeSet<usize>) {
        if in_b[v] && len > 0 {
            out.insert(len);
        }
        for &w in g.neighbors(v) {
            if !on[w] {
                on[w] = true;
                dfs(g, w, len + 1, on, in_b, out);
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut on = vec![false; g.n()];
    for s in (0..g.n()).filter(|&s| in_a[s]) {
        on[s] = true;
        dfs(g, s, 0, &mut on, in_b, &mut out);
        on[s] = false;
    }
    out
}

/// Connectivity after deleting `removed`, by plain DFS.
pub fn connected_without(g: &Graph, removed: Option<Vertex>) -> bool {
    let alive: Vec<Vertex> = g.vertices().filter(|&v| Some(v) != removed).collect();
    let Some(&s) = alive.first() else { return true };
    let mut seen = vec![false; g.n()];
    if let Some(r) = removed {
        seen[r] = true;
    }
    seen[s] = true;
    let mut stack = vec![s];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == alive.len()
}

/// Simple-cycle check that uses nothing but adjacency lookups.
pub fn is_cycle_of(g: &Graph, c: &[Vertex]) -> bool {
    let distinct: BTreeSet<_> = c.iter().collect();
    c.len() >= 3
        && distinct.len() == c.len()
        && c.iter().all(|&v| v < g.n())
        && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

/// A seeded 2-connected non-bipartite `G(n, p)` sample, found by retrying
/// seeds.
pub fn two_connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    (0..)
        .map(|i| gnp(n, p, seed.wrapping_mul(1_000_003).wrapping_add(i)).unwrap())
        .find(|g| is_two_connected(g).is_two_connected() && oddcycles::invariants::odd_girth(g).is_some())
        .unwrap()
}
