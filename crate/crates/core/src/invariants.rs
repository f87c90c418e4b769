//! Structural predicates over [`Graph`]: bipartiteness, 2-connectivity,
//! girth and odd girth. Negative answers carry a certificate that can be
//! checked without trusting the code that produced it.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("graph is disconnected")]
    Disconnected,
}

/// Either a proper 2-coloring or an odd cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteWitness {
    /// `side[v]` is 0 or 1 and no edge is monochromatic.
    Bipartite { side: Vec<u8> },
    /// Vertex sequence of a simple cycle of odd length.
    OddCycle(Vec<Vertex>),
}

impl BipartiteWitness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, BipartiteWitness::Bipartite { .. })
    }

    /// Independent re-check of the witness against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            BipartiteWitness::Bipartite { side } => {
                side.len() == g.n()
                    && side.iter().all(|&s| s <= 1)
                    && g.edges().all(|(u, v)| side[u] != side[v])
            }
            BipartiteWitness::OddCycle(c) => c.len() % 2 == 1 && is_simple_cycle(g, c),
        }
    }
}

/// True when `c` lists at least three distinct vertices, each adjacent to the
/// next and the last adjacent to the first.
pub fn is_simple_cycle(g: &Graph, c: &[Vertex]) -> bool {
    if c.len() < 3 || c.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in c {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

struct Bfs {
    dist: Vec<usize>,
    parent: Vec<Option<Vertex>>,
}

fn bfs(g: &Graph, root: Vertex) -> Bfs {
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![None; g.n()];
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    Bfs { dist, parent }
}

/// Two-colors a connected graph by BFS from vertex 0. On failure returns the
/// odd cycle closed by the shallowest monochromatic edge.
pub fn bipartite_check(g: &Graph) -> Result<BipartiteWitness, InvariantError> {
    if g.n() == 0 {
        return Ok(BipartiteWitness::Bipartite { side: Vec::new() });
    }
    let Bfs { dist, parent } = bfs(g, 0);
    if dist.contains(&usize::MAX) {
        return Err(InvariantError::Disconnected);
    }
    let conflict = g
        .edges()
        .filter(|&(u, v)| dist[u] % 2 == dist[v] % 2)
        .min_by_key(|&(u, v)| (dist[u], u, v));
    let Some((u, v)) = conflict else {
        let side = dist.iter().map(|d| (d % 2) as u8).collect();
        return Ok(BipartiteWitness::Bipartite { side });
    };
    // BFS layers differ by at most one, so a same-parity edge is a same-depth edge.
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        a = parent[a].expect("non-root has a parent");
        b = parent[b].expect("non-root has a parent");
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    Ok(BipartiteWitness::OddCycle(left))
}

/// Outcome of the 2-connectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoConnectivity {
    TwoConnected,
    /// Fewer than three vertices.
    TooSmall { n: usize },
    Disconnected { components: usize },
    /// Smallest articulation vertex.
    CutVertex(Vertex),
}

impl TwoConnectivity {
    pub fn is_two_connected(&self) -> bool {
        matches!(self, TwoConnectivity::TwoConnected)
    }
}

/// Low-link articulation search (iterative, ascending-id traversal).
pub fn is_two_connected(g: &Graph) -> TwoConnectivity {
    let n = g.n();
    if n < 3 {
        return TwoConnectivity::TooSmall { n };
    }
    let comps = g.components().len();
    if comps > 1 {
        return TwoConnectivity::Disconnected { components: comps };
    }
    match articulation_points(g).first() {
        Some(&v) => TwoConnectivity::CutVertex(v),
        None => TwoConnectivity::TwoConnected,
    }
}

/// All articulation vertices, sorted.
pub fn articulation_points(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if let Some(&v) = g.neighbors(u).get(idx) {
                frame.2 += 1;
                if Some(v) == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((v, Some(u), 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Length of a shortest cycle, `None` for forests. One truncated BFS per root.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for root in g.vertices() {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if v != parent[u] {
                    // Root neighbors are all unseen when the root is scanned,
                    // so a stale parent[root] is never read here.
                    best = best.min(dist[u] + dist[v] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Length of a shortest odd cycle, `None` for bipartite graphs.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for root in g.vertices() {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    touched.push(v);
                    queue.push_back(v);
                } else if dist[v] == dist[u] {
                    best = best.min(2 * dist[u] + 1);
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Exact chromatic number by backtracking. Exponential; meant for graphs
/// with a few dozen vertices at most.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    (1..=g.n()).find(|&k| colorable(g, &order, k)).unwrap_or(g.n())
}

fn colorable(g: &Graph, order: &[Vertex], k: usize) -> bool {
    fn go(g: &Graph, order: &[Vertex], k: usize, idx: usize, color: &mut [usize], used: usize) -> bool {
        let Some(&v) = order.get(idx) else {
            return true;
        };
        // Trying at most one fresh color removes color-permutation symmetry.
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&u| color[u] != c) {
                color[v] = c;
                if go(g, order, k, idx + 1, color, used.max(c + 1)) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    go(g, order, k, 0, &mut color, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::from_edges(10, e).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn bipartite_witnesses() {
        let w = bipartite_check(&cycle(4)).unwrap();
        assert_eq!(w, BipartiteWitness::Bipartite { side: vec![0, 1, 0, 1] });
        assert!(w.verify(&cycle(4)));

        let w = bipartite_check(&cycle(5)).unwrap();
        assert!(matches!(&w, BipartiteWitness::OddCycle(c) if c.len() == 5));
        assert!(w.verify(&cycle(5)));

        let p = petersen();
        let w = bipartite_check(&p).unwrap();
        assert!(matches!(&w, BipartiteWitness::OddCycle(c) if c.len() == 5));
        assert!(w.verify(&p));

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(bipartite_check(&two), Err(InvariantError::Disconnected));
    }

    #[test]
    fn two_connectivity() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_two_connected(&p3), TwoConnectivity::CutVertex(1));
        assert_eq!(is_two_connected(&cycle(4)), TwoConnectivity::TwoConnected);
        assert_eq!(is_two_connected(&bowtie()), TwoConnectivity::CutVertex(0));
        assert_eq!(is_two_connected(&complete(2)), TwoConnectivity::TooSmall { n: 2 });
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(is_two_connected(&two), TwoConnectivity::Disconnected { components: 2 });
        assert!(is_two_connected(&petersen()).is_two_connected());
    }

    #[test]
    fn cut_vertex_certificate_disconnects() {
        let g = bowtie();
        let TwoConnectivity::CutVertex(c) = is_two_connected(&g) else { panic!() };
        let rest: crate::graph::VertexSet = g.vertices().filter(|&v| v != c).collect();
        assert!(!g.induced_subgraph(&rest).unwrap().graph.is_connected());
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&complete(4)), Some(3));
        let tree = Graph::from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&petersen()), Some(5));
        assert_eq!(girth(&cycle(9)), Some(9));
        assert_eq!(girth(&k33()), Some(4));
    }

    #[test]
    fn odd_girths() {
        assert_eq!(odd_girth(&k33()), None);
        assert_eq!(odd_girth(&complete(4)), Some(3));
        assert_eq!(odd_girth(&petersen()), Some(5));
        assert_eq!(odd_girth(&cycle(7)), Some(7));
        // C_7 blown up with parts of size 2.
        let mut e = Vec::new();
        for i in 0..7 {
            let j = (i + 1) % 7;
            for a in 0..2 {
                for b in 0..2 {
                    e.push((2 * i + a, 2 * j + b));
                }
            }
        }
        assert_eq!(odd_girth(&Graph::from_edges(14, e).unwrap()), Some(7));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&complete(5)), 5);
        assert_eq!(chromatic_number(&cycle(7)), 3);
        assert_eq!(chromatic_number(&cycle(6)), 2);
        assert_eq!(chromatic_number(&petersen()), 3);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
    }
}
