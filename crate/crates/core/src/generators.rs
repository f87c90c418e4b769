//! Deterministic graph families: complete and complete bipartite graphs,
//! cycles, theta graphs, blow-ups, a cut-vertex family with a single odd
//! cycle length, and seeded `G(n, p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

fn bad(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::BadParameter(msg.into())
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generators emit simple edge lists")
}

pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(bad("complete graph needs n >= 1"));
    }
    Ok(build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GeneratorError> {
    if a == 0 || b == 0 {
        return Err(bad("complete bipartite graph needs both sides nonempty"));
    }
    Ok(build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))))
}

/// `C_n` on `0..n` in order.
pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(bad("cycle needs n >= 3"));
    }
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n))))
}

/// Hubs `0` and `1` joined by three internally disjoint paths with `l1`,
/// `l2`, `l3` edges. Interior vertices are numbered path by path.
pub fn theta(l1: usize, l2: usize, l3: usize) -> Result<Graph, GeneratorError> {
    let lens = [l1, l2, l3];
    if lens.contains(&0) {
        return Err(bad("theta path lengths must be >= 1"));
    }
    if lens.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(bad("at most one theta path may be a single edge"));
    }
    let mut b = GraphBuilder::new(2);
    for len in lens {
        let mut prev = 0;
        for _ in 1..len {
            let v = b.n();
            b.ensure_vertices(v + 1);
            b.add_edge(prev, v).expect("fresh vertex");
            prev = v;
        }
        b.add_edge(prev, 1).expect("paths are internally disjoint");
    }
    Ok(b.build())
}

/// A base graph and the size of the independent set replacing each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    pub base: Graph,
    pub t: usize,
}

/// Vertex `v` of the base becomes `v*t .. v*t + t`; every base edge becomes
/// a complete bipartite `t × t` block.
pub fn blowup(spec: &BlowupSpec) -> Result<Graph, GeneratorError> {
    let t = spec.t;
    if t == 0 {
        return Err(bad("blow-up part size must be >= 1"));
    }
    let edges = spec
        .base
        .edges()
        .flat_map(|(u, v)| (0..t).flat_map(move |r| (0..t).map(move |s| (u * t + r, v * t + s))));
    Ok(build(spec.base.n() * t, edges))
}

/// `K_{m,m}` on `0..2m` sharing vertex `0` with a cycle of length `l`; the
/// cycle's other vertices are `2m..2m+l-1`. Vertex `0` is a cut vertex and
/// every odd cycle has length `l`.
pub fn cut_vertex_odd_family(m: usize, l: usize) -> Result<Graph, GeneratorError> {
    if m < 2 {
        return Err(bad("core side must be >= 2"));
    }
    if l < 3 || l.is_multiple_of(2) {
        return Err(bad("odd cycle length must be odd and >= 3"));
    }
    let n = 2 * m + l - 1;
    let core = (0..m).flat_map(|u| (m..2 * m).map(move |v| (u, v)));
    let ring: Vec<Vertex> = std::iter::once(0).chain(2 * m..n).collect();
    let tail = (0..l).map(|i| (ring[i], ring[(i + 1) % l]));
    Ok(build(n, core.chain(tail)))
}

/// Each pair `u < v`, in lexicographic order, is an edge with probability
/// `p`, drawn from a ChaCha8 stream seeded with `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(bad(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(build(n, edges))
}
