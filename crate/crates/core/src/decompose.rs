//! Preprocessing for the extractor: a locally optimal bipartition whose cut
//! subgraph is spanning and connected, a monochromatic closing edge, the BFS
//! layering of the cut subgraph, the odd base cycle, a dense pair of
//! consecutive layers, a long cycle with a chord inside that pair, and the
//! minimal subtree of the BFS tree spanning the cycle's lower-layer vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{Graph, GraphError, InducedSubgraph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is bipartite under the given sides")]
    GraphIsBipartite,
    #[error("edge {0}-{1} joins non-consecutive BFS layers")]
    NotBipartite(Vertex, Vertex),
    #[error("vertex {0} is not the layering root")]
    NotRoot(Vertex),
    #[error("vertex {0} is not in a positive even layer")]
    YNotEvenLayer(Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("layering has a single layer")]
    SingleLayer,
    #[error("layer graph has no edges")]
    TooSparse,
    #[error("no cycle with a chord found (min-degree-3 core is empty)")]
    NoChordFound,
    #[error("need at least two leaves")]
    TooFewLeaves,
    #[error("leaves lie in different layers")]
    MixedLayers,
    #[error("invalid chorded cycle: {0}")]
    InvalidCycle(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Two-sided vertex labelling and the number of host edges it cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<u8>,
    pub cut_edges: usize,
}

impl Bipartition {
    pub fn from_sides(g: &Graph, side: Vec<u8>) -> Self {
        let cut_edges = g.edges().filter(|&(u, v)| side[u] != side[v]).count();
        Bipartition { side, cut_edges }
    }

    /// Spanning subgraph of bichromatic edges.
    pub fn cut_subgraph(&self, g: &Graph) -> Graph {
        g.spanning_subgraph(|u, v| self.side[u] != self.side[v])
    }

    pub fn cut_degree(&self, g: &Graph, v: Vertex) -> usize {
        g.neighbors(v).iter().filter(|&&u| self.side[u] != self.side[v]).count()
    }

    /// Monochromatic edges in lexicographic order.
    pub fn monochromatic_edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        g.edges().filter(|&(u, v)| self.side[u] == self.side[v])
    }
}

/// Local search for a large cut. Single-vertex flips give every vertex at
/// least half its degree across the cut; relabelling a whole component of the
/// cut subgraph across a monochromatic host edge merges components. Both moves
/// strictly grow the cut, so the loop ends after at most `m` moves, with a
/// connected spanning cut subgraph whenever `g` is connected.
pub fn local_search_bipartition(g: &Graph) -> Result<Bipartition, DecomposeError> {
    if !g.is_connected() {
        return Err(DecomposeError::Disconnected);
    }
    let n = g.n();
    let mut side = vec![0u8; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                side[v] = 1 - side[u];
                queue.push_back(v);
            }
        }
    }

    loop {
        let mut cut_deg: Vec<usize> = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&u| side[u] != side[v]).count())
            .collect();
        let violating = |v: usize, cd: &[usize]| 2 * cd[v] < g.degree(v);
        let mut work: BTreeSet<Vertex> = (0..n).filter(|&v| violating(v, &cut_deg)).collect();
        while let Some(v) = work.pop_first() {
            if !violating(v, &cut_deg) {
                continue;
            }
            side[v] = 1 - side[v];
            cut_deg[v] = g.degree(v) - cut_deg[v];
            for &u in g.neighbors(v) {
                if side[u] != side[v] {
                    cut_deg[u] += 1;
                } else {
                    cut_deg[u] -= 1;
                    if violating(u, &cut_deg) {
                        work.insert(u);
                    }
                }
            }
        }

        let comp = cut_components(g, &side);
        let merge = g.edges().find(|&(u, v)| comp[u] != comp[v]);
        let Some((_, v)) = merge else {
            return Ok(Bipartition::from_sides(g, side));
        };
        let target = comp[v];
        for w in 0..n {
            if comp[w] == target {
                side[w] = 1 - side[w];
            }
        }
    }
}

fn cut_components(g: &Graph, side: &[u8]) -> Vec<usize> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if side[u] != side[v] && comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Lexicographically smallest host edge with both ends on the same side.
pub fn find_odd_closure_edge(g: &Graph, b: &Bipartition) -> Result<(Vertex, Vertex), DecomposeError> {
    b.monochromatic_edges(g).next().ok_or(DecomposeError::GraphIsBipartite)
}

/// Breadth-first spanning tree of the cut subgraph with its distance layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLayering {
    pub root: Vertex,
    pub parent: Vec<Option<Vertex>>,
    pub depth: Vec<usize>,
    pub layers: Vec<VertexSet>,
}

impl BfsLayering {
    /// Tree path from `v` up to its ancestor `anc`, both inclusive.
    pub fn path_to_ancestor(&self, v: Vertex, anc: Vertex) -> Option<Vec<Vertex>> {
        if self.depth[anc] > self.depth[v] {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while self.depth[cur] > self.depth[anc] {
            cur = self.parent[cur]?;
            path.push(cur);
        }
        (cur == anc).then_some(path)
    }

    pub fn is_ancestor(&self, anc: Vertex, v: Vertex) -> bool {
        self.path_to_ancestor(v, anc).is_some()
    }

    /// The unique tree path from `a` to `b`.
    pub fn tree_path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has parent");
            left.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has parent");
            right.push(y);
        }
        while x != y {
            x = self.parent[x].expect("non-root has parent");
            y = self.parent[y].expect("non-root has parent");
            left.push(x);
            right.push(y);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

/// BFS from `root` over a connected bipartite graph, neighbors in ascending
/// order. Rejects graphs where some edge skips a layer or stays inside one.
pub fn bfs_layering(gb: &Graph, root: Vertex) -> Result<BfsLayering, DecomposeError> {
    let n = gb.n();
    if root >= n {
        return Err(GraphError::OutOfRange { vertex: root, n }.into());
    }
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut layers: Vec<Vec<Vertex>> = vec![vec![root]];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in gb.neighbors(u) {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = Some(u);
                if layers.len() <= depth[v] {
                    layers.push(Vec::new());
                }
                layers[depth[v]].push(v);
                queue.push_back(v);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(DecomposeError::Disconnected);
    }
    if let Some((u, v)) = gb.edges().find(|&(u, v)| depth[u].abs_diff(depth[v]) != 1) {
        return Err(DecomposeError::NotBipartite(u, v));
    }
    let layers = layers.into_iter().map(VertexSet::from_unsorted).collect();
    Ok(BfsLayering { root, parent, depth, layers })
}

/// Tree path from the root `x` to `y` closed by the host edge `xy`, listed
/// from `x` to `y`.
pub fn base_odd_cycle(
    l: &BfsLayering,
    g: &Graph,
    (x, y): (Vertex, Vertex),
) -> Result<Vec<Vertex>, DecomposeError> {
    if x != l.root {
        return Err(DecomposeError::NotRoot(x));
    }
    if y >= l.depth.len() || l.depth[y] == 0 || l.depth[y] % 2 == 1 {
        return Err(DecomposeError::YNotEvenLayer(y));
    }
    if !g.has_edge(x, y) {
        return Err(DecomposeError::NotAnEdge(x, y));
    }
    let mut d = l.path_to_ancestor(y, x).expect("root is an ancestor of every vertex");
    d.reverse();
    Ok(d)
}

/// The induced graph on two consecutive layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseLayerPair {
    pub index: usize,
    pub layer_graph: InducedSubgraph,
    pub average_degree: Ratio<u64>,
}

/// Average degree of `G_b[L_i ∪ L_{i+1}]` for every `i`, in layer order.
pub fn layer_pair_densities(l: &BfsLayering, gb: &Graph) -> Vec<Ratio<u64>> {
    let pairs = l.layers.len().saturating_sub(1);
    let mut edges = vec![0u64; pairs];
    for (u, v) in gb.edges() {
        let i = l.depth[u].min(l.depth[v]);
        if i < pairs {
            edges[i] += 1;
        }
    }
    (0..pairs)
        .map(|i| Ratio::new(2 * edges[i], (l.layers[i].len() + l.layers[i + 1].len()) as u64))
        .collect()
}

pub fn layer_pair(l: &BfsLayering, gb: &Graph, index: usize) -> Result<DenseLayerPair, DecomposeError> {
    let set = l.layers[index].union(&l.layers[index + 1]);
    let layer_graph = gb.induced_subgraph(&set)?;
    let average_degree = layer_graph.graph.average_degree()?;
    Ok(DenseLayerPair { index, layer_graph, average_degree })
}

/// Consecutive layer pair of maximum average degree, smallest index on ties.
/// Summing edge counts over pairs shows the winner reaches at least half the
/// average degree of `gb`.
pub fn densest_layer_pair(l: &BfsLayering, gb: &Graph) -> Result<DenseLayerPair, DecomposeError> {
    let dens = layer_pair_densities(l, gb);
    let mut best: Option<(usize, Ratio<u64>)> = None;
    for (i, d) in dens.into_iter().enumerate() {
        if best.is_none_or(|(_, b)| d > b) {
            best = Some((i, d));
        }
    }
    let (index, _) = best.ok_or(DecomposeError::SingleLayer)?;
    layer_pair(l, gb, index)
}

/// A cycle (as a vertex order) with one designated chord, given by cycle
/// positions `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordedCycle {
    vertices: Vec<Vertex>,
    chord: (usize, usize),
    index: HashMap<Vertex, usize>,
}

impl ChordedCycle {
    pub fn new(vertices: Vec<Vertex>, chord: (usize, usize)) -> Result<Self, DecomposeError> {
        let len = vertices.len();
        if len < 4 {
            return Err(DecomposeError::InvalidCycle("cycle needs at least four vertices"));
        }
        let (a, b) = (chord.0.min(chord.1), chord.0.max(chord.1));
        if b >= len {
            return Err(DecomposeError::InvalidCycle("chord position out of range"));
        }
        if b - a < 2 || b - a > len - 2 {
            return Err(DecomposeError::InvalidCycle("chord joins consecutive vertices"));
        }
        let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != len {
            return Err(DecomposeError::InvalidCycle("repeated vertex"));
        }
        Ok(ChordedCycle { vertices, chord: (a, b), index })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, pos: usize) -> Vertex {
        self.vertices[pos]
    }

    pub fn chord_positions(&self) -> (usize, usize) {
        self.chord
    }

    pub fn chord_vertices(&self) -> (Vertex, Vertex) {
        (self.vertices[self.chord.0], self.vertices[self.chord.1])
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Position parity class; meaningful as a proper coloring only for even cycles.
    pub fn color(&self, pos: usize) -> usize {
        pos % 2
    }

    /// Cycle plus chord is bipartite: even length and chord spanning an odd
    /// number of cycle steps.
    pub fn is_bipartite(&self) -> bool {
        self.len().is_multiple_of(2) && (self.chord.1 - self.chord.0) % 2 == 1
    }

    /// Relabels every vertex, e.g. from layer-graph ids to host ids.
    pub fn map_vertices<F: FnMut(Vertex) -> Vertex>(&self, f: F) -> Self {
        ChordedCycle::new(self.vertices.iter().copied().map(f).collect(), self.chord)
            .expect("relabelling must stay injective")
    }

    /// Cycle edges and chord all present in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let len = self.len();
        self.vertices.iter().all(|&v| v < g.n())
            && (0..len).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % len]))
            && {
                let (a, b) = self.chord_vertices();
                g.has_edge(a, b)
            }
    }
}

const MAX_STARTS: usize = 32;
const MAX_ROTATIONS: usize = 64;

/// Finds a cycle with a chord: peel to a core of minimum degree at least
/// `max(⌈avg/2⌉, 3)`, grow a path greedily and by rotations until its end has
/// every neighbor on the path, then close at the farthest neighbor. The cycle
/// has at least `δ(core) + 1` vertices and any further neighbor of the end is
/// a chord. Tries up to 32 start vertices, stopping once `min_len` is met, and
/// returns the longest cycle seen (first on ties).
pub fn chorded_cycle(layer_graph: &Graph, min_len: usize) -> Result<ChordedCycle, DecomposeError> {
    let g = layer_graph;
    if g.m() == 0 {
        return Err(DecomposeError::TooSparse);
    }
    let avg = g.average_degree()?;
    let half = (avg / 2).ceil().to_integer() as usize;
    let alive = peel(g, half.max(3));
    let starts: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).take(MAX_STARTS).collect();
    if starts.is_empty() {
        return Err(DecomposeError::NoChordFound);
    }
    let mut best: Option<ChordedCycle> = None;
    let mut pos = vec![usize::MAX; g.n()];
    for s in starts {
        let c = grow_and_close(g, &alive, s, &mut pos);
        if best.as_ref().is_none_or(|b| c.len() > b.len()) {
            best = Some(c);
        }
        if best.as_ref().is_some_and(|b| b.len() >= min_len) {
            break;
        }
    }
    Ok(best.expect("at least one start"))
}

/// Iteratively removes vertices of degree below `threshold`.
fn peel(g: &Graph, threshold: usize) -> Vec<bool> {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| deg[v] < threshold).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < threshold {
                    alive[u] = false;
                    stack.push(u);
                }
            }
        }
    }
    alive
}

fn grow_and_close(g: &Graph, alive: &[bool], s: Vertex, pos: &mut [usize]) -> ChordedCycle {
    let mut path = vec![s];
    pos[s] = 0;
    let extend = |path: &mut Vec<Vertex>, pos: &mut [usize]| {
        while let Some(&v) = g
            .neighbors(*path.last().unwrap())
            .iter()
            .find(|&&v| alive[v] && pos[v] == usize::MAX)
        {
            pos[v] = path.len();
            path.push(v);
        }
    };
    let reindex = |path: &[Vertex], pos: &mut [usize], from: usize| {
        for (i, &v) in path.iter().enumerate().skip(from) {
            pos[v] = i;
        }
    };
    extend(&mut path, pos);
    path.reverse();
    reindex(&path, pos, 0);
    extend(&mut path, pos);

    for _ in 0..MAX_ROTATIONS {
        let last = path.len() - 1;
        let end = path[last];
        let pivot = g.neighbors(end).iter().filter(|&&v| alive[v]).map(|&v| pos[v]).find(|&j| {
            j + 1 < last
                && g.neighbors(path[j + 1]).iter().any(|&u| alive[u] && pos[u] == usize::MAX)
        });
        let Some(j) = pivot else { break };
        path[j + 1..].reverse();
        reindex(&path, pos, j + 1);
        extend(&mut path, pos);
    }

    let last = path.len() - 1;
    let end = path[last];
    let mut on_path: Vec<usize> = g.neighbors(end).iter().filter(|&&v| alive[v]).map(|&v| pos[v]).collect();
    on_path.sort_unstable();
    let far = on_path[0];
    let chord = on_path[1];
    debug_assert!(chord + 1 < last, "core minimum degree 3 gives a third neighbor");
    let cycle: Vec<Vertex> = path[far..].to_vec();
    for &v in &path {
        pos[v] = usize::MAX;
    }
    ChordedCycle::new(cycle, (chord - far, last - far)).expect("closed path is a chorded cycle")
}

/// Minimal subtree of the BFS tree whose leaves are a given set of vertices
/// from one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSubtree {
    pub root: Vertex,
    pub depth: usize,
    pub leaves: VertexSet,
    /// Child to parent, for every non-root vertex of the subtree.
    pub parent: BTreeMap<Vertex, Vertex>,
    pub vertices: VertexSet,
    pub branches: usize,
}

impl SteinerSubtree {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// Subtree path from `v` up to the root.
    pub fn path_to_root(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Subtree path from `v` up to its ancestor `anc`, if `anc` is one.
    pub fn path_to(&self, v: Vertex, anc: Vertex) -> Option<Vec<Vertex>> {
        let path = self.path_to_root(v);
        let end = path.iter().position(|&u| u == anc)?;
        Some(path[..=end].to_vec())
    }

    /// Leaves whose root path passes through `w`.
    pub fn leaves_under(&self, w: Vertex) -> VertexSet {
        self.leaves.iter().filter(|&leaf| self.path_to_root(leaf).contains(&w)).collect()
    }
}

/// Climbs all leaves in lockstep until they meet; the meeting vertex is the
/// root `z`, and the number of steps is the uniform depth `j`.
pub fn steiner_subtree(l: &BfsLayering, leaves: &VertexSet) -> Result<SteinerSubtree, DecomposeError> {
    if leaves.len() < 2 {
        return Err(DecomposeError::TooFewLeaves);
    }
    if let Some(bad) = leaves.iter().find(|&v| v >= l.depth.len()) {
        return Err(GraphError::OutOfRange { vertex: bad, n: l.depth.len() }.into());
    }
    let layer = l.depth[leaves.as_slice()[0]];
    if leaves.iter().any(|v| l.depth[v] != layer) {
        return Err(DecomposeError::MixedLayers);
    }
    let mut parent = BTreeMap::new();
    let mut all: Vec<Vertex> = leaves.as_slice().to_vec();
    let mut frontier = leaves.clone();
    let mut depth = 0;
    let mut branches = 0;
    while frontier.len() > 1 {
        branches = frontier.len();
        let next: VertexSet = frontier
            .iter()
            .map(|v| {
                let p = l.parent[v].expect("distinct same-layer vertices meet below the root");
                parent.insert(v, p);
                p
            })
            .collect();
        all.extend(next.iter());
        frontier = next;
        depth += 1;
    }
    Ok(SteinerSubtree {
        root: frontier.as_slice()[0],
        depth,
        leaves: leaves.clone(),
        parent,
        vertices: VertexSet::from_unsorted(all),
        branches,
    })
}
