//! Simple undirected graphs on dense integer ids, plus the edge-list and
//! DIMACS text formats used by the command-line tools.
//!
//! A [`Graph`] is immutable once built. Vertices are `0..n`, adjacency lists
//! are kept sorted so every traversal in the crate visits neighbors in
//! ascending id order, which makes all downstream choices reproducible.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

/// Vertex identifier. Always `< n` of the host graph.
pub type Vertex = usize;

/// Errors raised while building or slicing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex set is empty")]
    EmptySet,
}

/// Errors raised by the text parsers. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {0}: self-loop")]
    SelfLoop(usize),
    #[error("line {0}: duplicate edge")]
    DuplicateEdge(usize),
    #[error("line {0}: malformed input")]
    Malformed(usize),
}

/// A simple, finite, undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Exact average degree `2m/n`.
    pub fn average_degree(&self) -> Result<Ratio<u64>, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Ratio::new(2 * self.m as u64, self.n() as u64))
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|` in ascending order of
    /// host id.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if let Some(&bad) = s.as_slice().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::OutOfRange { vertex: bad, n: self.n() });
        }
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in s.as_slice().iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); s.len()];
        let mut m = 0;
        for (i, &v) in s.as_slice().iter().enumerate() {
            for &u in &self.adj[v] {
                let lu = local[u];
                if lu != usize::MAX {
                    adj[i].push(lu);
                    if i < lu {
                        m += 1;
                    }
                }
            }
        }
        Ok(InducedSubgraph { graph: Graph { adj, m }, to_host: s.as_slice().to_vec() })
    }

    /// Subgraph on the same vertex set keeping only the edges accepted by
    /// `keep`.
    pub fn spanning_subgraph<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(Vertex, Vertex) -> bool,
    {
        let mut adj = vec![Vec::new(); self.n()];
        let mut m = 0;
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
                m += 1;
            }
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Graph { adj, m }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            out.push(VertexSet::from_unsorted(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Full scan of the simplicity and symmetry invariants.
    pub fn check_invariants(&self) -> bool {
        let mut half = 0usize;
        for (u, nb) in self.adj.iter().enumerate() {
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nb {
                if v == u || v >= self.n() || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            half += nb.len();
        }
        half == 2 * self.m
    }
}

/// Incremental graph construction with duplicate and loop detection.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![BTreeSet::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Grows the vertex set to at least `n` vertices.
    pub fn ensure_vertices(&mut self, n: usize) {
        if n > self.adj.len() {
            self.adj.resize(n, BTreeSet::new());
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adj[u].insert(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(), m: self.m }
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_unsorted(mut ids: Vec<Vertex>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_unsorted(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

/// An induced subgraph together with the map from local ids back to host ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub to_host: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn host_id(&self, local: Vertex) -> Vertex {
        self.to_host[local]
    }

    pub fn local_id(&self, host: Vertex) -> Option<Vertex> {
        self.to_host.binary_search(&host).ok()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Collapse repeated edge lines instead of rejecting them.
    pub dedup: bool,
}

/// Parses whitespace-separated edge lines. `#` starts a comment; a
/// `# n=<count>` comment fixes the vertex count so isolated vertices survive.
pub fn parse_edge_list(text: &str, opts: ParseOptions) -> Result<Graph, ParseError> {
    let mut header_n = 0usize;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(count) = comment.trim().strip_prefix("n=") {
                header_n = count.trim().parse().map_err(|_| ParseError::Malformed(lineno))?;
            }
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(ParseError::Malformed(lineno));
        };
        let u: Vertex = a.parse().map_err(|_| ParseError::Malformed(lineno))?;
        let v: Vertex = b.parse().map_err(|_| ParseError::Malformed(lineno))?;
        edges.push((lineno, u, v));
    }
    let n = edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0).max(header_n);
    collect_edges(n, edges, opts)
}

/// Parses DIMACS-flavoured input: `c` comments, one `p edge n m` header and
/// `e u v` lines with 1-based ids.
pub fn parse_dimacs(text: &str, opts: ParseOptions) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut it = raw.split_whitespace();
        match it.next() {
            None | Some("c") => continue,
            Some(t) if t.starts_with('c') || t.starts_with('#') => continue,
            Some("p") => {
                let (Some(_kind), Some(nv), Some(_m)) = (it.next(), it.next(), it.next()) else {
                    return Err(ParseError::Malformed(lineno));
                };
                if n.is_some() {
                    return Err(ParseError::Malformed(lineno));
                }
                n = Some(nv.parse::<usize>().map_err(|_| ParseError::Malformed(lineno))?);
            }
            Some("e") => {
                let total = n.ok_or(ParseError::Malformed(lineno))?;
                let (Some(a), Some(b)) = (it.next(), it.next()) else {
                    return Err(ParseError::Malformed(lineno));
                };
                let u: usize = a.parse().map_err(|_| ParseError::Malformed(lineno))?;
                let v: usize = b.parse().map_err(|_| ParseError::Malformed(lineno))?;
                if u == 0 || v == 0 || u > total || v > total {
                    return Err(ParseError::Malformed(lineno));
                }
                edges.push((lineno, u - 1, v - 1));
            }
            Some(_) => return Err(ParseError::Malformed(lineno)),
        }
    }
    collect_edges(n.unwrap_or(0), edges, opts)
}

/// Picks DIMACS when a `p` header line is present, plain edge list otherwise.
pub fn parse_graph(text: &str, opts: ParseOptions) -> Result<Graph, ParseError> {
    let dimacs = text.lines().any(|l| l.trim_start().starts_with("p "));
    if dimacs {
        parse_dimacs(text, opts)
    } else {
        parse_edge_list(text, opts)
    }
}

fn collect_edges(
    n: usize,
    edges: Vec<(usize, Vertex, Vertex)>,
    opts: ParseOptions,
) -> Result<Graph, ParseError> {
    let mut b = GraphBuilder::new(n);
    for (lineno, u, v) in edges {
        match b.add_edge(u, v) {
            Ok(()) => {}
            Err(GraphError::SelfLoop(_)) => return Err(ParseError::SelfLoop(lineno)),
            Err(GraphError::DuplicateEdge(..)) if opts.dedup => {}
            Err(GraphError::DuplicateEdge(..)) => return Err(ParseError::DuplicateEdge(lineno)),
            Err(_) => return Err(ParseError::Malformed(lineno)),
        }
    }
    Ok(b.build())
}

/// Writes `# n=<count>` followed by one sorted `u v` line per edge.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
