//! The end-to-end extraction: from a non-bipartite 2-connected graph to a run
//! of cycles whose lengths are consecutive odd numbers.
//!
//! The pipeline builds a cut subgraph `G_b`, a monochromatic edge `xy`, the
//! BFS tree `T` of `G_b` rooted at `x`, the odd cycle `D` closed by `xy`, a
//! chorded cycle `C` inside a dense pair of consecutive layers, and the
//! minimal subtree `T'` (root `z`, depth `j`) spanning `C`'s lower-layer
//! vertices. Two cases follow depending on whether `D` meets `C ∪ T'` away
//! from `z`. In each, paths of `t` consecutive lengths inside `C` (from the
//! path lemma) are closed up by one connector of fixed length and parity,
//! producing `t` cycles of consecutive odd lengths.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{
    self, base_odd_cycle, bfs_layering, chorded_cycle, layer_pair, layer_pair_densities,
    local_search_bipartition, steiner_subtree, BfsLayering, ChordedCycle, DecomposeError,
    SteinerSubtree,
};
use crate::flow::{two_disjoint_paths, Sources};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::invariants::{bipartite_check, girth, is_two_connected, BipartiteWitness, TwoConnectivity};
use crate::path_lemma::{ab_paths_of_length, even_ab_paths_up_to, odd_w_paths_up_to, PathLemmaError, PathRecord};

/// Average-degree constant under which the theorem is proved.
pub const DEFAULT_C: u64 = 456;

/// Closing edges tried in relaxed mode before giving up on a longer cycle.
const RELAXED_CLOSURE_EDGES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Enforce `avg_degree >= c * k` and refuse to under-deliver.
    Strict,
    /// Run on any input and report what was achieved.
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionConfig {
    pub k: u64,
    pub c: u64,
    pub mode: Mode,
}

impl ExtractionConfig {
    pub fn strict(k: u64) -> Self {
        ExtractionConfig { k, c: DEFAULT_C, mode: Mode::Strict }
    }

    pub fn relaxed(k: u64) -> Self {
        ExtractionConfig { k, c: DEFAULT_C, mode: Mode::Relaxed }
    }

    /// `k^⌊(g-1)/2⌋`, saturating.
    pub fn target_count(&self, girth: usize) -> u64 {
        let exp = (girth.saturating_sub(1) / 2) as u32;
        self.k.saturating_pow(exp)
    }
}

/// Which branch of the construction produced the cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseKind {
    /// `k = 1`: the base odd cycle alone.
    Base,
    /// `D` avoids the hub; the second connector starts inside the subtree.
    OneA,
    /// `D` avoids the hub; the second connector starts on the cycle.
    OneB,
    /// `D` meets the hub; the meeting vertex is in the subtree.
    TwoA,
    /// `D` meets the hub; the meeting vertex is on the cycle.
    TwoB,
}

impl CaseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseKind::Base => "base",
            CaseKind::OneA => "1a",
            CaseKind::OneB => "1b",
            CaseKind::TwoA => "2a",
            CaseKind::TwoB => "2b",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the connector paths `P` (from `z`) and `Q` were obtained in case 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Routing {
    /// The flow already started one path at `z`.
    Direct,
    /// The tree path from `z` to `D` was spliced onto one flow path.
    SplicedThroughTree,
    /// Splicing failed its check; a flow forced to start one unit at `z` was used.
    AnchoredFlow,
    /// `z` lies on `D`, so `P` is the single vertex `z`.
    RootOnBaseCycle,
}

/// Every intermediate object of one extraction, kept for debugging.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseTrace {
    pub closure_edge: Option<(Vertex, Vertex)>,
    pub base_cycle: Vec<Vertex>,
    pub layer_index: Option<usize>,
    pub chorded_cycle: Option<ChordedCycle>,
    pub steiner_root: Option<Vertex>,
    pub steiner_depth: Option<usize>,
    pub w: Option<Vertex>,
    pub p_path: Option<Vec<Vertex>>,
    pub q_path: Option<Vec<Vertex>>,
    /// The fixed closing path shared by all emitted cycles.
    pub connector: Option<Vec<Vertex>>,
    pub routing: Option<Routing>,
    /// Candidate (closing edge, layer pair) combinations examined.
    pub attempts: usize,
    pub notes: Vec<String>,
}

/// A simple cycle as a vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    /// Sorted by length; lengths step by 2 through odd numbers.
    pub cycles: Vec<Cycle>,
    pub t_target: u64,
    pub t_achieved: u64,
    pub case: CaseKind,
    pub trace: CaseTrace,
}

impl ExtractionResult {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Cycle::len).collect()
    }

    pub fn to_record(&self) -> ResultRecord {
        ResultRecord {
            t_target: self.t_target,
            t_achieved: self.t_achieved,
            case: self.case.as_str().to_string(),
            cycles: self
                .cycles
                .iter()
                .map(|c| CycleRecord { length: c.len(), vertices: c.vertices.clone() })
                .collect(),
        }
    }
}

/// Wire form of a result. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub t_target: u64,
    pub t_achieved: u64,
    pub case: String,
    pub cycles: Vec<CycleRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub length: usize,
    pub vertices: Vec<Vertex>,
}

/// Failures inside the case 1 / case 2 assembly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("case hypothesis violated: {0}")]
    CaseHypothesisViolated(&'static str),
    #[error("no two disjoint connector paths (graph not 2-connected?)")]
    NoTwoDisjointPaths,
    #[error("rerouting the connector through the tree path failed")]
    ReroutingFailed,
    #[error("no path of length {0} in the chorded cycle")]
    AtlasIncomplete(usize),
    #[error("every candidate path of length {0} overlaps the connector")]
    AssemblyOverlap(usize),
    #[error("connector parity does not make cycle lengths odd")]
    ParityMismatch,
    #[error(transparent)]
    PathLemma(#[from] PathLemmaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("graph is bipartite")]
    Bipartite(BipartiteWitness),
    #[error("graph is not 2-connected: {0:?}")]
    NotTwoConnected(TwoConnectivity),
    #[error("average degree {average} is below {required}")]
    DegreeTooLow { average: Ratio<u64>, required: u64 },
    #[error("no chorded cycle found in any dense layer pair")]
    NoChordFound { trace: Box<CaseTrace> },
    #[error("found {achieved} cycles, strict mode requires {target}")]
    Underdelivered { target: u64, achieved: u64, trace: Box<CaseTrace> },
    #[error("assembly failed: {error}")]
    Assembly { error: AssemblyError, trace: Box<CaseTrace> },
    #[error("emitted cycles failed verification: {0:?}")]
    Unverified(Vec<VerifyFailure>),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

impl ExtractError {
    /// Failures of the theorem's hypotheses, as opposed to failures to
    /// deliver on an admissible input.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            ExtractError::Bipartite(_) | ExtractError::NotTwoConnected(_) | ExtractError::DegreeTooLow { .. }
        )
    }

    /// Short machine-readable reason.
    pub fn reason(&self) -> String {
        match self {
            ExtractError::InvalidConfig(m) => format!("invalid config: {m}"),
            ExtractError::Bipartite(_) => "bipartite".into(),
            ExtractError::NotTwoConnected(TwoConnectivity::CutVertex(v)) => format!("cut vertex {v}"),
            ExtractError::NotTwoConnected(TwoConnectivity::TooSmall { n }) => format!("too small: {n} vertices"),
            ExtractError::NotTwoConnected(TwoConnectivity::Disconnected { components }) => {
                format!("disconnected: {components} components")
            }
            ExtractError::NotTwoConnected(TwoConnectivity::TwoConnected) => "not 2-connected".into(),
            ExtractError::DegreeTooLow { average, required } => {
                format!("average degree {average} below {required}")
            }
            ExtractError::NoChordFound { .. } => "no chorded cycle".into(),
            ExtractError::Underdelivered { target, achieved, .. } => {
                format!("under-delivered: {achieved} of {target}")
            }
            ExtractError::Assembly { error, .. } => format!("assembly: {error}"),
            ExtractError::Unverified(_) => "verification failed".into(),
            ExtractError::Decompose(e) => format!("decompose: {e}"),
        }
    }

    pub fn trace(&self) -> Option<&CaseTrace> {
        match self {
            ExtractError::NoChordFound { trace }
            | ExtractError::Underdelivered { trace, .. }
            | ExtractError::Assembly { trace, .. } => Some(trace),
            _ => None,
        }
    }
}

/// The two connector paths of case 1: `p_path` from `z` to `D`, `q_path`
/// from another hub vertex `w` to a different vertex of `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectors {
    pub p_path: Vec<Vertex>,
    pub q_path: Vec<Vertex>,
    pub routing: Routing,
}

impl Connectors {
    pub fn w(&self) -> Vertex {
        self.q_path[0]
    }
}

/// Builds `P` and `Q` for case 1. First a plain unit-capacity flow from the
/// hub to `D`; if neither path starts at `z`, the tree path from `z` up to
/// `D` is spliced into the first flow path it meets; if that fails its
/// checks, a flow with one unit forced through `z` decides.
pub fn disjoint_connector_paths(
    g: &Graph,
    hub: &VertexSet,
    z: Vertex,
    d_cycle: &[Vertex],
    layering: &BfsLayering,
) -> Result<Connectors, AssemblyError> {
    let n = g.n();
    if !hub.contains(z) {
        return Err(AssemblyError::CaseHypothesisViolated("z must belong to the hub"));
    }
    if d_cycle.iter().any(|&v| v != z && hub.contains(v)) {
        return Err(AssemblyError::CaseHypothesisViolated("D meets the hub away from z"));
    }
    let others: Vec<Vertex> = hub.iter().filter(|&v| v != z).collect();
    if others.is_empty() {
        return Err(AssemblyError::CaseHypothesisViolated("hub has no vertex besides z"));
    }
    let mut in_d = vec![false; n];
    for &v in d_cycle {
        in_d[v] = true;
    }
    let mut blocked = in_d.clone();
    for v in hub.iter() {
        blocked[v] = true;
    }

    if in_d[z] {
        let q = shortest_set_path(g, &others, |v| in_d[v] && v != z, &blocked)
            .ok_or(AssemblyError::NoTwoDisjointPaths)?;
        let conn = Connectors { p_path: vec![z], q_path: q, routing: Routing::RootOnBaseCycle };
        return check_connectors(&conn, hub, z, &in_d).then_some(conn).ok_or(AssemblyError::ReroutingFailed);
    }

    let all: Vec<Vertex> = hub.iter().collect();
    let [p1, p2] = two_disjoint_paths(g, Sources::Any(&all), &in_d, &blocked).ok_or(AssemblyError::NoTwoDisjointPaths)?;
    let direct = if p1[0] == z {
        Some(Connectors { p_path: p1.clone(), q_path: p2.clone(), routing: Routing::Direct })
    } else if p2[0] == z {
        Some(Connectors { p_path: p2.clone(), q_path: p1.clone(), routing: Routing::Direct })
    } else {
        splice_tree_path(layering, z, &in_d, &p1, &p2)
    };
    if let Some(conn) = direct {
        if check_connectors(&conn, hub, z, &in_d) {
            return Ok(conn);
        }
    }
    let [a, b] = two_disjoint_paths(g, Sources::Anchored { anchor: z, rest: &others }, &in_d, &blocked)
        .ok_or(AssemblyError::ReroutingFailed)?;
    let (p, q) = if a[0] == z { (a, b) } else { (b, a) };
    let conn = Connectors { p_path: p, q_path: q, routing: Routing::AnchoredFlow };
    check_connectors(&conn, hub, z, &in_d).then_some(conn).ok_or(AssemblyError::ReroutingFailed)
}

/// Follows the tree path from `z` toward the root until it first meets a
/// flow path or `D`, and reroutes through it.
fn splice_tree_path(
    layering: &BfsLayering,
    z: Vertex,
    in_d: &[bool],
    p1: &[Vertex],
    p2: &[Vertex],
) -> Option<Connectors> {
    let mut tree_path = vec![z];
    let mut cur = z;
    loop {
        cur = layering.parent[cur]?;
        tree_path.push(cur);
        let hit = |p: &[Vertex]| p.iter().position(|&v| v == cur);
        if let Some(i) = hit(p1) {
            tree_path.extend_from_slice(&p1[i + 1..]);
            return Some(Connectors { p_path: tree_path, q_path: p2.to_vec(), routing: Routing::SplicedThroughTree });
        }
        if let Some(i) = hit(p2) {
            tree_path.extend_from_slice(&p2[i + 1..]);
            return Some(Connectors { p_path: tree_path, q_path: p1.to_vec(), routing: Routing::SplicedThroughTree });
        }
        if in_d[cur] {
            // Neither flow path touches cur, so both end elsewhere on D.
            return Some(Connectors { p_path: tree_path, q_path: p1.to_vec(), routing: Routing::SplicedThroughTree });
        }
    }
}

fn check_connectors(conn: &Connectors, hub: &VertexSet, z: Vertex, in_d: &[bool]) -> bool {
    let (p, q) = (&conn.p_path, &conn.q_path);
    let (Some(&pe), Some(&qe)) = (p.last(), q.last()) else { return false };
    let interior_ok = |path: &[Vertex]| {
        path.len() < 3 || path[1..path.len() - 1].iter().all(|&v| !hub.contains(v) && !in_d[v])
    };
    let mut seen = std::collections::HashSet::new();
    p[0] == z
        && q[0] != z
        && hub.contains(q[0])
        && in_d[pe]
        && in_d[qe]
        && pe != qe
        && interior_ok(p)
        && interior_ok(q)
        && p.iter().chain(q.iter()).all(|&v| seen.insert(v))
}

/// Shortest path from any vertex of `sources` to a vertex accepted by
/// `is_target`, with an interior avoiding `blocked`.
fn shortest_set_path<F: Fn(Vertex) -> bool>(
    g: &Graph,
    sources: &[Vertex],
    is_target: F,
    blocked: &[bool],
) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            prev[v] = u;
            if is_target(v) {
                let mut path = vec![v];
                let mut cur = v;
                while prev[cur] != usize::MAX {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if !blocked[v] {
                queue.push_back(v);
            }
        }
    }
    None
}

/// The two arcs of cycle `d` from position `from` to position `to`:
/// increasing positions first, decreasing second.
fn cycle_arcs(d: &[Vertex], from: usize, to: usize) -> [Vec<Vertex>; 2] {
    let n = d.len();
    let mut fwd = vec![d[from]];
    let mut i = from;
    while i != to {
        i = (i + 1) % n;
        fwd.push(d[i]);
    }
    let mut bwd = vec![d[from]];
    let mut i = from;
    while i != to {
        i = (i + n - 1) % n;
        bwd.push(d[i]);
    }
    [fwd, bwd]
}

/// Concatenates paths that share endpoints into a closed vertex order.
fn close_up(segments: &[&[Vertex]]) -> Option<Vec<Vertex>> {
    let mut walk: Vec<Vertex> = segments.first()?.to_vec();
    for seg in &segments[1..] {
        if walk.last() != seg.first() {
            return None;
        }
        walk.extend_from_slice(&seg[1..]);
    }
    if walk.len() < 2 || walk.first() != walk.last() {
        return None;
    }
    walk.pop();
    Some(walk)
}

fn is_simple_cycle_in(g: &Graph, c: &[Vertex]) -> bool {
    crate::invariants::is_simple_cycle(g, c)
}

/// Shared data for both cases.
struct Frame<'a> {
    g: &'a Graph,
    cycle: &'a ChordedCycle,
    tree: &'a SteinerSubtree,
    d: &'a [Vertex],
    t: usize,
}

impl Frame<'_> {
    fn hub(&self) -> VertexSet {
        self.cycle.vertex_set().union(&self.tree.vertices)
    }

    /// Even `(A, V(C) - A)`-paths of lengths `2..=2t`, each closed through the
    /// leaf-to-root subtree paths and `closing` (a path from `z` to `w`).
    fn even_family(&self, w: Vertex, closing: &[Vertex]) -> Result<Vec<Cycle>, AssemblyError> {
        let z = self.tree.root;
        let a_set = self.tree.leaves_under(w);
        let b_set = self.cycle.vertex_set().difference(&a_set);
        let atlas = even_ab_paths_up_to(self.cycle, &a_set, &b_set, 2 * self.t)?;
        let mut out = Vec::with_capacity(self.t);
        for len in (2..=2 * self.t).step_by(2) {
            let preferred = atlas.get(len).cloned().ok_or(AssemblyError::AtlasIncomplete(len))?;
            let build = |path: &PathRecord| -> Option<Vec<Vertex>> {
                let (a, b) = (path.first(), path.last());
                let up_b = self.tree.path_to(b, z)?;
                let mut down_a = self.tree.path_to(a, w)?;
                down_a.reverse();
                close_up(&[&path.vertices, &up_b, closing, &down_a])
            };
            let cyc = self.first_simple(&preferred, &a_set, &b_set, len, build)?;
            out.push(Cycle { vertices: cyc });
        }
        Ok(out)
    }

    /// Odd `(w, ·)`-paths of lengths `1..=2t+1`, climbed to `z` and closed by
    /// `closing` (a path from `z` back to `w`).
    fn odd_family(&self, w: Vertex, closing: &[Vertex]) -> Result<Vec<Cycle>, AssemblyError> {
        let z = self.tree.root;
        let atlas = odd_w_paths_up_to(self.cycle, w, 2 * self.t + 1)?;
        let a_set: VertexSet = [w].into_iter().collect();
        let b_set = self.cycle.vertex_set().difference(&a_set);
        let mut out = Vec::with_capacity(self.t + 1);
        for len in (1..=2 * self.t + 1).step_by(2) {
            let preferred = atlas.get(len).cloned().ok_or(AssemblyError::AtlasIncomplete(len))?;
            let build = |path: &PathRecord| -> Option<Vec<Vertex>> {
                let up = self.tree.path_to(path.last(), z)?;
                close_up(&[&path.vertices, &up, closing])
            };
            let cyc = self.first_simple(&preferred, &a_set, &b_set, len, build)?;
            out.push(Cycle { vertices: cyc });
        }
        Ok(out)
    }

    fn first_simple<F: Fn(&PathRecord) -> Option<Vec<Vertex>>>(
        &self,
        preferred: &PathRecord,
        a_set: &VertexSet,
        b_set: &VertexSet,
        len: usize,
        build: F,
    ) -> Result<Vec<Vertex>, AssemblyError> {
        if let Some(c) = build(preferred).filter(|c| is_simple_cycle_in(self.g, c)) {
            return Ok(c);
        }
        for alt in ab_paths_of_length(self.cycle, a_set, b_set, len)? {
            if let Some(c) = build(&alt).filter(|c| is_simple_cycle_in(self.g, c)) {
                return Ok(c);
            }
        }
        Err(AssemblyError::AssemblyOverlap(len))
    }
}

/// Case output: which subcase ran, the cycles, and the connector used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub case: CaseKind,
    pub cycles: Vec<Cycle>,
    pub w: Vertex,
    pub connector: Vec<Vertex>,
    pub notes: Vec<String>,
}

/// Case 1: `D` avoids `C ∪ T'` except possibly at `z`. The connector from `z`
/// to `w` is `P`, an arc `R` of `D`, and `Q` reversed; `R` is the arc whose
/// length makes every assembled cycle odd.
pub fn case1_cycles(
    g: &Graph,
    cycle: &ChordedCycle,
    tree: &SteinerSubtree,
    d_cycle: &[Vertex],
    conn: &Connectors,
    t: usize,
) -> Result<Assembly, AssemblyError> {
    let frame = Frame { g, cycle, tree, d: d_cycle, t };
    let z = tree.root;
    let hub = frame.hub();
    if frame.d.iter().any(|&v| v != z && hub.contains(v)) {
        return Err(AssemblyError::CaseHypothesisViolated("D meets the hub away from z"));
    }
    let w = conn.w();
    if w == z || !hub.contains(w) {
        return Err(AssemblyError::CaseHypothesisViolated("w must be a hub vertex other than z"));
    }
    let pos = |v| frame.d.iter().position(|&u| u == v);
    let (Some(pp), Some(qp)) = (conn.p_path.last().and_then(|&p| pos(p)), conn.q_path.last().and_then(|&q| pos(q)))
    else {
        return Err(AssemblyError::CaseHypothesisViolated("connectors must end on D"));
    };
    let arcs = cycle_arcs(frame.d, pp, qp);
    // |D| is odd, so the two arcs between distinct vertices differ in parity.
    assert_ne!(arcs[0].len() % 2, arcs[1].len() % 2, "arcs of an odd cycle have opposite parities");

    let p_len = conn.p_path.len() - 1;
    let q_len = conn.q_path.len() - 1;
    let mut q_rev = conn.q_path.clone();
    q_rev.reverse();
    let j = tree.depth;

    let (case, fixed, even_paths) = if tree.contains(w) {
        let down = tree.path_to_root(w).len() - 1;
        (CaseKind::OneA, j + p_len + q_len + (j - down), true)
    } else if cycle.contains(w) {
        (CaseKind::OneB, j + p_len + q_len, false)
    } else {
        return Err(AssemblyError::CaseHypothesisViolated("w outside C and T'"));
    };
    // Cycle length = atlas length + fixed + |R|; even atlas lengths need an
    // odd remainder, odd atlas lengths an even one.
    let want = usize::from(even_paths);
    let r = arcs.into_iter().find(|a| (fixed + a.len() - 1) % 2 == want).expect("one arc has each parity");
    let connector = close_open(&[&conn.p_path, &r, &q_rev]);
    let cycles = if even_paths { frame.even_family(w, &connector)? } else { frame.odd_family(w, &connector)? };
    Ok(Assembly { case, cycles, w, connector, notes: Vec::new() })
}

fn close_open(segments: &[&[Vertex]]) -> Vec<Vertex> {
    let mut walk = segments[0].to_vec();
    for seg in &segments[1..] {
        debug_assert_eq!(walk.last(), seg.first());
        walk.extend_from_slice(&seg[1..]);
    }
    walk
}

/// Case 2: `D` meets `C ∪ T'` away from `z`. `w` is the meeting vertex
/// closest to `y` along `D`; the connector is the part of `D` from `z` to `w`
/// avoiding the tree segment between them. When `w` is on `C` and `z` is off
/// `D`, the connector is the tree path from `z` up to `D` followed by the arc
/// of `D` to `w` with the right parity.
pub fn case2_cycles(
    g: &Graph,
    cycle: &ChordedCycle,
    tree: &SteinerSubtree,
    d_cycle: &[Vertex],
    layering: &BfsLayering,
    t: usize,
) -> Result<Assembly, AssemblyError> {
    let frame = Frame { g, cycle, tree, d: d_cycle, t };
    let z = tree.root;
    let hub = frame.hub();
    // D lists the root path to y, so index equals BFS depth.
    let Some(iw) = (0..frame.d.len()).rev().find(|&i| frame.d[i] != z && hub.contains(frame.d[i])) else {
        return Err(AssemblyError::CaseHypothesisViolated("D avoids the hub away from z"));
    };
    let w = frame.d[iw];
    let j = tree.depth;
    let mut notes = Vec::new();

    if tree.contains(w) {
        let iz = frame.d.iter().position(|&v| v == z).expect("z is an ancestor of w, hence on D");
        let [tree_arc, connector] = cycle_arcs(frame.d, iz, iw);
        if tree.path_to(w, z).map(|mut p| { p.reverse(); p }) != Some(tree_arc) {
            return Err(AssemblyError::CaseHypothesisViolated("tree segment z..w is not on D"));
        }
        let down = iw - iz;
        if (j + connector.len() - 1 + (j - down)) % 2 != 1 {
            return Err(AssemblyError::ParityMismatch);
        }
        let cycles = frame.even_family(w, &connector)?;
        return Ok(Assembly { case: CaseKind::TwoA, cycles, w, connector, notes });
    }
    if !cycle.contains(w) {
        return Err(AssemblyError::CaseHypothesisViolated("w outside C and T'"));
    }

    let connector = if let Some(iz) = frame.d.iter().position(|&v| v == z) {
        // z is an ancestor of w; the far arc has length |D| - (j + 1).
        let [_, connector] = cycle_arcs(frame.d, iz, iw);
        connector
    } else {
        // No subtree vertex lies above w, so D meets the hub only at w.
        let mut up = vec![z];
        let mut cur = z;
        while !frame.d.contains(&cur) {
            cur = layering.parent[cur].expect("root lies on D");
            up.push(cur);
        }
        let ip = frame.d.iter().position(|&v| v == cur).unwrap();
        let arcs = cycle_arcs(frame.d, ip, iw);
        let r = arcs
            .into_iter()
            .find(|a| (j + up.len() - 1 + a.len() - 1).is_multiple_of(2))
            .expect("one arc has each parity");
        notes.push(format!("z={z} is not an ancestor of w={w}; closed via tree path to D at {cur}"));
        close_open(&[&up, &r])
    };
    if !(j + connector.len() - 1).is_multiple_of(2) {
        return Err(AssemblyError::ParityMismatch);
    }
    let cycles = frame.odd_family(w, &connector)?;
    Ok(Assembly { case: CaseKind::TwoB, cycles, w, connector, notes })
}

struct Candidate {
    edge: (Vertex, Vertex),
    layering: BfsLayering,
    d: Vec<Vertex>,
    layer_index: usize,
    cycle: ChordedCycle,
}

/// Runs the whole construction. Hypotheses are checked first, then the
/// pipeline searches for a chorded cycle of at least `2(t+1)` vertices, where
/// `t = k^⌊(g-1)/2⌋` and `g` is the girth. Strict mode uses only the
/// smallest monochromatic edge and the densest layer pair; relaxed mode also
/// tries further closing edges and layer pairs, keeping the first long enough
/// cycle or else the longest one, and caps `t` at `⌊(|C|-2)/2⌋`.
pub fn extract_consecutive_odd(g: &Graph, cfg: &ExtractionConfig) -> Result<ExtractionResult, ExtractError> {
    if cfg.k == 0 {
        return Err(ExtractError::InvalidConfig("k must be at least 1"));
    }
    if cfg.c == 0 {
        return Err(ExtractError::InvalidConfig("c must be at least 1"));
    }
    if !g.is_connected() {
        return Err(ExtractError::NotTwoConnected(is_two_connected(g)));
    }
    let witness = bipartite_check(g).map_err(|_| ExtractError::NotTwoConnected(is_two_connected(g)))?;
    if witness.is_bipartite() {
        return Err(ExtractError::Bipartite(witness));
    }
    let tc = is_two_connected(g);
    if !tc.is_two_connected() {
        return Err(ExtractError::NotTwoConnected(tc));
    }
    if cfg.mode == Mode::Strict {
        let average = g.average_degree().map_err(DecomposeError::from)?;
        let required = cfg.c.saturating_mul(cfg.k);
        if average < Ratio::from_integer(required) {
            return Err(ExtractError::DegreeTooLow { average, required });
        }
    }

    let girth = girth(g).expect("non-bipartite graphs have cycles");
    let t_target = cfg.target_count(girth);
    let bipartition = local_search_bipartition(g)?;
    let gb = bipartition.cut_subgraph(g);
    let mut trace = CaseTrace::default();

    if t_target == 1 {
        let edge = decompose::find_odd_closure_edge(g, &bipartition)?;
        let layering = bfs_layering(&gb, edge.0)?;
        let d = base_odd_cycle(&layering, g, edge)?;
        trace.closure_edge = Some(edge);
        trace.base_cycle = d.clone();
        let result = ExtractionResult {
            cycles: vec![Cycle { vertices: d }],
            t_target,
            t_achieved: 1,
            case: CaseKind::Base,
            trace,
        };
        return finish(g, cfg, result);
    }

    let min_len = usize::try_from(t_target).unwrap_or(usize::MAX).saturating_add(1).saturating_mul(2);
    let edges: Vec<(Vertex, Vertex)> = match cfg.mode {
        Mode::Strict => bipartition.monochromatic_edges(g).take(1).collect(),
        Mode::Relaxed => bipartition.monochromatic_edges(g).take(RELAXED_CLOSURE_EDGES).collect(),
    };
    let mut best: Option<Candidate> = None;
    'search: for &edge in &edges {
        let layering = bfs_layering(&gb, edge.0)?;
        let d = base_odd_cycle(&layering, g, edge)?;
        if trace.closure_edge.is_none() {
            trace.closure_edge = Some(edge);
            trace.base_cycle = d.clone();
        }
        let dens = layer_pair_densities(&layering, &gb);
        let mut order: Vec<usize> = (0..dens.len()).collect();
        order.sort_by(|&a, &b| dens[b].cmp(&dens[a]).then(a.cmp(&b)));
        if cfg.mode == Mode::Strict {
            order.truncate(1);
        }
        for i in order {
            trace.attempts += 1;
            let pair = layer_pair(&layering, &gb, i)?;
            let local = match chorded_cycle(&pair.layer_graph.graph, min_len) {
                Ok(c) => c,
                Err(DecomposeError::NoChordFound | DecomposeError::TooSparse) => continue,
                Err(e) => return Err(e.into()),
            };
            let cycle = local.map_vertices(|v| pair.layer_graph.host_id(v));
            let long_enough = cycle.len() >= min_len;
            if best.as_ref().is_none_or(|b| cycle.len() > b.cycle.len()) {
                best = Some(Candidate { edge, layering: layering.clone(), d: d.clone(), layer_index: i, cycle });
            }
            if long_enough {
                break 'search;
            }
        }
    }
    let Some(found) = best else {
        return Err(ExtractError::NoChordFound { trace: Box::new(trace) });
    };
    let Candidate { edge, layering, d, layer_index, cycle } = found;
    trace.closure_edge = Some(edge);
    trace.base_cycle = d.clone();
    trace.layer_index = Some(layer_index);
    trace.chorded_cycle = Some(cycle.clone());

    let t_cap = (cycle.len() as u64 - 2) / 2;
    let t = t_target.min(t_cap);
    if cfg.mode == Mode::Strict && t < t_target {
        return Err(ExtractError::Underdelivered { target: t_target, achieved: t, trace: Box::new(trace) });
    }
    let t = t as usize;

    let leaves: VertexSet = cycle.vertices().iter().copied().filter(|&v| layering.depth[v] == layer_index).collect();
    let tree = steiner_subtree(&layering, &leaves)?;
    trace.steiner_root = Some(tree.root);
    trace.steiner_depth = Some(tree.depth);
    let hub = cycle.vertex_set().union(&tree.vertices);
    let z = tree.root;
    let d_meets_hub = d.iter().any(|&v| v != z && hub.contains(v));

    let assembled = if d_meets_hub {
        case2_cycles(g, &cycle, &tree, &d, &layering, t)
    } else {
        disjoint_connector_paths(g, &hub, z, &d, &layering).and_then(|conn| {
            trace.p_path = Some(conn.p_path.clone());
            trace.q_path = Some(conn.q_path.clone());
            trace.routing = Some(conn.routing);
            case1_cycles(g, &cycle, &tree, &d, &conn, t)
        })
    };
    let assembly = match assembled {
        Ok(a) => a,
        Err(error) => return Err(ExtractError::Assembly { error, trace: Box::new(trace) }),
    };
    trace.w = Some(assembly.w);
    trace.connector = Some(assembly.connector);
    trace.notes.extend(assembly.notes);
    let mut cycles = assembly.cycles;
    cycles.sort_by_key(Cycle::len);
    let result = ExtractionResult {
        t_achieved: cycles.len() as u64,
        cycles,
        t_target,
        case: assembly.case,
        trace,
    };
    finish(g, cfg, result)
}

fn finish(g: &Graph, cfg: &ExtractionConfig, result: ExtractionResult) -> Result<ExtractionResult, ExtractError> {
    let report = verify_result(g, &result);
    if !report.passed() {
        return Err(ExtractError::Unverified(report.failures));
    }
    if cfg.mode == Mode::Strict && result.t_achieved < result.t_target {
        return Err(ExtractError::Underdelivered {
            target: result.t_target,
            achieved: result.t_achieved,
            trace: Box::new(result.trace),
        });
    }
    Ok(result)
}

/// One problem found by [`verify_record`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    CountMismatch { declared: u64, found: usize },
    LengthMismatch { index: usize, declared: usize, found: usize },
    VertexOutOfRange { index: usize, vertex: Vertex },
    NotSimple { index: usize },
    NotAnEdge { index: usize, u: Vertex, v: Vertex },
    TooShort { index: usize },
    EvenLength { index: usize, length: usize },
    NotConsecutive { index: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_result(g: &Graph, r: &ExtractionResult) -> VerifyReport {
    verify_record(g, &r.to_record())
}

/// Re-checks a result record against the graph using only adjacency
/// lookups: each cycle simple and present, lengths odd, increasing by 2, and
/// the declared count matching.
pub fn verify_record(g: &Graph, r: &ResultRecord) -> VerifyReport {
    let mut failures = Vec::new();
    if r.cycles.len() as u64 != r.t_achieved {
        failures.push(VerifyFailure::CountMismatch { declared: r.t_achieved, found: r.cycles.len() });
    }
    for (index, c) in r.cycles.iter().enumerate() {
        let vs = &c.vertices;
        if c.length != vs.len() {
            failures.push(VerifyFailure::LengthMismatch { index, declared: c.length, found: vs.len() });
        }
        if let Some(&vertex) = vs.iter().find(|&&v| v >= g.n()) {
            failures.push(VerifyFailure::VertexOutOfRange { index, vertex });
            continue;
        }
        if vs.len() < 3 {
            failures.push(VerifyFailure::TooShort { index });
            continue;
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            failures.push(VerifyFailure::NotSimple { index });
        }
        for i in 0..vs.len() {
            let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
            if !g.has_edge(u, v) {
                failures.push(VerifyFailure::NotAnEdge { index, u, v });
                break;
            }
        }
        if vs.len() % 2 == 0 {
            failures.push(VerifyFailure::EvenLength { index, length: vs.len() });
        }
        if index > 0 && vs.len() != r.cycles[index - 1].vertices.len() + 2 {
            failures.push(VerifyFailure::NotConsecutive { index });
        }
    }
    VerifyReport { failures }
}
