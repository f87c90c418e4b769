//! Exhaustive cycle counting, used as ground truth for everything the
//! extractor claims.
//!
//! Three engines: Johnson's elementary-circuit algorithm on the symmetric
//! digraph (each undirected cycle is kept in the orientation whose second
//! vertex is smaller than its last), length-bounded backtracking, and an
//! exact subset DP that counts Hamiltonian paths per vertex subset and never
//! lists cycles. The DP is the only one that copes with dense graphs such as
//! `K_{8,8}`, whose cycle count is in the hundreds of millions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Default enumeration cap.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Largest vertex count handled by the subset DP.
pub const SUBSET_DP_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
}

/// Cycle length to count, over all simple cycles found.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lengths: BTreeMap<usize, u64>,
    pub total: u64,
    /// Set when the cap stopped enumeration early; counts are then lower bounds.
    pub truncated: bool,
}

impl Spectrum {
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Self {
        let mut s = Spectrum::default();
        for l in lengths {
            s.record(l);
        }
        s
    }

    fn record(&mut self, len: usize) {
        *self.lengths.entry(len).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn contains(&self, len: usize) -> bool {
        self.lengths.contains_key(&len)
    }

    pub fn odd_lengths(&self) -> BTreeSet<usize> {
        self.lengths.keys().copied().filter(|l| l % 2 == 1).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub cap: u64,
    /// Only cycles with at most this many vertices.
    pub max_len: Option<usize>,
    /// Keep every cycle found as a vertex list.
    pub collect: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { cap: DEFAULT_CAP, max_len: None, collect: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub spectrum: Spectrum,
    /// Canonical form: smallest vertex first, smaller neighbor second.
    pub cycles: Option<Vec<Vec<Vertex>>>,
}

struct Sink {
    spectrum: Spectrum,
    cycles: Option<Vec<Vec<Vertex>>>,
    cap: u64,
}

impl Sink {
    /// Records a canonical cycle; false once the cap is exceeded.
    fn push(&mut self, path: &[Vertex]) -> bool {
        if self.spectrum.total >= self.cap {
            self.spectrum.truncated = true;
            return false;
        }
        self.spectrum.record(path.len());
        if let Some(list) = self.cycles.as_mut() {
            list.push(path.to_vec());
        }
        true
    }
}

/// Enumerates simple cycles, each once regardless of orientation and
/// rotation, stopping with `truncated` set if more than `cap` exist.
pub fn enumerate_cycles(g: &Graph, opts: EnumerateOptions) -> Enumeration {
    let mut sink = Sink {
        spectrum: Spectrum::default(),
        cycles: opts.collect.then(Vec::new),
        cap: opts.cap,
    };
    match opts.max_len {
        Some(max_len) => bounded(g, max_len, &mut sink),
        None => johnson(g, &mut sink),
    }
    Enumeration { spectrum: sink.spectrum, cycles: sink.cycles }
}

/// The full spectrum with the default cap.
pub fn cycle_spectrum(g: &Graph) -> Spectrum {
    enumerate_cycles(g, EnumerateOptions::default()).spectrum
}

struct Johnson<'a> {
    g: &'a Graph,
    start: Vertex,
    allowed: Vec<bool>,
    blocked: Vec<bool>,
    b: Vec<Vec<Vertex>>,
    stack: Vec<Vertex>,
    done: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: Vertex) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            work.append(&mut self.b[x]);
        }
    }

    fn circuit(&mut self, v: Vertex, sink: &mut Sink) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let g = self.g;
        for &w in g.neighbors(v) {
            if !self.allowed[w] {
                continue;
            }
            if w == self.start {
                found = true;
                let s = &self.stack;
                if s.len() >= 3 && s[1] < s[s.len() - 1] && !sink.push(s) {
                    self.done = true;
                }
            } else if !self.blocked[w] && self.circuit(w, sink) {
                found = true;
            }
            if self.done {
                break;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in g.neighbors(v) {
                if self.allowed[w] && !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }
}

fn johnson(g: &Graph, sink: &mut Sink) {
    let n = g.n();
    let mut state = Johnson {
        g,
        start: 0,
        allowed: vec![false; n],
        blocked: vec![false; n],
        b: vec![Vec::new(); n],
        stack: Vec::new(),
        done: false,
    };
    for s in 0..n {
        // In a symmetric digraph the strong component of s among vertices
        // >= s is its connected component there.
        state.allowed.iter_mut().for_each(|a| *a = false);
        state.allowed[s] = true;
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for &v in g.neighbors(u) {
                if v > s && !state.allowed[v] {
                    state.allowed[v] = true;
                    queue.push(v);
                }
            }
        }
        for v in 0..n {
            state.blocked[v] = false;
            state.b[v].clear();
        }
        state.start = s;
        state.circuit(s, sink);
        if state.done {
            return;
        }
    }
}

fn bounded(g: &Graph, max_len: usize, sink: &mut Sink) {
    fn dfs(g: &Graph, s: Vertex, max_len: usize, path: &mut Vec<Vertex>, on: &mut [bool], sink: &mut Sink) -> bool {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == s && path.len() >= 3 && path[1] < v {
                if !sink.push(path) {
                    return false;
                }
            } else if w > s && !on[w] && path.len() < max_len {
                on[w] = true;
                path.push(w);
                let go = dfs(g, s, max_len, path, on, sink);
                path.pop();
                on[w] = false;
                if !go {
                    return false;
                }
            }
        }
        true
    }
    let mut on = vec![false; g.n()];
    for s in g.vertices() {
        let mut path = vec![s];
        if !dfs(g, s, max_len, &mut path, &mut on, sink) {
            return;
        }
    }
}

/// Some simple cycle with exactly `len` vertices, by backtracking from each
/// smallest vertex in turn. Returns the first one found in that order.
pub fn cycle_of_length(g: &Graph, len: usize) -> Option<Vec<Vertex>> {
    fn dfs(g: &Graph, s: Vertex, len: usize, path: &mut Vec<Vertex>, on: &mut [bool]) -> bool {
        let v = *path.last().unwrap();
        if path.len() == len {
            return g.has_edge(v, s);
        }
        for &w in g.neighbors(v) {
            if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                if dfs(g, s, len, path, on) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    if len < 3 {
        return None;
    }
    let mut on = vec![false; g.n()];
    for s in g.vertices() {
        let mut path = vec![s];
        on[s] = true;
        if dfs(g, s, len, &mut path, &mut on) {
            return Some(path);
        }
        on[s] = false;
    }
    None
}

/// Exact length counts through a DP over vertex subsets: for each smallest
/// vertex `s`, `paths[mask][v]` counts paths from `s` to `v` through exactly
/// `mask` among the vertices above `s`. Needs `n <= SUBSET_DP_MAX_N`.
pub fn subset_spectrum(g: &Graph) -> Option<Spectrum> {
    let n = g.n();
    if n > SUBSET_DP_MAX_N {
        return None;
    }
    let mut counts = vec![0u128; n + 1];
    for s in 0..n {
        let k = n - s - 1;
        if k < 2 {
            continue;
        }
        // Bit i stands for vertex s+1+i.
        let adj: Vec<u32> = (0..k)
            .map(|i| g.neighbors(s + 1 + i).iter().filter(|&&u| u > s).fold(0, |m, &u| m | 1 << (u - s - 1)))
            .collect();
        let closes: u32 = g.neighbors(s).iter().filter(|&&u| u > s).fold(0, |m, &u| m | 1 << (u - s - 1));
        let mut paths = vec![0u64; (1usize << k) * k];
        for i in 0..k {
            if closes >> i & 1 == 1 {
                paths[(1 << i) * k + i] = 1;
            }
        }
        for mask in 1usize..1 << k {
            let size = mask.count_ones() as usize;
            for v in 0..k {
                let c = paths[mask * k + v];
                if c == 0 {
                    continue;
                }
                if size >= 2 && closes >> v & 1 == 1 {
                    counts[size + 1] += u128::from(c);
                }
                let mut next = adj[v] & !(mask as u32);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    paths[(mask | 1 << w) * k + w] += c;
                }
            }
        }
    }
    let mut s = Spectrum::default();
    for (len, &c) in counts.iter().enumerate() {
        if c > 0 {
            // Each cycle was counted once per direction.
            let c = u64::try_from(c / 2).unwrap_or(u64::MAX);
            s.lengths.insert(len, c);
            s.total = s.total.saturating_add(c);
        }
    }
    Some(s)
}

/// The subset DP when the graph is small enough, otherwise capped
/// enumeration.
pub fn spectrum(g: &Graph, cap: u64) -> Spectrum {
    subset_spectrum(g).unwrap_or_else(|| enumerate_cycles(g, EnumerateOptions { cap, ..Default::default() }).spectrum)
}

/// Expected number of cycles in `G(n, p)` with `p` the edge density of `g`:
/// the sum over `L` of `n!/(n-L)! / (2L) * p^L`.
pub fn estimated_cycle_count(g: &Graph) -> f64 {
    let n = g.n();
    if n < 3 {
        return 0.0;
    }
    let p = g.m() as f64 / (n * (n - 1) / 2) as f64;
    let mut total = 0.0;
    let mut falling = (n * (n - 1)) as f64 * p * p;
    for len in 3..=n {
        falling *= (n - len + 1) as f64 * p;
        total += falling / (2 * len) as f64;
    }
    total
}

/// `{ L mod k : L in s }`.
pub fn residue_coverage(s: &Spectrum, k: u64) -> Result<BTreeSet<u64>, OracleError> {
    if k < 2 {
        return Err(OracleError::BadModulus(k));
    }
    Ok(s.lengths.keys().map(|&l| l as u64 % k).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub modulus: u64,
    pub covered: BTreeSet<u64>,
    pub missing: BTreeSet<u64>,
}

impl ResidueReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn check_all_residues(s: &Spectrum, k: u64) -> Result<ResidueReport, OracleError> {
    let covered = residue_coverage(s, k)?;
    let missing = (0..k).filter(|r| !covered.contains(r)).collect();
    Ok(ResidueReport { modulus: k, covered, missing })
}

/// Longest run `l, l+2, ...` of odd lengths present in the spectrum.
pub fn longest_consecutive_odd_run(s: &Spectrum) -> usize {
    longest_odd_run(s.lengths.keys().copied())
}

/// [`longest_consecutive_odd_run`] over a plain collection of lengths.
pub fn longest_odd_run<I: IntoIterator<Item = usize>>(lengths: I) -> usize {
    let odd: BTreeSet<usize> = lengths.into_iter().filter(|l| l % 2 == 1).collect();
    let (mut best, mut run, mut prev) = (0, 0, None);
    for &l in &odd {
        run = if prev.is_some_and(|p| p + 2 == l) { run + 1 } else { 1 };
        best = best.max(run);
        prev = Some(l);
    }
    best
}
