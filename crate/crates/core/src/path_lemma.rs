//! `(A, B)`-paths of prescribed lengths inside a cycle with one chord.
//!
//! With a single chord every simple path in cycle-plus-chord is either an arc
//! of the cycle or an arc, the chord, and a second arc. Enumerating both
//! shapes is exact and costs `O(|C|²)` shapes for the full length range, or
//! `O(|C| · L + L²)` when lengths are capped at `L`. Candidates are described
//! by a handful of integers and only the per-length winner (lexicographically
//! smallest vertex sequence, oriented from `A` to `B`) is materialized.
//!
//! For every nontrivial partition `(A, B)` of the cycle's vertices that is not
//! the cycle's own 2-coloring, paths of every length `1..|C|` exist.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::decompose::ChordedCycle;
use crate::graph::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathLemmaError {
    #[error("sets do not partition the cycle's vertices into two nonempty parts")]
    NotAPartition,
    /// `(A, B)` is the cycle's 2-coloring. Carries the atlas that was found.
    #[error("partition is the cycle's bipartition")]
    BipartitionException { atlas: LengthAtlas },
    #[error("max length {max_len} must be below the cycle length {cycle_len}")]
    MaxLenTooLarge { max_len: usize, cycle_len: usize },
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(Vertex),
    #[error("path endpoint in the wrong color class")]
    ParityViolation,
}

/// A simple path, listed from its `A` end to its `B` end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathRecord {
    pub vertices: Vec<Vertex>,
}

impl PathRecord {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Re-checks simplicity and adjacency in cycle-plus-chord.
    pub fn is_valid_in(&self, c: &ChordedCycle) -> bool {
        let mut seen = std::collections::HashSet::new();
        let Some(pos): Option<Vec<usize>> = self.vertices.iter().map(|&v| c.position(v)).collect() else {
            return false;
        };
        if !self.vertices.iter().all(|v| seen.insert(*v)) {
            return false;
        }
        let n = c.len();
        let (ca, cb) = c.chord_positions();
        pos.windows(2).all(|w| {
            let (p, q) = (w[0], w[1]);
            (p + 1) % n == q || (q + 1) % n == p || (p.min(q), p.max(q)) == (ca, cb)
        })
    }
}

/// One path per length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LengthAtlas {
    pub paths: BTreeMap<usize, PathRecord>,
}

impl LengthAtlas {
    pub fn get(&self, len: usize) -> Option<&PathRecord> {
        self.paths.get(&len)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.paths.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Lengths in `1..=max` without a path.
    pub fn missing(&self, max: usize) -> Vec<usize> {
        (1..=max).filter(|l| !self.paths.contains_key(l)).collect()
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Arc { start: usize, dir: isize, len: usize },
    Chord { start: usize, d1: isize, a: usize, c2: usize, d2: isize, b: usize },
}

impl Shape {
    fn len(&self) -> usize {
        match *self {
            Shape::Arc { len, .. } => len,
            Shape::Chord { a, b, .. } => a + 1 + b,
        }
    }

    fn pos_at(&self, i: usize, n: usize) -> usize {
        match *self {
            Shape::Arc { start, dir, .. } => walk(start, dir, i, n),
            Shape::Chord { start, d1, a, c2, d2, .. } => {
                if i <= a {
                    walk(start, d1, i, n)
                } else {
                    walk(c2, d2, i - a - 1, n)
                }
            }
        }
    }
}

fn walk(from: usize, dir: isize, steps: usize, n: usize) -> usize {
    (from as isize + dir * steps as isize).rem_euclid(n as isize) as usize
}

/// Steps needed to go from `from` to `to` moving in direction `dir`.
fn steps(dir: isize, from: usize, to: usize, n: usize) -> usize {
    ((to as isize - from as isize) * dir).rem_euclid(n as isize) as usize
}

fn for_each_shape<F: FnMut(Shape)>(c: &ChordedCycle, max_len: usize, mut f: F) {
    let n = c.len();
    for start in 0..n {
        for dir in [1, -1] {
            for len in 1..=max_len.min(n - 1) {
                f(Shape::Arc { start, dir, len });
            }
        }
    }
    let (ca, cb) = c.chord_positions();
    for (c1, c2) in [(ca, cb), (cb, ca)] {
        for d1 in [1isize, -1] {
            let room1 = steps(-d1, c1, c2, n);
            for a in 0..room1.min(max_len) {
                let start = walk(c1, -d1, a, n);
                for d2 in [1isize, -1] {
                    let room2 = steps(d2, c2, c1, n).min(steps(d2, c2, start, n));
                    for b in 0..room2.min(max_len - a) {
                        f(Shape::Chord { start, d1, a, c2, d2, b });
                    }
                }
            }
        }
    }
}

fn cmp_shapes(c: &ChordedCycle, x: &Shape, y: &Shape) -> Ordering {
    let n = c.len();
    let len = x.len().min(y.len());
    for i in 0..=len {
        let o = c.vertex(x.pos_at(i, n)).cmp(&c.vertex(y.pos_at(i, n)));
        if o != Ordering::Equal {
            return o;
        }
    }
    x.len().cmp(&y.len())
}

fn materialize(c: &ChordedCycle, s: &Shape) -> PathRecord {
    let n = c.len();
    PathRecord { vertices: (0..=s.len()).map(|i| c.vertex(s.pos_at(i, n))).collect() }
}

fn collect<K: Fn(usize) -> bool>(
    c: &ChordedCycle,
    in_a: &[bool],
    in_b: &[bool],
    max_len: usize,
    keep: K,
) -> LengthAtlas {
    let n = c.len();
    let mut best: BTreeMap<usize, Shape> = BTreeMap::new();
    for_each_shape(c, max_len, |s| {
        let len = s.len();
        if !keep(len) || !in_a[s.pos_at(0, n)] || !in_b[s.pos_at(len, n)] {
            return;
        }
        match best.get(&len) {
            Some(cur) if cmp_shapes(c, &s, cur) != Ordering::Less => {}
            _ => {
                best.insert(len, s);
            }
        }
    });
    LengthAtlas { paths: best.iter().map(|(&l, s)| (l, materialize(c, s))).collect() }
}

/// Membership masks by cycle position for a validated partition.
fn partition_masks(c: &ChordedCycle, a: &VertexSet, b: &VertexSet) -> Result<(Vec<bool>, Vec<bool>), PathLemmaError> {
    if a.is_empty() || b.is_empty() || a.len() + b.len() != c.len() {
        return Err(PathLemmaError::NotAPartition);
    }
    let mut in_a = vec![false; c.len()];
    let mut in_b = vec![false; c.len()];
    for v in a.iter() {
        in_a[c.position(v).ok_or(PathLemmaError::NotAPartition)?] = true;
    }
    for v in b.iter() {
        let p = c.position(v).ok_or(PathLemmaError::NotAPartition)?;
        if in_a[p] {
            return Err(PathLemmaError::NotAPartition);
        }
        in_b[p] = true;
    }
    Ok((in_a, in_b))
}

fn is_cycle_bipartition(c: &ChordedCycle, in_a: &[bool]) -> bool {
    c.len().is_multiple_of(2) && (0..c.len()).all(|p| in_a[p] == in_a[0] ^ (p % 2 == 1))
}

/// `(A, B)`-paths of every length `1..|C|`, one per length. Fails with the
/// bipartition exception, carrying the atlas, when `(A, B)` is the cycle's
/// own 2-coloring.
pub fn ab_paths_all_lengths(c: &ChordedCycle, a: &VertexSet, b: &VertexSet) -> Result<LengthAtlas, PathLemmaError> {
    let (in_a, in_b) = partition_masks(c, a, b)?;
    let atlas = collect(c, &in_a, &in_b, c.len() - 1, |_| true);
    if is_cycle_bipartition(c, &in_a) {
        if c.is_bipartite() && atlas.paths.keys().any(|l| l % 2 == 0) {
            return Err(PathLemmaError::ParityViolation);
        }
        return Err(PathLemmaError::BipartitionException { atlas });
    }
    Ok(atlas)
}

/// Even-length `(A, B)`-paths up to `max_len`. When cycle-plus-chord is
/// bipartite both ends of every such path share a color class.
pub fn even_ab_paths_up_to(
    c: &ChordedCycle,
    a: &VertexSet,
    b: &VertexSet,
    max_len: usize,
) -> Result<LengthAtlas, PathLemmaError> {
    if max_len >= c.len() {
        return Err(PathLemmaError::MaxLenTooLarge { max_len, cycle_len: c.len() });
    }
    let (in_a, in_b) = partition_masks(c, a, b)?;
    let atlas = collect(c, &in_a, &in_b, max_len, |l| l % 2 == 0);
    if is_cycle_bipartition(c, &in_a) {
        return Err(PathLemmaError::BipartitionException { atlas });
    }
    check_parity(c, &atlas, true)?;
    Ok(atlas)
}

/// Odd-length paths from `w` to the rest of the cycle, up to `max_len`. When
/// cycle-plus-chord is bipartite every far end has the opposite color of `w`.
pub fn odd_w_paths_up_to(c: &ChordedCycle, w: Vertex, max_len: usize) -> Result<LengthAtlas, PathLemmaError> {
    let pw = c.position(w).ok_or(PathLemmaError::NotOnCycle(w))?;
    if max_len >= c.len() {
        return Err(PathLemmaError::MaxLenTooLarge { max_len, cycle_len: c.len() });
    }
    let in_a: Vec<bool> = (0..c.len()).map(|p| p == pw).collect();
    let in_b: Vec<bool> = in_a.iter().map(|x| !x).collect();
    let atlas = collect(c, &in_a, &in_b, max_len, |l| l % 2 == 1);
    check_parity(c, &atlas, false)?;
    Ok(atlas)
}

fn check_parity(c: &ChordedCycle, atlas: &LengthAtlas, same: bool) -> Result<(), PathLemmaError> {
    if !c.is_bipartite() {
        return Ok(());
    }
    let color = |v| c.color(c.position(v).expect("atlas vertices lie on the cycle"));
    let ok = atlas.paths.values().all(|p| (color(p.first()) == color(p.last())) == same);
    if ok {
        Ok(())
    } else {
        Err(PathLemmaError::ParityViolation)
    }
}

/// Every `(A, B)`-path of exactly `len` edges, lexicographically sorted.
/// Used to find an alternative when the preferred path collides with a
/// connector during cycle assembly.
pub fn ab_paths_of_length(
    c: &ChordedCycle,
    a: &VertexSet,
    b: &VertexSet,
    len: usize,
) -> Result<Vec<PathRecord>, PathLemmaError> {
    let (in_a, in_b) = partition_masks(c, a, b)?;
    let n = c.len();
    let mut out = Vec::new();
    if len == 0 || len >= n {
        return Ok(out);
    }
    for_each_shape(c, len, |s| {
        if s.len() == len && in_a[s.pos_at(0, n)] && in_b[s.pos_at(len, n)] {
            out.push(materialize(c, &s));
        }
    });
    out.sort();
    out.dedup();
    Ok(out)
}
