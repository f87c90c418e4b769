//! Two vertex-disjoint paths from a source set to a sink set via unit
//! vertex-capacity augmenting paths.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// Where flow may start.
pub(crate) enum Sources<'a> {
    /// Any vertex of the set, one unit each.
    Any(&'a [Vertex]),
    /// One unit from `anchor`, one unit from the rest of the set.
    Anchored { anchor: Vertex, rest: &'a [Vertex] },
}

#[derive(Clone, Copy)]
struct Arc {
    to: u32,
    cap: u8,
    rev: u32,
}

struct Network {
    adj: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, u: usize, v: usize) {
        let ru = self.adj[v].len() as u32;
        let rv = self.adj[u].len() as u32;
        self.adj[u].push(Arc { to: v as u32, cap: 1, rev: ru });
        self.adj[v].push(Arc { to: u as u32, cap: 0, rev: rv });
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for (i, a) in self.adj[u].iter().enumerate() {
                let v = a.to as usize;
                if a.cap > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, i));
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some((u, i)) = prev[v] {
            let rev = self.adj[u][i].rev as usize;
            self.adj[u][i].cap -= 1;
            self.adj[v][rev].cap += 1;
            v = u;
        }
        true
    }

    /// Follows saturated forward arcs from `from`, consuming them.
    fn take_path(&mut self, from: usize, t: usize, is_forward: &dyn Fn(usize, usize) -> bool) -> Vec<usize> {
        let mut nodes = vec![from];
        let mut u = from;
        while u != t {
            let next = self.adj[u]
                .iter()
                .position(|a| a.cap == 0 && is_forward(u, a.to as usize) && self.adj[a.to as usize][a.rev as usize].cap > 0)
                .expect("flow conservation");
            let a = self.adj[u][next];
            self.adj[a.to as usize][a.rev as usize].cap -= 1;
            u = a.to as usize;
            nodes.push(u);
        }
        nodes
    }
}

/// Two vertex-disjoint paths, each from a source vertex to a sink vertex,
/// whose interiors avoid `blocked`. Source vertices cannot be re-entered and
/// sink vertices cannot be left. Returns `None` when no such pair exists.
pub(crate) fn two_disjoint_paths(
    g: &Graph,
    sources: Sources<'_>,
    is_sink: &[bool],
    blocked: &[bool],
) -> Option<[Vec<Vertex>; 2]> {
    let n = g.n();
    let inn = |v: usize| 2 * v;
    let out = |v: usize| 2 * v + 1;
    let (s, t, hub) = (2 * n, 2 * n + 1, 2 * n + 2);
    let mut is_source = vec![false; n];
    match sources {
        Sources::Any(set) => set.iter().for_each(|&v| is_source[v] = true),
        Sources::Anchored { anchor, rest } => {
            is_source[anchor] = true;
            rest.iter().for_each(|&v| is_source[v] = true);
        }
    }

    let mut net = Network::new(2 * n + 3);
    for v in 0..n {
        if !blocked[v] && !is_source[v] && !is_sink[v] {
            net.add(inn(v), out(v));
        }
        if is_sink[v] && !is_source[v] {
            net.add(inn(v), t);
        }
    }
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if !is_sink[a] && !is_source[b] && (is_source[a] || !blocked[a]) && (is_sink[b] || !blocked[b]) {
                net.add(out(a), inn(b));
            }
        }
    }
    match sources {
        Sources::Any(set) => {
            for &v in set {
                net.add(s, out(v));
            }
        }
        Sources::Anchored { anchor, rest } => {
            net.add(s, out(anchor));
            net.add(s, hub);
            for &v in rest {
                net.add(hub, out(v));
            }
        }
    }

    if !(net.augment(s, t) && net.augment(s, t)) {
        return None;
    }
    let forward = |u: usize, v: usize| -> bool {
        match (u, v) {
            (x, _) if x == s => true,
            (x, _) if x == hub => true,
            (_, y) if y == t => true,
            // in(v) -> out(v), or out(a) -> in(b) with a != b
            (x, y) if x < 2 * n && y < 2 * n => {
                (x % 2 == 0 && y == x + 1) || (x % 2 == 1 && y % 2 == 0 && y + 1 != x)
            }
            _ => false,
        }
    };
    let mut paths = Vec::with_capacity(2);
    for _ in 0..2 {
        let nodes = net.take_path(s, t, &forward);
        let mut verts: Vec<Vertex> = Vec::new();
        for &node in &nodes {
            if node < 2 * n {
                let v = node / 2;
                if verts.last() != Some(&v) {
                    verts.push(v);
                }
            }
        }
        paths.push(verts);
    }
    let second = paths.pop().unwrap();
    let first = paths.pop().unwrap();
    Some([first, second])
}
