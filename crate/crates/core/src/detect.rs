//! Induced-subgraph detection for paths, cycles and a few fixed patterns.
//!
//! Paths and cycles are found by growing ordered partial paths and rejecting
//! any new vertex with a chord back into the path. The fixed patterns are
//! enumerated directly over edges and common neighbourhoods.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{Graph, VertexSet};

/// Longest path or cycle accepted by [`Pattern`].
pub const MAX_PATTERN_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// Induced path on `t` vertices.
    Path(usize),
    /// Induced (chordless) cycle on `t` vertices, `t >= 3`.
    Cycle(usize),
    Diamond,
    K4,
    Triangle,
    C4,
    C5,
}

impl Pattern {
    pub fn order(self) -> usize {
        match self {
            Pattern::Path(t) | Pattern::Cycle(t) => t,
            Pattern::Diamond | Pattern::K4 | Pattern::C4 => 4,
            Pattern::Triangle => 3,
            Pattern::C5 => 5,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            Pattern::Path(t) => (1..=MAX_PATTERN_ORDER).contains(&t),
            Pattern::Cycle(t) => (3..=MAX_PATTERN_ORDER).contains(&t),
            _ => true,
        }
    }

    /// The pattern as a graph, vertex order matching witnesses from [`find_induced`].
    pub fn graph(self) -> Graph {
        match self {
            Pattern::Path(t) => Graph::path(t),
            Pattern::Cycle(t) => Graph::cycle(t),
            Pattern::Diamond => Graph::diamond(),
            Pattern::K4 => Graph::complete(4),
            Pattern::Triangle => Graph::complete(3),
            Pattern::C4 => Graph::cycle(4),
            Pattern::C5 => Graph::cycle(5),
        }
    }

    /// Collapses aliases (`C4` and `Cycle(4)`, ...) onto one representative.
    fn normalized(self) -> Pattern {
        match self {
            Pattern::Cycle(3) => Pattern::Triangle,
            Pattern::Cycle(4) => Pattern::C4,
            Pattern::Cycle(5) => Pattern::C5,
            p => p,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Path(t) => write!(f, "P{t}"),
            Pattern::Cycle(t) => write!(f, "C{t}"),
            Pattern::Diamond => f.write_str("diamond"),
            Pattern::K4 => f.write_str("K4"),
            Pattern::Triangle => f.write_str("triangle"),
            Pattern::C4 => f.write_str("C4"),
            Pattern::C5 => f.write_str("C5"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Profile(format!("unknown pattern {s:?}"));
        let p = match lower.as_str() {
            "diamond" => Pattern::Diamond,
            "k4" => Pattern::K4,
            "triangle" | "k3" | "c3" => Pattern::Triangle,
            "c4" => Pattern::C4,
            "c5" => Pattern::C5,
            _ => {
                let (kind, num) = lower.split_at(1);
                let t: usize = num.parse().map_err(|_| bad())?;
                match kind {
                    "p" => Pattern::Path(t),
                    "c" => Pattern::Cycle(t),
                    _ => return Err(bad()),
                }
            }
        };
        if !p.is_valid() {
            return Err(Error::Profile(format!("pattern {s:?} outside the supported range")));
        }
        Ok(p)
    }
}

pub fn contains_induced(g: &Graph, p: Pattern) -> bool {
    find_induced(g, p).is_some()
}

/// A witness embedding listed in pattern-vertex order.
pub fn find_induced(g: &Graph, p: Pattern) -> Option<Vec<usize>> {
    search(g, p, None)
}

/// Like [`contains_induced`], restricted to copies that use vertex `x`.
///
/// If `g - x` is known to be `p`-free this decides whether `g` is.
pub fn contains_induced_through(g: &Graph, p: Pattern, x: usize) -> bool {
    search(g, p, Some(x)).is_some()
}

pub fn find_induced_through(g: &Graph, p: Pattern, x: usize) -> Option<Vec<usize>> {
    search(g, p, Some(x))
}

fn search(g: &Graph, p: Pattern, through: Option<usize>) -> Option<Vec<usize>> {
    if g.order() < p.order() {
        return None;
    }
    match p.normalized() {
        Pattern::Path(t) => match through {
            None => find_path(g, t),
            Some(x) => find_path_through(g, t, x),
        },
        Pattern::Cycle(t) => find_cycle(g, t, through),
        Pattern::C4 => find_cycle(g, 4, through),
        Pattern::C5 => find_cycle(g, 5, through),
        Pattern::Triangle => find_triangle(g, through),
        Pattern::K4 => find_k4(g, through),
        Pattern::Diamond => find_diamond(g, through),
    }
}

/// Vertices that may extend an induced path whose vertex set is `inside` at end `end`.
#[inline]
fn extensions(g: &Graph, inside: VertexSet, end: usize) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for w in g.neighbors(end).difference(inside) {
        if g.neighbors(w).intersection(inside) == VertexSet::singleton(end) {
            out.insert(w);
        }
    }
    out
}

fn find_path(g: &Graph, t: usize) -> Option<Vec<usize>> {
    if t == 0 {
        return Some(Vec::new());
    }
    let mut path = Vec::with_capacity(t);
    for s in 0..g.order() {
        path.push(s);
        if grow_path(g, t, &mut path, VertexSet::singleton(s)) {
            return Some(path);
        }
        path.pop();
    }
    None
}

fn grow_path(g: &Graph, t: usize, path: &mut Vec<usize>, inside: VertexSet) -> bool {
    if path.len() == t {
        return true;
    }
    let end = *path.last().unwrap();
    for w in extensions(g, inside, end) {
        path.push(w);
        if grow_path(g, t, path, inside.with(w)) {
            return true;
        }
        path.pop();
    }
    false
}

/// Grows the path from `x` to the right, then switches once to the left end.
fn find_path_through(g: &Graph, t: usize, x: usize) -> Option<Vec<usize>> {
    let mut right = vec![x];
    let mut left = Vec::new();
    if grow_two_sided(g, t, &mut left, &mut right, VertexSet::singleton(x), false) {
        left.reverse();
        left.extend(right);
        return Some(left);
    }
    None
}

fn grow_two_sided(
    g: &Graph,
    t: usize,
    left: &mut Vec<usize>,
    right: &mut Vec<usize>,
    inside: VertexSet,
    left_phase: bool,
) -> bool {
    if left.len() + right.len() == t {
        return true;
    }
    if !left_phase {
        let end = *right.last().unwrap();
        for w in extensions(g, inside, end) {
            right.push(w);
            if grow_two_sided(g, t, left, right, inside.with(w), false) {
                return true;
            }
            right.pop();
        }
    }
    let end = *left.last().unwrap_or(&right[0]);
    for w in extensions(g, inside, end) {
        left.push(w);
        if grow_two_sided(g, t, left, right, inside.with(w), true) {
            return true;
        }
        left.pop();
    }
    false
}

fn find_cycle(g: &Graph, t: usize, through: Option<usize>) -> Option<Vec<usize>> {
    debug_assert!(t >= 3);
    if t == 3 {
        return find_triangle(g, through);
    }
    let starts: Vec<usize> = match through {
        Some(x) => vec![x],
        None => (0..g.order()).collect(),
    };
    let mut path = Vec::with_capacity(t);
    for s in starts {
        // without `through`, anchor each cycle at its smallest vertex
        let allowed = match through {
            Some(_) => g.vertices(),
            None => g.vertices().difference(VertexSet::full(s + 1)),
        };
        path.push(s);
        if grow_cycle(g, t, &mut path, VertexSet::singleton(s), allowed) {
            return Some(path);
        }
        path.pop();
    }
    None
}

fn grow_cycle(g: &Graph, t: usize, path: &mut Vec<usize>, inside: VertexSet, allowed: VertexSet) -> bool {
    let end = *path.last().unwrap();
    let start = path[0];
    if path.len() == t - 1 {
        let closing = VertexSet::singleton(end).with(start);
        let candidates = g.neighbors(end).intersection(g.neighbors(start)).intersection(allowed);
        return candidates.difference(inside).iter().any(|w| {
            if g.neighbors(w).intersection(inside) == closing {
                path.push(w);
                true
            } else {
                false
            }
        });
    }
    for w in extensions(g, inside, end).intersection(allowed) {
        path.push(w);
        if grow_cycle(g, t, path, inside.with(w), allowed) {
            return true;
        }
        path.pop();
    }
    false
}

fn find_triangle(g: &Graph, through: Option<usize>) -> Option<Vec<usize>> {
    let check = |u: usize| {
        for v in g.neighbors(u) {
            if let Some(w) = g.neighbors(u).intersection(g.neighbors(v)).first() {
                return Some(vec![u, v, w]);
            }
        }
        None
    };
    match through {
        Some(x) => check(x),
        None => (0..g.order()).find_map(check),
    }
}

fn triangle_in(g: &Graph, s: VertexSet) -> Option<[usize; 3]> {
    for u in s {
        let nu = g.neighbors(u).intersection(s);
        for v in nu {
            if let Some(w) = nu.intersection(g.neighbors(v)).first() {
                return Some([u, v, w]);
            }
        }
    }
    None
}

fn find_k4(g: &Graph, through: Option<usize>) -> Option<Vec<usize>> {
    let check = |x: usize| triangle_in(g, g.neighbors(x)).map(|[a, b, c]| vec![x, a, b, c]);
    match through {
        Some(x) => check(x),
        None => (0..g.order()).find_map(check),
    }
}

/// Witness order `[a, b, c, d]`: `a b` is the spine, `c d` the nonadjacent tips.
fn find_diamond(g: &Graph, through: Option<usize>) -> Option<Vec<usize>> {
    let spine = |a: usize, b: usize| -> Option<Vec<usize>> {
        let common = g.neighbors(a).intersection(g.neighbors(b));
        for c in common {
            if let Some(d) = common.difference(g.neighbors(c)).without(c).first() {
                return Some(vec![a, b, c, d]);
            }
        }
        None
    };
    match through {
        None => g.edges().find_map(|(a, b)| spine(a, b)),
        Some(x) => {
            if let Some(w) = g.neighbors(x).iter().find_map(|b| spine(x, b)) {
                return Some(w);
            }
            // x as a tip: an edge a b inside N(x) with a second common neighbour outside N[x]
            let nx = g.neighbors(x);
            for a in nx {
                for b in g.neighbors(a).intersection(nx) {
                    let tips = g.neighbors(a).intersection(g.neighbors(b)).difference(nx).without(x);
                    if let Some(d) = tips.first() {
                        return Some(vec![a, b, x, d]);
                    }
                }
            }
            None
        }
    }
}

/// Reference implementation: tries every vertex subset and every bijection.
#[cfg(test)]
pub(crate) fn brute_force_contains(g: &Graph, p: Pattern) -> bool {
    let pg = p.graph();
    let k = pg.order();
    let n = g.order();
    if k > n {
        return false;
    }
    fn perms(items: &mut Vec<usize>, l: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if l == items.len() {
            return f(items);
        }
        for i in l..items.len() {
            items.swap(l, i);
            if perms(items, l + 1, f) {
                return true;
            }
            items.swap(l, i);
        }
        false
    }
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut items = VertexSet(mask).to_vec();
        let hit = perms(&mut items, 0, &mut |emb| {
            (0..k).all(|i| (0..k).all(|j| i == j || pg.has_edge(i, j) == g.has_edge(emb[i], emb[j])))
        });
        if hit {
            return true;
        }
    }
    false
}
