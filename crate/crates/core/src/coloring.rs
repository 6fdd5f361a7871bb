//! Exact k-colourability, the k-hull, criticality tests and the similarity
//! relations used to constrain expansions during generation.

use std::ops::ControlFlow;

use crate::detect::{contains_induced, find_induced, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_N};

/// Outcome of a colourability query.
///
/// When `colorable` holds, `witness[v]` is the colour of `v` in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringResult {
    pub colorable: bool,
    pub witness: Option<Vec<u8>>,
}

impl ColoringResult {
    /// Checks that the witness is a proper colouring of `g` with colours in `1..=k`.
    pub fn is_proper_for(&self, g: &Graph, k: usize) -> bool {
        match &self.witness {
            None => !self.colorable,
            Some(c) => {
                c.len() == g.order()
                    && c.iter().all(|&x| x >= 1 && x as usize <= k)
                    && g.edges().all(|(u, v)| c[u] != c[v])
            }
        }
    }
}

pub fn is_k_colorable(g: &Graph, k: usize) -> ColoringResult {
    match color(g, k) {
        Some(c) => ColoringResult { colorable: true, witness: Some(c.iter().map(|&x| x + 1).collect()) },
        None => ColoringResult { colorable: false, witness: None },
    }
}

#[inline]
pub fn colorable(g: &Graph, k: usize) -> bool {
    color(g, k).is_some()
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.order()).find(|&k| colorable(g, k)).unwrap_or(g.order())
}

/// A proper colouring with colours `0..k`, if one exists.
pub fn color(g: &Graph, k: usize) -> Option<Vec<u8>> {
    let n = g.order();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    if n <= k {
        return Some((0..n as u8).collect());
    }
    if k >= 32 {
        return Some((0..n as u8).collect());
    }
    let mut s = Search { g, k, colors: [u8::MAX; MAX_N], domains: [0; MAX_N] };
    let all = (1u32 << k) - 1;
    for v in 0..n {
        s.domains[v] = all;
    }
    if s.solve(g.vertices(), 0) {
        Some(s.colors[..n].to_vec())
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colors: [u8; MAX_N],
    domains: [u32; MAX_N],
}

impl Search<'_> {
    /// Smallest-domain-first backtracking; a fresh colour is only ever the
    /// lowest unused one, which removes colour-permutation symmetry.
    fn solve(&mut self, uncolored: VertexSet, used: u32) -> bool {
        let Some(v) = self.pick(uncolored) else {
            return true;
        };
        let next_fresh = 32 - used.leading_zeros();
        let mut allowed = self.domains[v];
        if (next_fresh as usize) < self.k {
            allowed &= (1u32 << (next_fresh + 1)) - 1;
        }
        let rest = uncolored.without(v);
        let nbrs = self.g.neighbors(v).intersection(rest);
        while allowed != 0 {
            let c = allowed.trailing_zeros();
            allowed &= allowed - 1;
            let bit = 1u32 << c;
            let saved = self.domains;
            let mut ok = true;
            for w in nbrs {
                self.domains[w] &= !bit;
                if self.domains[w] == 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.colors[v] = c as u8;
                if self.solve(rest, used | bit) {
                    return true;
                }
            }
            self.domains = saved;
        }
        false
    }

    #[inline]
    fn pick(&self, uncolored: VertexSet) -> Option<usize> {
        let mut best = None;
        let mut best_key = (u32::MAX, 0usize);
        for v in uncolored {
            let d = self.domains[v].count_ones();
            let deg = self.g.neighbors(v).intersection(uncolored).len();
            if d < best_key.0 || (d == best_key.0 && deg > best_key.1) {
                best_key = (d, deg);
                best = Some(v);
                if d <= 1 {
                    break;
                }
            }
        }
        best
    }
}

/// `g` with `v` identified into `u`; `u` and `v` must be nonadjacent.
/// Vertices above `v` shift down by one.
fn merge(g: &Graph, u: usize, v: usize) -> Graph {
    let mut h = *g;
    for w in g.neighbors(v) {
        h.set_edge(u, w);
    }
    h.induced_unchecked(g.vertices().without(v))
}

/// The k-hull: `u v` is an edge iff no k-colouring of `g` gives `u` and `v` the same colour.
pub fn k_hull(g: &Graph, k: usize) -> Result<Graph> {
    let base = color(g, k).ok_or(Error::NotColorable { k })?;
    let n = g.order();
    let mut share = [0u32; MAX_N];
    mark_classes(&base, &mut share);
    let mut hull = *g;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) || share[u] >> v & 1 == 1 {
                continue;
            }
            match color(&merge(g, u, v), k) {
                Some(c) => {
                    let lifted: Vec<u8> = (0..n)
                        .map(|w| match w.cmp(&v) {
                            std::cmp::Ordering::Less => c[w],
                            std::cmp::Ordering::Equal => c[u],
                            std::cmp::Ordering::Greater => c[w - 1],
                        })
                        .collect();
                    mark_classes(&lifted, &mut share);
                }
                None => hull.set_edge(u, v),
            }
        }
    }
    Ok(hull)
}

fn mark_classes(colors: &[u8], share: &mut [u32; MAX_N]) {
    let mut classes = [0u32; 32];
    for (v, &c) in colors.iter().enumerate() {
        classes[c as usize] |= 1 << v;
    }
    for (v, &c) in colors.iter().enumerate() {
        share[v] |= classes[c as usize];
    }
}

/// Hull of `g - removed`, reported on `g`'s vertex labels (removed vertices isolated).
pub fn hull_without(g: &Graph, removed: VertexSet, k: usize) -> Option<Graph> {
    let keep = g.vertices().difference(removed);
    let h = k_hull(&g.induced_unchecked(keep), k).ok()?;
    let idx = keep.to_vec();
    let mut out = Graph::empty(g.order()).unwrap();
    for (a, &u) in idx.iter().enumerate() {
        for b in h.neighbors(a) {
            if b > a {
                out.set_edge(u, idx[b]);
            }
        }
    }
    Some(out)
}

/// Not `(k-1)`-colourable, but every edge deletion is (and no isolated vertex matters).
pub fn is_k_critical(g: &Graph, k: usize) -> bool {
    if k == 0 || !is_k_chromatic(g, k) {
        return false;
    }
    for (u, v) in g.edges() {
        let mut h = *g;
        h.clear_edge(u, v);
        if !colorable(&h, k - 1) {
            return false;
        }
    }
    // an isolated vertex is a proper subgraph of its own that edge deletions never reach
    (0..g.order())
        .filter(|&v| g.degree(v) == 0)
        .all(|v| colorable(&g.induced_unchecked(g.vertices().without(v)), k - 1))
}

/// k-critical within the `forbidden`-free graphs: `g` is free, k-chromatic,
/// and every free proper subgraph of `g` is `(k-1)`-colourable.
///
/// Patterns are connected, so vertex deletions reduce to vertex-criticality
/// and only spanning subgraphs remain. Those are searched downwards, keeping
/// to non-`(k-1)`-colourable graphs and branching on the edges of a
/// forbidden copy, one of which any free descendant must lose.
pub fn is_k_critical_free(g: &Graph, k: usize, forbidden: &[Pattern]) -> bool {
    let free = |h: &Graph| forbidden.iter().all(|&p| !contains_induced(h, p));
    if !free(g) || !is_k_vertex_critical(g, k) {
        return false;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut frozen = Graph::empty(g.order()).expect("order fits");
    for &(u, v) in &edges {
        let mut h = *g;
        h.clear_edge(u, v);
        if !colorable(&h, k - 1) && free_descendant(&h, k, forbidden, frozen) {
            return false;
        }
        frozen.set_edge(u, v);
    }
    true
}

/// Whether some non-`(k-1)`-colourable spanning subgraph of `s` that keeps
/// every `frozen` edge is `forbidden`-free; `s` itself is non-colourable.
fn free_descendant(s: &Graph, k: usize, forbidden: &[Pattern], mut frozen: Graph) -> bool {
    let Some((p, copy)) = forbidden.iter().find_map(|&p| find_induced(s, p).map(|c| (p, c))) else {
        return true;
    };
    let shape = p.graph();
    for (a, b) in shape.edges() {
        let (u, v) = (copy[a], copy[b]);
        if frozen.has_edge(u, v) {
            continue;
        }
        let mut h = *s;
        h.clear_edge(u, v);
        if !colorable(&h, k - 1) && free_descendant(&h, k, forbidden, frozen) {
            return true;
        }
        frozen.set_edge(u, v);
    }
    false
}

pub fn is_k_vertex_critical(g: &Graph, k: usize) -> bool {
    if k == 0 || !is_k_chromatic(g, k) {
        return false;
    }
    (0..g.order()).all(|v| colorable(&g.induced_unchecked(g.vertices().without(v)), k - 1))
}

pub fn is_k_chromatic(g: &Graph, k: usize) -> bool {
    k >= 1 && !colorable(g, k - 1) && colorable(g, k)
}

/// `(u, v)` with `N(u) ⊆ N_H(v)`, `H` the k-hull of `g - u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimilarPair {
    pub u: usize,
    pub v: usize,
}

/// Edges `u v` and `u' v'` with `N(u) - v ⊆ N_H(u')` and `N(v) - u ⊆ N_H(v')`,
/// `H` the k-hull of `g - {u, v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimilarEdgePair {
    pub u: usize,
    pub v: usize,
    pub u2: usize,
    pub v2: usize,
}

/// Triangles `u v w` and `u' v' w'` with the per-vertex containment as above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimilarTrianglePair {
    pub first: [usize; 3],
    pub second: [usize; 3],
}

/// Lexicographically first similar pair, hull taken with `k` colours.
pub fn find_similar_vertices(g: &Graph, k: usize) -> Option<SimilarPair> {
    first(|f| each_similar_vertices(g, k, f))
}

/// Every similar pair, in lexicographic order.
pub fn similar_vertices(g: &Graph, k: usize) -> Vec<SimilarPair> {
    all(|f| each_similar_vertices(g, k, f))
}

pub fn find_similar_edges(g: &Graph, k: usize) -> Option<SimilarEdgePair> {
    first(|f| each_similar_edges(g, k, f))
}

pub fn similar_edges(g: &Graph, k: usize) -> Vec<SimilarEdgePair> {
    all(|f| each_similar_edges(g, k, f))
}

pub fn find_similar_triangles(g: &Graph, k: usize) -> Option<SimilarTrianglePair> {
    first(|f| each_similar_triangles(g, k, f))
}

pub fn similar_triangles(g: &Graph, k: usize) -> Vec<SimilarTrianglePair> {
    all(|f| each_similar_triangles(g, k, f))
}

fn first<T>(scan: impl FnOnce(&mut dyn FnMut(T) -> ControlFlow<()>)) -> Option<T> {
    let mut out = None;
    scan(&mut |t| {
        out = Some(t);
        ControlFlow::Break(())
    });
    out
}

fn all<T>(scan: impl FnOnce(&mut dyn FnMut(T) -> ControlFlow<()>)) -> Vec<T> {
    let mut out = Vec::new();
    scan(&mut |t| {
        out.push(t);
        ControlFlow::Continue(())
    });
    out
}

fn each_similar_vertices(g: &Graph, k: usize, f: &mut dyn FnMut(SimilarPair) -> ControlFlow<()>) {
    let n = g.order();
    for u in 0..n {
        let Some(h) = hull_without(g, VertexSet::singleton(u), k) else {
            continue;
        };
        let nu = g.neighbors(u);
        for v in (0..n).filter(|&v| v != u && nu.is_subset(h.neighbors(v))) {
            if f(SimilarPair { u, v }).is_break() {
                return;
            }
        }
    }
}

fn each_similar_edges(g: &Graph, k: usize, f: &mut dyn FnMut(SimilarEdgePair) -> ControlFlow<()>) {
    let n = g.order();
    for u in 0..n {
        for v in g.neighbors(u) {
            let uv = VertexSet::singleton(u).with(v);
            let Some(h) = hull_without(g, uv, k) else {
                continue;
            };
            let need_u = g.neighbors(u).without(v);
            let need_v = g.neighbors(v).without(u);
            for u2 in 0..n {
                if uv.contains(u2) || !need_u.is_subset(h.neighbors(u2)) {
                    continue;
                }
                for v2 in g.neighbors(u2).difference(uv) {
                    if need_v.is_subset(h.neighbors(v2)) && f(SimilarEdgePair { u, v, u2, v2 }).is_break() {
                        return;
                    }
                }
            }
        }
    }
}

/// Ordered triangles of `g`, lexicographic.
fn ordered_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for u in 0..g.order() {
        for v in g.neighbors(u) {
            for w in g.neighbors(u).intersection(g.neighbors(v)) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

fn each_similar_triangles(g: &Graph, k: usize, f: &mut dyn FnMut(SimilarTrianglePair) -> ControlFlow<()>) {
    let triangles = ordered_triangles(g);
    for &t in &triangles {
        let set = VertexSet::from_slice(&t);
        let Some(h) = hull_without(g, set, k) else {
            continue;
        };
        let need = t.map(|x| g.neighbors(x).difference(set));
        for &s in &triangles {
            if VertexSet::from_slice(&s).intersects(set) {
                continue;
            }
            if (0..3).all(|i| need[i].is_subset(h.neighbors(s[i])))
                && f(SimilarTrianglePair { first: t, second: s }).is_break()
            {
                return;
            }
        }
    }
}

/// Largest graph accepted by [`count_colorings_up_to_permutation`].
pub const COUNT_COLORINGS_MAX_N: usize = 20;

/// Number of partitions of `V(g)` into at most `k` stable sets.
pub fn count_colorings_up_to_permutation(g: &Graph, k: usize) -> Result<u64> {
    let n = g.order();
    if n > COUNT_COLORINGS_MAX_N {
        return Err(Error::SizeCap { n, max: COUNT_COLORINGS_MAX_N });
    }
    fn rec(g: &Graph, k: usize, v: usize, used: usize, classes: &mut [VertexSet]) -> u64 {
        if v == g.order() {
            return 1;
        }
        let mut total = 0;
        for c in 0..(used + 1).min(k) {
            if !g.neighbors(v).intersects(classes[c]) {
                classes[c].insert(v);
                total += rec(g, k, v + 1, used.max(c + 1), classes);
                classes[c].remove(v);
            }
        }
        total
    }
    let mut classes = vec![VertexSet::EMPTY; k.max(1)];
    Ok(rec(g, k, 0, 0, &mut classes))
}
