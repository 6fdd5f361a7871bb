//! Tripods: stable classes `A1, A2, A3` grown from a triangle, where every
//! later vertex sees earlier vertices of both other classes. In a
//! 3-colouring each class is monochromatic.

mod assumptions;
mod generate;

pub use assumptions::check_thmg_assumptions;
pub use generate::{
    expand_state, feasible, start_states, tripod_gen, GenProgress, GenSink, GenState, TripodGenOptions, TripodProfile,
};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tripod {
    pub host: Graph,
    /// `classes[i]` is `A_{i+1}`.
    pub classes: [VertexSet; 3],
    /// `v_1, v_2, ...`; the first three form the root with `v_i` in `classes[i]`.
    pub order: Vec<usize>,
}

impl Tripod {
    /// Checks the tripod axioms for `order` and the classes it induces.
    pub fn from_order(host: &Graph, order: &[usize], classes: [VertexSet; 3]) -> Option<Tripod> {
        let t = Tripod { host: *host, classes, order: order.to_vec() };
        t.is_valid().then_some(t)
    }

    pub fn is_valid(&self) -> bool {
        let g = &self.host;
        let [a, b, c] = self.classes;
        if a.intersects(b) || a.intersects(c) || b.intersects(c) {
            return false;
        }
        if self.classes.iter().any(|&s| !g.is_stable(s)) || self.order.len() < 3 {
            return false;
        }
        if VertexSet::from_slice(&self.order) != self.vertices() || self.order.len() != self.vertices().len() {
            return false;
        }
        let r = &self.order[..3];
        if (0..3).any(|i| !self.classes[i].contains(r[i])) || !is_triangle(g, [r[0], r[1], r[2]]) {
            return false;
        }
        let mut placed = VertexSet::from_slice(r);
        for &v in &self.order[3..] {
            let i = self.class_of(v).expect("covered");
            let ok =
                (0..3).filter(|&j| j != i).all(|j| g.neighbors(v).intersects(self.classes[j].intersection(placed)));
            if !ok {
                return false;
            }
            placed.insert(v);
        }
        true
    }

    pub fn vertices(&self) -> VertexSet {
        self.classes[0].union(self.classes[1]).union(self.classes[2])
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        (0..3).find(|&i| self.classes[i].contains(v))
    }

    /// `t(v)`: 0 on the root, `i - 3` for the `i`-th vertex after it.
    pub fn t(&self, v: usize) -> Option<usize> {
        self.order.iter().position(|&w| w == v).map(|p| p.saturating_sub(2))
    }

    fn position(&self, v: usize) -> usize {
        self.order.iter().position(|&w| w == v).expect("tripod vertex")
    }

    /// The class `v` could join given the current classes, if any.
    pub fn addable_class(&self, v: usize) -> Option<usize> {
        addable(&self.host, &self.classes, v)
    }

    /// No outside vertex can join any class.
    pub fn is_maximal(&self) -> bool {
        self.host.vertices().difference(self.vertices()).iter().all(|v| self.addable_class(v).is_none())
    }

    /// `T_i(t)`: the subgraph on the two classes other than `i` with `t(v) <= t`.
    pub fn pair_graph(&self, i: usize, t: usize) -> Graph {
        let keep: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&v| self.class_of(v) != Some(i) && self.t(v).is_some_and(|tv| tv <= t))
            .collect();
        self.host.induced_unchecked(VertexSet::from_slice(&keep))
    }
}

fn is_triangle(g: &Graph, [a, b, c]: [usize; 3]) -> bool {
    a != b && b != c && a != c && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
}

fn addable(g: &Graph, classes: &[VertexSet; 3], v: usize) -> Option<usize> {
    if classes.iter().any(|s| s.contains(v)) {
        return None;
    }
    let seen: Vec<bool> = classes.iter().map(|&s| g.neighbors(v).intersects(s)).collect();
    match seen.iter().filter(|&&b| b).count() {
        2 => seen.iter().position(|&b| !b),
        _ => None,
    }
}

/// `n_j(u)`: the neighbour of `u` in class `j` with least `t`.
pub fn neighbor_min(tr: &Tripod, u: usize, j: usize) -> Option<usize> {
    let i = tr.class_of(u)?;
    if j >= 3 || j == i {
        return None;
    }
    tr.host.neighbors(u).intersection(tr.classes[j]).iter().min_by_key(|&v| tr.position(v))
}

/// Greedily adds the lowest addable vertex until none is left.
pub fn grow_maximal_tripod(g: &Graph, root: [usize; 3]) -> Result<Tripod> {
    if root.iter().any(|&v| v >= g.order()) || !is_triangle(g, root) {
        return Err(Error::NotATriangle(root));
    }
    let mut classes = root.map(VertexSet::singleton);
    let mut order = root.to_vec();
    while let Some((v, i)) = g.vertices().iter().find_map(|v| addable(g, &classes, v).map(|i| (v, i))) {
        classes[i].insert(v);
        order.push(v);
    }
    Ok(Tripod { host: *g, classes, order })
}

/// Identifies each class to one vertex. The result keeps the vertices outside
/// the tripod plus the three root vertices, in increasing original order.
pub fn contract_tripod(g: &Graph, tr: &Tripod) -> Result<Graph> {
    let inside = tr.vertices();
    for v in g.vertices().difference(inside) {
        if tr.addable_class(v).is_some() {
            return Err(Error::TripodNotMaximal { vertex: v });
        }
        if tr.classes.iter().all(|&s| g.neighbors(v).intersects(s)) {
            return Err(Error::ContractionHypothesis { vertex: v });
        }
    }
    let root = &tr.order[..3];
    let rep = |w: usize| tr.class_of(w).map_or(w, |j| root[j]);
    let idx = g.vertices().difference(inside).union(VertexSet::from_slice(root)).to_vec();
    let at = |v: usize| idx.binary_search(&v).expect("kept vertex");
    let mut h = Graph::empty(idx.len())?;
    for (u, v) in g.edges() {
        let (a, b) = (rep(u), rep(v));
        if a != b {
            h.set_edge(at(a), at(b));
        }
    }
    Ok(h)
}

/// A vertex `x` and a tripod covering every other vertex, with `x` seeing all
/// three classes.
pub fn find_tripod_extension(g: &Graph) -> Option<(usize, Tripod)> {
    for x in g.vertices() {
        let rest = g.vertices().without(x);
        if !g.neighbors(x).intersects(rest) {
            continue;
        }
        for a in rest {
            for b in g.neighbors(a).intersection(rest).iter().filter(|&b| b > a) {
                for c in g.neighbors(a).intersection(g.neighbors(b)).intersection(rest).iter().filter(|&c| c > b) {
                    let mut order = vec![a, b, c];
                    let mut failed = HashSet::new();
                    let classes = [a, b, c].map(VertexSet::singleton);
                    if cover(g, x, rest, classes, &mut order, &mut failed) {
                        let tr = Tripod { host: *g, classes: classes_of(g, &order), order };
                        return Some((x, tr));
                    }
                }
            }
        }
    }
    None
}

fn classes_of(g: &Graph, order: &[usize]) -> [VertexSet; 3] {
    let mut classes = [order[0], order[1], order[2]].map(VertexSet::singleton);
    for &v in &order[3..] {
        let i = addable(g, &classes, v).expect("recorded order is valid");
        classes[i].insert(v);
    }
    classes
}

/// Depth-first growth over insertion orders until `rest` is covered.
fn cover(
    g: &Graph,
    x: usize,
    rest: VertexSet,
    classes: [VertexSet; 3],
    order: &mut Vec<usize>,
    failed: &mut HashSet<[u32; 3]>,
) -> bool {
    let placed = classes[0].union(classes[1]).union(classes[2]);
    if placed == rest {
        return classes.iter().all(|&s| g.neighbors(x).intersects(s));
    }
    let key = classes.map(|s| s.0);
    if failed.contains(&key) {
        return false;
    }
    let open = rest.difference(placed);
    // a vertex seeing all three classes can never be placed
    if open.iter().any(|v| classes.iter().all(|&s| g.neighbors(v).intersects(s))) {
        failed.insert(key);
        return false;
    }
    for v in open {
        if let Some(i) = addable(g, &classes, v) {
            let mut next = classes;
            next[i].insert(v);
            order.push(v);
            if cover(g, x, rest, next, order, failed) {
                return true;
            }
            order.pop();
        }
    }
    failed.insert(key);
    false
}

pub fn is_tripod_extension(g: &Graph) -> bool {
    find_tripod_extension(g).is_some()
}

/// Labelling traversal of a 1-vertex extension: starting from the
/// `t`-latest neighbours of `x` in each class, repeatedly deactivate the
/// active vertex chosen by `pick` and activate its `n_j`, `n_k`. Returns the
/// labelled vertices.
pub fn traverse(tr: &Tripod, x: usize, mut pick: impl FnMut(&[usize]) -> usize) -> VertexSet {
    let mut active = Vec::new();
    let mut labelled = VertexSet::EMPTY;
    for i in 0..3 {
        if let Some(b) = tr.host.neighbors(x).intersection(tr.classes[i]).iter().max_by_key(|&v| tr.position(v)) {
            if !labelled.contains(b) {
                labelled.insert(b);
                active.push(b);
            }
        }
    }
    for &a in &tr.order[..3] {
        labelled.insert(a);
        active.retain(|&v| v != a);
    }
    while !active.is_empty() {
        let u = active.remove(pick(&active) % active.len());
        let i = tr.class_of(u).expect("tripod vertex");
        for j in (0..3).filter(|&j| j != i) {
            if let Some(w) = neighbor_min(tr, u, j) {
                if !labelled.contains(w) {
                    labelled.insert(w);
                    active.push(w);
                }
            }
        }
    }
    labelled
}
