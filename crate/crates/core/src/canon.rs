//! Canonical labelling by colour refinement and individualisation.
//!
//! Two graphs receive the same [`CanonKey`] exactly when they are isomorphic.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{Graph, VertexSet};

/// graph6 encoding of the canonical relabelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(String);

impl CanonKey {
    /// Key of a graph that is already in canonical form.
    pub(crate) fn from_canonical(g: &Graph) -> CanonKey {
        CanonKey(g.to_graph6())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn graph(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical keys are valid graph6")
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical relabelling of `g` together with the permutation producing it:
/// vertex `v` of `g` becomes vertex `perm[v]` of the returned graph.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub graph: Graph,
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn key(&self) -> CanonKey {
        CanonKey(self.graph.to_graph6())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm { graph: *g, perm: Vec::new() };
    }
    let mut search = Search { g, best: None, orbits: (0..n).collect() };
    let cells = refine(g, vec![g.vertices().0]);
    search.descend(cells, true);
    let (rows, order) = search.best.expect("search reaches a leaf");
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    let graph = g.relabel(&perm);
    debug_assert_eq!(graph.rows(), &rows[..]);
    CanonicalForm { graph, perm }
}

pub fn canonical_key(g: &Graph) -> CanonKey {
    canonical_form(g).key()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u32>, Vec<usize>)>,
    /// Union-find over root-level orbits of the automorphisms found so far.
    orbits: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u32>, root: bool) {
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = VertexSet(cells[t]);
        let mut tried = VertexSet::EMPTY;
        for v in target {
            if self.is_twin_of_any(v, tried) {
                continue;
            }
            if root && tried.iter().any(|w| self.find(w) == self.find(v)) {
                continue;
            }
            tried.insert(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(1 << v);
            next.push(cells[t] & !(1 << v));
            next.extend_from_slice(&cells[t + 1..]);
            self.descend(refine(self.g, next), false);
        }
    }

    fn is_twin_of_any(&self, v: usize, tried: VertexSet) -> bool {
        let nv = self.g.neighbors(v);
        tried.iter().any(|w| {
            let nw = self.g.neighbors(w);
            nv.without(w) == nw.without(v)
        })
    }

    fn leaf(&mut self, cells: &[u32]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 32];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u32> =
            order.iter().map(|&v| self.g.neighbors(v).iter().fold(0u32, |r, w| r | 1 << pos[w])).collect();
        match &self.best {
            Some((best_rows, best_order)) if *best_rows == rows => {
                // best_order[i] and order[i] play the same role: an automorphism
                let pairs: Vec<(usize, usize)> = best_order.iter().copied().zip(order.iter().copied()).collect();
                for (a, b) in pairs {
                    self.union(a, b);
                }
            }
            Some((best_rows, _)) if *best_rows <= rows => {}
            _ => self.best = Some((rows, order)),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.orbits[v] != v {
            self.orbits[v] = self.orbits[self.orbits[v]];
            v = self.orbits[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.orbits[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Equitable refinement of an ordered partition; split cells are ordered by
/// neighbour count into the splitter, so the result is label-independent.
fn refine(g: &Graph, mut cells: Vec<u32>) -> Vec<u32> {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(g.order());
            for &cell in &cells {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(u32, u32)> = Vec::new();
                for v in VertexSet(cell) {
                    let d = (g.neighbors(v).0 & splitter).count_ones();
                    match groups.iter_mut().find(|(k, _)| *k == d) {
                        Some((_, m)) => *m |= 1 << v,
                        None => groups.push((d, 1 << v)),
                    }
                }
                groups.sort_unstable_by_key(|&(d, _)| d);
                next.extend(groups.into_iter().map(|(_, m)| m));
            }
            if next.len() != cells.len() {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}

/// Isomorphism-class deduplication.
#[derive(Clone, Debug, Default)]
pub struct SeenSet {
    keys: HashSet<CanonKey>,
}

impl SeenSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the class of `g`; true if it was not seen before.
    pub fn insert_if_new(&mut self, g: &Graph) -> bool {
        self.keys.insert(canonical_key(g))
    }

    pub fn insert_key(&mut self, key: CanonKey) -> bool {
        self.keys.insert(key)
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.keys.contains(&canonical_key(g))
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let mut g = Graph::empty(n).unwrap();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.set_edge(i, j);
                }
            }
            g
        })
    }

    #[test]
    fn class_counts_small_orders() {
        for (n, expect) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
            let keys: HashSet<CanonKey> = all_graphs(n).map(|g| canonical_key(&g)).collect();
            assert_eq!(keys.len(), expect, "n={n}");
        }
    }

    #[test]
    fn agrees_with_brute_force_classes() {
        for n in 1..=6 {
            let mut ours: std::collections::HashMap<CanonKey, String> = Default::default();
            for g in all_graphs(n) {
                let b = oracle::brute_key(&g);
                let k = canonical_key(&g);
                let prev = ours.entry(k).or_insert_with(|| b.clone());
                assert_eq!(*prev, b, "{g:?}");
            }
        }
    }

    #[test]
    fn symmetric_graphs() {
        let petersen = Graph::from_graph6("IheA@GUAo").unwrap();
        let f = canonical_form(&petersen);
        assert_eq!(petersen.relabel(&f.perm), f.graph);
        assert!(are_isomorphic(&Graph::cycle(12), &Graph::cycle(12).relabel(&(0..12).rev().collect::<Vec<_>>())));
        assert!(!are_isomorphic(&Graph::cycle(6), &Graph::cycle(3).disjoint_union(&Graph::cycle(3)).unwrap()));
        let e = Graph::empty(32).unwrap();
        assert_eq!(canonical_key(&e).graph(), e);
        let k = Graph::complete(32);
        assert_eq!(canonical_key(&k).graph(), k);
    }

    #[test]
    fn seen_set_dedups() {
        let mut seen = SeenSet::new();
        assert!(seen.insert_if_new(&Graph::path(4)));
        assert!(!seen.insert_if_new(&Graph::path(4).relabel(&[2, 0, 3, 1])));
        assert!(seen.insert_if_new(&Graph::cycle(4)));
        assert_eq!(seen.len(), 2);
    }

    fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (proptest::collection::vec(any::<bool>(), pairs), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
                .prop_map(move |(bits, perm)| {
                    let mut g = Graph::empty(n).unwrap();
                    let mut b = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[b] {
                                g.set_edge(i, j);
                            }
                            b += 1;
                        }
                    }
                    (g, perm)
                })
        })
    }

    proptest! {
        #[test]
        fn key_is_relabelling_invariant((g, perm) in arb_graph_and_perm(24)) {
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_key(&g), canonical_key(&h));
            let f = canonical_form(&g);
            prop_assert_eq!(g.relabel(&f.perm), f.graph);
        }

        #[test]
        fn key_matches_brute_force_up_to_isomorphism((g, perm) in arb_graph_and_perm(7)) {
            let h = g.relabel(&perm);
            prop_assert_eq!(oracle::brute_key(&g), oracle::brute_key(&h));
            prop_assert_eq!(oracle::brute_key(&g), oracle::brute_key(&canonical_key(&g).graph()));
        }
    }
}
