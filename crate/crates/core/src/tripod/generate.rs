//! Generation of the critical 1-vertex extensions of tripods by replaying the
//! labelling traversal: each state holds the labelled vertices, the apex `x`,
//! a linear order refining `t`, and the active vertices.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::canon::{canonical_form, CanonKey};
use crate::coloring::{colorable, is_k_critical_free};
use crate::detect::{contains_induced, contains_induced_through, Pattern};
use crate::enumerate::RunReport;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_N};

use super::Tripod;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripodProfile {
    /// `t` of the forbidden induced path `P_t`.
    pub forbidden_path: usize,
    /// States above this order are not generated.
    pub max_n: usize,
}

impl TripodProfile {
    pub fn new(forbidden_path: usize, max_n: usize) -> Self {
        TripodProfile { forbidden_path, max_n }
    }

    pub fn validate(&self) -> Result<()> {
        if !(6..=7).contains(&self.forbidden_path) {
            return Err(Error::Profile(format!("forbidden path P{} unsupported (P6 or P7)", self.forbidden_path)));
        }
        if self.max_n > MAX_N {
            return Err(Error::Profile(format!("max_n {} exceeds {MAX_N}", self.max_n)));
        }
        Ok(())
    }

    fn path(&self) -> Pattern {
        Pattern::Path(self.forbidden_path)
    }
}

/// Reported after each start state is exhausted.
#[derive(Clone, Copy, Debug)]
pub struct GenProgress {
    pub starts_done: usize,
    pub starts_total: usize,
    pub found_so_far: usize,
}

#[derive(Clone, Copy, Default)]
pub struct TripodGenOptions<'a> {
    /// Above 12 vertices, expand the active vertex with the fewest feasible
    /// children instead of the order-maximal one.
    pub lookahead: bool,
    pub workers: usize,
    pub progress: Option<&'a (dyn Fn(&GenProgress) + Sync)>,
}

/// A labelled partial extension. `ord` lists the non-apex vertices; the apex
/// is implicitly last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenState {
    pub g: Graph,
    pub x: usize,
    /// `a1, a2, a3`.
    pub root: [usize; 3],
    pub classes: [VertexSet; 3],
    pub ord: Vec<usize>,
    pub act: VertexSet,
}

impl GenState {
    fn pos(&self, v: usize) -> usize {
        self.ord.iter().position(|&w| w == v).unwrap_or(usize::MAX)
    }

    fn class_of(&self, v: usize) -> Option<usize> {
        (0..3).find(|&i| self.classes[i].contains(v))
    }

    /// The `ord`-least neighbour of `u` in class `j`.
    fn min_nbr(&self, u: usize, j: usize) -> Option<usize> {
        self.g.neighbors(u).intersection(self.classes[j]).iter().min_by_key(|&v| self.pos(v))
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

struct StartFamily {
    /// How many `b_i` differ from the root; they are vertices `3..`, listed
    /// as `b_d, ..., b_1`.
    distinct: usize,
    must: &'static [(usize, usize)],
    may: &'static [(usize, usize)],
}

// vertices: a3 = 0, a2 = 1, a1 = 2, then the distinct b_i in order, then x
const START_FAMILIES: [StartFamily; 3] = [
    StartFamily { distinct: 1, must: &[(4, 3), (4, 1), (4, 0), (2, 1), (2, 0), (1, 0)], may: &[(3, 1), (3, 0)] },
    StartFamily {
        distinct: 2,
        must: &[(5, 4), (5, 3), (5, 0), (2, 1), (2, 0), (1, 0)],
        may: &[(5, 1), (4, 3), (4, 1), (4, 0), (3, 2), (3, 0)],
    },
    StartFamily {
        distinct: 3,
        must: &[(6, 5), (6, 4), (6, 3), (2, 1), (2, 0), (1, 0)],
        may: &[(6, 1), (6, 0), (5, 4), (5, 3), (4, 3), (5, 1), (5, 0), (4, 2), (4, 0), (3, 2), (3, 1)],
    },
];

/// The start states for `b1 != a1`: `b2 = a2` (forcing `b3 = a3`), then
/// `b3 = a3` only, then all `b_i` distinct from the root, each with every
/// edge set between the mandatory and the optional edges.
pub fn start_states() -> Vec<GenState> {
    let (a3, a2, a1) = (0, 1, 2);
    let mut out = Vec::new();
    for fam in &START_FAMILIES {
        let x = 3 + fam.distinct;
        let ord: Vec<usize> = (0..x).collect();
        let mut classes = [VertexSet::singleton(a1), VertexSet::singleton(a2), VertexSet::singleton(a3)];
        let mut act = VertexSet::EMPTY;
        for (i, class) in classes.iter_mut().enumerate().take(fam.distinct) {
            let b = x - 1 - i;
            class.insert(b);
            act.insert(b);
        }
        let base = Graph::from_edges(x + 1, fam.must).expect("small");
        for mask in 0u32..1 << fam.may.len() {
            let mut g = base;
            for (bit, &(u, v)) in fam.may.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.set_edge(u, v);
                }
            }
            out.push(GenState { g, x, root: [a1, a2, a3], classes, ord: ord.clone(), act });
        }
    }
    out
}

/// Whether a state survives the pruning rules: forbidden path, 3-colourability,
/// apex multiplicities, the ordering rule and the minimality rule.
pub fn feasible(s: &GenState, p: &TripodProfile) -> bool {
    !contains_induced(&s.g, p.path()) && colorable(&s.g, 3) && structurally_feasible(s)
}

fn structurally_feasible(s: &GenState) -> bool {
    let nx = s.g.neighbors(s.x);
    if nx.intersection(s.classes[0]).len() >= 2 {
        return false;
    }
    if nx.intersection(s.classes[1]).len() >= 2 && nx.intersection(s.classes[2]).len() >= 2 {
        return false;
    }
    let root = VertexSet::from_slice(&s.root);
    for (a, &u) in s.ord.iter().enumerate() {
        if s.act.contains(u) {
            continue;
        }
        let i = s.class_of(u).expect("classified");
        let (j, k) = others(i);
        let (uj, uk) = (s.min_nbr(u, j), s.min_nbr(u, k));
        let base: Vec<usize> = [uj, uk].into_iter().flatten().collect();
        if base.iter().all(|&w| root.contains(w)) && base.len() == 2 {
            continue;
        }
        for &v in &s.ord[a + 1..] {
            let i2 = s.class_of(v).expect("classified");
            let (j2, k2) = others(i2);
            let (Some(vj), Some(vk)) = (s.min_nbr(v, j2), s.min_nbr(v, k2)) else { continue };
            let bound = s.pos(vj).max(s.pos(vk));
            if base.iter().any(|&w| bound < s.pos(w)) {
                return false;
            }
        }
    }
    for &u in &s.ord {
        let before = &s.ord[..s.pos(u)];
        let mut b = [VertexSet::EMPTY; 3];
        for &w in before {
            b[s.class_of(w).expect("classified")].insert(w);
        }
        loop {
            let placed = b[0].union(b[1]).union(b[2]).with(u);
            let found = s.g.vertices().difference(placed).iter().find_map(|v| {
                let seen: Vec<bool> = b.iter().map(|&c| s.g.neighbors(v).intersects(c)).collect();
                let count = seen.iter().filter(|&&t| t).count();
                (count >= 2).then(|| (v, count, seen.iter().position(|&t| !t)))
            });
            match found {
                None => break,
                Some((_, 3, _)) => return false,
                Some((v, _, Some(missing))) => b[missing].insert(v),
                Some(_) => unreachable!("two of three classes seen"),
            }
        }
    }
    true
}

/// Whether the labelled vertices, in `ord`, form a tripod that the apex sees
/// in every class.
fn labels_form_extension(s: &GenState) -> bool {
    let mut order = s.root.to_vec();
    order.extend(s.ord.iter().filter(|v| !s.root.contains(v)));
    Tripod::from_order(&s.g, &order, s.classes).is_some() && s.classes.iter().all(|&c| s.g.neighbors(s.x).intersects(c))
}

/// Collects critical graphs and per-order counts of feasible states.
#[derive(Clone, Debug, Default)]
pub struct GenSink {
    pub found: BTreeMap<CanonKey, Graph>,
    pub feasible_per_order: BTreeMap<usize, usize>,
    pub capped: bool,
}

impl GenSink {
    fn merge(&mut self, other: GenSink) {
        self.found.extend(other.found);
        for (n, c) in other.feasible_per_order {
            *self.feasible_per_order.entry(n).or_insert(0) += c;
        }
        self.capped |= other.capped;
    }
}

/// One call of the expansion procedure. A non-3-colourable state is reported
/// when its labelling is a tripod seen by the apex in all three classes and
/// the graph is critical; it is never expanded further.
pub fn expand_state(s: &GenState, p: &TripodProfile, opts: &TripodGenOptions, sink: &mut GenSink) {
    if !contains_induced(&s.g, p.path()) {
        expand_free(s, p, opts, sink);
    }
}

/// `expand_state` for a state already known to be free of the forbidden path.
fn expand_free(s: &GenState, p: &TripodProfile, opts: &TripodGenOptions, sink: &mut GenSink) {
    if !colorable(&s.g, 3) {
        if labels_form_extension(s) && is_k_critical_free(&s.g, 4, &[p.path()]) {
            let f = canonical_form(&s.g);
            sink.found.insert(f.key(), f.graph);
        }
        return;
    }
    if !structurally_feasible(s) {
        return;
    }
    *sink.feasible_per_order.entry(s.g.order()).or_insert(0) += 1;
    let Some(u) = pick_active(s, p, opts) else { return };
    let n = s.g.order();
    for child in children(s, u, p.max_n, &mut sink.capped) {
        // the parent is path-free, so any new copy runs through a new vertex
        if (n..child.g.order()).any(|v| contains_induced_through(&child.g, p.path(), v)) {
            continue;
        }
        expand_free(&child, p, opts, sink);
    }
}

fn pick_active(s: &GenState, p: &TripodProfile, opts: &TripodGenOptions) -> Option<usize> {
    let ord_max = s.act.iter().max_by_key(|&v| s.pos(v))?;
    if !opts.lookahead || s.g.order() <= 12 {
        return Some(ord_max);
    }
    let mut active: Vec<usize> = s.act.to_vec();
    active.sort_by_key(|&v| std::cmp::Reverse(s.pos(v)));
    active.into_iter().min_by_key(|&u| children(s, u, p.max_n, &mut false).iter().filter(|c| feasible(c, p)).count())
}

/// Gaps in `ord` strictly after `a1` and at or before index `limit`.
fn gaps(ord: &[usize], a1: usize, limit: usize) -> std::ops::RangeInclusive<usize> {
    let lo = ord.iter().position(|&w| w == a1).expect("root in order") + 1;
    lo..=limit
}

/// The states one expansion step produces from `s` for the active vertex `u`,
/// leaving out those above `max_n` and flagging `capped` if any existed.
fn children(s: &GenState, u: usize, max_n: usize, capped: &mut bool) -> Vec<GenState> {
    let mut out = Vec::new();
    let i = s.class_of(u).expect("active vertices are classified");
    let (j, k) = others(i);
    let (uj, uk) = (s.min_nbr(u, j), s.min_nbr(u, k));
    let a1 = s.root[0];
    let n = s.g.order();

    // both minimal neighbours new
    if n + 2 > max_n.min(MAX_N) {
        *capped = true;
    } else {
        let (vj, vk) = (n, n + 1);
        let limit_j = s.pos(u).min(uj.map_or(usize::MAX, |w| s.pos(w)));
        for gj in gaps(&s.ord, a1, limit_j) {
            let mut ord1 = s.ord.clone();
            ord1.insert(gj, vj);
            let pos1 = |v: usize| ord1.iter().position(|&w| w == v).unwrap_or(usize::MAX);
            let limit_k = pos1(u).min(uk.map_or(usize::MAX, pos1));
            for gk in gaps(&ord1, a1, limit_k) {
                let mut ord2 = ord1.clone();
                ord2.insert(gk, vk);
                let mut g =
                    s.g.add_vertex(VertexSet::EMPTY).and_then(|h| h.add_vertex(VertexSet::EMPTY)).expect("fits");
                g.set_edge(u, vj);
                g.set_edge(u, vk);
                let mut classes = s.classes;
                classes[j].insert(vj);
                classes[k].insert(vk);
                let at = |v: usize| ord2.iter().position(|&w| w == v).unwrap_or(usize::MAX);
                let mut cand: Vec<(usize, usize)> = vec![(s.x, vj), (s.x, vk), (vj, vk)];
                cand.extend(candidates(s, vj, j, &at).into_iter().map(|w| (w, vj)));
                cand.extend(candidates(s, vk, k, &at).into_iter().map(|w| (w, vk)));
                cand.retain(|&(w, _)| w != u);
                let act = s.act.without(u).with(vj).with(vk);
                push_subsets(&mut out, g, &cand, s, classes, &ord2, act);
            }
        }
    }

    // one minimal neighbour already labelled before u
    for (sc, ur, us) in [(k, uj, uk), (j, uk, uj)] {
        let Some(ur) = ur else { continue };
        if s.pos(ur) >= s.pos(u) {
            continue;
        }
        if n + 1 > max_n.min(MAX_N) {
            *capped = true;
            continue;
        }
        let v = n;
        let limit = s.pos(u).min(us.map_or(usize::MAX, |w| s.pos(w)));
        for gs in gaps(&s.ord, a1, limit) {
            let mut ord1 = s.ord.clone();
            ord1.insert(gs, v);
            let mut g = s.g.add_vertex(VertexSet::EMPTY).expect("fits");
            g.set_edge(u, v);
            let mut classes = s.classes;
            classes[sc].insert(v);
            let at = |w: usize| ord1.iter().position(|&z| z == w).unwrap_or(usize::MAX);
            let mut cand: Vec<(usize, usize)> = vec![(s.x, v)];
            cand.extend(candidates(s, v, sc, &at).into_iter().map(|w| (w, v)));
            cand.retain(|&(w, _)| w != u);
            let act = s.act.without(u).with(v);
            push_subsets(&mut out, g, &cand, s, classes, &ord1, act);
        }
    }

    // both minimal neighbours labelled before u
    if let (Some(a), Some(b)) = (uj, uk) {
        if s.pos(a) < s.pos(u) && s.pos(b) < s.pos(u) {
            out.push(GenState { act: s.act.without(u), ..s.clone() });
        }
    }
    out
}

/// Old vertices that may see a new vertex `v` of class `c`: active ones in the
/// other classes, and inactive ones there that already see an `ord`-earlier
/// vertex of class `c`.
fn candidates(s: &GenState, v: usize, c: usize, at: &dyn Fn(usize) -> usize) -> Vec<usize> {
    let (p, q) = others(c);
    s.classes[p]
        .union(s.classes[q])
        .iter()
        .filter(|&w| s.act.contains(w) || s.g.neighbors(w).intersection(s.classes[c]).iter().any(|w2| at(w2) < at(v)))
        .collect()
}

fn push_subsets(
    out: &mut Vec<GenState>,
    g: Graph,
    cand: &[(usize, usize)],
    s: &GenState,
    classes: [VertexSet; 3],
    ord: &[usize],
    act: VertexSet,
) {
    for mask in 0u64..1 << cand.len() {
        let mut h = g;
        for (b, &(a, c)) in cand.iter().enumerate() {
            if mask >> b & 1 == 1 {
                h.set_edge(a, c);
            }
        }
        out.push(GenState { g: h, x: s.x, root: s.root, classes, ord: ord.to_vec(), act });
    }
}

/// Runs every start state; `found` holds the critical extensions in
/// canonical form and `generated_per_order` the feasible states per order.
pub fn tripod_gen(p: &TripodProfile, opts: &TripodGenOptions) -> Result<RunReport> {
    p.validate()?;
    let starts: Vec<GenState> = start_states().into_iter().filter(|s| s.g.order() <= p.max_n).collect();
    let workers = opts.workers.max(1);
    let done = AtomicUsize::new(0);
    let found_so_far = AtomicUsize::new(0);
    let run_part = |part: &[GenState]| {
        let mut local = GenSink::default();
        for s in part {
            let before = local.found.len();
            expand_state(s, p, opts, &mut local);
            let new = local.found.len() - before;
            let found = found_so_far.fetch_add(new, Ordering::Relaxed) + new;
            let starts_done = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(cb) = opts.progress {
                cb(&GenProgress { starts_done, starts_total: starts.len(), found_so_far: found });
            }
        }
        local
    };
    let mut sink = GenSink::default();
    if workers == 1 {
        sink = run_part(&starts);
    } else {
        let chunks: Vec<Vec<GenState>> =
            (0..workers).map(|w| starts.iter().skip(w).step_by(workers).cloned().collect()).collect();
        let parts: Vec<GenSink> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks.iter().map(|part| scope.spawn(|| run_part(part))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for part in parts {
            sink.merge(part);
        }
    }
    let mut found: Vec<Graph> = sink.found.into_values().collect();
    found.sort_by_cached_key(|g| (g.order(), g.to_graph6()));
    Ok(RunReport { found, generated_per_order: sink.feasible_per_order, exhaustive: !sink.capped })
}
