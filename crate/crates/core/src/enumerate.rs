//! Pruned generation of k-critical graphs in a hereditary class.
//!
//! Graphs grow one vertex at a time. A (k-1)-colourable graph is expanded by
//! the first applicable rule of a fixed ladder; each rule restricts the
//! neighbourhood of the new vertex without losing any critical descendant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::canon::{canonical_form, CanonKey, SeenSet};
use crate::coloring::{
    colorable, is_k_critical_free, is_k_vertex_critical, similar_edges, similar_triangles, similar_vertices,
    SimilarEdgePair, SimilarPair, SimilarTrianglePair,
};
use crate::detect::{contains_induced, contains_induced_through, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Critical,
    VertexCritical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Critical => "critical",
            Mode::VertexCritical => "vertex-critical",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "critical" => Ok(Mode::Critical),
            "vertex-critical" | "vertex_critical" => Ok(Mode::VertexCritical),
            _ => Err(Error::Profile(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumProfile {
    pub k: usize,
    pub forbidden: Vec<Pattern>,
    /// Graphs of this order are tested but never expanded.
    pub max_n: usize,
    pub mode: Mode,
    /// `None` selects [`default_seeds`].
    pub seeds: Option<Vec<Graph>>,
}

impl EnumProfile {
    pub fn new(k: usize, forbidden: Vec<Pattern>) -> Self {
        EnumProfile { k, forbidden, max_n: MAX_N, mode: Mode::Critical, seeds: None }
    }

    pub fn max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn seeds(mut self, seeds: Vec<Graph>) -> Self {
        self.seeds = Some(seeds);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.k > 8 {
            return Err(Error::Profile(format!("k must lie in 2..=8, got {}", self.k)));
        }
        if self.max_n > MAX_N {
            return Err(Error::Capacity { n: self.max_n, max: MAX_N });
        }
        if let Some(p) = self.forbidden.iter().find(|p| !p.is_valid()) {
            return Err(Error::Profile(format!("invalid pattern {p}")));
        }
        if !self.forbidden.iter().any(|p| matches!(p, Pattern::Path(_))) {
            return Err(Error::Profile("a forbidden induced path is required".into()));
        }
        Ok(())
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.forbidden.iter().all(|&p| !contains_induced(g, p))
    }

    /// Critical is meant relative to the class: proper subgraphs containing
    /// a forbidden pattern may stay non-colourable.
    pub fn accepts(&self, g: &Graph) -> bool {
        match self.mode {
            Mode::Critical => is_k_critical_free(g, self.k, &self.forbidden),
            Mode::VertexCritical => is_k_vertex_critical(g, self.k),
        }
    }

    fn longest_allowed_path(&self) -> usize {
        self.forbidden
            .iter()
            .filter_map(|p| match p {
                Pattern::Path(t) => Some(*t),
                _ => None,
            })
            .min()
            .unwrap_or(MAX_N)
    }
}

/// Starting graphs that every target graph reaches through induced subgraphs.
///
/// For k = 4 a 4-critical graph other than K4 is imperfect, so it contains an
/// odd hole or the complement of C7; only holes shorter than the forbidden
/// path fit, and the complement of C7 is itself 4-vertex-critical. Other k
/// start from K1.
pub fn default_seeds(p: &EnumProfile) -> Vec<Graph> {
    let mut seeds = Vec::new();
    if p.k != 4 {
        seeds.push(Graph::complete(1));
    } else {
        seeds.push(Graph::complete(4));
        let t = p.longest_allowed_path();
        seeds.extend((5..=t.min(p.max_n)).step_by(2).map(Graph::cycle));
        if p.mode == Mode::VertexCritical {
            seeds.push(Graph::cycle(7).complement());
        }
    }
    seeds.retain(|g| g.order() <= p.max_n && p.is_free(g));
    seeds
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    /// Accepted critical graphs in canonical form, sorted by order then key.
    pub found: Vec<Graph>,
    /// Non-isomorphic graphs accepted per order.
    pub generated_per_order: BTreeMap<usize, usize>,
    /// False when some expandable graph sat at the vertex cap.
    pub exhaustive: bool,
}

impl RunReport {
    pub fn found_per_order(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for g in &self.found {
            *m.entry(g.order()).or_insert(0) += 1;
        }
        m
    }

    pub fn found_keys(&self) -> Vec<CanonKey> {
        self.found.iter().map(CanonKey::from_canonical).collect()
    }
}

/// Expansion rule chosen for a (k-1)-colourable graph, first applicable wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    SimilarVertices(SimilarPair),
    LowDegree(usize),
    SimilarEdges(SimilarEdgePair),
    SimilarTriangles(SimilarTrianglePair),
    Free,
}

/// Every tuple of the first applicable rule kind, in lexicographic order.
/// `g` must be (k-1)-colourable.
pub fn rule_candidates(g: &Graph, k: usize) -> Vec<Rule> {
    let c = k - 1;
    let found = similar_vertices(g, c);
    if !found.is_empty() {
        return found.into_iter().map(Rule::SimilarVertices).collect();
    }
    let low: Vec<Rule> = (0..g.order()).filter(|&u| g.degree(u) + 2 <= k).map(Rule::LowDegree).collect();
    if !low.is_empty() {
        return low;
    }
    let found = similar_edges(g, c);
    if !found.is_empty() {
        return found.into_iter().map(Rule::SimilarEdges).collect();
    }
    let found = similar_triangles(g, c);
    if !found.is_empty() {
        return found.into_iter().map(Rule::SimilarTriangles).collect();
    }
    vec![Rule::Free]
}

/// The candidate admitting the fewest extensions (earliest on ties), with
/// those extensions. Any candidate is sound; the smallest keeps runs finite.
pub fn plan(g: &Graph, p: &EnumProfile) -> (Rule, Vec<Graph>) {
    let mut best: Option<(Rule, Vec<Graph>)> = None;
    for rule in rule_candidates(g, p.k) {
        let limit = best.as_ref().map(|(_, kids)| kids.len());
        if let Some(kids) = expand_bounded(g, &rule, p, limit) {
            let done = kids.is_empty();
            best = Some((rule, kids));
            if done {
                break;
            }
        }
    }
    best.expect("at least one candidate rule")
}

/// One way a rule can be satisfied: the new vertex sees `trigger` and, when
/// `partner` is set, may share a colour with it once `removed` is deleted.
#[derive(Clone, Copy, Debug)]
struct Clause {
    trigger: usize,
    removed: VertexSet,
    partner: Option<usize>,
}

impl Rule {
    fn clauses(&self, n: usize) -> Vec<Clause> {
        let plain = |u| Clause { trigger: u, removed: VertexSet::EMPTY, partner: None };
        match *self {
            Rule::Free => (0..n).map(plain).collect(),
            Rule::LowDegree(u) => vec![plain(u)],
            Rule::SimilarVertices(SimilarPair { u, v }) => {
                vec![Clause { trigger: u, removed: VertexSet::singleton(u), partner: Some(v) }]
            }
            Rule::SimilarEdges(SimilarEdgePair { u, v, u2, v2 }) => {
                let removed = VertexSet::from_slice(&[u, v]);
                vec![
                    Clause { trigger: u, removed, partner: Some(u2) },
                    Clause { trigger: v, removed, partner: Some(v2) },
                ]
            }
            Rule::SimilarTriangles(SimilarTrianglePair { first, second }) => {
                let removed = VertexSet::from_slice(&first);
                (0..3).map(|i| Clause { trigger: first[i], removed, partner: Some(second[i]) }).collect()
            }
        }
    }
}

/// Whether attaching a vertex with neighbourhood `nbrs` to `g` is allowed by `rule`.
///
/// The new vertex never goes without neighbours: a critical graph is connected,
/// so some unused vertex of it always sees the current induced subgraph.
pub fn admits(g: &Graph, rule: &Rule, k: usize, nbrs: VertexSet) -> bool {
    let h = g.add_vertex_unchecked(nbrs);
    rule.clauses(g.order()).iter().any(|c| nbrs.contains(c.trigger) && clause_open(&h, c, k - 1))
}

/// The partner condition of `c` for the new (last) vertex of `h`.
///
/// Adding neighbours to the new vertex only adds constraints, so a clause
/// that fails for some neighbourhood fails for all of its supersets.
fn clause_open(h: &Graph, c: &Clause, colors: usize) -> bool {
    match c.partner {
        None => true,
        Some(a) => shares_color(h, c.removed, a, h.order() - 1, colors),
    }
}

/// `a x` is a non-edge of the c-hull of `h - removed`; false when that hull is undefined.
fn shares_color(h: &Graph, removed: VertexSet, a: usize, x: usize, c: usize) -> bool {
    if h.has_edge(a, x) {
        return false;
    }
    let mut m = *h;
    for w in h.neighbors(x) {
        m.set_edge(a, w);
    }
    colorable(&m.induced_unchecked(h.vertices().difference(removed).without(x)), c)
}

/// Every one-vertex extension of `g` admitted by `rule` that avoids the
/// forbidden patterns; the new vertex is `g.order()`.
///
/// Extensions whose new vertex already completes a non-(k-1)-colourable proper
/// induced subgraph are skipped, since they can be neither critical nor expanded.
pub fn expand(g: &Graph, rule: &Rule, p: &EnumProfile) -> Vec<Graph> {
    expand_bounded(g, rule, p, None).expect("unbounded expansion")
}

/// As [`expand`], giving up with `None` once `limit` extensions are found.
fn expand_bounded(g: &Graph, rule: &Rule, p: &EnumProfile, limit: Option<usize>) -> Option<Vec<Graph>> {
    let clauses = rule.clauses(g.order());
    let triggers: VertexSet = clauses.iter().map(|c| c.trigger).collect();
    let mut e = Expander {
        g,
        p,
        order: search_order(g, triggers),
        triggers,
        forced: if clauses.len() == 1 { Some(clauses[0].trigger) } else { None },
        clauses,
        limit: limit.unwrap_or(usize::MAX),
        out: Vec::new(),
    };
    e.dfs(0, VertexSet::EMPTY, VertexSet::EMPTY);
    (e.out.len() < e.limit).then_some(e.out)
}

/// Triggers first, then the rest by distance from them: patterns through the
/// new vertex are local, so deciding nearby vertices early prunes sooner.
fn search_order(g: &Graph, start: VertexSet) -> Vec<usize> {
    let mut order: Vec<usize> = start.to_vec();
    let mut seen = start;
    let mut i = 0;
    while order.len() < g.order() {
        if i == order.len() {
            let v = g.vertices().difference(seen).first().expect("unvisited vertex");
            seen.insert(v);
            order.push(v);
        }
        for w in g.neighbors(order[i]).difference(seen) {
            seen.insert(w);
            order.push(w);
        }
        i += 1;
    }
    order
}

struct Expander<'a> {
    g: &'a Graph,
    p: &'a EnumProfile,
    order: Vec<usize>,
    triggers: VertexSet,
    forced: Option<usize>,
    clauses: Vec<Clause>,
    limit: usize,
    out: Vec<Graph>,
}

impl Expander<'_> {
    fn dfs(&mut self, i: usize, decided: VertexSet, s: VertexSet) {
        let n = self.g.order();
        let x = n;
        if self.out.len() >= self.limit {
            return;
        }
        if i == n {
            let h = self.g.add_vertex_unchecked(s);
            let c = self.p.k - 1;
            if self.clauses.iter().any(|cl| s.contains(cl.trigger) && clause_open(&h, cl, c)) {
                self.out.push(h);
            }
            return;
        }
        let v = self.order[i];
        let decided = decided.with(v);
        for take in [false, true] {
            if !take && self.forced == Some(v) {
                continue;
            }
            let s2 = if take { s.with(v) } else { s };
            let undecided = self.g.vertices().difference(decided);
            if !self.triggers.intersects(s2.union(undecided)) {
                continue;
            }
            let h = self.g.add_vertex_unchecked(s2);
            let part = h.induced_unchecked(decided.with(x));
            let px = part.order() - 1;
            if self.p.forbidden.iter().any(|&pat| contains_induced_through(&part, pat, px)) {
                continue;
            }
            if i + 1 < n && !colorable(&part, self.p.k - 1) {
                continue;
            }
            if (take || self.triggers.contains(v)) && !self.any_clause_alive(&h, s2, undecided) {
                continue;
            }
            self.dfs(i + 1, decided, s2);
        }
    }

    fn any_clause_alive(&self, h: &Graph, s: VertexSet, undecided: VertexSet) -> bool {
        let c = self.p.k - 1;
        self.clauses
            .iter()
            .any(|cl| (s.contains(cl.trigger) || undecided.contains(cl.trigger)) && clause_open(h, cl, c))
    }
}

/// Per-level progress, reported after each order is processed.
#[derive(Clone, Copy, Debug)]
pub struct LevelStats {
    pub order: usize,
    pub accepted: usize,
    pub found_so_far: usize,
}

pub struct RunOptions<'a> {
    pub workers: usize,
    pub progress: Option<&'a (dyn Fn(&LevelStats) + Sync)>,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        RunOptions { workers: 1, progress: None }
    }
}

pub fn run(profile: &EnumProfile) -> Result<RunReport> {
    run_with(profile, &RunOptions::default())
}

/// Processes graphs order by order; all graphs of one order are deduplicated
/// before any of them is expanded, so the report does not depend on `workers`.
pub fn run_with(profile: &EnumProfile, opts: &RunOptions<'_>) -> Result<RunReport> {
    profile.validate()?;
    let seeds = match &profile.seeds {
        Some(s) => s.clone(),
        None => default_seeds(profile),
    };
    let mut levels: BTreeMap<usize, BTreeMap<CanonKey, Graph>> = BTreeMap::new();
    for s in seeds {
        if s.order() > profile.max_n || !profile.is_free(&s) {
            continue;
        }
        let f = canonical_form(&s);
        levels.entry(s.order()).or_default().insert(f.key(), f.graph);
    }
    let mut report = RunReport { exhaustive: true, ..Default::default() };
    while let Some((order, level)) = levels.pop_first() {
        report.generated_per_order.insert(order, level.len());
        let graphs: Vec<Graph> = level.into_values().collect();
        let outcomes = process_all(&graphs, profile, opts.workers.max(1));
        for (g, o) in graphs.iter().zip(outcomes) {
            if o.record {
                report.found.push(*g);
            }
            report.exhaustive &= !o.capped;
            for (key, h) in o.children {
                levels.entry(order + 1).or_default().insert(key, h);
            }
        }
        if let Some(cb) = opts.progress {
            cb(&LevelStats { order, accepted: graphs.len(), found_so_far: report.found.len() });
        }
    }
    report.found.sort_by_cached_key(|g| (g.order(), g.to_graph6()));
    Ok(report)
}

struct Outcome {
    record: bool,
    capped: bool,
    children: Vec<(CanonKey, Graph)>,
}

fn process_all(graphs: &[Graph], p: &EnumProfile, workers: usize) -> Vec<Outcome> {
    if workers == 1 || graphs.len() < 2 {
        return graphs.iter().map(|g| process(g, p)).collect();
    }
    let chunk = graphs.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|g| process(g, p)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// One call of the construction step on a canonically labelled, pattern-free graph.
fn process(g: &Graph, p: &EnumProfile) -> Outcome {
    debug_assert!(p.is_free(g));
    let mut o = Outcome { record: false, capped: false, children: Vec::new() };
    if !colorable(g, p.k - 1) {
        o.record = p.accepts(g);
        return o;
    }
    if g.order() >= p.max_n {
        o.capped = true;
        return o;
    }
    o.children = plan(g, p)
        .1
        .into_iter()
        .map(|h| {
            let f = canonical_form(&h);
            (f.key(), f.graph)
        })
        .collect();
    o
}

/// Single construction step with explicit dedup state: rejects `g` if it
/// contains a forbidden pattern or is isomorphic to something in `seen`,
/// records it in `out` when it is critical, and returns its admitted
/// extensions (unvisited).
pub fn construct_step(g: &Graph, profile: &EnumProfile, seen: &mut SeenSet, out: &mut RunReport) -> Vec<Graph> {
    if !profile.is_free(g) {
        return Vec::new();
    }
    let f = canonical_form(g);
    if !seen.insert_key(f.key()) {
        return Vec::new();
    }
    *out.generated_per_order.entry(g.order()).or_insert(0) += 1;
    let o = process(&f.graph, profile);
    if o.record {
        out.found.push(f.graph);
    }
    if o.capped {
        out.exhaustive = false;
    }
    o.children.into_iter().map(|(_, h)| h).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::coloring::is_k_critical;
    use crate::detect::Pattern::*;

    fn w5() -> Graph {
        let mut g = Graph::cycle(5).add_vertex(VertexSet::full(5)).unwrap();
        g.set_edge(0, 5);
        g
    }

    #[test]
    fn profile_validation() {
        assert!(EnumProfile::new(4, vec![Diamond]).validate().is_err());
        assert!(EnumProfile::new(4, vec![Path(6)]).max_n(33).validate().is_err());
        assert!(EnumProfile::new(4, vec![Path(6)]).validate().is_ok());
        assert!("vertex-critical".parse::<Mode>().is_ok());
        assert!("both".parse::<Mode>().is_err());
    }

    #[test]
    fn seeds() {
        let p6 = EnumProfile::new(4, vec![Path(6)]);
        let s: Vec<_> = default_seeds(&p6).iter().map(|g| g.order()).collect();
        assert_eq!(s, vec![4, 5]);
        let p7 = EnumProfile::new(4, vec![Path(7)]).mode(Mode::VertexCritical);
        let s: Vec<_> = default_seeds(&p7).iter().map(|g| g.order()).collect();
        assert_eq!(s, vec![4, 5, 7, 7]);
        let no_k4 = EnumProfile::new(4, vec![Path(6), K4]);
        assert_eq!(default_seeds(&no_k4).len(), 1);
        assert_eq!(default_seeds(&EnumProfile::new(3, vec![Path(8)])), vec![Graph::complete(1)]);
    }

    #[test]
    fn rule_ladder() {
        // every C5 vertex has degree 2 and no similar pair exists
        let p = EnumProfile::new(4, vec![Path(6), Diamond]);
        assert_eq!(rule_candidates(&Graph::cycle(5), 4).len(), 5);
        assert_eq!(plan(&Graph::cycle(5), &p).0, Rule::LowDegree(0));
        assert_eq!(plan(&Graph::cycle(4), &p).0, Rule::SimilarVertices(SimilarPair { u: 0, v: 2 }));
        let r = Rule::SimilarVertices(SimilarPair { u: 0, v: 2 });
        // x must see u; seeing only u it can still take the colour of v once u is gone
        assert!(admits(&Graph::cycle(4), &r, 4, VertexSet::from_slice(&[0])));
        assert!(!admits(&Graph::cycle(4), &r, 4, VertexSet::from_slice(&[1])));
    }

    #[test]
    fn construct_step_stops_on_non_critical() {
        let mut seen = SeenSet::new();
        let mut out = RunReport::default();
        let p = EnumProfile::new(4, vec![Path(6)]);
        let g = w5().add_vertex(VertexSet::singleton(0)).unwrap();
        assert!(construct_step(&g, &p, &mut seen, &mut out).is_empty());
        assert!(out.found.is_empty());
        assert!(construct_step(&w5(), &p, &mut seen, &mut out).is_empty());
        assert_eq!(out.found.len(), 1);
        assert!(construct_step(&w5(), &p, &mut seen, &mut out).is_empty());
        assert_eq!(out.found.len(), 1);
        let kids = construct_step(&Graph::cycle(5), &p, &mut seen, &mut out);
        assert!(!kids.is_empty());
        assert!(kids.iter().all(|h| h.order() == 6 && h.degree(5) > 0 && p.is_free(h)));
    }

    #[test]
    fn p6_small_counts() {
        let r = run(&EnumProfile::new(4, vec![Path(6)]).max_n(8)).unwrap();
        let counts: Vec<(usize, usize)> = r.found_per_order().into_iter().collect();
        assert_eq!(counts, vec![(4, 1), (6, 1), (7, 2), (8, 3)]);
        assert!(!r.exhaustive);
        assert!(r.found.iter().all(|g| is_k_critical(g, 4) && !contains_induced(g, Path(6))));
        assert!(r.found.contains(&canonical_form(&w5()).graph));
    }

    #[test]
    fn workers_do_not_change_the_report() {
        let p = EnumProfile::new(4, vec![Path(7)]).max_n(8);
        let a = run(&p).unwrap();
        let b = run_with(&p, &RunOptions { workers: 3, progress: None }).unwrap();
        assert_eq!(a, b);
        let keys: Vec<CanonKey> = a.found.iter().map(canonical_key).collect();
        assert_eq!(keys, a.found_keys());
    }

    #[test]
    fn odd_cycles_are_the_three_critical_graphs() {
        let r = run(&EnumProfile::new(3, vec![Path(8)]).max_n(9)).unwrap();
        let orders: Vec<usize> = r.found.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![3, 5, 7]);
    }
}
