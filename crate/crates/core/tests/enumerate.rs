use std::collections::HashSet;

use critgraph::canon::{canonical_form, canonical_key, CanonKey};
use critgraph::coloring::{colorable, is_k_vertex_critical};
use critgraph::corpus::{critical_by_exhaustion, load_fixtures, oracle_enumerate};
use critgraph::detect::{contains_induced, Pattern::*};
use critgraph::enumerate::{admits, default_seeds, plan, run, EnumProfile, Mode};
use critgraph::{Graph, VertexSet};

fn keys(gs: &[Graph]) -> Vec<CanonKey> {
    let mut k: Vec<CanonKey> = gs.iter().map(canonical_key).collect();
    k.sort();
    k
}

fn agree(profile: EnumProfile) {
    let (forbidden, k, mode) = (profile.forbidden.clone(), profile.k, profile.mode);
    let report = run(&profile.max_n(7)).unwrap();
    let oracle = oracle_enumerate(7, &|g| match mode {
        Mode::Critical => critical_by_exhaustion(g, k, &forbidden).unwrap(),
        Mode::VertexCritical => forbidden.iter().all(|&p| !contains_induced(g, p)) && is_k_vertex_critical(g, k),
    })
    .unwrap();
    assert_eq!(keys(&report.found), keys(&oracle), "k={k} {forbidden:?} {mode}");
}

#[test]
fn oracle_agreement_up_to_seven_vertices() {
    agree(EnumProfile::new(4, vec![Path(6)]));
    agree(EnumProfile::new(4, vec![Path(7)]));
    agree(EnumProfile::new(4, vec![Path(6)]).mode(Mode::VertexCritical));
    agree(EnumProfile::new(4, vec![Path(5)]));
    agree(EnumProfile::new(3, vec![Path(8)]));
}

/// Walks induced subgraphs of `target` from a seed copy, one vertex at a
/// time, allowing only vertices the planned rule admits.
fn reachable(target: &Graph, profile: &EnumProfile) -> bool {
    let n = target.order();
    let seeds: Vec<CanonKey> = default_seeds(profile).iter().map(canonical_key).collect();
    let mut stack: Vec<VertexSet> = Vec::new();
    for mask in 0u32..1 << n {
        let s = VertexSet(mask);
        if seeds.iter().any(|k| k.graph().order() == s.len() && canonical_key(&target.induced(s).unwrap()) == *k) {
            stack.push(s);
        }
    }
    let mut seen: HashSet<VertexSet> = stack.iter().copied().collect();
    while let Some(s) = stack.pop() {
        if s.len() == n {
            return true;
        }
        let sub = target.induced(s).unwrap();
        if !colorable(&sub, profile.k - 1) {
            continue;
        }
        let f = canonical_form(&sub);
        let (rule, _) = plan(&f.graph, profile);
        let idx = s.to_vec();
        for v in target.vertices().difference(s) {
            let nbrs = VertexSet::from_slice(
                &target
                    .neighbors(v)
                    .intersection(s)
                    .iter()
                    .map(|w| f.perm[idx.binary_search(&w).unwrap()])
                    .collect::<Vec<_>>(),
            );
            let next = s.with(v);
            if admits(&f.graph, &rule, profile.k, nbrs)
                && profile.is_free(&target.induced(next).unwrap())
                && seen.insert(next)
            {
                stack.push(next);
            }
        }
    }
    false
}

#[test]
fn diamond_free_fixtures_are_reachable() {
    let f = load_fixtures().unwrap();
    let profile = EnumProfile::new(4, vec![Path(6), Diamond]);
    for i in [11, 14, 16, 18, 24] {
        assert!(reachable(f.get(i).unwrap(), &profile), "F{i}");
    }
}

#[test]
fn fixtures_are_reachable() {
    let f = load_fixtures().unwrap();
    let profile = EnumProfile::new(4, vec![Path(6)]);
    for (i, g) in f.iter().filter(|(i, _)| *i > 1) {
        assert!(reachable(g, &profile), "F{i}");
    }
}
