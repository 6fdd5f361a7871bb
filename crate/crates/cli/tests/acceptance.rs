//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use critgraph::canon::{canonical_key, CanonKey};
use critgraph::coloring::{
    colorable, count_colorings_up_to_permutation, is_k_critical, is_k_critical_free, is_k_vertex_critical, k_hull,
};
use critgraph::corpus::{critical_by_exhaustion, load_fixtures, oracle_enumerate, pokrovskiy, FixtureSet};
use critgraph::detect::{contains_induced, Pattern, Pattern::*};
use critgraph::enumerate::{run, EnumProfile, Mode};
use critgraph::tripod::{
    check_thmg_assumptions, contract_tripod, grow_maximal_tripod, is_tripod_extension, tripod_gen, TripodGenOptions,
    TripodProfile,
};
use critgraph::Graph;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn keys_of(f: &FixtureSet, idx: &[usize]) -> BTreeSet<CanonKey> {
    idx.iter().map(|&i| canonical_key(f.get(i).unwrap())).collect()
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(u, v);
            }
        }
    }
    g
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u32..1 << pairs.len()).map(move |bits| {
        let mut g = Graph::empty(n).unwrap();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                g.set_edge(i, j);
            }
        }
        g
    })
}

fn criterion(num: usize, name: &str, budget: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let took = start.elapsed();
    let outcome = match outcome {
        Ok(d) if took > budget => Err(format!("{d}; took {took:.1?}, budget {budget:?}")),
        other => other,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} criterion {num:>2}: {name} [{took:.1?}] {detail}");
    outcome.is_ok()
}

fn fixture_verification() -> Check {
    let f = load_fixtures().map_err(|e| e.to_string())?;
    ensure(f.len() == 24, || format!("{} fixtures", f.len()))?;
    for (i, g) in f.iter() {
        ensure(!contains_induced(g, Path(6)), || format!("F{i} contains P6"))?;
        ensure(is_k_critical_free(g, 4, &[Path(6)]), || format!("F{i} not 4-critical"))?;
    }
    let want = counts(&[(4, 1), (6, 1), (7, 2), (8, 3), (9, 4), (10, 6), (11, 2), (12, 1), (13, 3), (16, 1)]);
    let got = f.counts_per_order();
    ensure(got == want, || format!("per-order counts {got:?}"))?;
    Ok(format!("counts {got:?}"))
}

fn diamond_free_run() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_critgraph"))
        .args(["enumerate", "--k", "4", "--forbid", "P6", "--forbid", "diamond"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let got: BTreeSet<CanonKey> = text.lines().map(|l| canonical_key(&Graph::from_graph6(l).unwrap())).collect();
    let f = load_fixtures().map_err(|e| e.to_string())?;
    ensure(text.lines().count() == 6, || format!("{} lines", text.lines().count()))?;
    ensure(got == keys_of(&f, &[1, 11, 14, 16, 18, 24]), || "set differs from F1,F11,F14,F16,F18,F24".into())?;
    Ok("6 graphs = {F1,F11,F14,F16,F18,F24}".into())
}

fn capped_p6_run() -> Check {
    let crit = run(&EnumProfile::new(4, vec![Path(6)]).max_n(10)).map_err(|e| e.to_string())?;
    let want = counts(&[(4, 1), (6, 1), (7, 2), (8, 3), (9, 4), (10, 6)]);
    ensure(crit.found_per_order() == want, || format!("critical {:?}", crit.found_per_order()))?;
    let vc =
        run(&EnumProfile::new(4, vec![Path(6)]).max_n(10).mode(Mode::VertexCritical)).map_err(|e| e.to_string())?;
    let want_vc = counts(&[(4, 1), (6, 1), (7, 7), (8, 6), (9, 16), (10, 34)]);
    ensure(vc.found_per_order() == want_vc, || format!("vertex-critical {:?}", vc.found_per_order()))?;
    Ok(format!("critical {:?}; vertex-critical {:?}", crit.found_per_order(), vc.found_per_order()))
}

fn capped_p7_run() -> Check {
    let r = run(&EnumProfile::new(4, vec![Path(7)]).max_n(10)).map_err(|e| e.to_string())?;
    let want = counts(&[(4, 1), (6, 1), (7, 2), (8, 5), (9, 21), (10, 99)]);
    ensure(r.found_per_order() == want, || format!("critical {:?}", r.found_per_order()))?;
    Ok(format!("critical {:?}", r.found_per_order()))
}

fn oracle_equivalence() -> Check {
    for (k, forbidden) in [(4, vec![Path(6)]), (4, vec![Path(7)]), (3, vec![Path(8)])] {
        let r = run(&EnumProfile::new(k, forbidden.clone()).max_n(7)).map_err(|e| e.to_string())?;
        let o =
            oracle_enumerate(7, &|g| critical_by_exhaustion(g, k, &forbidden).unwrap()).map_err(|e| e.to_string())?;
        let a: BTreeSet<CanonKey> = r.found.iter().map(canonical_key).collect();
        let b: BTreeSet<CanonKey> = o.iter().map(canonical_key).collect();
        ensure(a == b && a.len() == r.found.len(), || format!("k={k} {forbidden:?}: {} vs {}", a.len(), b.len()))?;
    }
    let distinct: Vec<usize> =
        (1..=5).map(|n| all_graphs(n).map(|g| canonical_key(&g)).collect::<BTreeSet<_>>().len()).collect();
    ensure(distinct == [1, 2, 4, 11, 34], || format!("distinct keys {distinct:?}"))?;
    Ok(format!("3 classes agree; distinct keys {distinct:?}"))
}

fn pokrovskiy_family() -> Check {
    for r in 2..=6 {
        let g = pokrovskiy(r).map_err(|e| e.to_string())?;
        ensure(!contains_induced(&g, Path(7)), || format!("G_{r} contains P7"))?;
        ensure(!colorable(&g, 3), || format!("G_{r} is 3-colorable"))?;
        ensure(is_k_vertex_critical(&g, 4), || format!("G_{r} not vertex-critical"))?;
        let h = g.delete_vertex(0).map_err(|e| e.to_string())?;
        let c = count_colorings_up_to_permutation(&h, 3).map_err(|e| e.to_string())?;
        ensure(c == 1, || format!("G_{r} - v0 has {c} colorings"))?;
    }
    Ok("r = 2..6".into())
}

fn tripod_classification() -> Check {
    let f = load_fixtures().map_err(|e| e.to_string())?;
    let ext: Vec<usize> = f.iter().filter(|(_, g)| is_tripod_extension(g)).map(|(i, _)| i).collect();
    ensure(ext == [1, 2, 4, 6, 7, 9, 10, 17, 21, 22, 23], || format!("extensions {ext:?}"))?;
    Ok(format!("extensions F{ext:?}"))
}

fn tripod_generator() -> Check {
    let f = load_fixtures().map_err(|e| e.to_string())?;
    let opts = TripodGenOptions { workers: 1, ..Default::default() };
    let r6 = tripod_gen(&TripodProfile::new(6, 10), &opts).map_err(|e| e.to_string())?;
    let got: BTreeSet<CanonKey> = r6.found.iter().map(canonical_key).collect();
    ensure(got == keys_of(&f, &[2, 4, 6, 7, 9, 10, 17]), || format!("P6 found {:?}", r6.found_per_order()))?;
    let r7 = tripod_gen(&TripodProfile::new(7, 8), &opts).map_err(|e| e.to_string())?;
    let want = counts(&[(6, 1), (7, 1), (8, 4)]);
    ensure(r7.found_per_order() == want, || format!("P7 counts {:?}", r7.found_per_order()))?;
    Ok(format!("P6 = {{F2,F4,F6,F7,F9,F10,F17}}; P7 {:?}", r7.found_per_order()))
}

fn local_structure() -> Check {
    let f = load_fixtures().map_err(|e| e.to_string())?;
    let bad: Vec<usize> = f.iter().filter(|(_, g)| !check_thmg_assumptions(g)).map(|(i, _)| i).collect();
    ensure(bad.is_empty(), || format!("fails on {bad:?}"))?;
    Ok("all 24 fixtures".into())
}

fn shrink_to_critical(rng: &mut StdRng, mut g: Graph, k: usize) -> Graph {
    loop {
        let mut cand: Vec<Graph> = (0..g.order()).map(|v| g.delete_vertex(v).unwrap()).collect();
        cand.extend(g.edges().map(|(u, v)| g.delete_edge(u, v).unwrap()));
        let keep: Vec<Graph> = cand.into_iter().filter(|h| !colorable(h, k - 1)).collect();
        if keep.is_empty() {
            return g;
        }
        g = keep[rng.gen_range(0..keep.len())];
    }
}

/// Induced containment by trying every injective map into `g`.
fn brute_contains(g: &Graph, p: Pattern) -> bool {
    let h = p.graph();
    let (n, m) = (g.order(), h.order());
    fn place(g: &Graph, h: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == h.order() {
            return true;
        }
        for v in 0..g.order() {
            if map.contains(&v) || (0..i).any(|j| h.has_edge(i, j) != g.has_edge(v, map[j])) {
                continue;
            }
            map.push(v);
            if place(g, h, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    m <= n && place(g, &h, &mut Vec::new())
}

fn property_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut hulls = 0;
    while hulls < 200 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.6);
        let g = random_graph(&mut rng, n, p);
        if !colorable(&g, 3) {
            continue;
        }
        let h = k_hull(&g, 3).map_err(|e| e.to_string())?;
        ensure(g.edges().all(|(u, v)| h.has_edge(u, v)), || format!("hull not a supergraph of {g:?}"))?;
        ensure(colorable(&h, 3), || format!("hull of {g:?} not colorable"))?;
        ensure(k_hull(&h, 3).map_err(|e| e.to_string())? == h, || format!("hull of {g:?} not idempotent"))?;
        hulls += 1;
    }
    let mut chains = 0;
    while chains < 200 {
        let k = rng.gen_range(3..=4);
        let n = rng.gen_range(4..=10);
        let p = rng.gen_range(0.3..0.8);
        let g = random_graph(&mut rng, n, p);
        if colorable(&g, k - 1) {
            continue;
        }
        let c = shrink_to_critical(&mut rng, g, k);
        ensure(is_k_critical(&c, k), || format!("{c:?} not {k}-critical"))?;
        ensure(is_k_vertex_critical(&c, k), || format!("{c:?} critical but not vertex-critical"))?;
        ensure(c.min_degree().unwrap_or(0) >= k - 1, || format!("{c:?} has a vertex of degree < {}", k - 1))?;
        chains += 1;
    }
    let mut contractions = 0;
    while contractions < 200 {
        let n = rng.gen_range(5..=11);
        let p = rng.gen_range(0.3..0.6);
        let g = random_graph(&mut rng, n, p);
        if contains_induced(&g, Path(6)) {
            continue;
        }
        let Some(root) = g
            .edges()
            .find_map(|(a, b)| g.neighbors(a).intersection(g.neighbors(b)).iter().find(|&c| c > b).map(|c| [a, b, c]))
        else {
            continue;
        };
        let tr = grow_maximal_tripod(&g, root).map_err(|e| e.to_string())?;
        let Ok(h) = contract_tripod(&g, &tr) else { continue };
        ensure(!contains_induced(&h, Path(6)), || format!("contracting {g:?} created P6"))?;
        ensure(colorable(&h, 3) == colorable(&g, 3), || format!("contracting {g:?} changed colorability"))?;
        contractions += 1;
    }
    for _ in 0..1000 {
        let n = rng.gen_range(0..=32);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let back = Graph::from_graph6(&g.to_graph6()).map_err(|e| e.to_string())?;
        ensure(back == g, || format!("graph6 round trip failed for {g:?}"))?;
    }
    let patterns = [Path(3), Path(4), Path(5), Path(6), Triangle, C4, C5, Diamond, K4];
    let mut compared = 0;
    for n in 0..=6 {
        for g in all_graphs(n) {
            for p in patterns {
                ensure(contains_induced(&g, p) == brute_contains(&g, p), || format!("{p} in {g:?}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!(
        "hull {hulls}, criticality chain (min degree >= k-1) {chains}, contraction {contractions}, graph6 1000, detector {compared}"
    ))
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let results = [
        criterion(1, "fixture verification", min(2), fixture_verification),
        criterion(2, "diamond-free enumeration", min(10), diamond_free_run),
        criterion(3, "P6-free run capped at 10", min(30), capped_p6_run),
        criterion(4, "P7-free run capped at 10", min(60), capped_p7_run),
        criterion(5, "oracle equivalence", min(10), oracle_equivalence),
        criterion(6, "Pokrovskiy family", min(5), pokrovskiy_family),
        criterion(7, "tripod-extension classification", min(5), tripod_classification),
        criterion(8, "tripod generator", min(60), tripod_generator),
        criterion(9, "local structure checker", min(1), local_structure),
        criterion(10, "property suite", min(30), property_suite),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
