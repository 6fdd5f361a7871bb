//! Reference graphs: the 24 obstructions, the Pokrovskiy family `G_r`, and a
//! brute-force generator of all unlabelled graphs for cross-checking.

use std::collections::BTreeMap;
use std::path::Path;

use crate::canon::SeenSet;
use crate::coloring::{colorable, is_k_chromatic, is_k_vertex_critical};
use crate::detect::{contains_induced, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_N};

/// Environment variable naming a fixture file to load instead of the bundled one.
pub const FIXTURES_ENV: &str = "CRITGRAPH_FIXTURES";

const BUNDLED: &str = include_str!("../data/fixtures.txt");

/// The obstructions `F1..F24` in list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSet {
    pub graphs: Vec<Graph>,
}

impl FixtureSet {
    /// `F<i>`, 1-based.
    pub fn get(&self, i: usize) -> Option<&Graph> {
        i.checked_sub(1).and_then(|j| self.graphs.get(j))
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// `(index, graph)` pairs with 1-based indices.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Graph)> {
        self.graphs.iter().enumerate().map(|(j, g)| (j + 1, g))
    }

    pub fn counts_per_order(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for g in &self.graphs {
            *m.entry(g.order()).or_insert(0) += 1;
        }
        m
    }
}

/// Loads the bundled list, or the file named by [`FIXTURES_ENV`] when set.
pub fn load_fixtures() -> Result<FixtureSet> {
    match std::env::var_os(FIXTURES_ENV) {
        Some(path) => load_fixtures_from(Path::new(&path)),
        None => parse_fixtures(BUNDLED),
    }
}

pub fn load_fixtures_from(path: &Path) -> Result<FixtureSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Fixture { line: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_fixtures(&text)
}

/// Parses lines `Graph F<k>: {v : n1 n2 ...; v : ...}`; blank lines are skipped.
///
/// The published F1 entry repeats the line of vertex 2 and has none for
/// vertex 3. An entry whose only defect is one verbatim duplicate line
/// standing in for a missing vertex gets that vertex's row back from the
/// other rows; for F1 this yields K4, which is asserted.
pub fn parse_fixtures(text: &str) -> Result<FixtureSet> {
    let mut graphs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Fixture { line, msg };
        let rest = raw.strip_prefix("Graph F").ok_or_else(|| err("expected `Graph F<k>:`".into()))?;
        let (idx, body) = rest.split_once(':').ok_or_else(|| err("missing `:` after name".into()))?;
        let idx: usize = idx.trim().parse().map_err(|_| err(format!("bad index `{idx}`")))?;
        if idx != graphs.len() + 1 {
            return Err(err(format!("expected F{}, found F{idx}", graphs.len() + 1)));
        }
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| err("adjacency list must be enclosed in braces".into()))?;
        let g = parse_adjacency(body).map_err(err)?;
        if idx == 1 && g != Graph::complete(4) {
            return Err(err("F1 must be K4".into()));
        }
        graphs.push(g);
    }
    Ok(FixtureSet { graphs })
}

fn parse_adjacency(body: &str) -> std::result::Result<Graph, String> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for entry in body.split(';') {
        let (v, nbrs) = entry.split_once(':').ok_or_else(|| format!("entry `{}` lacks `:`", entry.trim()))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad vertex `{}`", v.trim()))?;
        let nbrs = nbrs
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad neighbour `{t}`")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push((v, nbrs));
    }
    let n = rows.len();
    if n > MAX_N {
        return Err(format!("{n} vertices exceed the cap of {MAX_N}"));
    }
    let mut seen = vec![false; n];
    let mut duplicate = None;
    for (pos, (v, nbrs)) in rows.iter().enumerate() {
        if *v >= n || nbrs.iter().any(|&w| w >= n || w == *v) {
            return Err(format!("row of vertex {v} is out of range"));
        }
        if seen[*v] {
            let first = rows.iter().position(|(u, _)| u == v).expect("seen");
            if rows[first].1 != *nbrs || duplicate.is_some() {
                return Err(format!("vertex {v} listed twice"));
            }
            duplicate = Some(pos);
        }
        seen[*v] = true;
    }
    if let Some(pos) = duplicate {
        let missing = seen.iter().position(|&s| !s).expect("one row short");
        let nbrs = rows
            .iter()
            .enumerate()
            .filter(|&(i, (_, ns))| i != pos && ns.contains(&missing))
            .map(|(_, (u, _))| *u)
            .collect();
        rows[pos] = (missing, nbrs);
    }
    let mut g = Graph::empty(n).map_err(|e| e.to_string())?;
    for (v, nbrs) in &rows {
        for &w in nbrs {
            g.set_edge(*v, w);
        }
    }
    for (v, nbrs) in &rows {
        if g.degree(*v) != nbrs.len() {
            return Err(format!("adjacency of vertex {v} is not symmetric"));
        }
    }
    Ok(g)
}

/// The largest `r` whose `G_r` fits in [`MAX_N`] vertices.
pub const POKROVSKIY_MAX_R: usize = 10;

/// `G_r` on `v_0..v_{3r}`: `v_i` sees `v_{i-1}`, `v_{i+1}` and `v_{i+3j+2}`
/// for `0 <= j < r`, indices mod `3r+1`.
pub fn pokrovskiy(r: usize) -> Result<Graph> {
    if r == 0 || r > POKROVSKIY_MAX_R {
        return Err(Error::SizeCap { n: 3 * r + 1, max: 3 * POKROVSKIY_MAX_R + 1 });
    }
    let n = 3 * r + 1;
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.set_edge(i, (i + 1) % n);
        for j in 0..r {
            g.set_edge(i, (i + 3 * j + 2) % n);
        }
    }
    Ok(g)
}

/// Largest order [`oracle_enumerate`] accepts.
pub const ORACLE_MAX_N: usize = 8;

/// Every unlabelled graph on `1..=max_n` vertices passing `filter`, ordered
/// by order and then graph6 of the canonical form.
///
/// Generation adds one vertex to each class representative in all `2^n`
/// ways and keeps one representative per class, with no pruning.
pub fn oracle_enumerate(max_n: usize, filter: &dyn Fn(&Graph) -> bool) -> Result<Vec<Graph>> {
    if max_n > ORACLE_MAX_N {
        return Err(Error::SizeCap { n: max_n, max: ORACLE_MAX_N });
    }
    let mut out = Vec::new();
    let mut level = if max_n == 0 { Vec::new() } else { vec![Graph::empty(1)?] };
    for n in 1..=max_n {
        let mut passed: Vec<Graph> =
            level.iter().filter(|g| filter(g)).map(|g| crate::canon::canonical_form(g).graph).collect();
        passed.sort_by_key(|g| g.to_graph6());
        out.extend(passed);
        if n == max_n {
            break;
        }
        let mut seen = SeenSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << n {
                let h = g.add_vertex(VertexSet(mask))?;
                if seen.insert_if_new(&h) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(out)
}

/// Largest edge count [`critical_by_exhaustion`] accepts.
pub const EXHAUSTION_MAX_EDGES: usize = 24;

/// k-criticality within the `forbidden`-free graphs, decided by testing
/// every spanning edge subset. Patterns are connected, so a proper subgraph
/// on fewer vertices can be padded with isolated vertices.
pub fn critical_by_exhaustion(g: &Graph, k: usize, forbidden: &[Pattern]) -> Result<bool> {
    let free = |h: &Graph| forbidden.iter().all(|&p| !contains_induced(h, p));
    if !free(g) || !is_k_chromatic(g, k) || !is_k_vertex_critical(g, k) {
        return Ok(false);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > EXHAUSTION_MAX_EDGES {
        return Err(Error::SizeCap { n: edges.len(), max: EXHAUSTION_MAX_EDGES });
    }
    Ok((0u32..(1 << edges.len()) - 1).all(|mask| {
        let mut h = Graph::empty(g.order()).expect("same order");
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h.set_edge(u, v);
            }
        }
        colorable(&h, k - 1) || !free(&h)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn bundled_fixtures_parse() {
        let f = parse_fixtures(BUNDLED).unwrap();
        assert_eq!(f.len(), 24);
        assert_eq!(f.get(1), Some(&Graph::complete(4)));
        assert_eq!(f.get(18).unwrap().order(), 11);
        assert_eq!(f.get(24).unwrap().order(), 16);
        assert_eq!(f.get(0), None);
        assert_eq!(f.get(25), None);
        let counts: Vec<(usize, usize)> = f.counts_per_order().into_iter().collect();
        assert_eq!(counts, vec![(4, 1), (6, 1), (7, 2), (8, 3), (9, 4), (10, 6), (11, 2), (12, 1), (13, 3), (16, 1)]);
    }

    #[test]
    fn fixture_errors_carry_line_numbers() {
        let bad = "Graph F1: {0 : 1 2 3; 1 : 0 2 3; 2 : 0 1 3; 3 : 0 1 2}\n\nGraph F2: {0 : 1; 1 : 2; 2 : 1}\n";
        assert_eq!(
            parse_fixtures(bad),
            Err(Error::Fixture { line: 3, msg: "adjacency of vertex 1 is not symmetric".into() })
        );
        assert!(matches!(parse_fixtures("Graph F2: {0 : 1; 1 : 0}"), Err(Error::Fixture { line: 1, .. })));
        assert!(matches!(parse_fixtures("F1 {0 : 1}"), Err(Error::Fixture { line: 1, .. })));
        assert!(matches!(parse_fixtures("Graph F1: {0 : 1; 1 : x}"), Err(Error::Fixture { line: 1, .. })));
        // a duplicate that differs from the first copy is not repaired
        let dup = "Graph F1: {0 : 1 2 3; 1 : 0 2 3; 2 : 0 1 3; 2 : 0 1}";
        assert!(parse_fixtures(dup).is_err());
    }

    #[test]
    fn fixtures_load_from_override_file() {
        let dir = std::env::temp_dir().join(format!("critgraph-fixtures-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.txt");
        std::fs::write(&path, "Graph F1: {0 : 1 2 3; 1 : 0 2 3; 2 : 0 1 3; 3 : 0 1 2}\n").unwrap();
        let f = load_fixtures_from(&path).unwrap();
        assert_eq!(f.len(), 1);
        assert!(load_fixtures_from(&dir.join("missing.txt")).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn pokrovskiy_examples() {
        assert_eq!(pokrovskiy(1).unwrap(), Graph::complete(4));
        assert_eq!(pokrovskiy(5).unwrap().order(), 16);
        assert_eq!(pokrovskiy(10).unwrap().order(), 31);
        assert!(pokrovskiy(0).is_err());
        assert!(pokrovskiy(11).is_err());
    }

    #[test]
    fn oracle_census() {
        let all = oracle_enumerate(5, &|_| true).unwrap();
        assert_eq!(all.len(), 1 + 2 + 4 + 11 + 34);
        assert!(oracle_enumerate(9, &|_| true).is_err());
        let odd = oracle_enumerate(7, &|g| critical_by_exhaustion(g, 3, &[]).unwrap()).unwrap();
        let expect = [Graph::complete(3), Graph::cycle(5), Graph::cycle(7)];
        assert_eq!(odd.len(), 3);
        assert!(odd.iter().zip(&expect).all(|(a, b)| are_isomorphic(a, b)));
    }

    #[test]
    fn exhaustion_respects_the_class() {
        let mut w5 = Graph::cycle(5).add_vertex(VertexSet::full(5)).unwrap();
        w5.set_edge(0, 5);
        assert!(critical_by_exhaustion(&w5, 4, &[Pattern::Path(6)]).unwrap());
        assert!(!critical_by_exhaustion(&Graph::cycle(5), 4, &[]).unwrap());
        assert!(critical_by_exhaustion(&Graph::complete(8), 8, &[]).is_err());
    }
}
