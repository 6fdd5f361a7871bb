//! Local structure that every 4-critical P6-free graph is known to have.

use crate::graph::{Graph, VertexSet};

/// Whether `h` has the neighbourhood shapes and the domination-freeness
/// required by the contraction argument: each `N(v)` is a triangle, an
/// induced 5-cycle, or bipartite with a separated bipartition, and no two
/// nonadjacent vertices with a common neighbour have nested neighbourhoods.
pub fn check_thmg_assumptions(h: &Graph) -> bool {
    h.vertices().iter().all(|v| neighbourhood_ok(h, v)) && no_nested_neighbourhoods(h)
}

fn neighbourhood_ok(h: &Graph, v: usize) -> bool {
    let nv = h.neighbors(v);
    let sub = h.induced(nv).expect("subset of vertices");
    let m = sub.order();
    if m == 3 && sub.edge_count() == 3 {
        return true;
    }
    if m == 5 && sub.edge_count() == 5 && (0..5).all(|u| sub.degree(u) == 2) && sub.is_connected() {
        return true;
    }
    let Some(parts) = bipartite_components(h, nv) else { return false };
    let outside = h.vertices().difference(nv.with(v));
    let mut sides = (VertexSet::EMPTY, VertexSet::EMPTY);
    orient(h, outside, &parts, 0, &mut sides)
}

/// The two colour classes of each component of `h[s]`, or `None` if it is not
/// bipartite.
fn bipartite_components(h: &Graph, s: VertexSet) -> Option<Vec<(VertexSet, VertexSet)>> {
    let mut side = [2u8; 32];
    let mut out = Vec::new();
    for r in s.iter() {
        if side[r] != 2 {
            continue;
        }
        side[r] = 0;
        let mut parts = [VertexSet::singleton(r), VertexSet::EMPTY];
        let mut queue = vec![r];
        while let Some(u) = queue.pop() {
            for w in h.neighbors(u).intersection(s).iter() {
                if side[w] == 2 {
                    side[w] = 1 - side[u];
                    parts[side[w] as usize].insert(w);
                    queue.push(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
        out.push((parts[0], parts[1]));
    }
    Some(out)
}

fn separated(h: &Graph, outside: VertexSet, p: usize, q: usize) -> bool {
    let diff = VertexSet(h.neighbors(p).0 ^ h.neighbors(q).0);
    diff.intersects(outside)
}

fn side_ok(h: &Graph, outside: VertexSet, side: VertexSet, add: VertexSet) -> bool {
    add.iter().all(|p| side.iter().chain(add.iter().filter(|&q| q > p)).all(|q| separated(h, outside, p, q)))
}

fn cross_ok(h: &Graph, outside: VertexSet, xs: VertexSet, ys: VertexSet) -> bool {
    xs.iter().all(|x| {
        ys.iter().all(|y| h.has_edge(x, y) || h.neighbors(x).intersects(outside) || h.neighbors(y).intersects(outside))
    })
}

/// Backtracks over the orientation of each component, the first one fixed.
fn orient(
    h: &Graph,
    outside: VertexSet,
    parts: &[(VertexSet, VertexSet)],
    i: usize,
    sides: &mut (VertexSet, VertexSet),
) -> bool {
    let Some(&(a, b)) = parts.get(i) else { return true };
    let flips: &[bool] = if i == 0 { &[false] } else { &[false, true] };
    for &flip in flips {
        let (px, py) = if flip { (b, a) } else { (a, b) };
        let (x, y) = *sides;
        let ok = side_ok(h, outside, x, px)
            && side_ok(h, outside, y, py)
            && cross_ok(h, outside, x.union(px), py)
            && cross_ok(h, outside, px, y);
        if ok {
            *sides = (x.union(px), y.union(py));
            if orient(h, outside, parts, i + 1, sides) {
                return true;
            }
            *sides = (x, y);
        }
    }
    false
}

fn no_nested_neighbourhoods(h: &Graph) -> bool {
    h.vertices().iter().all(|a| {
        let na = h.neighbors(a).to_vec();
        na.iter().enumerate().all(|(i, &u)| {
            na[i + 1..].iter().all(|&w| {
                h.has_edge(u, w) || {
                    let (nu, nw) = (h.neighbors(u), h.neighbors(w));
                    !nu.is_subset(nw) && !nw.is_subset(nu)
                }
            })
        })
    })
}
