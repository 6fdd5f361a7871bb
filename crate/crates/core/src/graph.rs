//! Small simple undirected graphs stored as one adjacency word per vertex.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_N: usize = 32;

/// A subset of `{0, .., 31}` packed into a machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().fold(Self::EMPTY, |s, &v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn intersects(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, |s, v| s.with(v))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        Members(self.0)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// A simple undirected graph on at most [`MAX_N`] vertices.
///
/// Graphs are plain values: every mutating operation returns a new graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_N],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Capacity { n, max: MAX_N });
        }
        Ok(Graph { n, adj: [0; MAX_N] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::VertexOutOfRange { v, n });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("complete graph too large");
        let full = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = full.without(v).0;
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path too large")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).expect("cycle too large")
    }

    /// `K4` minus the edge `{2, 3}`: vertices 0 and 1 have degree three.
    pub fn diamond() -> Self {
        Self::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// In-place edge insertion; callers own the value.
    #[inline]
    pub fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Appends a vertex adjacent exactly to `nbrs`; it receives index `n`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        if self.n >= MAX_N {
            return Err(Error::Capacity { n: self.n + 1, max: MAX_N });
        }
        if !nbrs.is_subset(self.vertices()) {
            let v = nbrs.difference(self.vertices()).first().unwrap();
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.add_vertex_unchecked(nbrs))
    }

    #[inline]
    pub(crate) fn add_vertex_unchecked(&self, nbrs: VertexSet) -> Graph {
        let mut g = *self;
        let x = self.n;
        g.n += 1;
        g.adj[x] = nbrs.0;
        for v in nbrs {
            g.adj[v] |= 1 << x;
        }
        g
    }

    /// Removes `v` and shifts every higher index down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_unchecked(self.vertices().without(v)))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge { u, v });
        }
        let mut g = *self;
        g.clear_edge(u, v);
        Ok(g)
    }

    /// Subgraph induced on `s`, vertices renumbered in ascending original order.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        if !s.is_subset(self.vertices()) {
            let v = s.difference(self.vertices()).first().unwrap();
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.induced_unchecked(s))
    }

    pub(crate) fn induced_unchecked(&self, s: VertexSet) -> Graph {
        if s == self.vertices() {
            return *self;
        }
        let keep: Vec<usize> = s.to_vec();
        let mut g = Graph { n: keep.len(), adj: [0; MAX_N] };
        for (i, &u) in keep.iter().enumerate() {
            let row = self.adj[u] & s.0;
            g.adj[i] = compress(row, s.0);
        }
        g
    }

    /// Graph whose vertex `perm[v]` plays the role of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, adj: [0; MAX_N] };
        for u in 0..self.n {
            let mut row = 0u32;
            for v in self.neighbors(u) {
                row |= 1 << perm[v];
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        let full = self.vertices();
        for v in 0..self.n {
            g.adj[v] = full.without(v).difference(self.neighbors(v)).0;
        }
        g
    }

    /// Disjoint union, `other` shifted after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_N {
            return Err(Error::Capacity { n, max: MAX_N });
        }
        let mut g = *self;
        g.n = n;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Checks symmetry, irreflexivity and range of every adjacency row.
    pub fn is_well_formed(&self) -> bool {
        let full = self.vertices();
        (0..self.n).all(|u| {
            let row = self.neighbors(u);
            row.is_subset(full) && !row.contains(u) && row.iter().all(|v| self.has_edge(v, u))
        }) && self.adj[self.n..].iter().all(|&r| r == 0)
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.neighbors(v).intersects(s))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.neighbors(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == self.vertices()
    }

    /// Adjacency rows, for hashing and canonical comparisons.
    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n]
    }

    pub fn to_graph6(&self) -> String {
        let mut out = String::with_capacity(2 + self.n * self.n / 12);
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                k += 1;
                if k == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(((acc << (6 - k)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        let mut base = 0;
        if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
            bytes = rest;
            base = 10;
        }
        let perr = |offset: usize, msg: &str| Error::Parse { offset: base + offset, msg: msg.to_string() };
        let &first = bytes.first().ok_or_else(|| perr(0, "empty input"))?;
        if !(63..=126).contains(&first) {
            return Err(perr(0, "invalid size byte"));
        }
        if first == 126 {
            return Err(perr(0, "graphs with more than 62 vertices are not supported"));
        }
        let n = (first - 63) as usize;
        if n > MAX_N {
            return Err(Error::Capacity { n, max: MAX_N });
        }
        let nbits = n * n.saturating_sub(1) / 2;
        let nbytes = nbits.div_ceil(6);
        let body = &bytes[1..];
        for (i, &b) in body.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(perr(1 + i, "byte outside the printable graph6 range"));
            }
        }
        if body.len() < nbytes {
            return Err(perr(bytes.len(), "input too short"));
        }
        if body.len() > nbytes {
            return Err(perr(1 + nbytes, "trailing bytes"));
        }
        let mut g = Graph { n, adj: [0; MAX_N] };
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let b = body[k / 6] - 63;
                if b >> (5 - k % 6) & 1 == 1 {
                    g.set_edge(i, j);
                }
                k += 1;
            }
        }
        if !nbits.is_multiple_of(6) && (body[nbytes - 1] - 63) & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(perr(nbytes, "nonzero padding bits"));
        }
        Ok(g)
    }
}

/// Packs the bits of `row` selected by `mask` into the low bits.
#[inline]
fn compress(row: u32, mask: u32) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        if row >> b & 1 == 1 {
            out |= 1 << i;
        }
        i += 1;
        m &= m - 1;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Graph> {
        Graph::from_graph6(s)
    }
}

/// Reads one graph per nonempty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(Graph::from_graph6).collect()
}
