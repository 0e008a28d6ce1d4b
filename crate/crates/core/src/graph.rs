//! Small simple undirected graphs stored as one `u64` neighbour mask per vertex.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use thiserror::Error;

/// Largest supported vertex count: one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside the supported range 1..=64")]
    SizeOutOfRange(usize),
    #[error("loop requested at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("{0} is not an edge")]
    NotAnEdge(Edge),
}

/// An unordered vertex pair, normalised so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of vertices drawn from `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, …, n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest member.
    #[inline]
    pub fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    /// The `k` smallest members, or `None` when fewer than `k` exist.
    pub fn lowest(self, k: usize) -> Option<VertexSet> {
        if self.len() < k {
            return None;
        }
        let mut bits = self.0;
        let mut out = 0u64;
        for _ in 0..k {
            let low = bits & bits.wrapping_neg();
            out |= low;
            bits ^= low;
        }
        Some(VertexSet(out))
    }

    /// Members strictly greater than `v`.
    #[inline]
    pub fn above(self, v: usize) -> VertexSet {
        if v >= 63 {
            VertexSet::EMPTY
        } else {
            VertexSet(self.0 & (u64::MAX << (v + 1)))
        }
    }

    #[inline]
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
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

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph on `1..=64` vertices.
///
/// Values are immutable in the public API: edge insertion returns a new graph.
/// Rows at index `>= n` are always zero, so equality and hashing only look at
/// the first `n` rows.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj[..self.n] == other.adj[..other.n]
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj[..self.n].hash(state);
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.adj[..self.n].cmp(&other.adj[..other.n]))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        let mut first = true;
        for e in self.edges() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", e.u, e.v)?;
            first = false;
        }
        f.write_str("])")
    }
}

impl Graph {
    fn check_size(n: usize) -> Result<(), GraphError> {
        if n == 0 || n > MAX_VERTICES {
            Err(GraphError::SizeOutOfRange(n))
        } else {
            Ok(())
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Self::check_size(n)?;
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        Ok(g)
    }

    /// The cycle `0-1-…-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::SizeOutOfRange(n));
        }
        let mut g = Graph::path(n)?;
        g.insert_edge(0, n - 1);
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        Ok(g)
    }

    /// The star `S_n`: vertex 0 joined to every other vertex.
    pub fn star(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.insert_edge(0, v);
        }
        Ok(g)
    }

    /// Complete bipartite `K_{s,t}` with parts `0..s` and `s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(s + t)?;
        for u in 0..s {
            for v in s..s + t {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating every invariant.
    pub fn from_rows(rows: &[u64]) -> Result<Graph, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let mask = VertexSet::full(n).bits();
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let bad = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
            if (row >> v) & 1 == 1 {
                return Err(GraphError::Loop(v));
            }
            g.adj[v] = row;
        }
        for u in 0..n {
            for v in VertexSet(g.adj[u]) {
                if (g.adj[v] >> u) & 1 == 0 {
                    return Err(GraphError::NotAnEdge(Edge::new(u, v)));
                }
            }
        }
        Ok(g)
    }

    /// Number of vertices, `|G|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `e(G)`.
    pub fn size(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// `N[v] = N(v) ∪ {v}`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1u64 << v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    /// Returns a copy with `uv` present. Idempotent on existing edges.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// Returns a copy with `uv` absent. Idempotent on non-edges.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.delete_edge(u, v);
        Ok(g)
    }

    #[inline]
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    #[inline]
    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    /// Copy with edge `uv` added; callers guarantee `u != v`, both in range.
    #[inline]
    pub(crate) fn plus_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.insert_edge(u, v);
        g
    }

    /// Edges in lexicographic order of `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| VertexSet(self.adj[u]).above(u).iter().map(move |v| Edge { u, v }))
    }

    /// Non-edges (`E(Ḡ)`) in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let full = self.vertices();
        (0..self.n).flat_map(move |u| {
            (full - self.closed_neighbors(u))
                .above(u)
                .iter()
                .map(move |v| Edge { u, v })
        })
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        let full = self.vertices().bits();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & full & !(1u64 << v);
        }
        g
    }

    /// Disjoint union with `other` placed on indices `|G|..|G|+|H|`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        Self::check_size(n)?;
        let mut g = Graph {
            n,
            adj: [0; MAX_VERTICES],
        };
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// `G ∨ H`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n).bits();
        let right = VertexSet::full(g.n).bits() & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// `⋂_{v ∈ S} N(v)`; members of `S` are not removed.
    pub fn common_neighbors(&self, set: VertexSet) -> Result<VertexSet, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(last) = set.last() {
            self.check_vertex(last)?;
        }
        Ok(self.common_neighbors_unchecked(set))
    }

    #[inline]
    pub(crate) fn common_neighbors_unchecked(&self, set: VertexSet) -> VertexSet {
        let mut acc = self.vertices().bits();
        for v in set {
            acc &= self.adj[v];
        }
        VertexSet(acc)
    }

    /// `e(S)`, the number of edges with both ends in `S`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| (self.neighbors(v) & set).len()).sum::<usize>() / 2
    }

    /// `e[A, B]` for disjoint `A`, `B`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| (self.neighbors(v) & b).len()).sum()
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n {
            let mut row = 0u64;
            for v in VertexSet(self.adj[u]) {
                row |= 1u64 << perm[v];
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// The subgraph induced by `set`, relabelled in increasing index order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph, GraphError> {
        let verts = set.to_vec();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `Σ_v max(0, k - d(v))`: total degree shortfall below `k`.
    pub fn degree_deficit(&self, k: usize) -> usize {
        self.rows()
            .iter()
            .map(|r| k.saturating_sub(r.count_ones() as usize))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.neighbors(v);
            }
            frontier = next - seen;
            seen = seen | next;
        }
        seen == self.vertices()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_bounds() {
        let g = Graph::empty(5).unwrap();
        assert_eq!(g.size(), 0);
        assert_eq!(g.min_degree(), 0);
        let one = Graph::empty(1).unwrap();
        assert_eq!(one.order(), 1);
        assert_eq!(one.size(), 0);
        assert_eq!(Graph::empty(65), Err(GraphError::SizeOutOfRange(65)));
        assert_eq!(Graph::empty(0), Err(GraphError::SizeOutOfRange(0)));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn add_edge_cases() {
        let g = Graph::empty(3).unwrap().add_edge(0, 1).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.add_edge(1, 0).unwrap(), g);
        assert_eq!(g.add_edge(2, 2), Err(GraphError::Loop(2)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        let c5 = Graph::cycle(5).unwrap();
        for e in c5.non_edges() {
            assert_eq!(c5.add_edge(e.u, e.v).unwrap().size(), 6);
        }
    }

    #[test]
    fn complement_small_cases() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let cc = c5.complement();
        assert_eq!(cc.size(), 5);
        assert!(cc.rows().iter().all(|r| r.count_ones() == 2));
        assert!(cc.is_connected());
    }

    #[test]
    fn join_and_union_counts() {
        let k2bar = Graph::empty(2).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let j = k2bar.join(&c4).unwrap();
        assert_eq!((j.order(), j.size()), (6, 12));

        let star = Graph::empty(1).unwrap().join(&Graph::empty(5).unwrap()).unwrap();
        assert_eq!(star, Graph::star(6).unwrap());

        for (n, k) in [(6, 3), (8, 4), (10, 2)] {
            let g = Graph::complete(k - 1)
                .unwrap()
                .join(&Graph::empty(n - k + 1).unwrap())
                .unwrap();
            let direct = (k - 1) * (k - 2) / 2 + (k - 1) * (n - k + 1);
            assert_eq!(g.size(), direct);
            assert_eq!(g.size(), (k - 1) * n - k * (k - 1) / 2);
        }

        let u = c4.disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!((u.order(), u.size()), (5, 4));
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());
        let big = Graph::empty(40).unwrap();
        assert_eq!(big.join(&big), Err(GraphError::SizeOutOfRange(80)));
    }

    #[test]
    fn common_neighbors_examples() {
        let k4 = Graph::complete(4).unwrap();
        let s: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(k4.common_neighbors(s).unwrap().to_vec(), vec![2, 3]);
        let c5 = Graph::cycle(5).unwrap();
        let s: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(c5.common_neighbors(s).unwrap().to_vec(), vec![1]);
        assert_eq!(c5.common_neighbors(VertexSet::EMPTY), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn vertex_set_lowest() {
        let s: VertexSet = [3, 9, 1, 40].into_iter().collect();
        assert_eq!(s.lowest(2).unwrap().to_vec(), vec![1, 3]);
        assert_eq!(s.lowest(5), None);
        assert_eq!(s.above(3).to_vec(), vec![9, 40]);
        assert_eq!(s.last(), Some(40));
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        assert!(Graph::from_rows(&[0b10, 0b00]).is_err());
        assert!(Graph::from_rows(&[0b01]).is_err());
        assert!(Graph::from_rows(&[0b10, 0b01]).is_ok());
    }
}
