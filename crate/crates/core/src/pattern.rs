//! Detection of complete multipartite subgraphs `K_{s1,…,sr}` (not
//! necessarily induced), with explicit witnesses.
//!
//! Parts are filled smallest first, so the candidate pool (the common
//! neighbourhood of everything placed so far) shrinks as fast as possible and
//! the largest part is read off the final pool. Subsets are enumerated in
//! lexicographic order, which makes the returned witness the
//! lexicographically least one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("a pattern needs at least one part")]
    NoParts,
    #[error("part sizes must be positive")]
    ZeroPart,
    #[error("pattern has {0} vertices; at most 64 are supported")]
    TooLarge(usize),
    #[error("cannot parse pattern {0:?}: expected comma-separated part sizes such as 3,3")]
    Parse(String),
    #[error("{0} is not an edge of the host graph")]
    NotAnEdge(Edge),
}

/// Part sizes of a complete multipartite graph, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultipartitePattern {
    parts: Vec<usize>,
}

impl MultipartitePattern {
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self, PatternError> {
        let mut parts = parts.into();
        if parts.is_empty() {
            return Err(PatternError::NoParts);
        }
        if parts.contains(&0) {
            return Err(PatternError::ZeroPart);
        }
        let total: usize = parts.iter().sum();
        if total > MAX_VERTICES {
            return Err(PatternError::TooLarge(total));
        }
        parts.sort_unstable();
        Ok(MultipartitePattern { parts })
    }

    /// The complete graph `K_k` as `k` parts of size one.
    pub fn complete(k: usize) -> Result<Self, PatternError> {
        Self::new(vec![1; k])
    }

    pub fn bipartite(s: usize, t: usize) -> Result<Self, PatternError> {
        Self::new(vec![s, t])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Number of vertices of the pattern graph.
    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        *self.parts.last().expect("nonempty")
    }

    /// `Some(k)` when the pattern is `K_k`.
    pub fn as_clique(&self) -> Option<usize> {
        self.parts.iter().all(|&s| s == 1).then_some(self.parts.len())
    }

    /// `Some((s, t))` with `s <= t` when the pattern is `K_{s,t}`.
    pub fn as_bipartite(&self) -> Option<(usize, usize)> {
        match self.parts[..] {
            [s, t] => Some((s, t)),
            _ => None,
        }
    }

    /// Minimum degree of the pattern graph: `|P| - s_r`.
    pub fn min_degree(&self) -> usize {
        self.order() - self.largest_part()
    }

    /// Comma-separated part sizes, the CLI syntax.
    pub fn to_list(&self) -> String {
        self.parts.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for MultipartitePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.len() == 1 {
            return write!(f, "E_{}", self.parts[0]);
        }
        if let Some(k) = self.as_clique() {
            return write!(f, "K_{k}");
        }
        write!(f, "K_{{{}}}", self.to_list())
    }
}

impl FromStr for MultipartitePattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PatternError::Parse(s.to_string()))?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<usize>> for MultipartitePattern {
    type Error = PatternError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<MultipartitePattern> for Vec<usize> {
    fn from(p: MultipartitePattern) -> Vec<usize> {
        p.parts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness has {found} parts, pattern has {expected}")]
    PartCount { expected: usize, found: usize },
    #[error("part {index} has {found} vertices, expected {expected}")]
    PartSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("parts {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("vertex {0} is outside the host graph")]
    OutOfRange(usize),
    #[error("cross pair {0} is not an edge")]
    MissingEdge(Edge),
}

/// Disjoint vertex sets realising a copy of a pattern; `parts[i]` plays the
/// role of the `i`-th part of the (sorted) pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub parts: Vec<VertexSet>,
}

impl Witness {
    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    /// Whether `u` and `v` sit in different parts, i.e. the copy uses `uv`.
    pub fn uses_edge(&self, u: usize, v: usize) -> bool {
        matches!((self.part_of(u), self.part_of(v)), (Some(a), Some(b)) if a != b)
    }

    pub fn vertices(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::EMPTY, |acc, &p| acc | p)
    }

    /// Standalone check: sizes, disjointness, and every cross pair an edge.
    pub fn validate(&self, g: &Graph, pattern: &MultipartitePattern) -> Result<(), WitnessError> {
        if self.parts.len() != pattern.part_count() {
            return Err(WitnessError::PartCount {
                expected: pattern.part_count(),
                found: self.parts.len(),
            });
        }
        for (i, (&part, &size)) in self.parts.iter().zip(pattern.parts()).enumerate() {
            if part.len() != size {
                return Err(WitnessError::PartSize {
                    index: i,
                    expected: size,
                    found: part.len(),
                });
            }
            if let Some(v) = part.iter().find(|&v| v >= g.order()) {
                return Err(WitnessError::OutOfRange(v));
            }
        }
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if !self.parts[i].is_disjoint(self.parts[j]) {
                    return Err(WitnessError::Overlap(i, j));
                }
                for x in self.parts[i] {
                    for y in self.parts[j] {
                        if !g.has_edge(x, y) {
                            return Err(WitnessError::MissingEdge(Edge::new(x, y)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Depth-first placement of parts into a host graph.
struct Placer<'a> {
    g: &'a Graph,
    sizes: &'a [usize],
    required: &'a [VertexSet],
    /// `tail[k]` = total size of parts `k..`.
    tail: [usize; MAX_VERTICES + 1],
    /// `later[k]` = union of required vertices of parts `k..`.
    later: [VertexSet; MAX_VERTICES + 1],
    out: [VertexSet; MAX_VERTICES],
}

impl<'a> Placer<'a> {
    fn new(g: &'a Graph, sizes: &'a [usize], required: &'a [VertexSet]) -> Self {
        let r = sizes.len();
        let mut tail = [0; MAX_VERTICES + 1];
        let mut later = [VertexSet::EMPTY; MAX_VERTICES + 1];
        for k in (0..r).rev() {
            tail[k] = tail[k + 1] + sizes[k];
            later[k] = later[k + 1] | required[k];
        }
        Placer {
            g,
            sizes,
            required,
            tail,
            later,
            out: [VertexSet::EMPTY; MAX_VERTICES],
        }
    }

    fn place(&mut self, k: usize, pool: VertexSet) -> bool {
        if k == self.sizes.len() {
            return true;
        }
        let forced = self.required[k];
        if !forced.is_subset(pool) {
            return false;
        }
        let later = self.later[k + 1];
        let allowed = if later.is_empty() {
            self.g.vertices()
        } else {
            self.g.common_neighbors_unchecked(later)
        };
        if !forced.is_subset(allowed) {
            return false;
        }
        let mut cand = (pool & allowed) - forced;
        let need = self.sizes[k] - forced.len();
        // interchangeable unconstrained parts: order them by smallest member
        if k > 0 && forced.is_empty() && self.sizes[k] == self.sizes[k - 1] && self.required[k - 1].is_empty() {
            cand = cand.above(self.out[k - 1].first().expect("placed part is nonempty"));
        }
        let next_pool = pool & self.g.common_neighbors_unchecked(forced);
        self.choose(k, need, cand, forced, next_pool)
    }

    fn choose(&mut self, k: usize, need: usize, cand: VertexSet, acc: VertexSet, next_pool: VertexSet) -> bool {
        let rest = self.tail[k + 1];
        if need == 0 {
            self.out[k] = acc;
            return self.place(k + 1, next_pool);
        }
        if cand.len() < need || next_pool.len() < rest {
            return false;
        }
        for v in cand {
            let np = next_pool & self.g.neighbors(v);
            if np.len() < rest {
                continue;
            }
            let above = cand.above(v);
            if above.len() + 1 < need {
                break;
            }
            if self.choose(k, need - 1, above, acc.with(v), np) {
                return true;
            }
        }
        false
    }

    fn witness(&self) -> Witness {
        Witness {
            parts: self.out[..self.sizes.len()].to_vec(),
        }
    }
}

fn find(g: &Graph, p: &MultipartitePattern, required: &[VertexSet]) -> Option<Witness> {
    if p.order() > g.order() {
        return None;
    }
    let mut placer = Placer::new(g, p.parts(), required);
    placer.place(0, g.vertices()).then(|| placer.witness())
}

/// Lexicographically least copy of `p` in `g`, if any.
pub fn contains(g: &Graph, p: &MultipartitePattern) -> Option<Witness> {
    let none = vec![VertexSet::EMPTY; p.part_count()];
    find(g, p, &none)
}

/// Ordered part-index pairs `(i, j)` for pinning the two ends of an edge,
/// one per distinct pair of part sizes.
fn role_pairs(p: &MultipartitePattern) -> Vec<(usize, usize)> {
    let sizes = p.parts();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for i in 0..sizes.len() {
        for j in 0..sizes.len() {
            if i != j && !seen.contains(&(sizes[i], sizes[j])) {
                seen.push((sizes[i], sizes[j]));
                out.push((i, j));
            }
        }
    }
    out
}

/// A copy of `p` in `g` that uses the edge `uv` (its ends in different parts).
pub fn contains_through_edge(
    g: &Graph,
    p: &MultipartitePattern,
    u: usize,
    v: usize,
) -> Result<Option<Witness>, PatternError> {
    if !g.has_edge(u, v) {
        return Err(PatternError::NotAnEdge(Edge::new(u, v)));
    }
    let mut required = vec![VertexSet::EMPTY; p.part_count()];
    for (i, j) in role_pairs(p) {
        required[i] = VertexSet::singleton(u);
        required[j] = VertexSet::singleton(v);
        if let Some(w) = find(g, p, &required) {
            return Ok(Some(w));
        }
        required[i] = VertexSet::EMPTY;
        required[j] = VertexSet::EMPTY;
    }
    Ok(None)
}

/// Boolean form of [`contains_through_edge`] for hot loops; `uv` must be an edge.
pub(crate) fn has_copy_through(g: &Graph, p: &MultipartitePattern, u: usize, v: usize) -> bool {
    debug_assert!(g.has_edge(u, v));
    if p.order() > g.order() {
        return false;
    }
    if let Some((s, t)) = p.as_bipartite() {
        return bipartite_through(g, s, t, u, v) || (s != t && bipartite_through(g, s, t, v, u));
    }
    let mut required = [VertexSet::EMPTY; MAX_VERTICES];
    let required = &mut required[..p.part_count()];
    for (i, j) in role_pairs(p) {
        required[i] = VertexSet::singleton(u);
        required[j] = VertexSet::singleton(v);
        let mut placer = Placer::new(g, p.parts(), required);
        if placer.place(0, g.vertices()) {
            return true;
        }
        required[i] = VertexSet::EMPTY;
        required[j] = VertexSet::EMPTY;
    }
    false
}

/// `K_{s,t}` with `a` in the `s`-side and `b` in the `t`-side.
fn bipartite_through(g: &Graph, s: usize, t: usize, a: usize, b: usize) -> bool {
    // the s-side is {a} plus s-1 neighbours of b; the t-side needs t-1 more
    // common neighbours besides b
    let cand = g.neighbors(b).without(a);
    let cn = g.neighbors(a).without(b);
    subsets_with_common(g, s - 1, t - 1, cand, cn)
}

/// Whether some `need`-subset `S` of `cand` has `|cn ∩ N(S)| >= t`.
fn subsets_with_common(g: &Graph, need: usize, t: usize, cand: VertexSet, cn: VertexSet) -> bool {
    if cn.len() < t {
        return false;
    }
    if need == 0 {
        return true;
    }
    if cand.len() < need {
        return false;
    }
    for v in cand {
        let c2 = cn & g.neighbors(v);
        if c2.len() >= t && subsets_with_common(g, need - 1, t, cand.above(v), c2) {
            return true;
        }
    }
    false
}

/// Specialised `K_{s,t}` test: some `s`-set has at least `t` common neighbours.
pub fn forbid_check_fast(g: &Graph, s: usize, t: usize) -> bool {
    let (s, t) = if s <= t { (s, t) } else { (t, s) };
    if s == 0 {
        return g.order() >= t;
    }
    if s + t > g.order() {
        return false;
    }
    subsets_with_common(g, s, t, g.vertices(), g.vertices())
}

/// Boolean containment test routed to the fastest available check.
pub(crate) fn has_copy(g: &Graph, p: &MultipartitePattern) -> bool {
    match p.as_bipartite() {
        Some((s, t)) => forbid_check_fast(g, s, t),
        None => contains(g, p).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> MultipartitePattern {
        MultipartitePattern::bipartite(3, 3).unwrap()
    }

    #[test]
    fn pattern_normalisation_and_parsing() {
        let p: MultipartitePattern = "3, 2".parse().unwrap();
        assert_eq!(p.parts(), &[2, 3]);
        assert_eq!(p.to_string(), "K_{2,3}");
        assert_eq!(MultipartitePattern::complete(3).unwrap().to_string(), "K_3");
        assert_eq!(
            "".parse::<MultipartitePattern>(),
            Err(PatternError::Parse(String::new()))
        );
        assert_eq!(MultipartitePattern::new(vec![0, 3]), Err(PatternError::ZeroPart));
        assert_eq!(MultipartitePattern::new(vec![40, 30]), Err(PatternError::TooLarge(70)));
        assert_eq!(
            MultipartitePattern::new(Vec::<usize>::new()),
            Err(PatternError::NoParts)
        );
        assert_eq!(k33().min_degree(), 3);
    }

    #[test]
    fn k6_contains_k33() {
        let k6 = Graph::complete(6).unwrap();
        let w = contains(&k6, &k33()).unwrap();
        w.validate(&k6, &k33()).unwrap();
        assert_eq!(w.parts[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(w.parts[1].to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn cycles_and_k22() {
        let c4 = Graph::cycle(4).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        assert!(forbid_check_fast(&c4, 2, 2));
        assert!(!forbid_check_fast(&c5, 2, 2));
        let k22 = MultipartitePattern::bipartite(2, 2).unwrap();
        assert!(contains(&c4, &k22).is_some());
        assert!(contains(&c5, &k22).is_none());
    }

    #[test]
    fn through_edge_requires_edge() {
        let g = Graph::cycle(5).unwrap();
        let k3 = MultipartitePattern::complete(3).unwrap();
        assert_eq!(
            contains_through_edge(&g, &k3, 0, 2),
            Err(PatternError::NotAnEdge(Edge::new(0, 2)))
        );
    }

    #[test]
    fn through_edge_in_k6_minus_edge_plus_edge() {
        let k6 = Graph::complete(6).unwrap();
        let g = k6.remove_edge(0, 1).unwrap().add_edge(0, 1).unwrap();
        let k3 = MultipartitePattern::complete(3).unwrap();
        let w = contains_through_edge(&g, &k3, 0, 1).unwrap().unwrap();
        w.validate(&g, &k3).unwrap();
        assert!(w.uses_edge(0, 1));
    }

    #[test]
    fn uneven_parts_try_both_orientations() {
        // K_{1,2} through edge 0-1 of the path 0-1-2: 1 must be the centre
        let p = Graph::path(3).unwrap();
        let k12 = MultipartitePattern::bipartite(1, 2).unwrap();
        let w = contains_through_edge(&p, &k12, 0, 1).unwrap().unwrap();
        assert_eq!(w.parts[0].to_vec(), vec![1]);
        assert!(has_copy_through(&p, &k12, 0, 1));
        assert!(has_copy_through(&p, &k12, 1, 0));
        // K_{1,1,2} through an edge of K4 minus an edge
        let g = Graph::complete(4).unwrap().remove_edge(2, 3).unwrap();
        let p112 = MultipartitePattern::new(vec![1, 1, 2]).unwrap();
        for e in g.edges() {
            let w = contains_through_edge(&g, &p112, e.u, e.v).unwrap().unwrap();
            w.validate(&g, &p112).unwrap();
            assert!(w.uses_edge(e.u, e.v));
            assert!(has_copy_through(&g, &p112, e.u, e.v));
        }
    }

    #[test]
    fn pattern_larger_than_host() {
        let g = Graph::complete(5).unwrap();
        assert!(contains(&g, &k33()).is_none());
        assert!(!forbid_check_fast(&g, 3, 3));
        assert!(!has_copy_through(&g, &k33(), 0, 1));
    }

    #[test]
    fn validator_rejects_bad_witnesses() {
        let c4 = Graph::cycle(4).unwrap();
        let k22 = MultipartitePattern::bipartite(2, 2).unwrap();
        let good = contains(&c4, &k22).unwrap();
        assert!(good.validate(&c4, &k22).is_ok());
        let bad = Witness {
            parts: vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect()],
        };
        assert!(matches!(bad.validate(&c4, &k22), Err(WitnessError::MissingEdge(_))));
        let overlap = Witness {
            parts: vec![[0, 2].into_iter().collect(), [2, 3].into_iter().collect()],
        };
        assert_eq!(overlap.validate(&c4, &k22), Err(WitnessError::Overlap(0, 1)));
    }
}
