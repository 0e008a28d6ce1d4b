//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualise each vertex of a target cell, recurse. Each
//! leaf is a labelling; the canonical form is the relabelled graph whose row
//! sequence is lexicographically smallest. Automorphisms are collected
//! whenever two leaves produce the same graph and are used for orbit pruning
//! and for jumping back to the node where the equivalent path diverged.

use std::fmt;

use crate::graph::{Edge, Graph, VertexSet};
use crate::graph6::emit_graph6;

/// An automorphism as an image table: vertex `v` maps to `perm[v]`.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// The canonically relabelled graph.
    pub graph: Graph,
    /// `labeling[i]` is the input vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Generators of the automorphism group of the input graph.
    pub generators: Vec<Permutation>,
}

impl CanonicalForm {
    /// Canonical position of every input vertex (inverse of `labeling`).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.labeling.len()];
        for (i, &v) in self.labeling.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Vertex orbits of the automorphism group, as a representative per vertex.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        vertex_orbits(self.labeling.len(), &self.generators)
    }
}

/// Certificate of an isomorphism class: the graph6 bytes of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    CanonicalCode(emit_graph6(&canonical_form(g).graph).into_bytes())
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && g.size() == h.size() && canonical_form(g).graph == canonical_form(h).graph
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut prefix = Vec::with_capacity(n);
    search.descend(vec![VertexSet::full(n).bits()], &mut prefix);
    let best = search.best.expect("search visits at least one leaf");
    CanonicalForm {
        graph: Graph::from_rows(&best.rows).expect("relabelled graph is valid"),
        labeling: best.lab,
        generators: search.generators,
    }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<usize>,
    rows: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Permutation>,
}

/// Outcome of exploring a subtree: either finished, or a request to unwind
/// to the ancestor at the given depth.
enum Flow {
    Done,
    JumpTo(usize),
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) -> Flow {
        refine(self.g, &mut cells);
        if cells.len() == self.n {
            return self.leaf(&cells, prefix);
        }
        let (t, cell) = target_cell(&cells);
        let depth = prefix.len();
        let mut explored = VertexSet::EMPTY;
        for v in VertexSet::from_bits(cell) {
            if !explored.is_empty() && self.equivalent_to_explored(v, explored, prefix) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            let flow = self.descend(child, prefix);
            prefix.pop();
            explored.insert(v);
            if let Flow::JumpTo(d) = flow {
                if d < depth {
                    return flow;
                }
            }
        }
        Flow::Done
    }

    fn equivalent_to_explored(&self, v: usize, explored: VertexSet, prefix: &[usize]) -> bool {
        let fixing: Vec<&Permutation> = self
            .generators
            .iter()
            .filter(|p| prefix.iter().all(|&x| p[x] == x))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for p in fixing {
            for (x, &y) in p.iter().enumerate() {
                uf.union(x, y);
            }
        }
        let root = uf.find(v);
        explored.iter().any(|w| uf.find(w) == root)
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Flow {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = lab
            .iter()
            .map(|&v| self.g.neighbors(v).iter().fold(0u64, |acc, w| acc | (1u64 << pos[w])))
            .collect();
        let leaf = Leaf {
            lab,
            rows,
            path: path.to_vec(),
        };

        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return Flow::Done;
        };
        if leaf.rows == first.rows {
            let jump = common_prefix(&first.path, path);
            self.generators.push(mapping(&first.lab, &leaf.lab));
            return Flow::JumpTo(jump);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                Flow::Done
            }
            std::cmp::Ordering::Equal => {
                let jump = common_prefix(&best.path, path);
                self.generators.push(mapping(&best.lab, &leaf.lab));
                Flow::JumpTo(jump)
            }
            std::cmp::Ordering::Greater => Flow::Done,
        }
    }
}

/// Depth of the deepest node shared by two root-to-leaf paths.
fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn mapping(from: &[usize], to: &[usize]) -> Permutation {
    let mut p = vec![0; from.len()];
    for (&x, &y) in from.iter().zip(to) {
        p[x] = y;
    }
    p
}

fn target_cell(cells: &[u64]) -> (usize, u64) {
    let mut best: Option<(usize, u64)> = None;
    for (i, &c) in cells.iter().enumerate() {
        let k = c.count_ones();
        if k > 1 && best.is_none_or(|(_, b)| k < b.count_ones()) {
            best = Some((i, c));
        }
    }
    best.expect("non-discrete partition has a nontrivial cell")
}

/// Refines an ordered partition until it is equitable: every vertex of a cell
/// has the same number of neighbours in every cell. Split fragments are
/// ordered by increasing neighbour count, which keeps the result
/// label-invariant.
pub(crate) fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.order();
    let mut buckets = [0u64; 65];
    let mut s = 0;
    while s < cells.len() {
        let splitter = cells[s];
        let mut changed = false;
        let mut next: Vec<u64> = Vec::with_capacity(n);
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut lo = usize::MAX;
            let mut hi = 0;
            for v in VertexSet::from_bits(cell) {
                let k = (g.rows()[v] & splitter).count_ones() as usize;
                buckets[k] |= 1u64 << v;
                lo = lo.min(k);
                hi = hi.max(k);
            }
            if lo == hi {
                buckets[lo] = 0;
                next.push(cell);
                continue;
            }
            changed = true;
            for b in &mut buckets[lo..=hi] {
                if *b != 0 {
                    next.push(*b);
                    *b = 0;
                }
            }
        }
        if changed {
            *cells = next;
            s = 0;
        } else {
            s += 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index becomes the representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbit representative (smallest member) of every vertex.
pub fn vertex_orbits(n: usize, generators: &[Permutation]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for p in generators {
        for (x, &y) in p.iter().enumerate() {
            uf.union(x, y);
        }
    }
    (0..n).map(|v| uf.find(v)).collect()
}

/// Partitions `pairs` into orbits under the group generated by `generators`.
/// Returns, for every pair, the index in `pairs` of its orbit representative
/// (the first pair of the orbit in the given order). Pairs whose images fall
/// outside `pairs` are ignored, so `pairs` should be a union of orbits.
pub fn pair_orbits(pairs: &[Edge], generators: &[Permutation]) -> Vec<usize> {
    let mut uf = UnionFind::new(pairs.len());
    if !generators.is_empty() {
        let index: std::collections::HashMap<Edge, usize> = pairs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for p in generators {
            for (i, e) in pairs.iter().enumerate() {
                if let Some(&j) = index.get(&Edge::new(p[e.u], p[e.v])) {
                    uf.union(i, j);
                }
            }
        }
    }
    (0..pairs.len()).map(|i| uf.find(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
        g.permuted(p) == *g
    }

    #[test]
    fn cycle_invariant_under_all_relabelings() {
        let c5 = Graph::cycle(5).unwrap();
        let code = canonical_code(&c5);
        let mut perm: Vec<usize> = (0..5).collect();
        let mut count = 0;
        permute_all(&mut perm, 0, &mut |p| {
            assert_eq!(canonical_code(&c5.permuted(p)), code);
            count += 1;
        });
        assert_eq!(count, 120);
    }

    fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute_all(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn generators_are_automorphisms() {
        for g in [
            Graph::cycle(7).unwrap(),
            Graph::empty(9).unwrap(),
            Graph::complete(8).unwrap(),
            Graph::complete_bipartite(3, 4).unwrap(),
            Graph::star(6).unwrap(),
        ] {
            let cf = canonical_form(&g);
            assert!(cf.generators.iter().all(|p| is_automorphism(&g, p)));
            assert_eq!(g.permuted(&cf.positions()), cf.graph);
        }
    }

    #[test]
    fn orbits_of_symmetric_graphs() {
        let cf = canonical_form(&Graph::cycle(6).unwrap());
        assert!(cf.vertex_orbits().iter().all(|&r| r == 0));
        let cf = canonical_form(&Graph::star(5).unwrap());
        assert_eq!(cf.vertex_orbits(), vec![0, 1, 1, 1, 1]);
        let cf = canonical_form(&Graph::path(4).unwrap());
        assert_eq!(cf.vertex_orbits(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn large_symmetric_graphs_finish() {
        let g = Graph::empty(64).unwrap();
        assert_eq!(canonical_form(&g).graph, g);
        let k = Graph::complete(64).unwrap();
        assert_eq!(canonical_form(&k).graph, k);
        let c = Graph::cycle(60).unwrap();
        let shifted: Vec<usize> = (0..60).map(|v| (v * 7 + 3) % 60).collect();
        assert_eq!(canonical_code(&c), canonical_code(&c.permuted(&shifted)));
    }

    #[test]
    fn distinguishes_small_nonisomorphic_pairs() {
        let p4 = Graph::path(4).unwrap();
        let star = Graph::star(4).unwrap();
        assert_ne!(canonical_code(&p4), canonical_code(&star));
        let two_triangles = Graph::cycle(3)
            .unwrap()
            .disjoint_union(&Graph::cycle(3).unwrap())
            .unwrap();
        let hexagon = Graph::cycle(6).unwrap();
        assert_ne!(canonical_code(&two_triangles), canonical_code(&hexagon));
        assert!(!is_isomorphic(&two_triangles, &hexagon));
    }
}
