//! Explicit saturated graphs: the `G_n` family for `K_{3,3}`, the clique
//! saturators `K_{k-1} ∨ K̄_{n-k+1}`, the edge-join-cycle graphs, and cached
//! witnesses for `6 ≤ n ≤ 11`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::parse_graph6;
use crate::pattern::MultipartitePattern;
use crate::saturation;

/// Search-derived `K_{3,3}`-saturated graphs as `n <graph6> <edges>` records.
pub const SMALL_WITNESSES: &str = include_str!("../data/small_witnesses.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{name} needs {requirement}, got n = {n}")]
    Range {
        name: &'static str,
        requirement: &'static str,
        n: usize,
    },
    #[error("no cached witness for n = {0}")]
    Missing(usize),
    #[error("cached witness for n = {n} is corrupt: {reason}")]
    Corrupt { n: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledConstruction {
    pub name: String,
    pub graph: Graph,
    /// Names such as `v1` mapped to vertex indices.
    pub labels: BTreeMap<String, usize>,
    pub claimed_edges: usize,
}

impl LabeledConstruction {
    fn new(name: String, graph: Graph, labels: BTreeMap<String, usize>, claimed_edges: usize) -> Self {
        debug_assert_eq!(graph.size(), claimed_edges);
        debug_assert_eq!(labels.len(), graph.order());
        LabeledConstruction {
            name,
            graph,
            labels,
            claimed_edges,
        }
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }
}

/// `v1 … vn` mapped to `0 … n-1`.
fn v_labels(n: usize) -> BTreeMap<String, usize> {
    (0..n).map(|i| (format!("v{}", i + 1), i)).collect()
}

/// `G_n` for `n ≥ 12`: `K̄_2 ∨ (C_4 ∪ C_{n-9} ∪ K_1)` on `v1 … v_{n-2}`, with
/// `v_{n-1}` joined to `v3, v5` and `v_n` joined to `v4, v6`. It is
/// `K_{3,3}`-saturated with `3n − 9` edges.
pub fn gn(n: usize) -> Result<LabeledConstruction, ConstructionError> {
    if !(12..=MAX_VERTICES).contains(&n) {
        return Err(ConstructionError::Range {
            name: "gn",
            requirement: "12 <= n <= 64",
            n,
        });
    }
    let v = |i: usize| i - 1;
    let mut edges = Vec::new();
    // the C_4 v3 v4 v5 v6, then the C_{n-9} v7 … v_{n-3}
    for (lo, hi) in [(3, 6), (7, n - 3)] {
        for i in lo..hi {
            edges.push((v(i), v(i + 1)));
        }
        edges.push((v(hi), v(lo)));
    }
    for hub in [1, 2] {
        for i in 3..=n - 2 {
            edges.push((v(hub), v(i)));
        }
    }
    edges.extend([(v(n - 1), v(3)), (v(n - 1), v(5)), (v(n), v(4)), (v(n), v(6))]);
    let graph = Graph::from_edges(n, &edges).expect("indices in range");
    Ok(LabeledConstruction::new(
        format!("gn:{n}"),
        graph,
        v_labels(n),
        3 * n - 9,
    ))
}

/// `K_{k-1} ∨ K̄_{n-k+1}`, which is `K_{k+1}`-saturated with
/// `(k − 1)n − C(k, 2)` edges. The clique is `v1 … v_{k-1}`.
pub fn ehm(n: usize, k: usize) -> Result<LabeledConstruction, ConstructionError> {
    if k < 2 || n < k + 1 || n > MAX_VERTICES {
        return Err(ConstructionError::Range {
            name: "ehm",
            requirement: "n >= k + 1 >= 3",
            n,
        });
    }
    let mut edges = Vec::new();
    for i in 0..k - 1 {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let graph = Graph::from_edges(n, &edges).expect("indices in range");
    let claimed = (k - 1) * n - k * (k - 1) / 2;
    Ok(LabeledConstruction::new(
        format!("ehm:{n},{k}"),
        graph,
        v_labels(n),
        claimed,
    ))
}

/// `K_2 ∨ C_{n-2}`: the edge `x y` joined to the cycle `c1 … c_{n-2}`.
/// It has `3n − 5` edges and is `K_{3,3}`-saturated for `n ≥ 7`.
pub fn edge_join_cycle(n: usize) -> Result<LabeledConstruction, ConstructionError> {
    if !(7..=MAX_VERTICES).contains(&n) {
        return Err(ConstructionError::Range {
            name: "edge-join-cycle",
            requirement: "7 <= n <= 64 (C_4 would contain K_{2,2})",
            n,
        });
    }
    let edge = Graph::complete(2).expect("valid order");
    let cycle = Graph::cycle(n - 2).expect("valid order");
    let graph = edge.join(&cycle).expect("order fits");
    let mut labels = BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]);
    labels.extend((0..n - 2).map(|i| (format!("c{}", i + 1), i + 2)));
    let claimed = graph.size();
    Ok(LabeledConstruction::new(
        format!("edge-join-cycle:{n}"),
        graph,
        labels,
        claimed,
    ))
}

/// Parses witness records of the form `n <graph6> <edges>`, skipping blank
/// lines and `#` comments.
pub fn parse_witness_records(text: &str) -> Result<Vec<(usize, Graph, usize)>, ConstructionError> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let corrupt = |n, reason: &str| ConstructionError::Corrupt {
            n,
            reason: reason.to_string(),
        };
        let [n, g6, edges] = fields[..] else {
            return Err(corrupt(0, "expected three fields"));
        };
        let n: usize = n.parse().map_err(|_| corrupt(0, "bad order"))?;
        let edges: usize = edges.parse().map_err(|_| corrupt(n, "bad edge count"))?;
        let g = parse_graph6(g6).map_err(|e| corrupt(n, &e.to_string()))?;
        out.push((n, g, edges));
    }
    Ok(out)
}

/// A cached `K_{3,3}`-saturated graph with `2n` edges for `6 ≤ n ≤ 8` and
/// `3n − 9` for `9 ≤ n ≤ 11`, re-verified on every load.
pub fn small_witness(n: usize) -> Result<LabeledConstruction, ConstructionError> {
    if !(6..=11).contains(&n) {
        return Err(ConstructionError::Range {
            name: "small",
            requirement: "6 <= n <= 11",
            n,
        });
    }
    let expected = if n <= 8 { 2 * n } else { 3 * n - 9 };
    let records = parse_witness_records(SMALL_WITNESSES)?;
    let (_, graph, edges) = records
        .into_iter()
        .find(|r| r.0 == n)
        .ok_or(ConstructionError::Missing(n))?;
    let corrupt = |reason: String| ConstructionError::Corrupt { n, reason };
    if graph.order() != n {
        return Err(corrupt(format!("graph has {} vertices", graph.order())));
    }
    if edges != expected || graph.size() != expected {
        return Err(corrupt(format!(
            "{} edges recorded, {} present, {expected} required",
            edges,
            graph.size()
        )));
    }
    let k33 = MultipartitePattern::bipartite(3, 3).expect("valid pattern");
    if !saturation::is_saturated(&graph, &k33) {
        return Err(corrupt("graph is not K_{3,3}-saturated".into()));
    }
    Ok(LabeledConstruction::new(
        format!("small:{n}"),
        graph,
        v_labels(n),
        expected,
    ))
}
