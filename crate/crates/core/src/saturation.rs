//! `F`-saturation checks with certificates, and an audit of the structural
//! facts every `K_{3,3}`-saturated graph satisfies around a minimum-degree
//! vertex.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::discharging::{self, DischargingError};
use crate::graph::{Edge, Graph, VertexSet};
use crate::pattern::{self, MultipartitePattern, Witness, WitnessError};

/// A witness certifying that adding `edge` creates the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub edge: Edge,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SaturationVerdict {
    /// One certificate per non-edge, in lexicographic non-edge order.
    Saturated { certificate: Vec<EdgeCertificate> },
    /// The graph already contains the pattern.
    ContainsPattern(Witness),
    /// Adding this (lexicographically first failing) non-edge creates no copy.
    MissingEdgeFails(Edge),
}

impl SaturationVerdict {
    pub fn is_saturated(&self) -> bool {
        matches!(self, SaturationVerdict::Saturated { .. })
    }
}

/// Decides `P`-saturation, producing a certificate or the first failure.
pub fn check_saturated(g: &Graph, p: &MultipartitePattern) -> SaturationVerdict {
    if let Some(w) = pattern::contains(g, p) {
        return SaturationVerdict::ContainsPattern(w);
    }
    let non_edges: Vec<Edge> = g.non_edges().collect();
    let found: Vec<Option<Witness>> = non_edges
        .par_iter()
        .map(|e| {
            let h = g.plus_edge(e.u, e.v);
            pattern::contains_through_edge(&h, p, e.u, e.v).expect("edge was just added")
        })
        .collect();
    let mut certificate = Vec::with_capacity(non_edges.len());
    for (edge, w) in non_edges.into_iter().zip(found) {
        match w {
            Some(witness) => certificate.push(EdgeCertificate { edge, witness }),
            None => return SaturationVerdict::MissingEdgeFails(edge),
        }
    }
    SaturationVerdict::Saturated { certificate }
}

/// Certificate-free saturation test for hot loops.
pub fn is_saturated(g: &Graph, p: &MultipartitePattern) -> bool {
    !pattern::has_copy(g, p) && adds_all_create(g, p)
}

/// Whether every non-edge addition creates a copy of `p` through that edge.
pub(crate) fn adds_all_create(g: &Graph, p: &MultipartitePattern) -> bool {
    let mut h = g.clone();
    for e in g.non_edges() {
        h.insert_edge(e.u, e.v);
        let ok = pattern::has_copy_through(&h, p, e.u, e.v);
        h.delete_edge(e.u, e.v);
        if !ok {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("certificate covers {found} non-edges, graph has {expected}")]
    Coverage { expected: usize, found: usize },
    #[error("certificate line for {0} is not a non-edge in order")]
    UnexpectedEdge(Edge),
    #[error("witness for {edge} is invalid: {source}")]
    BadWitness { edge: Edge, source: WitnessError },
    #[error("witness for {0} does not use that edge")]
    EdgeUnused(Edge),
}

/// One line per non-edge: `u v : a b c | d e f`.
pub fn write_certificate(cert: &[EdgeCertificate]) -> String {
    let mut out = String::new();
    for c in cert {
        writeln!(out, "{} {} : {}", c.edge.u, c.edge.v, c.witness).expect("writing to a String");
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Vec<EdgeCertificate>, CertificateError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| CertificateError::Syntax {
            line: i + 1,
            reason: reason.to_string(),
        };
        let (head, body) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let ends: Vec<usize> = head
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad vertex in edge"))?;
        let [u, v] = ends[..] else {
            return Err(bad("edge needs two vertices"));
        };
        let parts = body
            .split('|')
            .map(|part| {
                part.split_whitespace()
                    .map(|t| t.parse::<usize>().ok().filter(|&x| x < 64))
                    .collect::<Option<VertexSet>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("bad vertex in witness"))?;
        out.push(EdgeCertificate {
            edge: Edge::new(u, v),
            witness: Witness { parts },
        });
    }
    Ok(out)
}

/// Re-validates a certificate against `g`: exactly the non-edges in order, each
/// with a valid witness in `G + uv` that uses `uv`.
pub fn verify_certificate(
    g: &Graph,
    p: &MultipartitePattern,
    cert: &[EdgeCertificate],
) -> Result<(), CertificateError> {
    let non_edges: Vec<Edge> = g.non_edges().collect();
    if non_edges.len() != cert.len() {
        return Err(CertificateError::Coverage {
            expected: non_edges.len(),
            found: cert.len(),
        });
    }
    for (e, c) in non_edges.iter().zip(cert) {
        if *e != c.edge {
            return Err(CertificateError::UnexpectedEdge(c.edge));
        }
        let h = g.plus_edge(e.u, e.v);
        c.witness
            .validate(&h, p)
            .map_err(|source| CertificateError::BadWitness { edge: *e, source })?;
        if !c.witness.uses_edge(e.u, e.v) {
            return Err(CertificateError::EdgeUnused(*e));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("graph is not K_{{3,3}}-saturated")]
    NotSaturated,
    #[error(transparent)]
    Partition(#[from] DischargingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prop31Violation {
    /// No `{x1,x2} ⊆ N(x)∖{y}` and `{y1,y2} ⊆ N(y)∖{x}` with `{x1,x2} ∼ {y1,y2}`.
    NoK22 { x: usize, y: usize },
    /// `|N(x) ∩ N(ai) ∩ N(aj)| > 2` for some `x ∉ V1`.
    CommonNeighborhood {
        x: usize,
        ai: usize,
        aj: usize,
        count: usize,
    },
    /// `x ∈ V4` with no pair `ai, aj` sharing exactly two neighbours with `x`.
    V4WithoutPair { x: usize },
    /// `x ∈ V3` without a neighbour in `V2`.
    V3WithoutV2Neighbor { x: usize },
    /// `G[V1∖{a}]` has no `K_{1,2}` yet `x ∉ V1` has fewer than two `V2` neighbours.
    FewV2Neighbors { x: usize, count: usize },
    /// `G[V1∖{a}]` has no `K_{1,2}` yet `|V2| < 3`.
    SmallV2 { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop31Report {
    pub a: usize,
    pub non_edges_checked: usize,
    pub triples_checked: usize,
    /// Whether `G[V1∖{a}]` is free of `K_{1,2}` (enables the strong `V2` counts).
    pub root_neighbourhood_cherry_free: bool,
    pub violations: Vec<Prop31Violation>,
}

impl Prop31Report {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether some disjoint `{x1,x2} ⊆ N(x)∖{y}`, `{y1,y2} ⊆ N(y)∖{x}` are fully joined.
fn k22_between(g: &Graph, x: usize, y: usize) -> bool {
    let nx = g.neighbors(x).without(y).to_vec();
    let ny = g.neighbors(y).without(x);
    for (i, &x1) in nx.iter().enumerate() {
        for &x2 in &nx[i + 1..] {
            // the y-side must avoid x1, x2; adjacency to both already excludes them
            if (ny & g.neighbors(x1) & g.neighbors(x2)).len() >= 2 {
                return true;
            }
        }
    }
    false
}

/// Audits the root-neighbourhood facts of a `K_{3,3}`-saturated graph.
///
/// The saturation precondition is re-verified, and `a` must have minimum
/// degree. Every failure is collected rather than stopping at the first.
pub fn audit_prop31(g: &Graph, a: usize) -> Result<Prop31Report, AuditError> {
    let k33 = MultipartitePattern::bipartite(3, 3).expect("valid pattern");
    let part = discharging::build_partition(g, a)?;
    if !is_saturated(g, &k33) {
        return Err(AuditError::NotSaturated);
    }
    let mut violations = Vec::new();

    let mut non_edges_checked = 0;
    for e in g.non_edges() {
        non_edges_checked += 1;
        if !k22_between(g, e.u, e.v) {
            violations.push(Prop31Violation::NoK22 { x: e.u, y: e.v });
        }
    }

    let outside = g.vertices() - part.v1;
    let na = &part.a_list;
    let mut triples_checked = 0;
    for x in outside {
        let mut exact_pair = false;
        for (i, &ai) in na.iter().enumerate() {
            for &aj in &na[i + 1..] {
                triples_checked += 1;
                let count = (g.neighbors(x) & g.neighbors(ai) & g.neighbors(aj)).len();
                if count > 2 {
                    violations.push(Prop31Violation::CommonNeighborhood { x, ai, aj, count });
                }
                exact_pair |= count == 2;
            }
        }
        if part.v4.contains(x) && !exact_pair {
            violations.push(Prop31Violation::V4WithoutPair { x });
        }
        if part.v3.contains(x) && (g.neighbors(x) & part.v2).is_empty() {
            violations.push(Prop31Violation::V3WithoutV2Neighbor { x });
        }
    }

    let inner = part.v1.without(a);
    let cherry_free = inner.iter().all(|v| (g.neighbors(v) & inner).len() <= 1);
    if cherry_free && !outside.is_empty() {
        for x in outside {
            let count = (g.neighbors(x) & part.v2).len();
            if count < 2 {
                violations.push(Prop31Violation::FewV2Neighbors { x, count });
            }
        }
        if part.v2.len() < 3 {
            violations.push(Prop31Violation::SmallV2 { size: part.v2.len() });
        }
    }

    Ok(Prop31Report {
        a,
        non_edges_checked,
        triples_checked,
        root_neighbourhood_cherry_free: cherry_free,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> MultipartitePattern {
        MultipartitePattern::bipartite(3, 3).unwrap()
    }

    #[test]
    fn pentagon_is_triangle_saturated() {
        let c5 = Graph::cycle(5).unwrap();
        let k3 = MultipartitePattern::complete(3).unwrap();
        let SaturationVerdict::Saturated { certificate } = check_saturated(&c5, &k3) else {
            panic!("C5 should be K3-saturated");
        };
        assert_eq!(certificate.len(), 5);
        verify_certificate(&c5, &k3, &certificate).unwrap();
        assert!(is_saturated(&c5, &k3));
    }

    #[test]
    fn verdict_variants() {
        let k6 = Graph::complete(6).unwrap();
        assert!(matches!(
            check_saturated(&k6, &k33()),
            SaturationVerdict::ContainsPattern(_)
        ));
        let e6 = Graph::empty(6).unwrap();
        assert_eq!(
            check_saturated(&e6, &k33()),
            SaturationVerdict::MissingEdgeFails(Edge::new(0, 1))
        );
        assert!(!is_saturated(&e6, &k33()));
    }

    #[test]
    fn certificate_text_round_trip() {
        let c5 = Graph::cycle(5).unwrap();
        let k3 = MultipartitePattern::complete(3).unwrap();
        let SaturationVerdict::Saturated { certificate } = check_saturated(&c5, &k3) else {
            unreachable!()
        };
        let text = write_certificate(&certificate);
        assert_eq!(text.lines().next().unwrap(), "0 2 : 0 | 2 | 1");
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed, certificate);
        verify_certificate(&c5, &k3, &parsed).unwrap();
        assert!(parse_certificate("0 2 0 | 1").is_err());
        let mut tampered = parsed.clone();
        tampered[0].witness.parts.swap(0, 2);
        tampered[0].witness.parts[1] = VertexSet::singleton(4);
        assert!(verify_certificate(&c5, &k3, &tampered).is_err());
    }

    #[test]
    fn audit_rejects_unsaturated_input() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(audit_prop31(&c6, 0), Err(AuditError::NotSaturated));
        let star = Graph::star(7).unwrap();
        assert!(matches!(audit_prop31(&star, 0), Err(AuditError::Partition(_))));
    }

    #[test]
    fn k22_between_neighbourhoods() {
        // K_{3,3} minus an edge: the missing pair has a K_{2,2} between its neighbourhoods
        let g = Graph::complete_bipartite(3, 3).unwrap().remove_edge(0, 3).unwrap();
        assert!(k22_between(&g, 0, 3));
        let c6 = Graph::cycle(6).unwrap();
        assert!(!k22_between(&c6, 0, 3));
    }
}
