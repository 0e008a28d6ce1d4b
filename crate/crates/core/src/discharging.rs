//! The minimum-degree partition `V1..V4` around a root vertex `a`, the charge
//! functions `f`, `g`, `g'` in exact half-integer arithmetic, and the edge
//! counting identities they satisfy.
//!
//! With `V1 = N[a]`, every vertex outside `V1` falls in `V2` (at least two
//! neighbours in `N(a)`), `V3` (exactly one) or `V4` (none). A charge of a
//! vertex `x ∈ Vi` counts its edges to lower classes fully and its edges
//! inside `Vi` by half, minus a constant, so summing charges counts every
//! edge outside `G[V1]` exactly once:
//!
//! ```text
//! e(G) = e(V1) + c·(n - |V1|) + Σ_{x ∉ V1} charge(x)
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::pattern::MultipartitePattern;
use crate::saturation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargingError {
    #[error("vertex {vertex} has degree {degree}, but the minimum degree is {min_degree}")]
    NotMinimumDegree {
        vertex: usize,
        degree: usize,
        min_degree: usize,
    },
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(usize),
    #[error("vertex {0} lies in V1; charges are defined outside N[a] only")]
    InRootClass(usize),
    #[error("graph is not K_{{3,3}}-saturated")]
    NotSaturated,
}

/// A number of the form `k/2`, stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> Self {
        iter.fold(HalfInt::ZERO, Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexClass {
    V1,
    V2,
    V3,
    V4,
}

impl VertexClass {
    /// 1-based class index.
    pub fn index(self) -> usize {
        self as usize + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationPartition {
    pub a: usize,
    /// `N(a)` in ascending order; `a_list[i-1]` is `a_i`.
    pub a_list: Vec<usize>,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub v3: VertexSet,
    pub v4: VertexSet,
    /// `V2^i`: vertices of `V2` with exactly `i` neighbours in `V1`.
    pub v2_by_count: BTreeMap<usize, VertexSet>,
    /// `V_{i1…is}` keyed by the 1-based indices `[i1, …, is]`.
    pub v2_by_support: BTreeMap<Vec<usize>, VertexSet>,
    /// `V4^3`: vertices of `V4` with at least three neighbours in `V2 ∪ V3`.
    pub v4_3: VertexSet,
    /// `V4^20`: the rest of `V4` with at most one neighbour in `V4`.
    pub v4_20: VertexSet,
    /// `V4^21`: the rest of `V4` with at least two neighbours in `V4`.
    pub v4_21: VertexSet,
}

impl SaturationPartition {
    pub fn class_of(&self, x: usize) -> VertexClass {
        if self.v1.contains(x) {
            VertexClass::V1
        } else if self.v2.contains(x) {
            VertexClass::V2
        } else if self.v3.contains(x) {
            VertexClass::V3
        } else {
            VertexClass::V4
        }
    }

    pub fn class(&self, c: VertexClass) -> VertexSet {
        match c {
            VertexClass::V1 => self.v1,
            VertexClass::V2 => self.v2,
            VertexClass::V3 => self.v3,
            VertexClass::V4 => self.v4,
        }
    }

    /// `V1 ∪ … ∪ V_{i-1}` for the class `Vi`.
    pub fn below(&self, c: VertexClass) -> VertexSet {
        match c {
            VertexClass::V1 => VertexSet::EMPTY,
            VertexClass::V2 => self.v1,
            VertexClass::V3 => self.v1 | self.v2,
            VertexClass::V4 => self.v1 | self.v2 | self.v3,
        }
    }

    /// `V2^2`.
    pub fn v2_two(&self) -> VertexSet {
        self.v2_by_count.get(&2).copied().unwrap_or_default()
    }
}

pub fn min_degree_vertices(g: &Graph) -> Vec<usize> {
    let d = g.min_degree();
    (0..g.order()).filter(|&v| g.degree(v) == d).collect()
}

/// Minimum-degree vertices that also minimise `e(G[N[a]])`.
pub fn root_candidates(g: &Graph) -> Vec<usize> {
    let mins = min_degree_vertices(g);
    let best = mins
        .iter()
        .map(|&a| g.edges_within(g.closed_neighbors(a)))
        .min()
        .unwrap_or(0);
    mins.into_iter()
        .filter(|&a| g.edges_within(g.closed_neighbors(a)) == best)
        .collect()
}

pub fn build_partition(g: &Graph, a: usize) -> Result<SaturationPartition, DischargingError> {
    if a >= g.order() {
        return Err(DischargingError::VertexOutOfRange(a));
    }
    let min_degree = g.min_degree();
    if g.degree(a) != min_degree {
        return Err(DischargingError::NotMinimumDegree {
            vertex: a,
            degree: g.degree(a),
            min_degree,
        });
    }
    let na = g.neighbors(a);
    let a_list = na.to_vec();
    let v1 = g.closed_neighbors(a);
    let mut v2 = VertexSet::EMPTY;
    let mut v3 = VertexSet::EMPTY;
    let mut v4 = VertexSet::EMPTY;
    for x in g.vertices() - v1 {
        match (g.neighbors(x) & na).len() {
            0 => v4.insert(x),
            1 => v3.insert(x),
            _ => v2.insert(x),
        }
    }

    let mut v2_by_count: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut v2_by_support: BTreeMap<Vec<usize>, VertexSet> = BTreeMap::new();
    for x in v2 {
        let hits = g.neighbors(x) & v1;
        v2_by_count.entry(hits.len()).or_default().insert(x);
        let support: Vec<usize> = a_list
            .iter()
            .enumerate()
            .filter(|(_, &ai)| hits.contains(ai))
            .map(|(i, _)| i + 1)
            .collect();
        v2_by_support.entry(support).or_default().insert(x);
    }

    let mut v4_3 = VertexSet::EMPTY;
    let mut v4_20 = VertexSet::EMPTY;
    let mut v4_21 = VertexSet::EMPTY;
    for z in v4 {
        if (g.neighbors(z) & (v2 | v3)).len() >= 3 {
            v4_3.insert(z);
        } else if (g.neighbors(z) & v4).len() <= 1 {
            v4_20.insert(z);
        } else {
            v4_21.insert(z);
        }
    }

    Ok(SaturationPartition {
        a,
        a_list,
        v1,
        v2,
        v3,
        v4,
        v2_by_count,
        v2_by_support,
        v4_3,
        v4_20,
        v4_21,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChargeKind {
    /// `f`: lower-class edges plus half the same-class edges, minus 2.
    F,
    /// `g`: as `f` with constant 3.
    G,
    /// `g'`: classes regrouped as `V2∖V2^2`, `V2^2`, `V3 ∪ V4`, constant 3.
    GPrime,
}

fn check_outside_root(g: &Graph, p: &SaturationPartition, x: usize) -> Result<(), DischargingError> {
    if x >= g.order() {
        return Err(DischargingError::VertexOutOfRange(x));
    }
    if p.v1.contains(x) {
        return Err(DischargingError::InRootClass(x));
    }
    Ok(())
}

/// `full` edges count 1, `half` edges count 1/2, minus `constant`.
fn weigh(g: &Graph, x: usize, full: VertexSet, half: VertexSet, constant: i64) -> HalfInt {
    let n = g.neighbors(x);
    HalfInt::from_twice(2 * (n & full).len() as i64 + (n & half).len() as i64 - 2 * constant)
}

pub fn charge(g: &Graph, p: &SaturationPartition, x: usize, kind: ChargeKind) -> Result<HalfInt, DischargingError> {
    check_outside_root(g, p, x)?;
    let class = p.class_of(x);
    Ok(match kind {
        ChargeKind::F => weigh(g, x, p.below(class), p.class(class), 2),
        ChargeKind::G => weigh(g, x, p.below(class), p.class(class), 3),
        ChargeKind::GPrime => {
            let two = p.v2_two();
            let rich = p.v2 - two;
            if rich.contains(x) {
                weigh(g, x, p.v1, rich, 3)
            } else if two.contains(x) {
                weigh(g, x, p.v1 | rich, two, 3)
            } else {
                weigh(g, x, p.v1 | p.v2, p.v3 | p.v4, 3)
            }
        }
    })
}

pub fn charge_f(g: &Graph, p: &SaturationPartition, x: usize) -> Result<HalfInt, DischargingError> {
    charge(g, p, x, ChargeKind::F)
}

pub fn charge_g(g: &Graph, p: &SaturationPartition, x: usize) -> Result<HalfInt, DischargingError> {
    charge(g, p, x, ChargeKind::G)
}

pub fn charge_g_prime(g: &Graph, p: &SaturationPartition, x: usize) -> Result<HalfInt, DischargingError> {
    charge(g, p, x, ChargeKind::GPrime)
}

/// Per-vertex charges outside `V1` and their class sums (`s_i`, `w_i` or `w'_i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub kind: ChargeKind,
    pub per_vertex: BTreeMap<usize, HalfInt>,
    /// Sums over `V2`, `V3`, `V4`.
    pub sums: [HalfInt; 3],
}

impl ChargeLedger {
    pub fn build(g: &Graph, p: &SaturationPartition, kind: ChargeKind) -> Self {
        let mut per_vertex = BTreeMap::new();
        let mut sums = [HalfInt::ZERO; 3];
        for (slot, class) in [VertexClass::V2, VertexClass::V3, VertexClass::V4]
            .into_iter()
            .enumerate()
        {
            for x in p.class(class) {
                let c = charge(g, p, x, kind).expect("x lies outside V1");
                per_vertex.insert(x, c);
                sums[slot] += c;
            }
        }
        ChargeLedger { kind, per_vertex, sums }
    }

    pub fn total(&self) -> HalfInt {
        self.sums.iter().copied().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityVariant {
    /// `e(G) = e(V1) + 2(n-|V1|) + s2 + s3 + s4`.
    Two,
    /// `e(G) = e(V1) + 3(n-|V1|) + w2 + w3 + w4`.
    Three,
    /// `e(G) = e(V1) + 3(n-|V1|) + w'2 + w'3 + w'4`.
    Prime,
}

impl IdentityVariant {
    pub const ALL: [IdentityVariant; 3] = [IdentityVariant::Two, IdentityVariant::Three, IdentityVariant::Prime];

    pub fn charge_kind(self) -> ChargeKind {
        match self {
            IdentityVariant::Two => ChargeKind::F,
            IdentityVariant::Three => ChargeKind::G,
            IdentityVariant::Prime => ChargeKind::GPrime,
        }
    }

    fn constant(self) -> i64 {
        match self {
            IdentityVariant::Two => 2,
            IdentityVariant::Three | IdentityVariant::Prime => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeIdentity {
    pub variant: IdentityVariant,
    pub lhs: usize,
    pub rhs: HalfInt,
    pub holds: bool,
}

pub fn edge_identity(g: &Graph, p: &SaturationPartition, variant: IdentityVariant) -> EdgeIdentity {
    let ledger = ChargeLedger::build(g, p, variant.charge_kind());
    let outside = (g.order() - p.v1.len()) as i64;
    let rhs = HalfInt::from_int(g.edges_within(p.v1) as i64 + variant.constant() * outside) + ledger.total();
    let lhs = g.size();
    EdgeIdentity {
        variant,
        lhs,
        rhs,
        holds: rhs == HalfInt::from_int(lhs as i64),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Prop32Violation {
    /// A common `V4^20` neighbour whose `g`-charge is not `-1/2`.
    ZCharge { z: usize, charge: HalfInt },
    /// A common `V4^20` neighbour without exactly one neighbour in `V4`.
    NoUniqueV4Neighbor { z: usize },
    /// The `V4` neighbour `c` of `z` has `g(c) < 1/2`.
    CCharge { z: usize, c: usize, charge: HalfInt },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QualifyingPair {
    pub x1: usize,
    pub x2: usize,
    /// 1-based `{i, j}` of the class `V_{ij}`.
    pub support: [usize; 2],
    pub common_v4_20: Vec<usize>,
    pub violations: Vec<Prop32Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop32Report {
    pub pairs_examined: usize,
    pub qualifying: Vec<QualifyingPair>,
}

impl Prop32Report {
    pub fn passes(&self) -> bool {
        self.qualifying.iter().all(|q| q.violations.is_empty())
    }
}

/// For every pair `{x1, x2} ⊆ V_{ij}` with at least three common neighbours in
/// `V4^20`, checks that each such common neighbour `z` has `g(z) = -1/2` and
/// that its unique `V4` neighbour `c` has `g(c) >= 1/2`.
pub fn prop32_check(g: &Graph, p: &SaturationPartition) -> Result<Prop32Report, DischargingError> {
    let k33 = MultipartitePattern::bipartite(3, 3).expect("valid pattern");
    if !saturation::is_saturated(g, &k33) {
        return Err(DischargingError::NotSaturated);
    }
    let minus_half = HalfInt::from_twice(-1);
    let half = HalfInt::from_twice(1);
    let mut pairs_examined = 0;
    let mut qualifying = Vec::new();
    for (support, &class) in &p.v2_by_support {
        let &[i, j] = support.as_slice() else { continue };
        let members = class.to_vec();
        for (k, &x1) in members.iter().enumerate() {
            for &x2 in &members[k + 1..] {
                pairs_examined += 1;
                let zs = g.neighbors(x1) & g.neighbors(x2) & p.v4_20;
                if zs.len() < 3 {
                    continue;
                }
                let mut violations = Vec::new();
                for z in zs {
                    let gz = charge_g(g, p, z)?;
                    if gz != minus_half {
                        violations.push(Prop32Violation::ZCharge { z, charge: gz });
                    }
                    let cs = g.neighbors(z) & p.v4;
                    match cs.len() {
                        1 => {
                            let c = cs.first().expect("one element");
                            let gc = charge_g(g, p, c)?;
                            if gc < half {
                                violations.push(Prop32Violation::CCharge { z, c, charge: gc });
                            }
                        }
                        _ => violations.push(Prop32Violation::NoUniqueV4Neighbor { z }),
                    }
                }
                qualifying.push(QualifyingPair {
                    x1,
                    x2,
                    support: [i, j],
                    common_v4_20: zs.to_vec(),
                    violations,
                });
            }
        }
    }
    Ok(Prop32Report {
        pairs_examined,
        qualifying,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSizes {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
    pub v4: usize,
    /// `|V2^i|` keyed by `i`.
    pub v2_by_count: BTreeMap<usize, usize>,
    /// `|V_{i1…is}|` keyed by the comma-joined indices, e.g. `"1,2"`.
    pub v2_by_support: BTreeMap<String, usize>,
    pub v4_3: usize,
    pub v4_20: usize,
    pub v4_21: usize,
}

impl ClassSizes {
    pub fn of(p: &SaturationPartition) -> Self {
        ClassSizes {
            v1: p.v1.len(),
            v2: p.v2.len(),
            v3: p.v3.len(),
            v4: p.v4.len(),
            v2_by_count: p.v2_by_count.iter().map(|(&k, s)| (k, s.len())).collect(),
            v2_by_support: p
                .v2_by_support
                .iter()
                .map(|(k, s)| {
                    let key = k.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
                    (key, s.len())
                })
                .collect(),
            v4_3: p.v4_3.len(),
            v4_20: p.v4_20.len(),
            v4_21: p.v4_21.len(),
        }
    }
}

/// Class sums of one charge function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerSums {
    pub kind: ChargeKind,
    /// Sums over `V2`, `V3`, `V4`.
    pub sums: [HalfInt; 3],
    pub total: HalfInt,
}

/// Partition sizes, charge sums and the three edge identities around `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub edges: usize,
    pub root: usize,
    pub a_list: Vec<usize>,
    pub classes: ClassSizes,
    pub ledgers: Vec<LedgerSums>,
    pub identities: Vec<EdgeIdentity>,
}

impl AnalysisReport {
    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }

    pub fn to_text(&self) -> String {
        let c = &self.classes;
        let mut out = format!(
            "n = {}, e = {}, a = {} with N(a) = {:?}\n|V1| = {}, |V2| = {}, |V3| = {}, |V4| = {} (V4^3 {}, V4^20 {}, V4^21 {})\n",
            self.n, self.edges, self.root, self.a_list, c.v1, c.v2, c.v3, c.v4, c.v4_3, c.v4_20, c.v4_21
        );
        for l in &self.ledgers {
            out += &format!(
                "{:?}: V2 {}, V3 {}, V4 {}, total {}\n",
                l.kind, l.sums[0], l.sums[1], l.sums[2], l.total
            );
        }
        for i in &self.identities {
            let verdict = if i.holds { "holds" } else { "FAILS" };
            out += &format!("identity {:?}: {} = {} {verdict}\n", i.variant, i.lhs, i.rhs);
        }
        out
    }
}

pub fn analyze(g: &Graph, a: usize) -> Result<AnalysisReport, DischargingError> {
    let p = build_partition(g, a)?;
    let ledgers = [ChargeKind::F, ChargeKind::G, ChargeKind::GPrime]
        .into_iter()
        .map(|kind| {
            let l = ChargeLedger::build(g, &p, kind);
            LedgerSums {
                kind,
                sums: l.sums,
                total: l.total(),
            }
        })
        .collect();
    Ok(AnalysisReport {
        n: g.order(),
        edges: g.size(),
        root: a,
        a_list: p.a_list.clone(),
        classes: ClassSizes::of(&p),
        ledgers,
        identities: IdentityVariant::ALL.iter().map(|&v| edge_identity(g, &p, v)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_display_and_arithmetic() {
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_twice(5).to_string(), "5/2");
        assert_eq!(HalfInt::from_int(-3).to_string(), "-3");
        let s: HalfInt = [1, 1, 1].into_iter().map(HalfInt::from_twice).sum();
        assert_eq!(s, HalfInt::from_twice(3));
        assert!(!s.is_integer());
        assert_eq!(-s + s, HalfInt::ZERO);
    }

    #[test]
    fn star_rooted_at_leaf() {
        let g = Graph::star(6).unwrap();
        let p = build_partition(&g, 3).unwrap();
        assert_eq!(p.v1.to_vec(), vec![0, 3]);
        assert!(p.v2.is_empty());
        assert_eq!(p.v3.to_vec(), vec![1, 2, 4, 5]);
        assert!(p.v4.is_empty());
        assert_eq!(
            build_partition(&g, 0),
            Err(DischargingError::NotMinimumDegree {
                vertex: 0,
                degree: 5,
                min_degree: 1
            })
        );
    }

    #[test]
    fn charge_examples() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
        let p = build_partition(&g, 0).unwrap();
        assert_eq!(p.v2.to_vec(), vec![3, 4]);
        // N(x) ⊆ V1, two V1 neighbours: f = 0
        assert_eq!(charge_f(&g, &p, 3).unwrap(), HalfInt::ZERO);
        let g2 = g.add_edge(3, 4).unwrap();
        let p2 = build_partition(&g2, 0).unwrap();
        // two V1 neighbours and one V2 neighbour: f = 1/2
        assert_eq!(charge_f(&g2, &p2, 3).unwrap(), HalfInt::from_twice(1));
        assert_eq!(charge_f(&g2, &p2, 1), Err(DischargingError::InRootClass(1)));
        assert_eq!(charge_g(&g2, &p2, 0), Err(DischargingError::InRootClass(0)));
    }

    #[test]
    fn g_charges_on_v4_20() {
        // root 0 with N(0) = {1, 2}; x1 = 3, x2 = 4 in V12; z = 5 sees x1, x2 only
        let mut edges = vec![(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
        let g = Graph::from_edges(8, &edges).unwrap();
        let g = g
            .add_edge(6, 7)
            .unwrap()
            .add_edge(6, 3)
            .unwrap()
            .add_edge(7, 4)
            .unwrap();
        let p = build_partition(&g, 0).unwrap();
        assert!(p.v4_20.contains(5));
        assert_eq!(charge_g(&g, &p, 5).unwrap(), HalfInt::from_int(-1));
        // give z a single V4 neighbour: d(z) = 3, g = -1/2
        edges.extend([(5, 6), (6, 7), (6, 3), (7, 4)]);
        let g = Graph::from_edges(8, &edges).unwrap();
        let p = build_partition(&g, 0).unwrap();
        assert!(p.v4_20.contains(5));
        assert_eq!(g.degree(5), 3);
        assert_eq!(charge_g(&g, &p, 5).unwrap(), HalfInt::from_twice(-1));
    }

    #[test]
    fn g_prime_examples() {
        // root 0, N(0) = {1, 2, 3}; x = 4 sees all three (V2^3)
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (4, 1),
                (4, 2),
                (4, 3),
                (5, 1),
                (5, 2),
                (5, 6),
                (6, 1),
                (6, 2),
                (6, 3),
            ],
        )
        .unwrap();
        let p = build_partition(&g, 0).unwrap();
        assert!(p.v2_by_count[&3].contains(4));
        assert_eq!(charge_g_prime(&g, &p, 4).unwrap(), HalfInt::ZERO);
        // y = 4 in V3 with two neighbours in V1 ∪ V2 and one in V3 ∪ V4
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (3, 1),
                (3, 2),
                (4, 1),
                (4, 3),
                (4, 5),
                (5, 2),
                (5, 6),
                (6, 1),
            ],
        )
        .unwrap();
        let p = build_partition(&g, 0).unwrap();
        assert_eq!(p.class_of(4), VertexClass::V3);
        assert_eq!(charge_g_prime(&g, &p, 4).unwrap(), HalfInt::from_twice(-1));
    }

    #[test]
    fn identities_on_root_only_graph() {
        // V2 = V3 = V4 = ∅ : e(G) = e(V1)
        let g = Graph::complete(4).unwrap();
        let p = build_partition(&g, 0).unwrap();
        for v in IdentityVariant::ALL {
            let id = edge_identity(&g, &p, v);
            assert!(id.holds);
            assert_eq!(id.lhs, 6);
        }
    }

    #[test]
    fn root_candidates_tie_break() {
        // two degree-1 vertices; 5 hangs off a triangle corner, 4 off a path end
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 5), (0, 3), (3, 4)]).unwrap();
        assert_eq!(min_degree_vertices(&g), vec![4, 5]);
        assert_eq!(root_candidates(&g), vec![4, 5]);
        let g = g.add_edge(3, 1).unwrap();
        assert_eq!(root_candidates(&g), vec![4, 5]);
    }
}
