use proptest::prelude::*;

use satgraph::discharging::{self, build_partition, ChargeKind, ChargeLedger, IdentityVariant, VertexClass};
use satgraph::formulas::bfp_upper;
use satgraph::pattern;
use satgraph::search::greedy_saturate;
use satgraph::{
    canonical_code, check_saturated, emit_graph6, exact_sat, is_isomorphic, known_sat, parse_graph6, Graph,
    MultipartitePattern, SatStatus, SaturationVerdict, SearchBudget, SearchOptions,
};

fn graph_on(range: std::ops::RangeInclusive<usize>, density: f64) -> impl Strategy<Value = Graph> {
    range.prop_flat_map(move |n| {
        prop::collection::vec(prop::bool::weighted(density), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_with_perm(range: std::ops::RangeInclusive<usize>, density: f64) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_on(range, density).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn pattern_strategy() -> impl Strategy<Value = MultipartitePattern> {
    prop::sample::select(vec!["1,1,1", "1,1,1,1", "2,2", "1,2", "2,3", "1,1,2", "3,3"])
        .prop_map(|s| s.parse::<MultipartitePattern>().unwrap())
}

/// Isomorphism by trying every permutation; only for tiny graphs.
fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == g.order() {
            return true;
        }
        for x in 0..g.order() {
            if used[x] || (0..k).any(|i| g.has_edge(i, k) != h.has_edge(perm[i], x)) {
                continue;
            }
            perm.push(x);
            used[x] = true;
            if go(g, h, perm, used) {
                return true;
            }
            perm.pop();
            used[x] = false;
        }
        false
    }
    g.order() == h.order() && g.size() == h.size() && go(g, h, &mut Vec::new(), &mut vec![false; g.order()])
}

/// `K_{s,t}` by scanning every `s`-set and its common neighbourhood.
fn brute_has_kst(g: &Graph, s: usize, t: usize) -> bool {
    let n = g.order();
    (0u64..1 << n).filter(|m| m.count_ones() as usize == s).any(|m| {
        let common = (0..n)
            .filter(|&x| m >> x & 1 == 0 && (0..n).filter(|&a| m >> a & 1 == 1).all(|a| g.has_edge(a, x)))
            .count();
        common >= t
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn graph6_round_trip(g in graph_on(1..=64, 0.4)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn degree_sum_is_twice_the_size(g in graph_on(1..=40, 0.3)) {
        let total: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.size());
    }

    #[test]
    fn complement_is_an_involution(g in graph_on(1..=64, 0.5)) {
        let c = g.complement();
        prop_assert_eq!(g.size() + c.size(), g.order() * (g.order() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn union_and_join_edge_counts(g in graph_on(1..=20, 0.4), h in graph_on(1..=20, 0.4)) {
        prop_assert_eq!(g.disjoint_union(&h).unwrap().size(), g.size() + h.size());
        prop_assert_eq!(g.join(&h).unwrap().size(), g.size() + h.size() + g.order() * h.order());
    }

    #[test]
    fn canonical_code_ignores_labels(
        (g, perms) in graph_on(1..=24, 0.35).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), prop::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 100))
        })
    ) {
        let code = canonical_code(&g);
        for perm in &perms {
            let h = g.permuted(perm);
            prop_assert_eq!(&code, &canonical_code(&h));
            prop_assert!(is_isomorphic(&g, &h));
        }
    }

    #[test]
    fn equal_codes_iff_isomorphic(g in graph_on(1..=7, 0.5), h in graph_on(1..=7, 0.5)) {
        prop_assert_eq!(canonical_code(&g) == canonical_code(&h), brute_isomorphic(&g, &h));
    }

    #[test]
    fn containment_is_monotone(g in graph_on(2..=12, 0.45), p in pattern_strategy()) {
        if pattern::contains(&g, &p).is_some() {
            for e in g.non_edges() {
                let bigger = g.add_edge(e.u, e.v).unwrap();
                prop_assert!(pattern::contains(&bigger, &p).is_some());
            }
        }
    }

    #[test]
    fn witnesses_validate((g, perm) in graph_with_perm(2..=12, 0.5), p in pattern_strategy()) {
        let w = pattern::contains(&g, &p);
        if let Some(w) = &w {
            prop_assert!(w.validate(&g, &p).is_ok());
        }
        prop_assert_eq!(w.is_some(), pattern::contains(&g.permuted(&perm), &p).is_some());
    }

    #[test]
    fn bipartite_containment_matches_common_neighbourhoods(g in graph_on(2..=11, 0.5), s in 1usize..=3, t in 1usize..=3) {
        let (s, t) = (s.min(t), s.max(t));
        let p = MultipartitePattern::bipartite(s, t).unwrap();
        prop_assert_eq!(pattern::contains(&g, &p).is_some(), brute_has_kst(&g, s, t));
    }

    #[test]
    fn greedy_outputs_are_saturated(n in 2usize..=14, seed in any::<u64>(), p in pattern_strategy()) {
        let g = greedy_saturate(&Graph::empty(n).unwrap(), &p, seed).unwrap();
        match check_saturated(&g, &p) {
            SaturationVerdict::Saturated { certificate } => {
                prop_assert_eq!(certificate.len(), g.non_edges().count());
                for c in &certificate {
                    let with = g.add_edge(c.edge.u, c.edge.v).unwrap();
                    prop_assert!(c.witness.validate(&with, &p).is_ok());
                    prop_assert!(c.witness.uses_edge(c.edge.u, c.edge.v));
                }
            }
            other => prop_assert!(false, "greedy output not saturated: {:?}", other),
        }
    }

    #[test]
    fn saturation_verdict_ignores_labels((g, perm) in graph_with_perm(2..=11, 0.55), p in pattern_strategy()) {
        let kind = |v: &SaturationVerdict| std::mem::discriminant(v);
        prop_assert_eq!(kind(&check_saturated(&g, &p)), kind(&check_saturated(&g.permuted(&perm), &p)));
    }

    #[test]
    fn partition_invariants(g in graph_on(1..=20, 0.35)) {
        for a in discharging::min_degree_vertices(&g) {
            let p = build_partition(&g, a).unwrap();
            let na = g.neighbors(a);
            prop_assert_eq!(p.v1, g.closed_neighbors(a));
            for x in g.vertices() {
                let classes = [p.v1, p.v2, p.v3, p.v4].iter().filter(|c| c.contains(x)).count();
                prop_assert_eq!(classes, 1);
                if p.v1.contains(x) {
                    continue;
                }
                let want = match (g.neighbors(x) & na).len() {
                    0 => VertexClass::V4,
                    1 => VertexClass::V3,
                    _ => VertexClass::V2,
                };
                prop_assert_eq!(p.class_of(x), want);
            }
            for x in p.v2 {
                prop_assert_eq!(p.v2_by_support.values().filter(|s| s.contains(x)).count(), 1);
                prop_assert!(p.v2_by_count[&(g.neighbors(x) & p.v1).len()].contains(x));
            }
            for z in p.v4 {
                let tiers = [p.v4_3, p.v4_20, p.v4_21].iter().filter(|c| c.contains(z)).count();
                prop_assert_eq!(tiers, 1);
            }
        }
    }

    #[test]
    fn identities_hold_on_arbitrary_graphs(g in graph_on(1..=20, 0.4)) {
        for a in discharging::min_degree_vertices(&g) {
            let p = build_partition(&g, a).unwrap();
            for v in IdentityVariant::ALL {
                prop_assert!(discharging::edge_identity(&g, &p, v).holds);
            }
            for kind in [ChargeKind::F, ChargeKind::G, ChargeKind::GPrime] {
                let l = ChargeLedger::build(&g, &p, kind);
                for (slot, class) in [VertexClass::V2, VertexClass::V3, VertexClass::V4].into_iter().enumerate() {
                    let direct = p.class(class).iter().map(|x| discharging::charge(&g, &p, x, kind).unwrap()).sum();
                    prop_assert_eq!(l.sums[slot], direct);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn search_is_deterministic(n in 3usize..=7, p in pattern_strategy(), seed in 0u64..1000, threads in 1usize..=3) {
        let base = SearchOptions { seed, ..Default::default() };
        let a = exact_sat(n, &p, &base).unwrap();
        let b = exact_sat(n, &p, &SearchOptions { seed, threads: Some(threads), ..Default::default() }).unwrap();
        prop_assert!(a.same_outcome(&b));
        prop_assert!(check_saturated(&a.witness, &p).is_saturated());
        prop_assert_eq!(a.witness.size(), a.value);
    }
}

#[test]
fn search_agrees_with_known_values() {
    for p in ["1,1,1", "1,1,1,1", "2,2", "2,3", "3,3", "1,2", "1,1,2"] {
        let p: MultipartitePattern = p.parse().unwrap();
        for n in 2..=8 {
            let r = exact_sat(n, &p, &SearchOptions::default()).unwrap();
            assert_eq!(r.status, SatStatus::Exact, "{p} n={n}");
            if let Some(v) = known_sat(n, &p).exact() {
                assert_eq!(r.value, v, "{p} n={n}");
            }
        }
    }
}

#[test]
fn exact_values_sit_below_the_general_upper_bound() {
    // stated formulas against the general bound, n up to 200
    let mut exceptions = Vec::new();
    for p in ["1,1,1", "1,1,1,1", "1,1,1,1,1", "2,2", "2,3", "3,3"] {
        let p: MultipartitePattern = p.parse().unwrap();
        for n in p.order()..=200 {
            if let (Some(v), Ok(b)) = (known_sat(n, &p).exact(), bfp_upper(n, &p)) {
                if v > b {
                    exceptions.push((p.to_list(), n, v, b));
                }
            }
        }
    }
    assert!(exceptions.is_empty(), "{exceptions:?}");
}

#[test]
fn budget_stop_is_explicit() {
    let p: MultipartitePattern = "3,3".parse().unwrap();
    let opts = SearchOptions {
        budget: SearchBudget::nodes(50),
        ..Default::default()
    };
    let r = exact_sat(9, &p, &opts).unwrap();
    assert_eq!(r.status, SatStatus::BudgetExceeded);
    assert!(r.checkpoint.is_some());
    assert!(check_saturated(&r.witness, &p).is_saturated());
}
