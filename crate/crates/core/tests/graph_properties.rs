use hf_core::classify::{canonical_map_type, Case, Relabeling};
use hf_core::graph::{DualGraph, RawGraph};
use hf_core::stable_map::{Behavior, EdgeImage, RawStableMap, StableMapType, VertexImage};
use proptest::prelude::*;

fn build(n: usize, edges: &[(usize, usize)], genus: impl Fn(usize) -> u32, legs: &[usize]) -> RawGraph {
    let mut g = RawGraph::default();
    for v in 0..n {
        g = g.vertex(&format!("v{v}"), genus(v));
    }
    for &(a, b) in edges {
        g = g.edge(&format!("v{a}"), &format!("v{b}"));
    }
    for (i, &v) in legs.iter().enumerate() {
        g = g.leg(&format!("p{i}"), &format!("v{v}"));
    }
    g
}

/// Nondecreasing sequences of length `len` over `0..m`.
fn multisets(m: usize, len: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().copied().unwrap_or(0);
    for i in start..m {
        cur.push(i);
        multisets(m, len, out, cur);
        cur.pop();
    }
}

#[test]
fn contraction_preserves_genus_on_all_small_graphs() {
    let mut checked = 0usize;
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for e in 0..=6 {
            let mut sets = Vec::new();
            multisets(pairs.len(), e, &mut sets, &mut Vec::new());
            for set in sets {
                let edges: Vec<_> = set.iter().map(|&i| pairs[i]).collect();
                let Ok(g) = build(n, &edges, |v| (v % 2) as u32, &[0]).validate() else {
                    continue;
                };
                let genus = g.arithmetic_genus();
                for i in 0..edges.len() {
                    let c = g.contract_edge(i);
                    assert_eq!(c.arithmetic_genus(), genus, "{edges:?} edge {i}");
                    assert_eq!(c.edges().len(), edges.len() - 1);
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}

fn connected_graph() -> impl Strategy<Value = DualGraph> {
    (1usize..6)
        .prop_flat_map(|n| {
            (
                Just(n),
                // a spanning path keeps the graph connected
                proptest::collection::vec((0..n, 0..n), 0..5),
                proptest::collection::vec(0u32..3, n),
                proptest::collection::vec(0..n, 0..5),
            )
        })
        .prop_map(|(n, extra, genera, legs)| {
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.extend(extra);
            build(n, &edges, |v| genera[v], &legs).validate().unwrap()
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn genus_and_stability_survive_relabeling(
        g in connected_graph(),
        perm in permutation(8),
        legs in permutation(8),
    ) {
        let index = |s: &str| s[1..].parse::<usize>().unwrap();
        let relabeled = g
            .relabel(|v| format!("w{}", perm[index(v)]), |l| format!("q{}", legs[index(l)]))
            .unwrap();
        prop_assert_eq!(relabeled.arithmetic_genus(), g.arithmetic_genus());
        prop_assert_eq!(relabeled.betti_number(), g.betti_number());
        prop_assert_eq!(relabeled.pointed_stability().stable, g.pointed_stability().stable);
    }
}

/// A finite separable double cover of a two-component target.
fn finite_map() -> StableMapType {
    RawStableMap {
        source: RawGraph::default()
            .vertex("A", 0)
            .vertex("B", 0)
            .edge("A", "B")
            .edge("A", "B")
            .leg("0", "A")
            .leg("λ", "A")
            .leg("1", "B")
            .leg("∞", "B"),
        target: RawGraph::default()
            .vertex("D0", 0)
            .vertex("D1", 0)
            .edge("D0", "D1")
            .leg("0", "D0")
            .leg("λ", "D0")
            .leg("1", "D1")
            .leg("∞", "D1"),
        vertex_map: [
            ("A".to_string(), VertexImage::vertex("D0")),
            ("B".to_string(), VertexImage::vertex("D1")),
        ]
        .into(),
        edge_map: vec![EdgeImage::Edge(0), EdgeImage::Edge(0)],
        leg_map: ["0", "1", "∞", "λ"].map(|l| (l.to_string(), l.to_string())).into(),
        degree: [("A".to_string(), 2), ("B".to_string(), 2)].into(),
        behavior: [("A".to_string(), Behavior::Separable), ("B".to_string(), Behavior::Separable)].into(),
        total_degree: 2,
        genus: Some(1),
    }
    .validate()
    .unwrap()
}

fn sample_maps() -> Vec<StableMapType> {
    let mut maps: Vec<_> = [Case::Case1, Case::Case2, Case::Case3, Case::Case4]
        .into_iter()
        .map(canonical_map_type)
        .collect();
    maps.push(finite_map());
    maps
}

#[test]
fn recorded_genus_matches_source() {
    for m in sample_maps() {
        if let Some(g) = m.raw().genus {
            assert_eq!(m.source().arithmetic_genus(), g);
        }
    }
}

#[test]
fn finite_maps_have_positive_degrees() {
    for m in sample_maps() {
        if m.finiteness_attributes().is_finite {
            assert!(m.source().vertices().iter().all(|v| m.degree(&v.id) >= 1));
        }
    }
    assert!(finite_map().finiteness_attributes().is_finite);
}

proptest! {
    #[test]
    fn map_checks_survive_relabeling(which in 0usize..5, sigma in 0usize..24, salt in 0u32..1000) {
        let m = &sample_maps()[which];
        let sigma = Relabeling::all()[sigma];
        let r = m
            .relabel(
                |v| format!("{v}#{salt}"),
                |w| format!("{w}@{salt}"),
                |l| sigma.apply_label(l),
            )
            .unwrap();
        prop_assert_eq!(r.map_stability().stable, m.map_stability().stable);
        prop_assert_eq!(r.degree_conservation(), m.degree_conservation());
        prop_assert_eq!(r.finiteness_attributes(), m.finiteness_attributes());
        prop_assert_eq!(r.source().arithmetic_genus(), m.source().arithmetic_genus());
    }
}
