use proptest::prelude::*;
use univ_core::construction::{build_universal, universal_edge_counts};
use univ_core::treewidth::*;
use univ_core::{Arity, Graph};

fn embed_ok(host: &TwHostGraph, g: &Graph, td: &TreeDecomposition) -> Result<(), String> {
    let e = embed_graph_full_tw(host, g, td).map_err(|e| e.to_string())?;
    validate_tw_embedding(host, g, &e).map_err(|v| v.to_string())
}

#[test]
fn partial_ktrees_embed_fully() {
    for w in 1..=3usize {
        for n in (w + 1)..=90 {
            let host = build_universal_tw(n as u64, w).unwrap();
            for seed in 0..3 {
                let keep = [1.0, 0.85, 0.6][seed as usize];
                let (g, td) = generate_partial_ktree(n, w, seed * 977 + n as u64, keep).unwrap();
                embed_ok(&host, &g, &td).unwrap_or_else(|m| panic!("w={w} n={n} seed={seed}: {m}"));
            }
        }
    }
}

#[test]
fn every_reading_embeds() {
    for reading in [T3Reading::Literal, T3Reading::WholeBlock, T3Reading::BaseAligned] {
        for n in [3u64, 17, 40, 79, 120] {
            let host = build_universal_tw_with(n, 2, reading).unwrap();
            let (g, td) = generate_partial_ktree(n as usize, 2, n, 0.9).unwrap();
            embed_ok(&host, &g, &td).unwrap_or_else(|m| panic!("{reading} n={n}: {m}"));
        }
    }
}

/// Trees given with their edge bags, using w = 1.
#[test]
fn trees_as_width_one_graphs() {
    for n in 2..=150usize {
        let host = build_universal_tw(n as u64, 1).unwrap();
        for kind in 0..4u32 {
            let par: Vec<u32> = (1..n as u32)
                .map(|v| match kind {
                    0 => 0,
                    1 => v - 1,
                    2 => (v - 1) / 2,
                    _ => v.saturating_sub(3),
                })
                .collect();
            let g = Graph::from_edges(n, par.iter().enumerate().map(|(i, &p)| (p, i as u32 + 1))).unwrap();
            let bags = par.iter().enumerate().map(|(i, &p)| vec![p, i as u32 + 1]).collect();
            let edges = par.iter().enumerate().skip(1).map(|(i, &p)| (p.saturating_sub(1), i as u32)).collect();
            let td = TreeDecomposition::new(bags, edges);
            embed_ok(&host, &g, &td).unwrap_or_else(|m| panic!("n={n} kind={kind}: {m}"));
        }
    }
}

#[test]
fn boundary_partial_embedding() {
    for w in 1..=3usize {
        let n = 60u64;
        let host = build_universal_tw(n, w).unwrap();
        let k = n as usize - w - 1;
        let (g, td) = generate_partial_ktree(k, w, 7, 0.9).unwrap();
        let e = embed_graph_tw(&host, &host_view(&host), &g, &td).unwrap();
        validate_tw_embedding(&host, &g, &e).unwrap();
        let (g, td) = generate_partial_ktree(k + 1, w, 7, 0.9).unwrap();
        assert!(embed_graph_tw(&host, &host_view(&host), &g, &td).is_err());
    }
}

#[test]
fn clique_of_size_w_plus_one() {
    for w in 1..=4usize {
        let n = w + 1;
        let g = Graph::from_edges(n, (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))).unwrap();
        let td = TreeDecomposition::new(vec![(0..n as u32).collect()], vec![]);
        embed_ok(&build_universal_tw(n as u64, w).unwrap(), &g, &td).unwrap();
    }
}

#[test]
fn accounting_identity_and_lower_bound() {
    for w in 1..=4usize {
        for n in (w as u64 + 1)..=500 {
            let e = count_edges_tw(n, w).unwrap();
            assert!(e <= blowup_accounting_bound(n, w), "w={w} n={n}");
            if n > 2 * w as u64 {
                assert!(lower_bound_edges(n, w) < e, "w={w} n={n}");
            }
        }
    }
}

/// With all cliques complete, the count is exactly the accounting bound.
#[test]
fn full_blowups_meet_the_accounting_exactly() {
    for w in 1..=3usize {
        let s = w as u64 + 1;
        for ns in [1u64, 4, 13, 20, 40] {
            let e = count_edges_tw(ns * s, w).unwrap();
            let base = universal_edge_counts(ns, Arity::TERNARY)[ns as usize];
            assert_eq!(e, s * s * base + s * (s - 1) / 2 * ns);
            assert_eq!(base as usize, build_universal(ns, Arity::TERNARY).unwrap().graph.edge_count());
        }
    }
}

#[test]
fn width_one_host_is_not_the_tree_host() {
    let tw = build_universal_tw(26, 1).unwrap();
    let tree = build_universal(26, Arity::TERNARY).unwrap();
    assert_ne!(tw.graph.edge_count(), tree.graph.edge_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn random_partial_ktrees(w in 1usize..4, extra in 0usize..150, seed in any::<u64>(), keep in 0.3f64..1.0) {
        let n = w + 1 + extra;
        let (g, td) = generate_partial_ktree(n, w, seed, keep).unwrap();
        let host = build_universal_tw(n as u64, w).unwrap();
        prop_assert!(embed_ok(&host, &g, &td).is_ok());
    }
}
