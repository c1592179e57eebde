use std::collections::HashSet;
use univ_core::construction::build_universal;
use univ_core::harness::*;
use univ_core::Arity;

#[test]
fn enumerator_matches_prufer_dedup() {
    for n in 1..=8 {
        let trees = enumerate_free_trees(n).unwrap();
        assert_eq!(trees.len(), count_free_trees_prufer(n), "n={n}");
        let codes: HashSet<String> = trees.iter().map(|t| canonical_code(&t.to_graph())).collect();
        assert_eq!(codes.len(), trees.len(), "duplicates at n={n}");
        assert!(trees.iter().all(|t| t.to_graph().is_forest() && t.to_graph().components().len() == 1));
    }
}

#[test]
fn small_counts() {
    assert_eq!(enumerate_free_trees(1).unwrap().len(), 1);
    assert_eq!(enumerate_free_trees(4).unwrap().len(), 2);
    assert!(enumerate_free_trees(0).is_err());
    assert!(enumerate_free_trees(MAX_ENUM_N + 1).is_err());
}

#[test]
fn brute_oracle_accepts_universal_hosts() {
    for d in [Arity::BINARY, Arity::TERNARY] {
        for n in 1..=7 {
            let host = build_universal(n as u64, d).unwrap();
            let r = brute_universality_check(&host.graph, n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn brute_oracle_rejects_a_path_host() {
    let path = univ_core::Graph::from_edges(5, (1..5).map(|i| (i - 1, i))).unwrap();
    let r = brute_universality_check(&path, 5).unwrap();
    assert_eq!(r.failures.len(), 2);
}

#[test]
fn root_mutations_are_detected() {
    let r = suite_root_mutations(&[5, 6, 7]);
    assert!(r.passed(), "{r}");
}

#[test]
fn quick_selftest_passes() {
    for r in run_selftest(Profile::Quick, Mutation::None, DEFAULT_SEED) {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn relabelled_guests_still_pass() {
    let r = suite_all_trees(8, Arity::TERNARY, Mutation::RelabelGuests, 3);
    assert!(r.passed(), "{r}");
}

#[test]
fn half_block_mutation_fails() {
    let reports = run_selftest(Profile::Quick, Mutation::DropHalfBlock, DEFAULT_SEED);
    assert!(reports.iter().any(|r| !r.passed()));
}

#[test]
fn tables() {
    let rows = edge_table(&[2, 13, 40, 121], TableMode::Tree(Arity::TERNARY)).unwrap();
    assert_eq!(rows[0].edges, 1);
    assert!(rows.iter().all(|r| r.ratio > 0.0));
    let rows = edge_table(&[10, 24], TableMode::Treewidth(1)).unwrap();
    assert_eq!(rows[0].lower, 12);
    assert!(rows.iter().all(|r| r.lower < r.edges));
}
