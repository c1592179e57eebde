use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use univ_core::construction::build_universal;
use univ_core::embedding::{embed_forest, embed_tree_full, validate_embedding};
use univ_core::{Arity, Graph};

fn random_forest(n: usize, seed: u64, keep: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(u32, u32)> = (1..n as u32)
        .filter_map(|v| {
            let p = if rng.gen_bool(0.5) { v - 1 } else { rng.gen_range(0..v) };
            rng.gen_bool(keep).then_some((p, v))
        })
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn check_forest(n: u64, d: Arity, f: &Graph) {
    let host = build_universal(n, d).unwrap();
    let e = embed_forest(&host, f).unwrap_or_else(|err| panic!("n={n} d={d} |F|={}: {err}", f.n()));
    validate_embedding(&host, f, &e).unwrap_or_else(|v| panic!("n={n} d={d} |F|={}: {v}", f.n()));
}

#[test]
fn forests_fill_every_prefix_of_small_hosts() {
    for d in [Arity::BINARY, Arity::TERNARY] {
        for n in 1..=45u64 {
            for k in 0..n as usize {
                for seed in 0..6 {
                    let keep = [1.0, 0.9, 0.6][seed as usize % 3];
                    check_forest(n, d, &random_forest(k, seed * 7919 + n * 131 + k as u64, keep));
                }
            }
        }
    }
}

#[test]
fn trees_embed_bijectively() {
    for d in [Arity::BINARY, Arity::TERNARY] {
        for n in 1..=60u64 {
            for seed in 0..8 {
                let t = random_forest(n as usize, seed + 1000 * n, 1.0);
                let host = build_universal(n, d).unwrap();
                let e = embed_tree_full(&host, &t).unwrap_or_else(|err| panic!("n={n} d={d}: {err}"));
                validate_embedding(&host, &t, &e).unwrap_or_else(|v| panic!("n={n} d={d}: {v}"));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn larger_forests_embed(n in 40u64..400, frac in 0.0f64..1.0, seed in any::<u64>(), ternary in any::<bool>()) {
        let d = if ternary { Arity::TERNARY } else { Arity::BINARY };
        let k = ((n - 1) as f64 * frac) as usize;
        check_forest(n, d, &random_forest(k, seed, 0.95));
    }
}

fn shaped(n: usize, kind: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(u32, u32)> = (1..n as u32)
        .map(|v| match kind {
            0 => (0, v),
            1 => (v - 1, v),
            2 => (if v % 2 == 1 { v.saturating_sub(2) } else { v - 1 }, v),
            3 => (v.saturating_sub(3), v),
            _ => (rng.gen_range(v.saturating_sub(3)..v), v),
        })
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn adversarial_shapes() {
    for d in [Arity::BINARY, Arity::TERNARY] {
        for n in 1..=150u64 {
            for kind in 0..5 {
                for k in [n as usize - 1, (n as usize - 1) * 2 / 3, n as usize / 2] {
                    check_forest(n, d, &shaped(k, kind, n * 10 + kind as u64));
                }
                let t = shaped(n as usize, kind, n);
                let host = build_universal(n, d).unwrap();
                let e = embed_tree_full(&host, &t).unwrap_or_else(|err| panic!("n={n} d={d} kind={kind}: {err}"));
                validate_embedding(&host, &t, &e).unwrap_or_else(|v| panic!("n={n} d={d} kind={kind}: {v}"));
            }
        }
    }
}

/// Removing the half-block edges must be caught by validation on some
/// instance: those edges are what the two-separator branch relies on.
#[test]
fn half_block_edges_are_needed() {
    use univ_core::construction::EdgeRule;
    let n = 68u64;
    let mut host = build_universal(n, Arity::TERNARY).unwrap();
    let lay = host.layout;
    let kept = |p: u64, q: u64| {
        lay.rule_ranges(&lay.address(p)).iter().any(|&(r, lo, hi)| r != EdgeRule::HalfBlock && (lo..=hi).contains(&q))
    };
    let edges: Vec<(u32, u32)> = host
        .graph
        .edges()
        .filter(|&(a, b)| {
            let (p, q) = (host.position(a), host.position(b));
            kept(p, q) || kept(q, p)
        })
        .collect();
    let intact = host.clone();
    host.graph = Graph::from_edges(host.n(), edges).unwrap();
    let mut caught = 0;
    for kind in 0..5 {
        for k in [n as usize - 1, (n as usize - 1) * 2 / 3, n as usize / 2] {
            let f = shaped(k, kind, n * 10 + kind as u64);
            let e = embed_forest(&host, &f).unwrap();
            validate_embedding(&intact, &f, &e).unwrap();
            caught += usize::from(validate_embedding(&host, &f, &e).is_err());
        }
    }
    assert!(caught > 0);
}
