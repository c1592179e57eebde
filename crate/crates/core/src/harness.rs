//! Verification harness: free-tree enumeration, a brute-force universality
//! oracle, edge-count tables and the self-test suites.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::addressing::Arity;
use crate::construction::{build_admissible, build_universal, universal_edge_counts, EdgeRule, HostGraph, Layout};
use crate::embedding::{embed_forest, embed_tree_full, validate_embedding};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separators::{split_bounded, split_one_sep, split_three, split_two_sep, DeltaContext};
use crate::treewidth::{
    build_universal_tw, count_edges_tw, embed_graph_full_tw, generate_partial_ktree, lower_bound_edges,
    validate_tw_embedding,
};

/// Largest `n` accepted by [`enumerate_free_trees`].
pub const MAX_ENUM_N: usize = 16;

/// A free tree on `0..n` given by `parents[v-1]` = parent of `v`, with every
/// parent smaller than its child.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeTree {
    pub parents: Vec<u32>,
}

impl FreeTree {
    pub fn n(&self) -> usize {
        self.parents.len() + 1
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.parents.iter().enumerate().map(|(i, &p)| (p, i as u32 + 1)))
            .expect("parent array is a tree")
    }
}

/// Canonical rooted trees grouped by size; a tree is its multiset of child
/// trees `(size, index)` in non-increasing order.
struct RootedTable {
    by_size: Vec<Vec<Vec<(usize, usize)>>>,
}

impl RootedTable {
    fn new(max: usize) -> Self {
        let mut t = RootedTable { by_size: vec![Vec::new(); max + 1] };
        for k in 1..=max {
            let mut out = Vec::new();
            t.multisets(k - 1, (k - 1, usize::MAX), &mut Vec::new(), &mut out);
            t.by_size[k] = out;
        }
        t
    }

    /// All non-increasing sequences of trees with total size `rest` whose
    /// elements are at most `cap`.
    fn multisets(&self, rest: usize, cap: (usize, usize), cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for size in (1..=cap.0.min(rest)).rev() {
            let count = self.by_size[size].len();
            let top = if size == cap.0 { cap.1.min(count.saturating_sub(1)) } else { count - 1 };
            for idx in (0..=top).rev() {
                cur.push((size, idx));
                self.multisets(rest - size, (size, idx), cur, out);
                cur.pop();
            }
        }
    }

    fn emit(&self, size: usize, idx: usize, parent: Option<u32>, parents: &mut Vec<u32>, next: &mut u32) {
        let me = *next;
        *next += 1;
        if let Some(p) = parent {
            parents.push(p);
        }
        for &(s, i) in &self.by_size[size][idx] {
            self.emit(s, i, Some(me), parents, next);
        }
    }
}

/// Every free tree on `n` vertices exactly once, rooted at a centroid.
pub fn enumerate_free_trees(n: usize) -> Result<Vec<FreeTree>> {
    if !(1..=MAX_ENUM_N).contains(&n) {
        return Err(Error::SizeOutOfRange { size: n, lo: 1, hi: MAX_ENUM_N });
    }
    let half = (n - 1) / 2;
    let table = RootedTable::new(n / 2);
    let mut out = Vec::new();
    // one centroid: every branch has fewer than n/2 vertices
    let mut roots = Vec::new();
    table.multisets(n - 1, (half, usize::MAX), &mut Vec::new(), &mut roots);
    for children in roots {
        let mut parents = Vec::with_capacity(n - 1);
        let mut next = 1u32;
        for (s, i) in children {
            table.emit(s, i, Some(0), &mut parents, &mut next);
        }
        out.push(FreeTree { parents });
    }
    // two centroids joined by an edge, each side holding n/2 vertices
    if n.is_multiple_of(2) && n >= 2 {
        let k = n / 2;
        let count = table.by_size[k].len();
        for a in 0..count {
            for b in a..count {
                let mut parents = Vec::with_capacity(n - 1);
                let mut next = 0u32;
                table.emit(k, a, None, &mut parents, &mut next);
                table.emit(k, b, Some(0), &mut parents, &mut next);
                out.push(FreeTree { parents });
            }
        }
    }
    Ok(out)
}

/// Centre-rooted AHU code, independent of the enumerator.
pub fn canonical_code(g: &Graph) -> String {
    let n = g.n();
    if n == 0 {
        return String::new();
    }
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut layer: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] <= 1).collect();
    let mut left = n;
    let mut removed = vec![false; n];
    while left > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v as usize] = true;
            left -= 1;
            for &u in g.neighbors(v) {
                if !removed[u as usize] {
                    deg[u as usize] -= 1;
                    if deg[u as usize] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    let centres: Vec<u32> = (0..n as u32).filter(|&v| !removed[v as usize]).collect();
    fn code(g: &Graph, v: u32, from: u32) -> String {
        let mut kids: Vec<String> = g.neighbors(v).iter().filter(|&&u| u != from).map(|&u| code(g, u, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    centres.iter().map(|&c| code(g, c, u32::MAX)).min().expect("a tree has a centre")
}

/// Decodes a Prüfer sequence over `0..n` into a tree.
pub fn prufer_decode(seq: &[u32], n: usize) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf as u32, s));
        degree[leaf] -= 1;
        degree[s as usize] -= 1;
    }
    let rest: Vec<u32> = (0..n as u32).filter(|&v| degree[v as usize] == 1).collect();
    if n >= 2 {
        edges.push((rest[0], rest[1]));
    }
    Graph::from_edges(n, edges).expect("valid tree")
}

/// Number of free trees on `n` vertices, by decoding every labelled tree and
/// deduplicating canonical codes.
pub fn count_free_trees_prufer(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    let codes: HashSet<String> = (0..total)
        .into_par_iter()
        .map(|mut k| {
            let mut seq = vec![0u32; len];
            for s in seq.iter_mut() {
                *s = (k % n as u64) as u32;
                k /= n as u64;
            }
            canonical_code(&prufer_decode(&seq, n))
        })
        .collect();
    codes.len()
}

/// Outcome of one suite.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(suite: &str, start: Instant, results: Vec<Option<String>>) -> Self {
        let instances = results.len();
        let failures = results.into_iter().flatten().collect();
        VerificationReport { suite: suite.to_string(), instances, failures, elapsed: start.elapsed() }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} instances, {} failures, {:.2}s",
            self.suite,
            self.instances,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )?;
        for line in self.failures.iter().take(5) {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

/// Finds an injective adjacency-preserving map of `guest` (a tree) into
/// `host` by backtracking.
pub fn find_subgraph(host: &Graph, guest: &Graph) -> Option<Vec<u32>> {
    let n = guest.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if n > host.n() {
        return None;
    }
    // BFS order from a maximum-degree vertex: every later vertex has its
    // parent placed earlier
    let start = (0..n as u32).max_by_key(|&v| guest.degree(v)).expect("nonempty");
    let mut order = vec![start];
    let mut parent = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &u in guest.neighbors(v) {
            if !seen[u as usize] {
                seen[u as usize] = true;
                parent[u as usize] = v;
                order.push(u);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return None;
    }
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; host.n()];
    fn go(k: usize, order: &[u32], parent: &[u32], guest: &Graph, host: &Graph, map: &mut [u32], used: &mut [bool]) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let need = guest.degree(v);
        let candidates: Vec<u32> = if k == 0 {
            (0..host.n() as u32).collect()
        } else {
            host.neighbors(map[parent[v as usize] as usize]).to_vec()
        };
        for c in candidates {
            if used[c as usize] || host.degree(c) < need {
                continue;
            }
            used[c as usize] = true;
            map[v as usize] = c;
            if go(k + 1, order, parent, guest, host, map, used) {
                return true;
            }
            used[c as usize] = false;
        }
        map[v as usize] = u32::MAX;
        false
    }
    go(0, &order, &parent, guest, host, &mut map, &mut used).then_some(map)
}

/// Checks that `host` contains every free tree on `n` vertices, without
/// using the embedding algorithm.
pub fn brute_universality_check(host: &Graph, n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let trees = enumerate_free_trees(n)?;
    let results = trees
        .par_iter()
        .enumerate()
        .map(|(i, t)| match find_subgraph(host, &t.to_graph()) {
            Some(_) => None,
            None => Some(format!("tree #{i} (parents {:?}) has no copy", t.parents)),
        })
        .collect();
    Ok(VerificationReport::collect(&format!("brute universality n={n}"), start, results))
}

/// A random forest on `n` vertices: random recursive attachment, each edge
/// kept with probability `keep`, labels shuffled.
pub fn random_forest(n: usize, seed: u64, keep: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<u32> = (0..n as u32).collect();
    label.shuffle(&mut rng);
    let edges: Vec<(u32, u32)> = (1..n as u32)
        .filter_map(|v| {
            let p = rng.gen_range(0..v);
            rng.gen_bool(keep).then(|| (label[p as usize], label[v as usize]))
        })
        .collect();
    Graph::from_edges(n, edges).expect("forest")
}

/// Copy of `host` without the edges that only `rule` generates.
pub fn drop_rule_edges(host: &HostGraph, rule: EdgeRule) -> HostGraph {
    let lay = host.layout;
    let kept = |p: u64, q: u64| {
        lay.rule_ranges(&lay.address(p)).iter().any(|&(r, lo, hi)| r != rule && (lo..=hi).contains(&q))
    };
    let edges: Vec<(u32, u32)> = host
        .graph
        .edges()
        .filter(|&(a, b)| {
            let (p, q) = (host.position(a), host.position(b));
            kept(p, q) || kept(q, p)
        })
        .collect();
    HostGraph { graph: Graph::from_edges(host.n(), edges).expect("subgraph"), ..host.clone() }
}

/// Copy of `host` without the single edge `(root, v)`.
pub fn drop_root_edge(host: &HostGraph, v: u32) -> HostGraph {
    HostGraph { graph: host.graph.without_edge(host.root(), v), ..host.clone() }
}

/// One row of an edge-count table.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRow {
    pub n: u64,
    pub edges: u64,
    /// `edges / (n ln n)` for trees, `edges / ((w+1) n ln(n/w))` for treewidth.
    pub ratio: f64,
    /// Leading coefficient the ratio is compared against.
    pub coefficient: f64,
    /// Treewidth lower bound (0 for trees).
    pub lower: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    Tree(Arity),
    Treewidth(usize),
}

pub fn edge_table(ns: &[u64], mode: TableMode) -> Result<Vec<EdgeRow>> {
    let max = ns.iter().copied().max().unwrap_or(0);
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    match mode {
        TableMode::Tree(d) => {
            let counts = universal_edge_counts(max, d);
            let c = crate::construction::leading_coefficient(d);
            Ok(ns
                .iter()
                .map(|&n| {
                    let e = counts[n as usize];
                    let ratio = if n >= 2 { e as f64 / (n as f64 * (n as f64).ln()) } else { 0.0 };
                    EdgeRow { n, edges: e, ratio, coefficient: c, lower: 0 }
                })
                .collect())
        }
        TableMode::Treewidth(w) => {
            let c = crate::construction::leading_coefficient(Arity::TERNARY);
            ns.iter()
                .map(|&n| {
                    let e = count_edges_tw(n, w)?;
                    let denom = (w as f64 + 1.0) * n as f64 * (n as f64 / w as f64).ln();
                    let ratio = if denom > 0.0 { e as f64 / denom } else { 0.0 };
                    Ok(EdgeRow { n, edges: e, ratio, coefficient: c, lower: lower_bound_edges(n, w) })
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Deliberate faults for checking that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Shuffle guest labels so separator ties break differently; must still pass.
    RelabelGuests,
    /// Remove the half-block edges from the tree hosts; must fail.
    DropHalfBlock,
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

fn relabel(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut p: Vec<u32> = (0..g.n() as u32).collect();
    p.shuffle(&mut rng);
    Graph::from_edges(g.n(), g.edges().map(|(a, b)| (p[a as usize], p[b as usize]))).expect("relabelled graph")
}

fn tree_host(n: u64, d: Arity, mutation: Mutation) -> HostGraph {
    let host = build_universal(n, d).expect("n >= 1");
    match mutation {
        Mutation::DropHalfBlock => drop_rule_edges(&host, EdgeRule::HalfBlock),
        _ => host,
    }
}

/// Every free tree on `n <= n_max` vertices embeds bijectively into `U(n,d)`.
pub fn suite_all_trees(n_max: usize, d: Arity, mutation: Mutation, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut results = Vec::new();
    for n in 1..=n_max {
        let host = tree_host(n as u64, d, mutation);
        let trees = enumerate_free_trees(n).expect("n in range");
        results.extend(trees.par_iter().enumerate().map(|(i, t)| {
            let mut g = t.to_graph();
            if mutation == Mutation::RelabelGuests {
                g = relabel(&g, seed + i as u64);
            }
            let e = match embed_tree_full(&host, &g) {
                Ok(e) => e,
                Err(err) => return Some(format!("n={n} tree #{i}: {err}")),
            };
            validate_embedding(&host, &g, &e).err().map(|v| format!("n={n} tree #{i}: {v}"))
        }).collect::<Vec<_>>());
    }
    VerificationReport::collect(&format!("all trees into U(n,{d}), n<={n_max}"), start, results)
}

/// Random forests into admissible graphs; checks the prefix property and that
/// the residual is the admissible graph of the remaining size.
pub fn suite_residual(instances: usize, max_size: u64, seed: u64, mutation: Mutation) -> VerificationReport {
    let start = Instant::now();
    let results = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let d = if rng.gen_bool(0.5) { Arity::TERNARY } else { Arity::BINARY };
            let a = rng.gen_range(2..=max_size);
            let layout = Layout::for_size(a, d);
            let layout = if rng.gen_bool(0.3) { Layout::new(layout.h + 1, d) } else { layout };
            let mut host = build_admissible(layout, a).expect("size fits");
            if mutation == Mutation::DropHalfBlock {
                host = drop_rule_edges(&host, EdgeRule::HalfBlock);
            }
            let k = rng.gen_range(0..a) as usize;
            let keep = rng.gen_range(0.5..=1.0);
            let f = random_forest(k, rng.gen(), keep);
            let tag = format!("seed={} d={d} |A|={a} |F|={k}", seed.wrapping_add(i as u64));
            let e = match embed_forest(&host, &f) {
                Ok(e) => e,
                Err(err) => return Some(format!("{tag}: {err}")),
            };
            if let Err(v) = validate_embedding(&host, &f, &e) {
                return Some(format!("{tag}: {v}"));
            }
            let rest: Vec<u32> = (k as u32..a as u32).collect();
            let residual = host.graph.induced(&rest);
            let expected = build_admissible(layout, a - k as u64).expect("smaller suffix").graph;
            (residual != expected).then(|| format!("{tag}: residual differs from the admissible graph"))
        })
        .collect();
    VerificationReport::collect("forest prefixes and residuals", start, results)
}

/// Randomized separator postconditions.
pub fn suite_separators(instances: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let results = (0..instances)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let kind = i % 4;
            let big_n = rng.gen_range(1..=12usize);
            let x = rng.gen_range(1..=big_n);
            let ctx = DeltaContext::new(big_n, x).expect("1 <= x <= N");
            let n = match kind {
                0 | 1 => rng.gen_range(1..=60usize),
                2 => rng.gen_range(2 * big_n + x + 2..=5 * big_n + x + 2),
                _ => rng.gen_range(5 * big_n + x + 3..=8 * big_n + x + 3),
            };
            let f = random_forest(n, rng.gen(), rng.gen_range(0.6..=1.0));
            let r = match kind {
                0 => {
                    let t = rng.gen_range(0..n);
                    split_bounded(&f, t).and_then(|(_, p)| {
                        if (t..=2 * t).contains(&p.len()) {
                            Ok(())
                        } else {
                            Err(Error::Precondition(format!("|part|={} outside {t}..={}", p.len(), 2 * t)))
                        }
                    })
                }
                1 => {
                    let big_m = rng.gen_range(0..n);
                    let m = rng.gen_range(0..=big_m / 2);
                    split_three(&f, m, big_m).and_then(|sp| {
                        let ok = (m..=big_m).contains(&sp.f3.len())
                            && sp.f1.len() + 1 + big_m <= n
                            && sp.f2.len() <= sp.f1.len()
                            && (sp.f3.len() == big_m || !sp.f2.is_empty());
                        if ok {
                            Ok(())
                        } else {
                            Err(Error::Precondition(format!(
                                "sizes {}/{}/{} for m={m} M={big_m}",
                                sp.f1.len(),
                                sp.f2.len(),
                                sp.f3.len()
                            )))
                        }
                    })
                }
                2 => split_one_sep(&f, ctx).map(|_| ()),
                _ => split_two_sep(&f, ctx).map(|_| ()),
            };
            r.err().map(|e| format!("seed={s} kind={kind} n={n} N={big_n} X={x}: {e}"))
        })
        .collect();
    VerificationReport::collect("forest separators", start, results)
}

/// Random partial k-trees embedded bijectively into `U(n,3,w)`.
pub fn suite_treewidth(instances: usize, max_n: usize, widths: &[usize], seed: u64) -> VerificationReport {
    let start = Instant::now();
    let results = (0..instances)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let w = widths[i % widths.len()];
            let n = rng.gen_range(w + 1..=max_n.max(w + 1));
            let keep = rng.gen_range(0.5..=1.0);
            let tag = format!("seed={s} w={w} n={n}");
            let mut run = || -> std::result::Result<(), String> {
                let (g, td) = generate_partial_ktree(n, w, rng.gen(), keep).map_err(|e| e.to_string())?;
                let host = build_universal_tw(n as u64, w).map_err(|e| e.to_string())?;
                let e = embed_graph_full_tw(&host, &g, &td).map_err(|e| e.to_string())?;
                validate_tw_embedding(&host, &g, &e).map_err(|v| v.to_string())
            };
            run().err().map(|m| format!("{tag}: {m}"))
        })
        .collect();
    VerificationReport::collect("treewidth embeddings", start, results)
}

/// Deleting any single root edge of `U(n,3)` must be noticed by the tree
/// suites: embedding validation over several guest labelings, or the brute
/// oracle. Small hosts are nearly complete, so the oracle alone cannot tell.
pub fn suite_root_mutations(ns: &[usize]) -> VerificationReport {
    const LABELINGS: u64 = 12;
    let start = Instant::now();
    let mut results = Vec::new();
    for &n in ns {
        let host = build_universal(n as u64, Arity::TERNARY).expect("n >= 1");
        let trees: Vec<Graph> = enumerate_free_trees(n).expect("n in range").iter().map(FreeTree::to_graph).collect();
        let guests: Vec<Graph> =
            trees.iter().flat_map(|t| (0..LABELINGS).map(move |s| relabel(t, s))).chain(trees.iter().cloned()).collect();
        for &v in host.graph.neighbors(host.root()) {
            let bad = drop_root_edge(&host, v);
            let by_embedding = guests.par_iter().any(|t| {
                embed_tree_full(&bad, t).map_or(true, |e| validate_embedding(&bad, t, &e).is_err())
            });
            let by_oracle = by_embedding || trees.iter().any(|t| find_subgraph(&bad.graph, t).is_none());
            results.push((!by_oracle).then(|| format!("n={n}: removing root edge to {v} went unnoticed")));
        }
    }
    VerificationReport::collect("root-edge mutations detected", start, results)
}

/// Runs the self-test suites. With a mutation that breaks hosts, failing
/// suites are the expected outcome.
pub fn run_selftest(profile: Profile, mutation: Mutation, seed: u64) -> Vec<VerificationReport> {
    let (tree_n, residual, seps, tw) = match profile {
        Profile::Quick => (8, 200, 2000, 60),
        Profile::Full => (11, 2000, 10_000, 600),
    };
    let mut out = vec![
        suite_all_trees(tree_n, Arity::TERNARY, mutation, seed),
        suite_all_trees(tree_n, Arity::BINARY, mutation, seed),
        suite_residual(residual, 121, seed, mutation),
    ];
    if mutation == Mutation::DropHalfBlock {
        out.push(suite_half_block_mutant(seed));
        return out;
    }
    out.push(suite_separators(seps, seed));
    out.push(suite_treewidth(tw, 60, &[1, 2, 3], seed));
    let oracle_n = if profile == Profile::Quick { 6 } else { 7 };
    for d in [Arity::TERNARY, Arity::BINARY] {
        let start = Instant::now();
        let mut results = Vec::new();
        for n in 1..=oracle_n {
            let host = build_universal(n as u64, d).expect("n >= 1");
            let r = brute_universality_check(&host.graph, n).expect("n in range");
            results.extend(r.failures.into_iter().map(Some));
            results.push(None);
        }
        out.push(VerificationReport::collect(&format!("brute oracle on U(n,{d}), n<={oracle_n}"), start, results));
    }
    out.push(suite_root_mutations(&[5, 6, 7]));
    out
}

/// Adversarial shapes that reach the two-separator branch on `U(n,3)`
/// with the half-block edges removed.
fn suite_half_block_mutant(seed: u64) -> VerificationReport {
    let start = Instant::now();
    let _ = seed;
    let results = (60..=210u64)
        .into_par_iter()
        .map(|n| {
            let host = tree_host(n, Arity::TERNARY, Mutation::DropHalfBlock);
            for k in [n as usize / 2, n as usize - 1] {
                for g in [comb(k, 2), comb(k, 3)] {
                    let e = match embed_forest(&host, &g) {
                        Ok(e) => e,
                        Err(err) => return Some(format!("n={n} |F|={k}: {err}")),
                    };
                    if let Err(v) = validate_embedding(&host, &g, &e) {
                        return Some(format!("n={n} |F|={k}: {v}"));
                    }
                }
            }
            None
        })
        .collect();
    VerificationReport::collect("half-block dependent shapes", start, results)
}

/// Caterpillar-like tree whose vertex `v` hangs off `v - step` (or the root).
fn comb(n: usize, step: u32) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|v| (v.saturating_sub(step), v))).expect("tree")
}
