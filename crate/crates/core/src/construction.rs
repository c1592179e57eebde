//! The graphs `T*_{h,d}`, the universal graphs `U(n,d)` and their edge counts.
//!
//! Every vertex is identified by its eating position. Each edge rule from a
//! vertex `u` targets a contiguous range of eating positions, because a
//! subtree is eaten as one block ending at its root:
//!
//! * descendant rule: `D_u`;
//! * predecessor rule: `u-i` together with `D_{u-i}` for `1 <= i < d`;
//! * half-block rule (`d = 3` only): the eaten-last `floor(|T|/2)` vertices of
//!   the subtree of `z`, the smallest child of `u+1`.

use crate::addressing::{eat_at, eat_index, tree_size, Address, Arity, EatIndex};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which edge rule generated an adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeRule {
    Descendant,
    Predecessor,
    HalfBlock,
}

/// Shape parameters of `T*_{h,d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub d: Arity,
    pub h: u32,
}

impl Layout {
    pub fn new(h: u32, d: Arity) -> Self {
        Layout { d, h }
    }

    /// Smallest height whose tree holds `n` vertices.
    pub fn for_size(n: u64, d: Arity) -> Self {
        let mut h = 0;
        while tree_size(h, d) < n {
            h += 1;
        }
        Layout { d, h }
    }

    pub fn size(&self) -> u64 {
        tree_size(self.h, self.d)
    }

    /// Size of the subtree rooted at a vertex on `level` (0 below the leaves).
    pub fn subtree_size(&self, level: u32) -> u64 {
        if level > self.h {
            0
        } else {
            tree_size(self.h - level, self.d)
        }
    }

    pub fn eat(&self, v: &Address) -> u64 {
        eat_index(v, self.d, self.h).0
    }

    pub fn address(&self, pos: u64) -> Address {
        eat_at(EatIndex(pos), self.d, self.h).expect("eating position in range")
    }

    /// Eating positions `lo..=hi` of the subtree rooted at `v`.
    pub fn subtree_range(&self, v: &Address) -> (u64, u64) {
        let hi = self.eat(v);
        (hi + 1 - self.subtree_size(v.level()), hi)
    }

    /// Target ranges of every rule applied at `u`, including degenerate ones
    /// (the predecessor rule at the root points at the root itself).
    pub fn rule_ranges(&self, u: &Address) -> Vec<(EdgeRule, u64, u64)> {
        let mut out = Vec::with_capacity(4);
        let (lo, hi) = self.subtree_range(u);
        if lo < hi {
            out.push((EdgeRule::Descendant, lo, hi - 1));
        }
        for i in 1..self.d.get() {
            let w = u.shift(-(i as i64), self.d);
            let (lo, hi) = self.subtree_range(&w);
            out.push((EdgeRule::Predecessor, lo, hi));
        }
        if let Some((lo, hi)) = self.half_block_range(u) {
            out.push((EdgeRule::HalfBlock, lo, hi));
        }
        out
    }

    /// Range of the half-block rule at `u`, if nonempty.
    pub fn half_block_range(&self, u: &Address) -> Option<(u64, u64)> {
        if self.d != Arity::TERNARY || u.level() >= self.h {
            return None;
        }
        let z = u.shift(1, self.d).child(1);
        let half = self.subtree_size(z.level()) / 2;
        if half == 0 {
            return None;
        }
        let top = self.eat(&z);
        Some((top + 1 - half, top))
    }

    /// Rule-based adjacency test on eating positions.
    pub fn adjacent(&self, p: u64, q: u64) -> bool {
        if p == q {
            return false;
        }
        let hit = |a: u64, b: u64| {
            self.rule_ranges(&self.address(a))
                .iter()
                .any(|&(_, lo, hi)| (lo..=hi).contains(&b))
        };
        hit(p, q) || hit(q, p)
    }

    /// All edges of `T*_{h,d}` restricted to positions `> offset`, as sorted
    /// `(lo, hi)` position pairs.
    pub fn edge_pairs(&self, offset: u64) -> Vec<(u64, u64)> {
        let mut pairs = Vec::new();
        for p in (offset + 1)..=self.size() {
            let u = self.address(p);
            for (_, lo, hi) in self.rule_ranges(&u) {
                for q in lo.max(offset + 1)..=hi {
                    if q != p {
                        pairs.push((p.min(q), p.max(q)));
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

/// `T*_{h,d}` or an eating-order suffix of it. Local vertex `i` is the host
/// vertex at eating position `offset + i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostGraph {
    pub layout: Layout,
    pub offset: u64,
    pub graph: Graph,
}

impl HostGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn d(&self) -> Arity {
        self.layout.d
    }

    /// Eating position (inside the ambient `T*`) of local vertex `i`.
    pub fn position(&self, i: u32) -> u64 {
        self.offset + u64::from(i) + 1
    }

    pub fn address(&self, i: u32) -> Address {
        self.layout.address(self.position(i))
    }

    /// Local id of `v`, if it belongs to this graph.
    pub fn local(&self, v: &Address) -> Option<u32> {
        if !v.is_valid(self.layout.d, self.layout.h) {
            return None;
        }
        let p = self.layout.eat(v);
        (p > self.offset).then(|| (p - self.offset - 1) as u32)
    }

    /// The root `r_A`, last in the eating order.
    pub fn root(&self) -> u32 {
        (self.n() - 1) as u32
    }
}

/// An eating-order suffix of `T*_{h,d}`.
pub type AdmissibleGraph = HostGraph;

fn suffix_graph(layout: Layout, n: u64) -> HostGraph {
    let offset = layout.size() - n;
    let mut rows = vec![Vec::new(); n as usize];
    for (p, q) in layout.edge_pairs(offset) {
        let (a, b) = ((p - offset - 1) as usize, (q - offset - 1) as usize);
        rows[a].push(b as u32);
        rows[b].push(a as u32);
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    HostGraph { layout, offset, graph: Graph::from_sorted_rows(rows) }
}

pub fn build_tstar(h: u32, d: Arity) -> HostGraph {
    let layout = Layout::new(h, d);
    suffix_graph(layout, layout.size())
}

/// The admissible graph of size `n` inside `T*_{h,d}` (the last `n` vertices).
pub fn build_admissible(layout: Layout, n: u64) -> Result<AdmissibleGraph> {
    if n == 0 || n > layout.size() {
        return Err(Error::SizeOutOfRange { size: n as usize, lo: 1, hi: layout.size() as usize });
    }
    Ok(suffix_graph(layout, n))
}

/// `U(n,d)`: the last `n` vertices of the smallest `T*_{h,d}` holding `n`.
pub fn build_universal(n: u64, d: Arity) -> Result<AdmissibleGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    build_admissible(Layout::for_size(n, d), n)
}

/// Half-block targets of `v` in `T*_{h,3}`: the eaten-last half of `{z} ∪ D_z`.
pub fn type3_targets(v: &Address, h: u32) -> Vec<Address> {
    let layout = Layout::new(h, Arity::TERNARY);
    match layout.half_block_range(v) {
        Some((lo, hi)) => (lo..=hi).map(|p| layout.address(p)).collect(),
        None => Vec::new(),
    }
}

pub fn vertex_count(h: u32, d: Arity) -> u64 {
    tree_size(h, d)
}

fn tree_size_or_zero(h: i64, d: Arity) -> u64 {
    if h < 0 {
        0
    } else {
        tree_size(h as u32, d)
    }
}

/// `e_{h,d}(l) = d|T*_{h-l}| - 1 + [d=3] floor(|T*_{h-l-1}|/2)`.
pub fn per_vertex_edge_budget(level: u32, h: u32, d: Arity) -> u64 {
    let hl = i64::from(h) - i64::from(level);
    let mut e = d.as_u64() * tree_size_or_zero(hl, d) - 1;
    if d == Arity::TERNARY {
        e += tree_size_or_zero(hl - 1, d) / 2;
    }
    e
}

/// `sum_l e_{h,d}(l) d^l`.
pub fn budget_total(h: u32, d: Arity) -> u64 {
    (0..=h)
        .map(|l| per_vertex_edge_budget(l, h, d) * d.as_u64().pow(l))
        .sum()
}

pub fn count_edges_exact(g: &HostGraph) -> u64 {
    g.graph.edge_count() as u64
}

/// Result of attributing every generated target to its rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attribution {
    /// Total rule targets generated, self-targets included.
    pub generated: u64,
    /// Targets equal to their source (predecessor rule at the root).
    pub self_targets: u64,
    /// Generated targets naming an edge already produced elsewhere.
    pub duplicates: u64,
    /// Distinct edges.
    pub edges: u64,
}

/// Walks every rule of every vertex of `T*_{h,d}` and reports how the
/// per-vertex budgets relate to the exact edge count:
/// `generated = edges + self_targets + duplicates`.
pub fn attribute_edges(h: u32, d: Arity) -> Attribution {
    let layout = Layout::new(h, d);
    let mut generated = 0;
    let mut self_targets = 0;
    let mut pairs = Vec::new();
    for p in 1..=layout.size() {
        let u = layout.address(p);
        for (_, lo, hi) in layout.rule_ranges(&u) {
            generated += hi + 1 - lo;
            for q in lo..=hi {
                if q == p {
                    self_targets += 1;
                } else {
                    pairs.push((p.min(q), p.max(q)));
                }
            }
        }
    }
    let raw = pairs.len() as u64;
    pairs.sort_unstable();
    pairs.dedup();
    let edges = pairs.len() as u64;
    Attribution { generated, self_targets, duplicates: raw - edges, edges }
}

/// Exact edge counts of every eating-order suffix of `T*_{h,d}`:
/// entry `n` is the number of edges among the last `n` vertices.
pub fn suffix_edge_counts(layout: Layout) -> Vec<u64> {
    let size = layout.size() as usize;
    let mut by_first = vec![0u64; size + 2];
    for (lo, _) in layout.edge_pairs(0) {
        by_first[lo as usize] += 1;
    }
    let mut counts = vec![0u64; size + 1];
    let mut acc = 0;
    for n in 1..=size {
        acc += by_first[size - n + 1];
        counts[n] = acc;
    }
    counts
}

/// Exact edge counts of `U(n,d)` for all `1 <= n <= max_n` (index `n`).
pub fn universal_edge_counts(max_n: u64, d: Arity) -> Vec<u64> {
    let mut out = vec![0u64; max_n as usize + 1];
    let top = Layout::for_size(max_n, d);
    let mut lo = 1u64;
    for h in 0..=top.h {
        let layout = Layout::new(h, d);
        let hi = layout.size().min(max_n);
        if lo > hi {
            continue;
        }
        let counts = suffix_edge_counts(layout);
        for n in lo..=hi {
            out[n as usize] = counts[n as usize];
        }
        lo = layout.size() + 1;
    }
    out
}

/// Leading coefficient of the edge bound: `19/(6 ln 3)` for `d = 3`,
/// `d / ln d` otherwise.
pub fn leading_coefficient(d: Arity) -> f64 {
    if d == Arity::TERNARY {
        19.0 / (6.0 * 3f64.ln())
    } else {
        d.get() as f64 / (d.get() as f64).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCountReport {
    pub n: u64,
    pub d: Arity,
    pub exact_edges: u64,
    /// `c_d n ln n`.
    pub bound: f64,
    /// `exact - bound`.
    pub residual: f64,
}

impl EdgeCountReport {
    pub fn new(n: u64, d: Arity, exact_edges: u64) -> Self {
        let nf = n as f64;
        let bound = leading_coefficient(d) * nf * nf.ln();
        EdgeCountReport { n, d, exact_edges, bound, residual: exact_edges as f64 - bound }
    }

    /// `exact / (n ln n)`; undefined for `n = 1`.
    pub fn ratio(&self) -> f64 {
        let nf = self.n as f64;
        self.exact_edges as f64 / (nf * nf.ln())
    }
}

/// Coefficients of the size identity `n = 1 + sum_{1<=l<=l*} (alpha_l |T*_{h-l}| + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeDecomposition {
    pub h: u32,
    /// `(l, alpha_l)` for `l = 1..=l*`.
    pub alphas: Vec<(u32, u64)>,
    pub l_star: u32,
}

impl SizeDecomposition {
    pub fn reconstruct(&self, d: Arity) -> u64 {
        1 + self
            .alphas
            .iter()
            .map(|&(l, a)| a * tree_size(self.h - l, d) + 1)
            .sum::<u64>()
    }
}

/// Decomposes `n` along the walk from the first vertex of `U(n,d)` up to
/// the root: `alpha_l` is the number of whole sibling subtrees eaten between
/// consecutive ancestors, i.e. the level-`l` digit of the first vertex minus 1.
pub fn decompose_n(n: u64, d: Arity) -> Result<SizeDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let layout = Layout::for_size(n, d);
    let first = layout.address(layout.size() - n + 1);
    let alphas = first
        .digits()
        .iter()
        .enumerate()
        .map(|(i, &x)| (i as u32 + 1, u64::from(x) - 1))
        .collect();
    Ok(SizeDecomposition { h: layout.h, alphas, l_star: first.level() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: Arity = Arity::TERNARY;
    const B: Arity = Arity::BINARY;

    /// Independent rule evaluator: applies the three rules literally over
    /// addresses (set membership, no position arithmetic).
    fn brute_tstar_edges(h: u32, d: Arity) -> std::collections::BTreeSet<(String, String)> {
        let mut all = vec![Address::root()];
        all.extend(Address::root().descendants(d, h));
        let mut edges = std::collections::BTreeSet::new();
        let mut add = |a: &Address, b: &Address| {
            if a != b {
                let (x, y) = (a.to_string(), b.to_string());
                edges.insert(if x < y { (x, y) } else { (y, x) });
            }
        };
        for v in &all {
            for w in v.descendants(d, h) {
                add(v, &w);
            }
            for i in 1..d.get() {
                let p = v.shift(-(i as i64), d);
                add(v, &p);
                for w in p.descendants(d, h) {
                    add(v, &w);
                }
            }
            if d == T && v.level() < h {
                let z = v.shift(1, d).child(1);
                let mut block = vec![z.clone()];
                block.extend(z.descendants(d, h));
                // eaten last = lexicographically smallest with zero padding
                block.sort_by(|a, b| match crate::addressing::eat_cmp(a, b) {
                    crate::addressing::EatOrder::Before => std::cmp::Ordering::Less,
                    crate::addressing::EatOrder::After => std::cmp::Ordering::Greater,
                    crate::addressing::EatOrder::Equal => std::cmp::Ordering::Equal,
                });
                let half = block.len() / 2;
                for w in &block[block.len() - half..] {
                    add(v, w);
                }
            }
        }
        edges
    }

    #[test]
    fn rule_ranges_match_literal_rules() {
        for d in [B, T, Arity::new(4).unwrap()] {
            for h in 0..=3 {
                let g = build_tstar(h, d);
                let got: std::collections::BTreeSet<(String, String)> = g
                    .graph
                    .edges()
                    .map(|(a, b)| {
                        let (x, y) = (g.address(a).to_string(), g.address(b).to_string());
                        if x < y { (x, y) } else { (y, x) }
                    })
                    .collect();
                assert_eq!(got, brute_tstar_edges(h, d), "h={h} d={d}");
            }
        }
    }

    #[test]
    fn small_tstar_examples() {
        assert_eq!(count_edges_exact(&build_tstar(1, B)), 3);
        assert_eq!(count_edges_exact(&build_tstar(1, T)), 6);
        assert_eq!(count_edges_exact(&build_tstar(0, T)), 0);
        assert_eq!(build_tstar(0, B).n(), 1);
    }

    #[test]
    fn type3_examples() {
        let v = Address::parse("2", T).unwrap();
        let got: Vec<String> = type3_targets(&v, 3).iter().map(|a| a.to_string()).collect();
        assert_eq!(got, vec!["311", "31"]);
        for h in 1..=4 {
            for v in Address::root().descendants(T, h) {
                let expect = if v.level() < h { tree_size(h - v.level() - 1, T) / 2 } else { 0 };
                assert_eq!(type3_targets(&v, h).len() as u64, expect);
            }
        }
        assert!(type3_targets(&Address::parse("22", T).unwrap(), 2).is_empty());
    }

    #[test]
    fn universal_examples() {
        let u = build_universal(14, T).unwrap();
        let mut names: Vec<String> = (0..14).map(|i| u.address(i).to_string()).collect();
        names.sort();
        let mut expect = vec!["e", "1", "11", "12", "13"];
        let leaves: Vec<String> = ["11", "12", "13"]
            .iter()
            .flat_map(|p| (1..=3).map(move |x| format!("{p}{x}")))
            .collect();
        expect.extend(leaves.iter().map(String::as_str));
        expect.sort();
        assert_eq!(names, expect);
        assert_eq!(build_universal(40, T).unwrap().n(), 40);
        assert_eq!(build_universal(40, T).unwrap().offset, 0);
        let u2 = build_universal(2, T).unwrap();
        assert_eq!(count_edges_exact(&u2), 1);
        assert_eq!(u2.address(0).to_string(), "1");
    }

    #[test]
    fn budget_examples() {
        assert_eq!(vertex_count(3, T), 40);
        assert_eq!(vertex_count(0, B), 1);
        assert_eq!(vertex_count(2, B), 7);
        assert_eq!(per_vertex_edge_budget(2, 2, T), 2);
        assert_eq!(per_vertex_edge_budget(1, 1, B), 1);
        assert_eq!(per_vertex_edge_budget(0, 1, T), 11);
        assert_eq!(per_vertex_edge_budget(0, 2, B), 13);
    }

    #[test]
    fn attribution_accounts_for_every_budget_unit() {
        for d in [B, T] {
            for h in 0..=4 {
                let a = attribute_edges(h, d);
                assert_eq!(a.generated, budget_total(h, d), "h={h} d={d}");
                assert_eq!(a.generated, a.edges + a.self_targets + a.duplicates);
                assert_eq!(a.edges, count_edges_exact(&build_tstar(h, d)));
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let full = decompose_n(40, T).unwrap();
        assert_eq!(full.l_star, 3);
        assert!(full.alphas.iter().all(|&(_, a)| a == 2));
        let one = decompose_n(1, T).unwrap();
        assert_eq!(one.l_star, 0);
        assert!(one.alphas.is_empty());
        let d14 = decompose_n(14, T).unwrap();
        assert_eq!(d14.alphas, vec![(1, 0), (2, 2), (3, 2)]);
        for d in [B, T] {
            for n in 1..=400 {
                assert_eq!(decompose_n(n, d).unwrap().reconstruct(d), n, "n={n}");
            }
        }
    }

    #[test]
    fn suffix_counts_match_materialized() {
        let counts = universal_edge_counts(130, T);
        for n in [1u64, 2, 5, 13, 14, 40, 41, 100, 121, 122, 130] {
            assert_eq!(counts[n as usize], count_edges_exact(&build_universal(n, T).unwrap()), "n={n}");
        }
    }

    #[test]
    fn adjacency_oracle_matches_graph() {
        let g = build_tstar(3, T);
        for a in 0..g.n() as u32 {
            for b in 0..g.n() as u32 {
                assert_eq!(g.layout.adjacent(g.position(a), g.position(b)), g.graph.has_edge(a, b));
            }
        }
    }
}
