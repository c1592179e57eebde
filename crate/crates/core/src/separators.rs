//! Separator procedures for forests and for graphs with a tree
//! decomposition.
//!
//! Both cases share one engine. A forest is first joined into a tree by
//! chaining its component representatives in id order, and then viewed as a
//! decomposition whose bags are single vertices. Removing the bag `B_z` of a
//! tree node `z` splits the rest into *pieces*, one per component of
//! `T - z`; a piece contributes the vertices of its bags outside `B_z`.
//! Separator searches pick `z` and a union of pieces by exact subset sum.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treewidth::decomposition::{normalize_bags, TreeDecomposition};

/// The block sizes `N` and `X` used by the ternary bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaContext {
    pub n: usize,
    pub x: usize,
}

impl DeltaContext {
    pub fn new(n: usize, x: usize) -> Result<Self> {
        if x == 0 || n < x {
            return Err(Error::InvalidArgument(format!("need 0 < X <= N, got N={n} X={x}")));
        }
        Ok(DeltaContext { n, x })
    }

    /// Distance from `size` to the next block boundary `X + kN`.
    pub fn delta(&self, size: usize) -> usize {
        if size < self.x {
            self.x - size
        } else {
            self.n - (size - self.x) % self.n
        }
    }
}

pub fn delta(size: usize, ctx: DeltaContext) -> usize {
    ctx.delta(size)
}

/// One separator and three parts; `sep` has one vertex for forests and
/// `w+1` vertices for treewidth-`w` graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSplit {
    pub sep: Vec<u32>,
    pub f1: Vec<u32>,
    pub f2: Vec<u32>,
    pub f3: Vec<u32>,
}

/// Two separators and six parts `parts[i] = F_{i+1}`. `s1` separates
/// `F1, F2, F4` and the rest; `s2` lies in the rest and separates
/// `F3, F5, F6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSeparatorSplit {
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
    pub parts: [Vec<u32>; 6],
    /// Which case of the construction produced the split.
    pub branch: &'static str,
}

/// Source of separator trees for vertex subsets of one fixed graph.
pub trait SeparatorOracle {
    fn graph(&self) -> &Graph;
    /// Separator size `σ`.
    fn sigma(&self) -> usize;
    /// Separator tree of the subgraph induced by the sorted set `vertices`.
    fn split_tree(&self, vertices: &[u32]) -> Result<SepTree>;
}

/// Forests: single-vertex separators.
pub struct ForestOracle<'a> {
    g: &'a Graph,
}

impl<'a> ForestOracle<'a> {
    pub fn new(g: &'a Graph) -> Result<Self> {
        if !g.is_forest() {
            return Err(Error::InvalidArgument("graph is not a forest".into()));
        }
        Ok(ForestOracle { g })
    }
}

impl SeparatorOracle for ForestOracle<'_> {
    fn graph(&self) -> &Graph {
        self.g
    }

    fn sigma(&self) -> usize {
        1
    }

    fn split_tree(&self, vertices: &[u32]) -> Result<SepTree> {
        let sub = self.g.induced(vertices);
        let mut adj: Vec<Vec<u32>> = (0..sub.n() as u32).map(|v| sub.neighbors(v).to_vec()).collect();
        let reps: Vec<u32> = sub.components().iter().map(|c| c[0]).collect();
        for pair in reps.windows(2) {
            adj[pair[0] as usize].push(pair[1]);
            adj[pair[1] as usize].push(pair[0]);
        }
        let bags = vertices.iter().map(|&v| vec![v]).collect();
        Ok(SepTree::new(bags, adj))
    }
}

/// Graphs of treewidth at most `w`: separators are bags of a normal
/// decomposition, recomputed for every subset.
pub struct TwOracle<'a> {
    g: &'a Graph,
    td: &'a TreeDecomposition,
    w: usize,
}

impl<'a> TwOracle<'a> {
    /// `td` must be a valid decomposition of `g` of width at most `w`.
    pub fn new(g: &'a Graph, td: &'a TreeDecomposition, w: usize) -> Result<Self> {
        td.validate(g)?;
        if td.width() > w {
            return Err(Error::InvalidDecomposition(format!("width {} exceeds {w}", td.width())));
        }
        Ok(TwOracle { g, td, w })
    }
}

impl SeparatorOracle for TwOracle<'_> {
    fn graph(&self) -> &Graph {
        self.g
    }

    fn sigma(&self) -> usize {
        self.w + 1
    }

    fn split_tree(&self, vertices: &[u32]) -> Result<SepTree> {
        if vertices.len() < self.w + 1 {
            return Err(Error::Precondition(format!(
                "{} vertices cannot hold a separator of size {}",
                vertices.len(),
                self.w + 1
            )));
        }
        let td = normalize_bags(&self.td.restrict(vertices), self.w)?;
        Ok(SepTree::from_decomposition(&td))
    }
}

/// A decomposition tree prepared for piece queries.
#[derive(Debug, Clone)]
pub struct SepTree {
    bags: Vec<Vec<u32>>,
    adj: Vec<Vec<u32>>,
    parent: Vec<u32>,
    /// Number of graph vertices whose topmost bag lies in the subtree.
    sub: Vec<usize>,
    total: usize,
}

/// A component of `T - z`, entered through the neighbour `via`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Piece {
    via: u32,
    weight: usize,
}

impl SepTree {
    fn new(bags: Vec<Vec<u32>>, adj: Vec<Vec<u32>>) -> Self {
        let k = bags.len();
        let mut parent = vec![u32::MAX; k];
        let mut order = Vec::with_capacity(k);
        if k > 0 {
            let mut seen = vec![false; k];
            seen[0] = true;
            order.push(0u32);
            let mut i = 0;
            while i < order.len() {
                let x = order[i];
                i += 1;
                for &y in &adj[x as usize] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        parent[y as usize] = x;
                        order.push(y);
                    }
                }
            }
        }
        // a vertex is owned by the first bag reached that holds it
        let mut owned = std::collections::HashSet::new();
        let mut sub = vec![0usize; k];
        for &x in &order {
            for &v in &bags[x as usize] {
                if owned.insert(v) {
                    sub[x as usize] += 1;
                }
            }
        }
        for &x in order.iter().rev() {
            let p = parent[x as usize];
            if p != u32::MAX {
                sub[p as usize] += sub[x as usize];
            }
        }
        SepTree { bags, adj, parent, sub, total: owned.len() }
    }

    fn from_decomposition(td: &TreeDecomposition) -> Self {
        SepTree::new(td.bags.clone(), td.tree_adjacency())
    }

    fn nodes(&self) -> usize {
        self.bags.len()
    }

    fn pieces(&self, z: u32) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.adj[z as usize].len());
        let mut below = 0;
        let mut up = None;
        for &y in &self.adj[z as usize] {
            if self.parent[y as usize] == z {
                out.push(Piece { via: y, weight: self.sub[y as usize] });
                below += self.sub[y as usize];
            } else {
                up = Some(y);
            }
        }
        if let Some(y) = up {
            let weight = self.total - self.bags[z as usize].len() - below;
            out.push(Piece { via: y, weight });
        }
        out.retain(|p| p.weight > 0);
        out
    }

    fn piece_vertices(&self, z: u32, via: u32) -> Vec<u32> {
        let sep = &self.bags[z as usize];
        let mut out = Vec::new();
        let mut stack = vec![(via, z)];
        while let Some((x, from)) = stack.pop() {
            out.extend(self.bags[x as usize].iter().copied().filter(|v| sep.binary_search(v).is_err()));
            for &y in &self.adj[x as usize] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect(&self, z: u32, pieces: &[Piece]) -> Vec<u32> {
        let mut out: Vec<u32> = pieces.iter().flat_map(|p| self.piece_vertices(z, p.via)).collect();
        out.sort_unstable();
        out
    }
}

/// Reachable subset sums `0..=cap` as a bitset.
fn subset_sums(weights: &[usize], cap: usize) -> Vec<u64> {
    let mut bits = vec![0u64; cap / 64 + 1];
    bits[0] = 1;
    for &w in weights {
        shift_or(&mut bits, w);
    }
    mask_tail(&mut bits, cap);
    bits
}

fn shift_or(bits: &mut [u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for i in (ws..bits.len()).rev() {
        let mut v = bits[i - ws] << bs;
        if bs > 0 && i > ws {
            v |= bits[i - ws - 1] >> (64 - bs);
        }
        bits[i] |= v;
    }
}

fn mask_tail(bits: &mut [u64], cap: usize) {
    let last = bits.len() - 1;
    let keep = cap % 64 + 1;
    if keep < 64 {
        bits[last] &= (1u64 << keep) - 1;
    }
}

fn test_bit(bits: &[u64], i: usize) -> bool {
    bits.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
}

/// Indices of `weights` summing to exactly `target` (which must be reachable).
fn subset_for(weights: &[usize], target: usize) -> Vec<usize> {
    let mut levels = Vec::with_capacity(weights.len() + 1);
    let mut bits = vec![0u64; target / 64 + 1];
    bits[0] = 1;
    levels.push(bits.clone());
    for &w in weights {
        shift_or(&mut bits, w);
        mask_tail(&mut bits, target);
        levels.push(bits.clone());
    }
    let mut chosen = Vec::new();
    let mut rest = target;
    for i in (0..weights.len()).rev() {
        if test_bit(&levels[i], rest) {
            continue;
        }
        chosen.push(i);
        rest -= weights[i];
    }
    debug_assert_eq!(rest, 0);
    chosen.reverse();
    chosen
}

fn highest_in(bits: &[u64], lo: usize, hi: usize) -> Option<usize> {
    (lo..=hi).rev().find(|&i| test_bit(bits, i))
}

fn lowest_in(bits: &[u64], lo: usize, hi: usize) -> Option<usize> {
    (lo..=hi).find(|&i| test_bit(bits, i))
}

/// Some `z` and union of pieces with size in `t..=2t`; smallest `z`, then
/// smallest size.
pub fn split_bounded_in<O: SeparatorOracle + ?Sized>(
    oracle: &O,
    vertices: &[u32],
    t: usize,
) -> Result<(Vec<u32>, Vec<u32>)> {
    let sigma = oracle.sigma();
    if vertices.len() < t + sigma {
        return Err(Error::ForestTooSmall { size: vertices.len(), needed: t + sigma });
    }
    let tree = oracle.split_tree(vertices)?;
    for z in 0..tree.nodes() as u32 {
        let pieces = tree.pieces(z);
        let weights: Vec<usize> = pieces.iter().map(|p| p.weight).collect();
        let bits = subset_sums(&weights, 2 * t);
        if let Some(s) = lowest_in(&bits, t, 2 * t) {
            let pick: Vec<Piece> = subset_for(&weights, s).into_iter().map(|i| pieces[i]).collect();
            return Ok((tree.bags[z as usize].clone(), tree.collect(z, &pick)));
        }
    }
    Err(Error::Postcondition { branch: "bounded split", detail: format!("no piece union in {t}..={}", 2 * t) })
}

/// The three-part split with `|F3|` maximal in `m..=M` over all separators
/// and piece unions (ties: smallest tree node).
pub fn split_three_in<O: SeparatorOracle + ?Sized>(
    oracle: &O,
    vertices: &[u32],
    m: usize,
    big_m: usize,
) -> Result<ThreeSplit> {
    let sigma = oracle.sigma();
    let n = vertices.len();
    if 2 * m > big_m || n < big_m + sigma {
        return Err(Error::Precondition(format!(
            "three-part split needs 2m <= M and |F| >= M+{sigma}; got m={m} M={big_m} |F|={n}"
        )));
    }
    let tree = oracle.split_tree(vertices)?;
    let mut best: Option<(usize, u32)> = None;
    for z in 0..tree.nodes() as u32 {
        let weights: Vec<usize> = tree.pieces(z).iter().map(|p| p.weight).collect();
        let bits = subset_sums(&weights, big_m);
        if let Some(s) = highest_in(&bits, m, big_m) {
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, z));
            }
            if s == big_m {
                break;
            }
        }
    }
    let Some((size3, z)) = best else {
        return Err(Error::Postcondition { branch: "three-part split", detail: format!("no union in {m}..={big_m}") });
    };
    let pieces = tree.pieces(z);
    let weights: Vec<usize> = pieces.iter().map(|p| p.weight).collect();
    let chosen = subset_for(&weights, size3);
    let (in3, rest): (Vec<_>, Vec<_>) = (0..pieces.len()).partition(|i| chosen.contains(i));
    let take = |idx: &[usize]| idx.iter().map(|&i| pieces[i]).collect::<Vec<_>>();
    let f3 = tree.collect(z, &take(&in3));
    let (f1, f2) = if size3 == big_m {
        (tree.collect(z, &take(&rest)), Vec::new())
    } else {
        if rest.len() < 2 {
            return Err(Error::Postcondition {
                branch: "three-part split",
                detail: format!("maximal |F3|={size3} < M={big_m} leaves {} piece(s)", rest.len()),
            });
        }
        let small = *rest.iter().min_by_key(|&&i| (pieces[i].weight, i)).unwrap();
        let others: Vec<usize> = rest.iter().copied().filter(|&i| i != small).collect();
        (tree.collect(z, &take(&others)), tree.collect(z, &take(&[small])))
    };
    let split = ThreeSplit { sep: tree.bags[z as usize].clone(), f1, f2, f3 };
    check_three(oracle.graph(), vertices, &split)?;
    let post = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Postcondition { branch: "three-part split", detail: what.to_string() })
        }
    };
    post((m..=big_m).contains(&split.f3.len()), "m <= |F3| <= M")?;
    post(split.f1.len() + big_m + sigma <= n, "|F1| <= |F| - σ - M")?;
    post(split.f2.len() <= split.f1.len(), "|F2| <= |F1|")?;
    post(split.f3.len() == big_m || !split.f2.is_empty(), "|F3| < M implies F2 nonempty")?;
    Ok(split)
}

/// Partition and separation checks for a three-part split.
fn check_three(g: &Graph, vertices: &[u32], s: &ThreeSplit) -> Result<()> {
    check_partition(g, vertices, &s.sep, &[&s.f1, &s.f2, &s.f3], "three-part split")
}

/// `sep` and `parts` partition `vertices`, and no edge joins two parts.
fn check_partition(g: &Graph, vertices: &[u32], sep: &[u32], parts: &[&Vec<u32>], branch: &'static str) -> Result<()> {
    let fail = |detail: String| Err(Error::Postcondition { branch, detail });
    let mut label = std::collections::HashMap::with_capacity(vertices.len());
    for &v in sep {
        if label.insert(v, usize::MAX).is_some() {
            return fail(format!("vertex {v} repeated"));
        }
    }
    for (i, part) in parts.iter().enumerate() {
        for &v in part.iter() {
            if label.insert(v, i).is_some() {
                return fail(format!("vertex {v} repeated"));
            }
        }
    }
    if label.len() != vertices.len() || vertices.iter().any(|v| !label.contains_key(v)) {
        return fail("parts do not cover the input exactly".into());
    }
    for &v in vertices {
        let a = label[&v];
        if a == usize::MAX {
            continue;
        }
        for &u in g.neighbors(v) {
            if let Some(&b) = label.get(&u) {
                if b != usize::MAX && b != a {
                    return fail(format!("edge ({v},{u}) joins parts {} and {}", a + 1, b + 1));
                }
            }
        }
    }
    Ok(())
}

/// One-separator split with the ternary size constraints
/// `|F1| <= 2N+X`, `|F2| <= 2N+Δ(F1)`, `|F3| <= 2N+Δ(F1∪F2)+σ`,
/// `|F1|+|F2| >= 2N+X`.
pub fn split_one_sep_in<O: SeparatorOracle + ?Sized>(
    oracle: &O,
    vertices: &[u32],
    ctx: DeltaContext,
) -> Result<ThreeSplit> {
    let sigma = oracle.sigma();
    let (big_n, x, n) = (ctx.n, ctx.x, vertices.len());
    let (lo, hi) = (2 * big_n + x + sigma + 1, 5 * big_n + x + 2 * sigma);
    if !(lo..=hi).contains(&n) {
        return Err(Error::SizeOutOfRange { size: n, lo, hi });
    }
    if big_n < sigma {
        return Err(Error::Precondition(format!("N={big_n} smaller than separator size {sigma}")));
    }
    let m = n.saturating_sub(sigma + 4 * big_n + x);
    let big_m = n - sigma - 2 * big_n - x;
    let s = split_three_in(oracle, vertices, m, big_m)?;
    let (a, b, c) = (s.f1.len(), s.f2.len(), s.f3.len());
    let checks = [
        (a <= 2 * big_n + x, "|F1| <= 2N+X"),
        (b <= 2 * big_n + ctx.delta(a), "|F2| <= 2N+Δ(F1)"),
        (c <= 2 * big_n + ctx.delta(a + b) + sigma, "|F3| <= 2N+Δ(F1∪F2)+σ"),
        (a + b >= 2 * big_n + x, "|F1|+|F2| >= 2N+X"),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Postcondition { branch: "one-separator split", detail: what.into() });
        }
    }
    Ok(s)
}

/// Two-separator split with `|F1| <= 2N+X`, `|F1|+|F2| >= ceil(3N/2)+X` and
/// `|F_i| <= 2N + Δ(F_1 ∪ … ∪ F_{i-1}) + I_i` for `i > 1`.
pub fn split_two_sep_in<O: SeparatorOracle + ?Sized>(
    oracle: &O,
    vertices: &[u32],
    ctx: DeltaContext,
) -> Result<TwoSeparatorSplit> {
    let sigma = oracle.sigma();
    let (big_n, x, n) = (ctx.n, ctx.x, vertices.len());
    let (lo, hi) = (5 * big_n + x + 2 * sigma + 1, 8 * big_n + x + 3 * sigma);
    if !(lo..=hi).contains(&n) {
        return Err(Error::SizeOutOfRange { size: n, lo, hi });
    }
    if big_n < sigma {
        return Err(Error::Precondition(format!("N={big_n} smaller than separator size {sigma}")));
    }
    let m1 = n - (5 * big_n + x + 2 * sigma);
    let big_m1 = n - (2 * big_n + x + sigma);
    let first = split_three_in(oracle, vertices, m1, big_m1)?;
    let f1 = first.f1.clone();
    let d1 = ctx.delta(f1.len());
    let empty = Vec::new;

    let (f2, f4, s2, f3, f5, f6, branch);
    if f1.len() + first.f2.len() <= 4 * big_n + x {
        f2 = first.f2.clone();
        f4 = empty();
        let rest = first.f3.clone();
        let d2 = ctx.delta(f1.len() + f2.len());
        if rest.len() <= 2 * big_n + d2 + sigma {
            let k = sigma.min(rest.len());
            s2 = rest[..k].to_vec();
            f3 = rest[k..].to_vec();
            f5 = empty();
            f6 = empty();
            branch = "two-separator split: small remainder";
        } else {
            let inner = split_one_sep_in(oracle, &rest, DeltaContext::new(big_n, d2)?)?;
            (s2, f3, f5, f6) = (inner.sep, inner.f1, inner.f2, inner.f3);
            branch = "two-separator split: balanced";
        }
    } else {
        f2 = empty();
        let mut rest: Vec<u32> = first.f2.iter().chain(&first.f3).copied().collect();
        rest.sort_unstable();
        if f1.len() == 2 * big_n + x {
            f4 = empty();
            let inner = split_one_sep_in(oracle, &rest, DeltaContext::new(big_n, big_n)?)?;
            (s2, f3, f5, f6) = (inner.sep, inner.f1, inner.f2, inner.f3);
            branch = "two-separator split: full first part";
        } else if rest.len() < 5 * big_n + d1 + 2 * sigma {
            f4 = empty();
            let inner = split_one_sep_in(oracle, &rest, DeltaContext::new(big_n, d1)?)?;
            (s2, f3, f5, f6) = (inner.sep, inner.f1, inner.f2, inner.f3);
            branch = "two-separator split: moderate remainder";
        } else {
            f4 = first.f2.clone();
            let d14 = ctx.delta(f1.len() + f4.len());
            let inner = split_three_in(oracle, &first.f3, d1, d14)?;
            (s2, f6, f5, f3) = (inner.sep, inner.f1, inner.f2, inner.f3);
            branch = "two-separator split: large remainder";
        }
    }
    let split = TwoSeparatorSplit { s1: first.sep, s2, parts: [f1, f2, f3, f4, f5, f6], branch };
    check_two(oracle.graph(), vertices, &split, ctx, sigma)?;
    Ok(split)
}

fn check_two(g: &Graph, vertices: &[u32], s: &TwoSeparatorSplit, ctx: DeltaContext, sigma: usize) -> Result<()> {
    let p = &s.parts;
    let mut rest: Vec<u32> = s.s2.iter().chain(&p[2]).chain(&p[4]).chain(&p[5]).copied().collect();
    rest.sort_unstable();
    check_partition(g, vertices, &s.s1, &[&p[0], &p[1], &p[3], &rest], s.branch)?;
    check_partition(g, &rest, &s.s2, &[&p[2], &p[4], &p[5]], s.branch)?;
    let (big_n, x, n) = (ctx.n, ctx.x, vertices.len());
    let i6 = n.saturating_sub(8 * big_n + x + 2 * sigma);
    let fail = |detail: String| Err(Error::Postcondition { branch: s.branch, detail });
    if p[0].len() > 2 * big_n + x {
        return fail("|F1| <= 2N+X".into());
    }
    if p[0].len() + p[1].len() < (3 * big_n).div_ceil(2) + x {
        return fail("|F1|+|F2| >= ceil(3N/2)+X".into());
    }
    let mut before = p[0].len();
    for (i, part) in p.iter().enumerate().skip(1) {
        let extra = if i == 5 { i6 } else { 0 };
        if part.len() > 2 * big_n + ctx.delta(before) + extra {
            return fail(format!("|F{}| <= 2N+Δ(F1..F{})+I", i + 1, i));
        }
        before += part.len();
    }
    Ok(())
}

fn all_vertices(g: &Graph) -> Vec<u32> {
    (0..g.n() as u32).collect()
}

/// A vertex `s` and a union of components of `F - s` with `t..=2t` vertices.
pub fn split_bounded(f: &Graph, t: usize) -> Result<(u32, Vec<u32>)> {
    let (s, part) = split_bounded_in(&ForestOracle::new(f)?, &all_vertices(f), t)?;
    Ok((s[0], part))
}

pub fn split_three(f: &Graph, m: usize, big_m: usize) -> Result<ThreeSplit> {
    split_three_in(&ForestOracle::new(f)?, &all_vertices(f), m, big_m)
}

pub fn split_one_sep(f: &Graph, ctx: DeltaContext) -> Result<ThreeSplit> {
    split_one_sep_in(&ForestOracle::new(f)?, &all_vertices(f), ctx)
}

pub fn split_two_sep(f: &Graph, ctx: DeltaContext) -> Result<TwoSeparatorSplit> {
    split_two_sep_in(&ForestOracle::new(f)?, &all_vertices(f), ctx)
}

/// Bag index `z` of the normal decomposition `td` and `G(F, z)` with
/// `t <= |G(F,z)| <= 2t`.
pub fn split_bounded_tw(g: &Graph, td: &TreeDecomposition, t: usize) -> Result<(usize, Vec<u32>)> {
    td.validate(g)?;
    let w = td.width();
    if !td.is_normal(w) {
        return Err(Error::InvalidDecomposition("decomposition is not normal".into()));
    }
    if g.n() < t + w + 1 {
        return Err(Error::ForestTooSmall { size: g.n(), needed: t + w + 1 });
    }
    let tree = SepTree::from_decomposition(td);
    for z in 0..tree.nodes() as u32 {
        let pieces = tree.pieces(z);
        let weights: Vec<usize> = pieces.iter().map(|p| p.weight).collect();
        let bits = subset_sums(&weights, 2 * t);
        if let Some(s) = lowest_in(&bits, t, 2 * t) {
            let pick: Vec<Piece> = subset_for(&weights, s).into_iter().map(|i| pieces[i]).collect();
            return Ok((z as usize, tree.collect(z, &pick)));
        }
    }
    Err(Error::Postcondition { branch: "bounded split", detail: format!("no bag union in {t}..={}", 2 * t) })
}

pub fn split_three_tw(g: &Graph, td: &TreeDecomposition, m: usize, big_m: usize, w: usize) -> Result<ThreeSplit> {
    split_three_in(&TwOracle::new(g, td, w)?, &all_vertices(g), m, big_m)
}

pub fn split_one_sep_tw(g: &Graph, td: &TreeDecomposition, ctx: DeltaContext, w: usize) -> Result<ThreeSplit> {
    split_one_sep_in(&TwOracle::new(g, td, w)?, &all_vertices(g), ctx)
}

pub fn split_two_sep_tw(g: &Graph, td: &TreeDecomposition, ctx: DeltaContext, w: usize) -> Result<TwoSeparatorSplit> {
    split_two_sep_in(&TwOracle::new(g, td, w)?, &all_vertices(g), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn delta_examples() {
        let c = DeltaContext::new(7, 3).unwrap();
        assert_eq!(c.delta(0), 3);
        assert_eq!(c.delta(3), 7);
        assert_eq!(c.delta(3 + 7 + 3), 4);
        assert!((0..40).all(|k| (1..=7).contains(&c.delta(k))));
        assert!(DeltaContext::new(2, 3).is_err());
    }

    #[test]
    fn subset_sum_reconstructs() {
        let w = [5, 3, 9, 70, 1];
        let bits = subset_sums(&w, 80);
        for t in 0..=80 {
            if test_bit(&bits, t) {
                let pick = subset_for(&w, t);
                assert_eq!(pick.iter().map(|&i| w[i]).sum::<usize>(), t);
            }
        }
        assert!(test_bit(&bits, 79) && !test_bit(&bits, 2));
    }

    #[test]
    fn bounded_examples() {
        let (s, part) = split_bounded(&path(5), 2).unwrap();
        assert!((2..=4).contains(&part.len()) && !part.contains(&s));
        let (_, part) = split_bounded(&path(5), 0).unwrap();
        assert!(part.is_empty());
        let star = Graph::from_edges(10, (1..10).map(|i| (0, i))).unwrap();
        let (s, part) = split_bounded(&star, 3).unwrap();
        assert_eq!(s, 0);
        assert!((3..=6).contains(&part.len()));
        assert!(matches!(split_bounded(&path(3), 3), Err(Error::ForestTooSmall { .. })));
    }

    #[test]
    fn three_examples() {
        let s = split_three(&path(7), 2, 4).unwrap();
        assert!((2..=4).contains(&s.f3.len()));
        let s = split_three(&path(5), 0, 4).unwrap();
        assert_eq!(s.f3.len(), 4);
        assert!(s.f1.is_empty() && s.f2.is_empty());
        let s = split_three(&path(6), 0, 0).unwrap();
        assert!(s.f3.is_empty() && s.f2.len() <= s.f1.len());
        assert!(split_three(&path(4), 2, 3).is_err());
    }

    #[test]
    fn one_and_two_separator_examples() {
        let ctx = DeltaContext::new(1, 1).unwrap();
        split_one_sep(&path(5), ctx).unwrap();
        let ctx = DeltaContext::new(4, 3).unwrap();
        for n in 13..=25 {
            split_one_sep(&path(n), ctx).unwrap();
        }
        for n in 26..=38 {
            let s = split_two_sep(&path(n), ctx).unwrap();
            let total: usize = s.parts.iter().map(Vec::len).sum::<usize>() + 2;
            assert_eq!(total, n as usize);
        }
        assert!(matches!(split_one_sep(&path(12), ctx), Err(Error::SizeOutOfRange { .. })));
    }
}
