//! The clique blow-up of the ternary universal graph.

use std::fmt;

use crate::addressing::{Address, Arity};
use crate::construction::{universal_edge_counts, Layout};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// How the half-block rule is read after the blow-up.
///
/// The rule targets "the eaten-last half of `C_(z,w+1) ∪ D_(z,w+1)`" where `z`
/// is the smallest child of `v+1`. The readings differ in which set is halved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum T3Reading {
    /// Halve `C_(z,w+1) ∪ D_(z,w+1)` at full size (`σ|T_z| - 1` slots,
    /// `(z,w+1)` itself excluded), on top of the blown base edges.
    Literal,
    /// Halve the whole blown block `σ|T_z|`, on top of the blown base edges.
    WholeBlock,
    /// Only the blow-up of the base half-block edges (`σ⌊|T_z|/2⌋` slots).
    /// This is the plain blow-up of `U(n*,3)` and the default.
    #[default]
    BaseAligned,
}

impl fmt::Display for T3Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T3Reading::Literal => "literal",
            T3Reading::WholeBlock => "whole-block",
            T3Reading::BaseAligned => "base-aligned",
        })
    }
}

impl std::str::FromStr for T3Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(T3Reading::Literal),
            "whole-block" => Ok(T3Reading::WholeBlock),
            "base-aligned" => Ok(T3Reading::BaseAligned),
            _ => Err(Error::InvalidArgument(format!("unknown half-block reading {s:?}"))),
        }
    }
}

/// Slot `slot ∈ 1..=w+1` of the clique replacing `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlownAddress {
    pub base: Address,
    pub slot: u32,
}

impl fmt::Display for BlownAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.slot)
    }
}

/// Eating layout of `T*_{h,3,w}`: blown position `(p-1)σ + i` for slot `i` of
/// the base vertex at position `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlownLayout {
    pub base: Layout,
    pub sigma: u64,
    pub reading: T3Reading,
}

impl BlownLayout {
    pub fn new(h: u32, w: usize, reading: T3Reading) -> Self {
        BlownLayout { base: Layout::new(h, Arity::TERNARY), sigma: w as u64 + 1, reading }
    }

    pub fn size(&self) -> u64 {
        self.base.size() * self.sigma
    }

    pub fn position(&self, a: &BlownAddress) -> u64 {
        (self.base.eat(&a.base) - 1) * self.sigma + u64::from(a.slot)
    }

    pub fn address(&self, pos: u64) -> BlownAddress {
        let base = self.base.address((pos - 1) / self.sigma + 1);
        BlownAddress { base, slot: ((pos - 1) % self.sigma + 1) as u32 }
    }

    /// Blown targets of the half-block rule at base vertex `u` that are not
    /// already blown base edges.
    pub fn extra_half_block(&self, u: &Address) -> Option<(u64, u64)> {
        if u.level() >= self.base.h {
            return None;
        }
        let z = u.shift(1, Arity::TERNARY).child(1);
        let t = self.base.subtree_size(z.level());
        let top = self.base.eat(&z) * self.sigma;
        let (lo, hi) = match self.reading {
            T3Reading::BaseAligned => return None,
            T3Reading::Literal => {
                let half = (self.sigma * t - 1) / 2;
                (top - half, top - 1)
            }
            T3Reading::WholeBlock => {
                let half = self.sigma * t / 2;
                (top + 1 - half, top)
            }
        };
        (lo <= hi).then_some((lo, hi))
    }

    /// Blown position ranges adjacent to the slots of base position `p`
    /// (excluding the clique of `p` itself).
    fn target_ranges(&self, p: u64) -> Vec<(u64, u64)> {
        let u = self.base.address(p);
        let s = self.sigma;
        let mut out: Vec<(u64, u64)> = self
            .base
            .rule_ranges(&u)
            .into_iter()
            .filter(|&(_, lo, hi)| !(lo == p && hi == p))
            .map(|(_, lo, hi)| ((lo - 1) * s + 1, hi * s))
            .collect();
        out.extend(self.extra_half_block(&u));
        out
    }

    /// Edges among blown positions `> offset`, as sorted adjacency rows over
    /// local ids `pos - offset - 1`.
    fn rows(&self, offset: u64) -> Vec<Vec<u32>> {
        let n = (self.size() - offset) as usize;
        let s = self.sigma;
        let mut rows = vec![Vec::new(); n];
        let first_base = offset / s + 1;
        for p in first_base..=self.base.size() {
            let slots = ((p - 1) * s + 1).max(offset + 1)..=p * s;
            let ranges = self.target_ranges(p);
            for a in slots.clone() {
                let la = (a - offset - 1) as u32;
                for b in slots.clone().filter(|&b| b != a) {
                    rows[la as usize].push((b - offset - 1) as u32);
                }
                for &(lo, hi) in &ranges {
                    for b in lo.max(offset + 1)..=hi {
                        if (b - 1) / s == (a - 1) / s {
                            continue;
                        }
                        let lb = (b - offset - 1) as u32;
                        rows[la as usize].push(lb);
                        rows[lb as usize].push(la);
                    }
                }
            }
        }
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
        }
        rows
    }
}

/// `U(n,3,w)`: the last `n` slots of the blow-up of the smallest `T*_{h,3}`
/// with at least `⌈n/(w+1)⌉` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwHostGraph {
    pub layout: BlownLayout,
    pub w: usize,
    pub offset: u64,
    pub graph: Graph,
}

impl TwHostGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn sigma(&self) -> u64 {
        self.layout.sigma
    }

    pub fn position(&self, i: u32) -> u64 {
        self.offset + u64::from(i) + 1
    }

    pub fn address(&self, i: u32) -> BlownAddress {
        self.layout.address(self.position(i))
    }

    pub fn local(&self, a: &BlownAddress) -> Option<u32> {
        if !a.base.is_valid(Arity::TERNARY, self.layout.base.h) || a.slot == 0 || u64::from(a.slot) > self.sigma() {
            return None;
        }
        let p = self.layout.position(a);
        (p > self.offset).then(|| (p - self.offset - 1) as u32)
    }
}

pub fn base_size(n: u64, w: usize) -> u64 {
    n.div_ceil(w as u64 + 1)
}

pub fn build_universal_tw(n: u64, w: usize) -> Result<TwHostGraph> {
    build_universal_tw_with(n, w, T3Reading::default())
}

pub fn build_universal_tw_with(n: u64, w: usize, reading: T3Reading) -> Result<TwHostGraph> {
    if n == 0 || w == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and w >= 1, got n={n} w={w}")));
    }
    let base = Layout::for_size(base_size(n, w), Arity::TERNARY);
    let layout = BlownLayout { base, sigma: w as u64 + 1, reading };
    let offset = layout.size() - n;
    let graph = Graph::from_sorted_rows(layout.rows(offset));
    Ok(TwHostGraph { layout, w, offset, graph })
}

pub fn count_edges_tw(n: u64, w: usize) -> Result<u64> {
    Ok(build_universal_tw(n, w)?.graph.edge_count() as u64)
}

/// Right-hand side of the blow-up accounting: every base edge of
/// `U(n*,3)` becomes `(w+1)^2` edges and every clique adds `C(w+1,2)`.
pub fn blowup_accounting_bound(n: u64, w: usize) -> u64 {
    let ns = base_size(n, w);
    let s = w as u64 + 1;
    let base = universal_edge_counts(ns, Arity::TERNARY)[ns as usize];
    s * s * base + s * (s - 1) / 2 * ns
}

/// `Σ_{1 ≤ j ≤ ⌊n/(2w+1)⌋} w(⌊n/j⌋ - 2w)`, the lower bound on the edge count
/// of any graph universal for treewidth `w`. Empty (0) for `n < 2w+1`.
pub fn lower_bound_edges(n: u64, w: usize) -> u64 {
    let w = w as u64;
    (1..=n / (2 * w + 1)).map(|j| w * (n / j - 2 * w)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_small_values() {
        assert_eq!(lower_bound_edges(10, 1), 12);
        assert_eq!(lower_bound_edges(5, 2), 2);
        assert_eq!(lower_bound_edges(4, 2), 0);
    }

    #[test]
    fn single_clique() {
        for w in 1..5 {
            let g = build_universal_tw(w as u64 + 1, w).unwrap();
            assert_eq!(g.graph.edge_count(), (w + 1) * w / 2);
        }
    }

    #[test]
    fn blown_addresses_round_trip() {
        let g = build_universal_tw(40, 2).unwrap();
        for i in 0..g.n() as u32 {
            assert_eq!(g.local(&g.address(i)), Some(i));
        }
        assert_eq!(g.address(g.n() as u32 - 1), BlownAddress { base: Address::root(), slot: 3 });
    }

    #[test]
    fn quotient_contains_base_adjacency() {
        for w in 1..=3 {
            let g = build_universal_tw_with(13 * (w as u64 + 1), w, T3Reading::BaseAligned).unwrap();
            let s = g.sigma();
            let base = crate::construction::build_universal(13, Arity::TERNARY).unwrap();
            for a in 0..g.n() as u32 {
                for b in 0..g.n() as u32 {
                    let (pa, pb) = (g.position(a), g.position(b));
                    let (qa, qb) = ((pa - 1) / s + 1, (pb - 1) / s + 1);
                    let want = a != b && (qa == qb || base.layout.adjacent(qa, qb));
                    assert_eq!(g.graph.has_edge(a, b), want, "w={w} {a} {b}");
                }
            }
        }
    }
}
