//! Embedding forests (and, with clique slots, bounded-treewidth graphs)
//! onto eating-order prefixes of admissible graphs.
//!
//! An admissible graph is handled as a *view*: a root vertex `r` and up to
//! `d` consecutive blocks `b, b-1, b-2, …` on the level below, each block
//! being a full subtree. The view's vertices are eaten block by block in
//! host order, and the root is eaten last. Each host vertex carries `σ` slots
//! (`σ = 1` for trees, `σ = w+1` for the clique blow-up). Slot `i` of the
//! vertex at eating position `p` has blown position `(p-1)σ + i`.
//!
//! The recursion follows the admissible-graph induction:
//!
//! * small heights are cliques and are filled directly;
//! * a block with only its root left is filled directly, because that root
//!   sees everything eaten after it;
//! * the last block is entered recursively, and its root takes the leftover
//!   vertices;
//! * otherwise a part that fits below the current block root is embedded into
//!   the sub-view `U` formed by that root, the current grandchild block and the
//!   next `d-1` blocks;
//! * larger parts are split by one or two separators. The forests are fed
//!   into successive `U` views until the block below each anchor is used up.
//!   The separator then goes to the anchor's root slots.

use crate::addressing::{Address, Arity};
use crate::construction::{HostGraph, Layout};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separators::{split_one_sep_in, split_three_in, split_two_sep_in, DeltaContext, ForestOracle, SeparatorOracle};

/// A root, up to `d` blocks `first, first-1, …` one level below, and a count
/// of view positions already eaten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleView {
    pub root: Address,
    pub first: Address,
    pub nblocks: u32,
    pub consumed: u64,
}

/// Host shape plus slots per vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Geometry {
    pub layout: Layout,
    pub sigma: u64,
}

impl Geometry {
    pub fn new(layout: Layout, sigma: u64) -> Self {
        Geometry { layout, sigma }
    }

    fn d(&self) -> Arity {
        self.layout.d
    }

    /// The whole `T*` as a view, with the first `consumed` positions eaten.
    pub fn whole(&self, consumed: u64) -> AdmissibleView {
        let root = Address::root();
        let (first, nblocks) = if self.layout.h == 0 {
            (root.clone(), 0)
        } else {
            (root.child(self.d().get() as u8), self.d().get())
        };
        AdmissibleView { root, first, nblocks, consumed }
    }

    /// View of the subtree of `v` (its children as blocks).
    pub fn subtree(&self, v: &Address, consumed: u64) -> AdmissibleView {
        if v.level() >= self.layout.h {
            return AdmissibleView { root: v.clone(), first: v.clone(), nblocks: 0, consumed };
        }
        AdmissibleView { root: v.clone(), first: v.child(self.d().get() as u8), nblocks: self.d().get(), consumed }
    }

    /// View rooted at `anchor` whose blocks start at position `q` of the
    /// sequence `anchor·d, anchor·d - 1, …` on the level below `anchor`.
    fn below(&self, anchor: &Address, q: u64) -> AdmissibleView {
        let n = self.block_size_at(anchor.level() + 1);
        let first = anchor.child(self.d().get() as u8).shift(-((q / n) as i64), self.d());
        AdmissibleView { root: anchor.clone(), first, nblocks: self.d().get(), consumed: q % n }
    }

    fn block_size_at(&self, level: u32) -> u64 {
        self.sigma * self.layout.subtree_size(level)
    }

    pub fn block_size(&self, v: &AdmissibleView) -> u64 {
        if v.nblocks == 0 {
            0
        } else {
            self.block_size_at(v.first.level())
        }
    }

    pub fn size(&self, v: &AdmissibleView) -> u64 {
        u64::from(v.nblocks) * self.block_size(v) + self.sigma
    }

    pub fn live(&self, v: &AdmissibleView) -> u64 {
        self.size(v) - v.consumed
    }

    fn block(&self, v: &AdmissibleView, i: u64) -> Address {
        v.first.shift(-(i as i64), self.d())
    }

    /// Blown host position of view index `idx` (counted from the view start,
    /// eaten positions included).
    pub fn position(&self, v: &AdmissibleView, idx: u64) -> u64 {
        let s = self.block_size(v);
        let nb = u64::from(v.nblocks);
        if idx < nb * s {
            let b = self.block(v, idx / s);
            let (lo, _) = self.layout.subtree_range(&b);
            (lo - 1) * self.sigma + idx % s + 1
        } else {
            let r = self.layout.eat(&v.root);
            (r - 1) * self.sigma + (idx - nb * s) + 1
        }
    }

    /// Blown positions of the live part, in view order.
    pub fn live_positions(&self, v: &AdmissibleView) -> Vec<u64> {
        (v.consumed..self.size(v)).map(|i| self.position(v, i)).collect()
    }

    fn advance(&self, v: &AdmissibleView, k: u64) -> AdmissibleView {
        AdmissibleView { consumed: v.consumed + k, ..v.clone() }
    }
}

/// Observation-style constructors over a base layout (`σ = 1`).
pub fn strip_prefix(geo: &Geometry, a: &AdmissibleView, k: u64) -> Result<AdmissibleView> {
    let live = geo.live(a);
    if k >= live {
        return Err(Error::IndexOutOfRange { index: k, len: live });
    }
    Ok(geo.advance(a, k))
}

/// The view rooted at `r` with blocks `r_u, r_u-1, …, r_u-s3`.
pub fn sibling_block(geo: &Geometry, r: &Address, r_u: &Address, s3: u32) -> Result<AdmissibleView> {
    if r_u.parent().as_ref() != Some(r) {
        return Err(Error::Precondition(format!("{r_u} is not a child of {r}")));
    }
    if s3 >= geo.d().get() {
        return Err(Error::Precondition(format!("s3={s3} must be below d={}", geo.d())));
    }
    Ok(AdmissibleView { root: r.clone(), first: r_u.clone(), nblocks: s3 + 1, consumed: 0 })
}

/// The ternary view rooted at `r-1` over the last `live_u` vertices of the
/// subtree of `r_u` and the next two blocks. Valid only while `r_u`'s live part
/// fits in the half reached by the half-block edges of `r-1`.
pub fn type3_block(geo: &Geometry, r: &Address, r_u: &Address, live_u: u64) -> Result<AdmissibleView> {
    if geo.d() != Arity::TERNARY {
        return Err(Error::Type3BlockUnavailable("arity is not 3".into()));
    }
    if r_u.parent().as_ref() != Some(r) {
        return Err(Error::Precondition(format!("{r_u} is not a child of {r}")));
    }
    let s = geo.block_size_at(r_u.level());
    let cap = geo.layout.subtree_size(r_u.level()) / 2 * geo.sigma;
    if live_u > cap {
        return Err(Error::Type3BlockUnavailable(format!("{live_u} live vertices exceed the cap {cap}")));
    }
    let root = r.shift(-1, geo.d());
    Ok(AdmissibleView { root, first: r_u.clone(), nblocks: 3, consumed: s - live_u })
}

/// Guest vertex `i` is placed at blown host position `map[i]` (1-based, in
/// the eating order of the ambient `T*`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<u64>,
}

impl Embedding {
    /// Local host ids (0-based within a suffix starting after `offset`).
    pub fn local(&self, offset: u64) -> Vec<u32> {
        self.map.iter().map(|&p| (p - offset - 1) as u32).collect()
    }
}

const UNSET: u64 = u64::MAX;

struct Engine<'a, O: SeparatorOracle + ?Sized> {
    geo: Geometry,
    oracle: &'a O,
    map: Vec<u64>,
}

impl<O: SeparatorOracle + ?Sized> Engine<'_, O> {
    fn place(&mut self, view: &AdmissibleView, start: u64, vertices: &[u32]) {
        for (i, &v) in vertices.iter().enumerate() {
            debug_assert_eq!(self.map[v as usize], UNSET);
            self.map[v as usize] = self.geo.position(view, start + i as u64);
        }
    }

    fn embed(&mut self, view: &AdmissibleView, part: &[u32]) -> Result<()> {
        let geo = self.geo;
        let len = part.len() as u64;
        if len == 0 {
            return Ok(());
        }
        let live = geo.live(view);
        if len + geo.sigma > live {
            return Err(Error::GuestTooLarge { guest: part.len(), host: live as usize });
        }
        let d = geo.d().get();
        let hb = geo.layout.h - view.root.level();
        if view.nblocks == 0 || hb <= 1 {
            self.place(view, view.consumed, part);
            return Ok(());
        }
        let s = geo.block_size(view);
        let c = view.consumed / s;
        let cw = view.consumed % s;
        let k = u64::from(view.nblocks) - 1 - c;
        let bc = geo.block(view, c);
        let a_live = s - cw;
        let sigma = geo.sigma;

        if a_live <= sigma {
            let q = a_live.min(len) as usize;
            self.place(view, view.consumed, &part[..q]);
            return self.embed(&geo.advance(view, q as u64), &part[q..]);
        }
        let a1 = geo.subtree(&bc, cw);
        if k == 0 {
            if len + sigma <= a_live {
                return self.embed(&a1, part);
            }
            let extra = (len + sigma - a_live) as usize;
            self.embed(&a1, &part[extra..])?;
            self.place(view, view.consumed + a_live - sigma, &part[..extra]);
            return Ok(());
        }

        let n = geo.block_size_at(bc.level() + 1);
        let x = n - cw % n;
        let root_excl = a_live - sigma;
        if len <= u64::from(d - 1) * n + x + sigma {
            let cnt = len.saturating_sub(root_excl).min(sigma) as usize;
            self.embed(&geo.below(&bc, cw), &part[cnt..])?;
            self.place(view, view.consumed + root_excl, &part[..cnt]);
            return Ok(());
        }
        let anchors_forests: (Vec<Vec<u32>>, Vec<Vec<u32>>, &'static str) = if d == 2 {
            let big = len - n - x - 1;
            let m = if len == 3 * n + x + 2 { n } else { len.saturating_sub(2 * n + x + 1) };
            let sp = split_three_in(self.oracle, part, m as usize, big as usize)?;
            (vec![sp.sep], vec![sp.f1, sp.f2, sp.f3], "binary one-separator")
        } else if len <= 5 * n + x + 2 * sigma {
            let ctx = DeltaContext::new(n as usize, x as usize)?;
            let sp = split_one_sep_in(self.oracle, part, ctx)?;
            (vec![sp.sep], vec![sp.f1, sp.f2, sp.f3], "ternary one-separator")
        } else {
            if k < 2 {
                return Err(Error::Postcondition {
                    branch: "ternary two-separator",
                    detail: format!("|F|={len} needs two blocks after the current one, found {k}"),
                });
            }
            let ctx = DeltaContext::new(n as usize, x as usize)?;
            let sp = split_two_sep_in(self.oracle, part, ctx)?;
            (vec![sp.s1, sp.s2], sp.parts.to_vec(), "ternary two-separator")
        };
        let (seps, forests, branch) = anchors_forests;
        self.run_anchors(view, c, cw, root_excl, seps, forests, branch)
    }

    /// Feeds `forests` into the `U` views below each anchor block
    /// (`b_c, b_{c+1}, …`) until that block's children are used up, places the
    /// anchor's separator at its root slots, and embeds what is left into the
    /// remaining view.
    #[allow(clippy::too_many_arguments)]
    fn run_anchors(
        &mut self,
        view: &AdmissibleView,
        c: u64,
        cw: u64,
        root_excl: u64,
        mut seps: Vec<Vec<u32>>,
        mut forests: Vec<Vec<u32>>,
        branch: &'static str,
    ) -> Result<()> {
        let geo = self.geo;
        let s = geo.block_size(view);
        let sigma = geo.sigma;
        let mut next = 0usize;
        let mut e = 0u64;
        let mut placed = 0u64;
        let mut boundary = root_excl;
        let mut start = 0u64;
        for (j, sep) in seps.iter_mut().enumerate() {
            let anchor = geo.block(view, c + j as u64);
            let offset0 = if j == 0 { cw } else { 0 };
            while e < boundary {
                let Some(f) = forests.get(next) else {
                    return Err(Error::Postcondition {
                        branch,
                        detail: format!("forests exhausted before the children of anchor {anchor} were eaten"),
                    });
                };
                next += 1;
                if f.is_empty() {
                    continue;
                }
                let u = geo.below(&anchor, offset0 + e - start);
                if f.len() as u64 + sigma > geo.live(&u) {
                    return Err(Error::Postcondition {
                        branch,
                        detail: format!("F{next} has {} vertices but U below {anchor} holds {}", f.len(), geo.live(&u) - sigma),
                    });
                }
                self.embed(&u, f)?;
                e += f.len() as u64;
            }
            // a short separator is topped up with vertices not yet embedded;
            // the anchor root sees every later position
            while (sep.len() as u64) < sigma {
                let Some(f) = forests[next..].iter_mut().rev().find(|f| !f.is_empty()) else { break };
                sep.push(f.pop().expect("non-empty"));
            }
            // the anchor's root slots follow its children in view order
            let root_start = (c + j as u64 + 1) * s - sigma;
            self.place(view, root_start, sep);
            placed += sep.len() as u64;
            start = boundary;
            boundary += s - sigma;
        }
        let mut rest: Vec<u32> = forests[next..].concat();
        rest.sort_unstable();
        let eaten = e + placed;
        self.embed(&geo.advance(view, eaten), &rest)
    }
}

fn check_forest_size(part: usize, geo: &Geometry, view: &AdmissibleView) -> Result<()> {
    let live = geo.live(view);
    if part as u64 + geo.sigma > live {
        return Err(Error::GuestTooLarge { guest: part, host: live as usize });
    }
    Ok(())
}

/// Embeds the subgraph induced by `part` onto the first `|part|` live
/// positions of `view`, splitting with `oracle`.
pub fn embed_part<O: SeparatorOracle + ?Sized>(
    geo: Geometry,
    oracle: &O,
    view: &AdmissibleView,
    part: &[u32],
) -> Result<Embedding> {
    check_forest_size(part.len(), &geo, view)?;
    let mut engine = Engine { geo, oracle, map: vec![UNSET; oracle.graph().n()] };
    engine.embed(view, part)?;
    Ok(Embedding { map: engine.map })
}

/// Embeds the forest `f` onto the first `|f|` vertices of the admissible
/// graph `host` (`|f| < |host|`).
pub fn embed_forest(host: &HostGraph, f: &Graph) -> Result<Embedding> {
    let d = host.d();
    if d != Arity::BINARY && d != Arity::TERNARY {
        return Err(Error::InvalidArgument(format!("embedding supports d in {{2,3}}, got {d}")));
    }
    if f.n() >= host.n() {
        return Err(Error::GuestTooLarge { guest: f.n(), host: host.n() });
    }
    let geo = Geometry::new(host.layout, 1);
    let oracle = ForestOracle::new(f)?;
    let all: Vec<u32> = (0..f.n() as u32).collect();
    embed_part(geo, &oracle, &geo.whole(host.offset), &all)
}

/// Bijective embedding of a tree with `|t| = |host|` vertices: a leaf goes
/// to the root, the rest is embedded as a forest.
pub fn embed_tree_full(host: &HostGraph, t: &Graph) -> Result<Embedding> {
    if t.n() != host.n() {
        return Err(Error::InvalidArgument(format!("tree has {} vertices, host has {}", t.n(), host.n())));
    }
    if t.n() == 0 {
        return Ok(Embedding { map: Vec::new() });
    }
    let v = (0..t.n() as u32).find(|&v| t.degree(v) <= 1).unwrap_or(0);
    let geo = Geometry::new(host.layout, 1);
    let oracle = ForestOracle::new(t)?;
    let rest: Vec<u32> = (0..t.n() as u32).filter(|&u| u != v).collect();
    let mut e = embed_part(geo, &oracle, &geo.whole(host.offset), &rest)?;
    e.map[v as usize] = host.layout.eat(&Address::root());
    Ok(e)
}

/// First problem found by [`validate_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Unmapped { vertex: u32 },
    OutOfHost { vertex: u32, position: u64 },
    NotInjective { a: u32, b: u32 },
    MissingEdge { u: u32, v: u32 },
    NotPrefix { position: u64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Unmapped { vertex } => write!(f, "guest vertex {vertex} is unmapped"),
            Violation::OutOfHost { vertex, position } => {
                write!(f, "guest vertex {vertex} mapped to position {position} outside the host")
            }
            Violation::NotInjective { a, b } => write!(f, "not injective: guest vertices {a} and {b} collide"),
            Violation::MissingEdge { u, v } => write!(f, "guest edge ({u},{v}) is not a host edge"),
            Violation::NotPrefix { position } => write!(f, "image is not an eating-order prefix: {position} is used"),
        }
    }
}

/// Checks injectivity, adjacency preservation and that the image is the
/// first `|guest|` host vertices. `graph`/`offset` describe the host as local
/// ids after `offset` eaten positions.
pub fn validate_on(graph: &Graph, offset: u64, guest: &Graph, e: &Embedding) -> std::result::Result<(), Violation> {
    let n = graph.n() as u64;
    let mut owner = vec![u32::MAX; graph.n()];
    for (g, &p) in e.map.iter().enumerate() {
        let g = g as u32;
        if p == UNSET {
            return Err(Violation::Unmapped { vertex: g });
        }
        if p <= offset || p > offset + n {
            return Err(Violation::OutOfHost { vertex: g, position: p });
        }
        let l = (p - offset - 1) as usize;
        if owner[l] != u32::MAX {
            return Err(Violation::NotInjective { a: owner[l], b: g });
        }
        owner[l] = g;
    }
    for (u, v) in guest.edges() {
        let (a, b) = (e.map[u as usize] - offset - 1, e.map[v as usize] - offset - 1);
        if !graph.has_edge(a as u32, b as u32) {
            return Err(Violation::MissingEdge { u, v });
        }
    }
    let k = e.map.len();
    if let Some(l) = owner.iter().skip(k).position(|&o| o != u32::MAX) {
        return Err(Violation::NotPrefix { position: offset + (k + l) as u64 + 1 });
    }
    Ok(())
}

pub fn validate_embedding(host: &HostGraph, guest: &Graph, e: &Embedding) -> std::result::Result<(), Violation> {
    validate_on(&host.graph, host.offset, guest, e)
}
