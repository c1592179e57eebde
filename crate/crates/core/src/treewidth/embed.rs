//! Embedding graphs of bounded treewidth into the blown-up hosts.

use crate::embedding::{embed_part, validate_on, AdmissibleView, Embedding, Geometry, Violation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separators::TwOracle;

use super::decomposition::{normalize_decomposition, TreeDecomposition};
use super::host::TwHostGraph;

fn geometry(host: &TwHostGraph) -> Geometry {
    Geometry::new(host.layout.base, host.sigma())
}

fn prepare(g: &Graph, td: &TreeDecomposition, w: usize) -> Result<TreeDecomposition> {
    if g.n() < w + 1 {
        return Err(Error::InvalidArgument(format!("graph has {} vertices, fewer than w+1={}", g.n(), w + 1)));
    }
    if td.is_normal(w) {
        td.validate(g)?;
        Ok(td.clone())
    } else {
        normalize_decomposition(g, td, w)
    }
}

/// Embeds `g` onto the first `|g|` live slots of `view` (`|g| <= live - w - 1`).
pub fn embed_graph_tw(host: &TwHostGraph, view: &AdmissibleView, g: &Graph, td: &TreeDecomposition) -> Result<Embedding> {
    let td = prepare(g, td, host.w)?;
    let oracle = TwOracle::new(g, &td, host.w)?;
    let all: Vec<u32> = (0..g.n() as u32).collect();
    embed_part(geometry(host), &oracle, view, &all)
}

/// The whole host as a view.
pub fn host_view(host: &TwHostGraph) -> AdmissibleView {
    geometry(host).whole(host.offset)
}

/// Bijective embedding of `g` (`|g| = |host|`): `w+1` vertices go to the root
/// clique and the rest is embedded recursively.
pub fn embed_graph_full_tw(host: &TwHostGraph, g: &Graph, td: &TreeDecomposition) -> Result<Embedding> {
    if g.n() != host.n() {
        return Err(Error::InvalidArgument(format!("graph has {} vertices, host has {}", g.n(), host.n())));
    }
    let td = prepare(g, td, host.w)?;
    let sigma = host.sigma() as usize;
    let oracle = TwOracle::new(g, &td, host.w)?;
    let root: Vec<u32> = td.bags[0].clone();
    let rest: Vec<u32> = (0..g.n() as u32).filter(|v| root.binary_search(v).is_err()).collect();
    let geo = geometry(host);
    let mut e = embed_part(geo, &oracle, &geo.whole(host.offset), &rest)?;
    let top = host.layout.size();
    for (i, &v) in root.iter().enumerate() {
        e.map[v as usize] = top + 1 - (sigma - i) as u64;
    }
    Ok(e)
}

pub fn validate_tw_embedding(host: &TwHostGraph, g: &Graph, e: &Embedding) -> std::result::Result<(), Violation> {
    validate_on(&host.graph, host.offset, g, e)
}
