//! Sparse universal graphs for trees and for graphs of bounded treewidth.

pub mod addressing;
pub mod construction;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod separators;
pub mod treewidth;

pub use addressing::{Address, Arity, EatIndex};
pub use error::{Error, Result};
pub use graph::Graph;
