//! Bicircular lift matroids of multigraphs, and when two graphs share one.
//!
//! The lift matroid `L(G)` lives on the edges of `G`; its circuits are the
//! minimal edge sets holding two cycles. This crate computes lift and graphic
//! matroids of small labeled multigraphs, decides 2-isomorphism and builds
//! move certificates for it, classifies pairs of graphs with equal lift
//! matroids, and enumerates small graphs to check the classification
//! exhaustively.
//!
//! ```
//! use bilift::matroid::lift_circuits;
//! use bilift::Multigraph;
//!
//! // two loops at one vertex: the only circuit is both of them
//! let g = Multigraph::new(1, [(1, 0, 0), (2, 0, 0)])?;
//! assert_eq!(lift_circuits(&g).len(), 1);
//! # Ok::<(), bilift::Error>(())
//! ```
//!
//! Edge labels are arbitrary positive integers; a graph has at most
//! [`MAX_EDGES`] edges so that edge sets fit in a `u64`.

pub mod canon;
pub mod classify;
pub mod edgeset;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod format;
pub mod isomorphism;
pub mod matroid;
pub mod multigraph;

pub use edgeset::{EdgeSet, Label, Mask, MAX_EDGES};
pub use error::{Error, Result};
pub use multigraph::{Edge, Multigraph};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/lift.md")]
    pub struct Lift;
    #[doc = include_str!("../../../book/src/two-isomorphism.md")]
    pub struct TwoIsomorphism;
    #[doc = include_str!("../../../book/src/classification.md")]
    pub struct Classification;
    #[doc = include_str!("../../../book/src/families.md")]
    pub struct Families;
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub struct Sweeps;
}
