//! Feedback arc sets of digraphs and their partitions into disjoint
//! feedback arc sets.
//!
//! The central quantity is `fasd(D)`, the largest number of pairwise
//! disjoint feedback arc sets into which the arcs of `D` can be split. A
//! split into `t` classes is the same thing as a *good* `t`-arc-coloring:
//! every directed cycle meets every color.

pub mod decompose3;
pub mod delta3;
pub mod error;
pub mod fas;
pub mod fas_sixth;
pub mod fvs;
pub mod fasd;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod ordering;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{ArcId, Digraph, Girth, MultiDigraph, UndirectedGraph, Vertex};
