//! Exact-arithmetic fractional graph decompositions.
//!
//! This crate constructs, verifies and certifies fractional decompositions of
//! graphs into scaled copies of weighted templates, with a focus on weighted
//! triangles. Everything is computed over arbitrary-precision rationals; there
//! is no floating point anywhere on a decomposition or verification path.
//!
//! The main entry points are:
//!
//! * [`graph`] / [`weighted`] — the data model: simple graphs, positively
//!   weighted graphs, scaled copies, and the exact packing/decomposition
//!   verifier.
//! * [`condense`] — condensation of a graph with respect to an indexed
//!   partition into independent sets.
//! * [`triangle`] — the exact feasibility test and constructive solver for
//!   fractional decompositions of one weighted triangle into another.
//! * [`pipeline`] — fractional decomposition of a host graph into scaled
//!   copies of a weighted triangle via per-triangle weighting, plus the
//!   minimum-degree threshold formula and ratio diagnostics.
//! * [`blowup`] — the q-blow-up operator and its explicit fractional
//!   decomposition into copies of the condensed graph's preimage.
//! * [`extremal`] — extremal host constructions and ratio-based nonexistence
//!   certificates for fractional decompositions.
//! * [`oracle`] — independent ground truth: decide existence of a fractional
//!   decomposition of a small host by exact linear programming over all
//!   template embeddings.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `fracdecomp-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod blowup;
pub mod condense;
pub mod extremal;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod simplex;
pub mod triangle;
pub mod weighted;

pub use graph::Graph;
pub use rational::Rational;
pub use triangle::TriangleTemplate;
pub use weighted::{FractionalDecomposition, ScaledCopy, WeightedGraph};
