//! Laboratory core for total coloring of plane graphs with maximum degree
//! eight and no 4-fan.
//!
//! The crate is split along the pipeline it supports:
//!
//! * [`graph`] — rotation-system embeddings, face tracing, degree/face
//!   statistics;
//! * [`coloring`] — total colorings (vertices and edges together), an exact
//!   backtracking solver and a verifier;
//! * [`patterns`] — degree/face-constrained configuration patterns, the
//!   4-fan test and the structural-lemma catalog;
//! * [`extension`] — recoloring moves, per-configuration reduction scripts
//!   and the bounded move search;
//! * [`discharging`] — exact vertex/face charges, the five transfer rules,
//!   transfer logs and the audit report.
//!
//! Everything here is deterministic: collections iterate in a fixed order,
//! the solver follows a documented element order, and the only randomness
//! ([`rng::SplitMix64`]) is seeded explicitly by the caller.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod coloring;
pub mod discharging;
pub mod extension;
pub mod fixtures;
pub mod graph;
pub mod patterns;
pub mod rng;

pub use graph::{build_embedding, Element, FaceWalk, PlanarEmbedding};
