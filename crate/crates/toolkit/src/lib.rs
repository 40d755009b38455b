//! File formats, seeded plane-graph generation, corpus manifests, and the
//! report engine behind the `total9` command-line interface.
//!
//! Everything mathematical lives in `total9_core`; this crate adds the
//! std-side plumbing: parsing and serializing embeddings, colorings, and
//! move logs ([`format`]), growing seeded random plane graphs under a
//! degree cap ([`generate`]), and checksummed corpora with a deterministic
//! end-to-end report ([`corpus`]).

pub mod corpus;
pub mod format;
pub mod generate;
