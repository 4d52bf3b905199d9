#![cfg_attr(not(feature = "std"), no_std)]

//! Online coloring of trees and bipartite graphs.
//!
//! A graph is revealed vertex by vertex; every edge appears as soon as both
//! endpoints are present, and each vertex must be colored immediately and
//! irrevocably. This crate bundles the pieces needed to study that game:
//!
//! * [`graph`] — immutable simple graphs, validation, canonical 2-colorings;
//! * [`instances`] — deterministic and seeded instance generators;
//! * [`reveal`] — arrival orders, prediction vectors, and the referee that
//!   drives an online colorer step by step while recording a transcript;
//! * [`algorithms`] — the online colorers (greedy first-fit, the
//!   component-bipartition rule, and their advice-consuming variants);
//! * [`adversary`] — an adaptive game that forces any advice-consuming
//!   colorer to spend colors or exposes it as inconsistent;
//! * [`analysis`] — exact order-enumeration oracles, oriented reach trees,
//!   path-witness checkers, and closed-form bound evaluators.
//!
//! The crate is `no_std`-compatible (requires `alloc`); IO, file formats, and
//! the experiment harness live in the companion `ocol` crate.

extern crate alloc;

pub mod adversary;
pub mod algorithms;
pub mod analysis;
pub mod graph;
pub mod hash;
pub mod instances;
pub mod reveal;
pub mod rng;

pub use graph::{bipartition, is_proper_coloring, Bipartition, Graph, OddCycleWitness, Vertex};
pub use reveal::{ArrivalOrder, Color, ColoringTranscript, OnlineColorer, PredictionVector};
