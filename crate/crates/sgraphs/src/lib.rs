//! Core combinatorics and algebra of S-graphs.
//!
//! An *S-graph* is a graph equipped with a cyclic (internal vertices) or total
//! (boundary vertices) order on the halfedges at every vertex, together with a
//! positive integer *corner degree* for each pair of successive halfedges.
//! S-graphs are dual to mixed-angulations of weighted marked surfaces and
//! carry a rich algebraic shadow, all of which is implemented here:
//!
//! * [`graph`] — the S-graph data model, validation, extension by virtual
//!   halfedges, orientability, canonical forms and surface invariants.
//! * [`flip`] — forward/backward flips (including the monogon case) and
//!   exchange-graph enumeration.
//! * [`algebra`] — the relative graded Brauer graph dg-algebra `A(Γ,n)`:
//!   basis, products, differential, and Calabi–Yau (non)structure.
//! * [`koszul`] — the Koszul dual `A(Γ,n)^!` by generic cobar and by explicit
//!   formulas, plus the reduced quiver used for figure-level comparisons.
//! * [`ext`] — graded local rings, intersections, the intersection formula
//!   for graded Homs, positivity, and smoothing of intersections into arcs.
//! * [`tilt`] — simple tilting: arc level, `K₀` level, and a standalone
//!   finite-dimensional module implementation with universal extensions.
//! * [`walk`] — central charges on edges, wall detection, and chamber walks.
//! * [`scalar`] — exact scalars (arbitrary-precision rationals and prime
//!   fields) and dense linear algebra over them.
//!
//! The crate is `no_std`-compatible (`alloc` required); the companion crate
//! `sgraphs-cli` adds file formats, fixtures and a command-line interface.
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod algebra;
pub mod ext;
pub mod fixtures;
pub mod flip;
pub mod gen;
pub mod graph;
pub mod koszul;
pub mod scalar;
pub mod tilt;
pub mod walk;

pub use graph::{EdgeId, HalfedgeId, SGraph, VertexId, VertexKind};
