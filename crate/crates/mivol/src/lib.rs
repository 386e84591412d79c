//! Exact computational geometry for mixed-integer convex bodies.
//!
//! A mixed-integer body is a bounded rational polytope C in R^(n+d) whose
//! first n coordinates are restricted to integers, giving a disjoint union
//! of d-dimensional fibers.  This crate computes, in exact rational
//! arithmetic: fiber decompositions and the induced volume measure,
//! halfspace mass fractions, centerpoint certificates for the worst-case
//! halfspace depth, the classical cone and centroid constructions those
//! certificates rely on, and lattice-width normalizations.  A thin CLI
//! (`mivol`) exposes the same operations for scripted sweeps.
//!
//! Floating point appears in exactly three places: sampled search
//! directions (whose coordinates are converted bit-exactly to rationals
//! before any measurement), Monte-Carlo volume estimates used as an
//! independent oracle, and human-readable report columns.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod mixed;
pub mod lattice;
pub mod centerpoint;
pub mod constructions;
pub mod harness;

pub use error::{Error, Result};
