//! Exact arithmetic and enumerative machinery for stability chambers on
//! quotient moduli: big rationals, multivariate rational functions in
//! equivariant parameters, truncated Laurent series, decorated-graph
//! stability predicates with their wall/chamber structure, a rewriting
//! system for tautological classes on weighted-pointed moduli, a
//! fixed-point-graph localization engine, and the resulting invariants of
//! three local Calabi-Yau geometries together with wall-crossing reports.
//!
//! Everything is exact: no floating point appears anywhere.

pub mod error;
pub mod hassett;
pub mod invariants;
pub mod localization;
pub mod multipoly;
pub mod quotient;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod taut;

pub use error::{Error, Result};
pub use rational::{rat_arith, RatOp, Rational};
