//! Exact-arithmetic engine for finite Grassmannian geometry.
//!
//! The library builds Grassmannians `G_i` of `i`-dimensional subspaces of
//! `V = GF(q)^n`, the space of complementary pairs
//! `G = {(S, U) in G_k x G_{n-k} : S + U = V}`, and the full product
//! `G_k x G_{n-k}`.  On top of those it provides:
//!
//! * adjacency and closeness relations on pairs, materialized as bitset
//!   graphs;
//! * the catalog of pair transformations induced by semilinear maps and
//!   dualities, stored as explicit action tables;
//! * a verifier that exhaustively checks the classification statements for
//!   those transformations at desk scale and emits replayable reports.
//!
//! All arithmetic is exact: field elements are dense table indices, subspaces
//! are canonical reduced row echelon bases, and equality is bit-identical.

pub mod bitset;
pub mod cli;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod linalg;
pub mod pairs;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
