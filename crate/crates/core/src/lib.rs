//! Exact Turán density coefficients of mixed graphs.
//!
//! A mixed graph has undirected and directed edges. For a forbidden graph (or
//! finite family) `F`, the Turán density coefficient is the largest `ρ` such
//! that every large `F`-free mixed graph satisfies `α + ρβ ≤ 1 + o(1)`, where
//! `α` and `β` are the undirected and directed edge densities. This crate
//! computes it exactly, returning an algebraic number with a polynomial
//! certificate and an extremal template.

pub mod algebraic;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod named;
pub mod numeric;
pub mod poly;
pub mod selftest;
pub mod simplex;
pub mod theta;

pub use error::{Error, Result};
pub use graph::{
    count_embeddings, find_embedding, is_subgraph, Densities, EdgeKind, MixedGraph, Relation,
    RolePartition,
};
pub use matrix::{MixedAdjacencyMatrix, WeightedForm};
pub use algebraic::{isolate_root, pq_polynomials, AlgebraicNumber};
pub use poly::IntPolynomial;
pub use simplex::{g_rho, ratio_min, RatioSolution, RatioValue, SimplexPoint};
pub use theta::{classify, ess_bounds, enumerate_candidates, theta, verify, Classification, Tag, ThetaKind, ThetaResult};
