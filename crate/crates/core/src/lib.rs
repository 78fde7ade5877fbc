//! Generic rigidity and flexibility of planar periodic bar-joint frameworks.
//!
//! Everything operates on the finite quotient of a periodic graph: a directed
//! multigraph whose edges carry colors in `Z^2` ([`ColoredGraph`]). The crate
//! provides
//!
//! * the cycle-space image `rho`, the `Z^2`-rank and developments ([`graph`],
//!   [`forest`], [`lattice`], [`development`]);
//! * the graded sparsity matroids: the `(1,1,k)` matroid with rank function
//!   `f = n + rk - c`, its union with itself (the `(2,2,k)` matroid) and the
//!   colored-Laman matroid ([`sparsity`]);
//! * the natural linear representations and randomized rank over a prime
//!   field ([`linear_rep`]);
//! * colored direction networks and faithful realizations ([`direction`]);
//! * the rigidity matrix and generic rigidity decisions ([`rigidity`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod development;
pub mod direction;
mod error;
pub mod field;
pub mod forest;
pub mod graph;
pub mod lattice;
pub mod linear_rep;
pub mod matrix;
pub mod rigidity;
pub mod sample;
pub mod sparsity;

pub use error::{Error, Result};
pub use field::Fp;
pub use graph::{ClosedWalk, ColorVector, ColoredEdge, ColoredGraph, EdgeSubset, Step};
