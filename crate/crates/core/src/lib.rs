//! Grid-labelled graphs read as bipartite quantum states.
//!
//! A graph on an `m x n` grid of vertices `(i, j)` is read as a mixture of
//! edge states on `C^m ⊗ C^n`: `L`-edges give `(|ij> - |kl>)/√2`, `Q`-edges give
//! `(|ij> + |kl>)/√2`, and the normalized (hybrid) Laplacian is the density
//! matrix. The crate decides the graphical degree criteria, runs graph
//! surgery to certify entanglement through the range criterion, and checks
//! every graphical verdict against exact and numeric linear algebra.

pub mod criteria;
pub mod error;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod quantum;
pub mod surgery;

pub use error::{Error, Result};

/// Exact rational scalar used for weights and matrix entries.
pub type Rational = num_rational::BigRational;
