//! Exact rational linear algebra plus a floating-point symmetric eigensolver.

mod exact;
mod jacobi;
mod matrices;

pub use exact::{rational_to_f64, same_span, span_contains, ExactMatrix, ExactVector};
pub use jacobi::{jacobi_eigen, min_eigenvalue_symmetric, MinEigenvalue, SymmetricEigen, DEFAULT_MAX_SWEEPS};
pub use matrices::{
    adjacency_matrix, degree_difference, degree_matrix, hypergraph_adjacency, hypergraph_degree_matrix,
    hypergraph_laplacian, incidence, is_nonnegative_diagonal, laplacian, offset_matrix, signed_laplacian, signless_laplacian,
    IncidenceMatrix, Orientation,
};
