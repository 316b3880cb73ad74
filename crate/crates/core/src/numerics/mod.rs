//! Self-contained numerical kernels: quadrature, a dense symmetric
//! eigensolver, and associated Legendre evaluation.

pub mod eigen;
pub mod legendre;
pub mod quadrature;

pub use eigen::{sym_eigen, sym_eigenvalues, EigenDecomposition, SymMatrix};
pub use legendre::assoc_legendre_normalized;
pub use quadrature::{gauss_legendre, QuadratureRule};
