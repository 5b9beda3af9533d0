//! Exact arithmetic kernel: rationals, cyclotomic scalars, integer and
//! field matrices, normal forms, kernels and subspaces.

pub mod cyclotomic;
pub mod field_matrix;
pub mod int_matrix;
pub mod subspace;

pub use cyclotomic::{rational_string, CyclotomicField, CyclotomicScalar, Rational, RootOfUnity};
pub use field_matrix::FieldMatrix;
pub use int_matrix::{IntMatrix, SmithForm};
pub use subspace::{subspace_intersection, Subspace};
