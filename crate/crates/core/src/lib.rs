//! Exact analysis of finite quotient singularities C^n/G.

pub mod error;
pub mod group;
pub mod linalg;
pub mod lab;
pub mod resolve;
pub mod specfile;
pub mod toric;

pub use error::{Error, Result};
pub use group::{Classification, GroupSpec, MatrixGroup, ModuleType};
pub use linalg::{CyclotomicScalar, FieldMatrix, IntMatrix, Rational, RootOfUnity, Subspace};
