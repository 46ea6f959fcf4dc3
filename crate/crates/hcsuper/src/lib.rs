//! Explicit simple modules of cyclotomic Hecke-Clifford superalgebras.
//!
//! Both the nondegenerate algebra (generators `T_i`, `X_k^{±1}`, `C_k`) and the
//! degenerate Sergeev algebra (`s_i`, `x_k`, `c_k`) are covered. Simple modules
//! are built blockwise over standard tableaux, checked against every defining
//! relation, and cross-checked by a brute-force regular representation.

pub mod combinatorics;
pub mod cyclo;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod params;
pub mod scalar;
pub mod torus;

pub use combinatorics::{Box, Flavor, Multipartition, Partition, StandardTableau};
pub use cyclo::CycloModule;
pub use error::Error;
pub use matrix::{DenseMatrix, SparseMatrix};
pub use par::Exec;
pub use params::{ParameterSet, Variant};
pub use scalar::{Precision, Scalar};
pub use torus::{ModuleType, TorusModule};
