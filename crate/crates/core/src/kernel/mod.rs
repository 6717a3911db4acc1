//! Truncated Hilbert-space operators: shapes, sparse storage, elementary
//! operators, norms and spectra.

pub mod linalg;
pub mod operator;
pub mod shape;
pub mod sparse;

pub use operator::{
    half_identity, interior_residual, line_identity, make_bilateral_shift, make_diag, make_shift, op_norm,
    rank_one_ground, spectrum_normal, tensor, TruncatedOperator,
};
pub use shape::{FactorKind, FactorSpec, SpaceShape, DEFAULT_CAPACITY, DENSE_CAPACITY};
pub use sparse::Csr;
