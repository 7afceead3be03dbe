//! Exact tensor calculus for left-invariant connections on matrix Lie algebras.

mod algebra;
mod graded;
mod jtensor;
mod matrix;
mod report;
mod tensor;
mod tensors;

use thiserror::Error;

pub use algebra::{
    canonical_connection, canonical_connection_on, product_connection, AlgebraFactor,
    InvariantConnection, LieAlgebra, MatrixBasis,
};
pub use graded::{
    graded_components, pairing, BracketTerms, GradedHom, GradedOperator, TableEntry, TableRow,
};
pub use jtensor::j_tensor;
pub use matrix::{format_rational, rational, Matrix, Rational};
pub use report::{
    geometry_report, sample_shifts, GeometryReport, RowCheck, Witness, TABLE_SAMPLES,
};
pub use tensor::Tensor;
pub use tensors::{
    check_product_formulas, curvature, p_tensor, ricci, tensors, torsion, weyl_tensor, weyl_trace,
    ProductCheck, TensorSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("P is undefined in dimension {0} (division by n^2 - 1 = 0)")]
    SingularDimension(usize),
    #[error("J is undefined for l = {0} (division by l^2 - 4 = 0)")]
    SingularL(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("matrix is not trace-free")]
    NotTraceFree,
}
