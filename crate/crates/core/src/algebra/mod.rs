//! Exact arithmetic kernel: rationals, sparse polynomials, polynomial
//! matrices and tensors, jet polynomials, and integration of closed forms.

mod integrate;
mod jet;
mod matrix;
mod monomial;
mod poly;
pub mod scalar;

use thiserror::Error;

pub use integrate::{integrate_gradient, integrate_hessian, IntegrationError};
pub use jet::{evolutionary_derivative, flow_velocity, JetPoly, MAX_JET_ORDER};
pub use matrix::{ConstSymMatrix, PolyMatrix, PolyTensor};
pub use monomial::Monomial;
pub use poly::Poly;
pub use scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("jet order {order} exceeds the supported maximum {max}")]
    JetOrderTooHigh { order: u32, max: u32 },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix is singular")]
    Singular,
}
