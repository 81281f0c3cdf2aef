//! Backend-agnostic operator algebra.
//!
//! Two interchangeable representations of a linear operator on a finite
//! Hilbert space:
//!
//! * [`DenseOperator`] — an explicit d×d complex matrix; exact and simple,
//!   for small spaces (Fock subspaces, few-spin chains);
//! * [`TensorOperator`] — a sum of site-factored terms on an N-spin chain;
//!   scales to hundreds of sites because traces factorize per site.
//!
//! [`Operator`] wraps both behind one interface. All values are immutable
//! after construction and every operation is a pure function, so everything
//! here is freely shareable across threads.

mod dense;
pub mod linalg;
mod site;
mod tensor;

pub use dense::DenseOperator;
pub use site::{PauliConvention, SiteMatrix};
pub use tensor::{TensorOperator, TensorTerm, DEFAULT_DENSE_CAP, MIN_TERM_COEFF};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// The scalar field: complex numbers with double-precision parts.
pub type Scalar = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpError {
    #[error("operator dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square: {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("chain lengths differ: {0} vs {1} sites")]
    SiteCountMismatch(usize, usize),
    #[error("operator backends differ: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),
    #[error("term has {got} factors but the chain has {want} sites")]
    FactorCountMismatch { got: usize, want: usize },
    #[error("densifying a {n_sites}-site operator exceeds the cap of {cap} dimensions")]
    DenseCapExceeded { n_sites: usize, cap: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Which representation an [`Operator`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Backend {
    Dense,
    Tensor,
}

impl Backend {
    pub fn label(self) -> &'static str {
        match self {
            Backend::Dense => "dense",
            Backend::Tensor => "tensor",
        }
    }
}

/// A linear operator in either backend.
#[derive(Debug, Clone)]
pub enum Operator {
    Dense(DenseOperator),
    Tensor(TensorOperator),
}

impl From<DenseOperator> for Operator {
    fn from(d: DenseOperator) -> Self {
        Operator::Dense(d)
    }
}

impl From<TensorOperator> for Operator {
    fn from(t: TensorOperator) -> Self {
        Operator::Tensor(t)
    }
}

impl Operator {
    pub fn backend(&self) -> Backend {
        match self {
            Operator::Dense(_) => Backend::Dense,
            Operator::Tensor(_) => Backend::Tensor,
        }
    }

    /// Hilbert-space dimension as a float (exact: d is a power of two or a
    /// small integer, both representable).
    pub fn hilbert_dim(&self) -> f64 {
        match self {
            Operator::Dense(d) => d.dim() as f64,
            Operator::Tensor(t) => t.hilbert_dim(),
        }
    }

    /// Check that two operators live on the same space and backend.
    pub fn same_space(&self, other: &Self) -> Result<(), OpError> {
        match (self, other) {
            (Operator::Dense(a), Operator::Dense(b)) => {
                if a.dim() != b.dim() {
                    return Err(OpError::DimensionMismatch(a.dim(), b.dim()));
                }
                Ok(())
            }
            (Operator::Tensor(a), Operator::Tensor(b)) => {
                if a.n_sites() != b.n_sites() {
                    return Err(OpError::SiteCountMismatch(a.n_sites(), b.n_sites()));
                }
                Ok(())
            }
            _ => Err(OpError::BackendMismatch(
                self.backend().label(),
                other.backend().label(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, OpError> {
        match (self, other) {
            (Operator::Dense(a), Operator::Dense(b)) => a.add(b).map(Into::into),
            (Operator::Tensor(a), Operator::Tensor(b)) => a.add(b).map(Into::into),
            _ => Err(OpError::BackendMismatch(
                self.backend().label(),
                other.backend().label(),
            )),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, OpError> {
        match (self, other) {
            (Operator::Dense(a), Operator::Dense(b)) => a.mul(b).map(Into::into),
            (Operator::Tensor(a), Operator::Tensor(b)) => a.multiply(b).map(Into::into),
            _ => Err(OpError::BackendMismatch(
                self.backend().label(),
                other.backend().label(),
            )),
        }
    }

    /// [self, other] = self·other − other·self.
    pub fn commutator(&self, other: &Self) -> Result<Self, OpError> {
        match (self, other) {
            (Operator::Dense(a), Operator::Dense(b)) => a.commutator(b).map(Into::into),
            (Operator::Tensor(a), Operator::Tensor(b)) => a.commutator(b).map(Into::into),
            _ => Err(OpError::BackendMismatch(
                self.backend().label(),
                other.backend().label(),
            )),
        }
    }

    pub fn scale(&self, c: Scalar) -> Self {
        match self {
            Operator::Dense(d) => Operator::Dense(d.scale(c)),
            Operator::Tensor(t) => Operator::Tensor(t.scale(c)),
        }
    }

    pub fn adjoint(&self) -> Self {
        match self {
            Operator::Dense(d) => Operator::Dense(d.adjoint()),
            Operator::Tensor(t) => Operator::Tensor(t.adjoint()),
        }
    }

    pub fn trace(&self) -> Scalar {
        match self {
            Operator::Dense(d) => d.trace(),
            Operator::Tensor(t) => t.trace(),
        }
    }

    pub fn traceless(&self) -> Self {
        match self {
            Operator::Dense(d) => Operator::Dense(d.traceless()),
            Operator::Tensor(t) => Operator::Tensor(t.traceless()),
        }
    }

    /// `self + λ·I` for real λ.
    pub fn shifted(&self, lambda: f64) -> Self {
        match self {
            Operator::Dense(d) => Operator::Dense(d.shifted(lambda)),
            Operator::Tensor(t) => Operator::Tensor(t.shifted(lambda)),
        }
    }

    pub fn frobenius_inner(&self, other: &Self) -> Result<Scalar, OpError> {
        match (self, other) {
            (Operator::Dense(a), Operator::Dense(b)) => a.frobenius_inner(b),
            (Operator::Tensor(a), Operator::Tensor(b)) => a.frobenius_inner(b),
            _ => Err(OpError::BackendMismatch(
                self.backend().label(),
                other.backend().label(),
            )),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        match self {
            Operator::Dense(d) => d.norm_sq(),
            Operator::Tensor(t) => t.norm_sq(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        match self {
            Operator::Dense(d) => d.is_hermitian(tol),
            Operator::Tensor(t) => t.is_hermitian(tol),
        }
    }

    /// Densify (dense operators are returned as-is).
    pub fn to_dense(&self) -> Result<DenseOperator, OpError> {
        match self {
            Operator::Dense(d) => Ok(d.clone()),
            Operator::Tensor(t) => t.to_dense(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn operators_are_shareable_across_threads() {
        assert_send_sync::<DenseOperator>();
        assert_send_sync::<TensorOperator>();
        assert_send_sync::<Operator>();
        assert_send_sync::<SiteMatrix>();
    }

    #[test]
    fn mixed_backends_rejected() {
        let d = Operator::Dense(DenseOperator::identity(4));
        let t = Operator::Tensor(TensorOperator::identity(2));
        assert!(matches!(d.add(&t), Err(OpError::BackendMismatch(_, _))));
        assert!(matches!(
            d.frobenius_inner(&t),
            Err(OpError::BackendMismatch(_, _))
        ));
    }
}
