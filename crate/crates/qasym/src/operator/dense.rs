//! Dense d×d complex matrices: the exact backend for small Hilbert spaces.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::site::{C_ONE, C_ZERO};
use super::OpError;

/// A square complex matrix with an explicit dimension.
///
/// All operations are pure; dimension mismatches are reported as
/// [`OpError::DimensionMismatch`] rather than panicking.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    mat: Array2<C64>,
}

impl DenseOperator {
    /// Wrap a square array.
    pub fn from_array(mat: Array2<C64>) -> Result<Self, OpError> {
        if mat.nrows() != mat.ncols() {
            return Err(OpError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        Ok(Self { mat })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: Array2::from_elem((dim, dim), C_ZERO),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.mat[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.mat[(i, i)] = v;
        }
        m
    }

    /// Build entrywise: `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            mat: Array2::from_shape_fn((dim, dim), |(i, j)| f(i, j)),
        }
    }

    /// Build from real row-major rows (convenience for test fixtures).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let d = rows.len();
        Self::from_fn(d, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn array(&self) -> &Array2<C64> {
        &self.mat
    }

    fn check_dim(&self, other: &Self) -> Result<(), OpError> {
        if self.dim() != other.dim() {
            return Err(OpError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OpError> {
        self.check_dim(other)?;
        Ok(Self {
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OpError> {
        self.check_dim(other)?;
        Ok(Self {
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            mat: self.mat.mapv(|v| v * c),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, OpError> {
        self.check_dim(other)?;
        Ok(Self {
            mat: self.mat.dot(&other.mat),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.t().mapv(|v| v.conj()),
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.diag().sum()
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, OpError> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.sub(&ba)
    }

    /// Frobenius inner product tr(self† · other) = Σ_ij conj(self_ij)·other_ij.
    pub fn frobenius_inner(&self, other: &Self) -> Result<C64, OpError> {
        self.check_dim(other)?;
        let mut acc = C_ZERO;
        for (a, b) in self.mat.iter().zip(other.mat.iter()) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    /// Squared Frobenius norm ‖A‖² = tr(A†A). Always real and non-negative.
    pub fn norm_sq(&self) -> f64 {
        self.mat.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Traceless part A − (tr A / d)·I.
    pub fn traceless(&self) -> Self {
        let shift = self.trace() / C64::new(self.dim() as f64, 0.0);
        let mut out = self.clone();
        for i in 0..out.dim() {
            out.mat[(i, i)] -= shift;
        }
        out
    }

    /// `self + λ·I` for real λ.
    pub fn shifted(&self, lambda: f64) -> Self {
        let mut out = self.clone();
        for i in 0..out.dim() {
            out.mat[(i, i)] += C64::new(lambda, 0.0);
        }
        out
    }

    /// Kronecker product; dimension is the product of the factor dimensions.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            mat: ndarray::linalg::kron(&self.mat, &other.mat),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |self − other|.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, OpError> {
        self.check_dim(other)?;
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise |A − A†|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                dev = dev.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entrywise |U†U − I|; zero for exactly unitary U.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("square");
        let mut dev: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let want = if i == j { C_ONE } else { C_ZERO };
                dev = dev.max((gram.mat[(i, j)] - want).norm());
            }
        }
        dev
    }
}
