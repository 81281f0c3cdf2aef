//! 2×2 single-site matrices: the building blocks of tensor-term operators.
//!
//! Spin-1/2 site operators come in two normalizations, carried explicitly
//! because mixed conventions are a recurring source of silent factor-of-two
//! errors:
//!
//! * `Half`:  σ_z = diag(1/2, −1/2), σ_± = σ_x ± iσ_y with unit off-diagonal
//! * `Full`:  σ_z = diag(1, −1), σ_± with off-diagonal entry 2
//!
//! The diagonal string factors q^{±σ_z} = diag(q^{±1/2}, q^{∓1/2}) are always
//! built from the half-normalized σ_z, independently of the convention chosen
//! for the σ^α operators themselves.

use num_complex::Complex64 as C64;
use serde::Serialize;

pub(crate) const C_ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const C_ONE: C64 = C64::new(1.0, 0.0);

/// Normalization of the spin-1/2 operators σ^{x,y,z,±}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PauliConvention {
    /// σ_z = diag(1/2, −1/2); σ_± have unit off-diagonal entries.
    Half,
    /// σ_z = diag(1, −1); σ_± have off-diagonal entry 2.
    Full,
}

impl PauliConvention {
    /// Scale of the σ_z eigenvalues: 1/2 for `Half`, 1 for `Full`.
    pub fn spin_scale(self) -> f64 {
        match self {
            PauliConvention::Half => 0.5,
            PauliConvention::Full => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PauliConvention::Half => "half",
            PauliConvention::Full => "full",
        }
    }
}

/// A dense 2×2 complex matrix acting on a single spin-1/2 site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteMatrix {
    e: [[C64; 2]; 2],
}

impl SiteMatrix {
    pub const fn new(entries: [[C64; 2]; 2]) -> Self {
        Self { e: entries }
    }

    pub const fn zero() -> Self {
        Self::new([[C_ZERO, C_ZERO], [C_ZERO, C_ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[C_ONE, C_ZERO], [C_ZERO, C_ONE]])
    }

    pub fn diag(a: C64, b: C64) -> Self {
        Self::new([[a, C_ZERO], [C_ZERO, b]])
    }

    pub fn sigma_x(conv: PauliConvention) -> Self {
        let s = C64::new(conv.spin_scale(), 0.0);
        Self::new([[C_ZERO, s], [s, C_ZERO]])
    }

    pub fn sigma_y(conv: PauliConvention) -> Self {
        let s = conv.spin_scale();
        Self::new([
            [C_ZERO, C64::new(0.0, -s)],
            [C64::new(0.0, s), C_ZERO],
        ])
    }

    pub fn sigma_z(conv: PauliConvention) -> Self {
        let s = conv.spin_scale();
        Self::diag(C64::new(s, 0.0), C64::new(-s, 0.0))
    }

    /// σ_+ = σ_x + iσ_y: off-diagonal entry 1 (`Half`) or 2 (`Full`).
    pub fn sigma_plus(conv: PauliConvention) -> Self {
        let s = C64::new(2.0 * conv.spin_scale(), 0.0);
        Self::new([[C_ZERO, s], [C_ZERO, C_ZERO]])
    }

    /// σ_− = σ_x − iσ_y.
    pub fn sigma_minus(conv: PauliConvention) -> Self {
        let s = C64::new(2.0 * conv.spin_scale(), 0.0);
        Self::new([[C_ZERO, C_ZERO], [s, C_ZERO]])
    }

    /// q^{σ_z} = diag(e^{γ/2}, e^{−γ/2}) with q = e^γ.
    ///
    /// Always uses the half-normalized σ_z in the exponent; pass `-gamma`
    /// for q^{−σ_z}.
    pub fn q_sigma_z(gamma: f64) -> Self {
        Self::diag(
            C64::new((0.5 * gamma).exp(), 0.0),
            C64::new((-0.5 * gamma).exp(), 0.0),
        )
    }

    pub fn dim(&self) -> usize {
        2
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.e[i][j]
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.e
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j] + other.e[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.e;
        let b = &other.e;
        Self::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn adjoint(&self) -> Self {
        Self::new([
            [self.e[0][0].conj(), self.e[1][0].conj()],
            [self.e[0][1].conj(), self.e[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    /// tr(self† · other) = Σ_ij conj(self_ij)·other_ij.
    pub fn conj_inner(&self, other: &Self) -> C64 {
        let mut acc = C_ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += self.e[i][j].conj() * other.e[i][j];
            }
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Bitwise identity test; true for factors built as
    /// [`SiteMatrix::identity`], which is how identity slots are stored.
    pub fn is_exact_identity(&self) -> bool {
        self.e == Self::identity().e
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.e
            .iter()
            .flatten()
            .zip(other.e.iter().flatten())
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::identity(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra_half_convention() {
        let x = SiteMatrix::sigma_x(PauliConvention::Half);
        let y = SiteMatrix::sigma_y(PauliConvention::Half);
        let z = SiteMatrix::sigma_z(PauliConvention::Half);
        // [σ_x, σ_y] = iσ_z in the half convention.
        let comm = x.mul(&y).add(&y.mul(&x).scale(C64::new(-1.0, 0.0)));
        let expect = z.scale(C64::new(0.0, 1.0));
        assert!(comm.approx_eq(&expect, 1e-15), "[x,y] != i z");
    }

    #[test]
    fn sigma_pm_match_xy_combination() {
        for conv in [PauliConvention::Half, PauliConvention::Full] {
            let x = SiteMatrix::sigma_x(conv);
            let y = SiteMatrix::sigma_y(conv);
            let plus = x.add(&y.scale(C64::new(0.0, 1.0)));
            let minus = x.add(&y.scale(C64::new(0.0, -1.0)));
            assert!(plus.approx_eq(&SiteMatrix::sigma_plus(conv), 1e-15));
            assert!(minus.approx_eq(&SiteMatrix::sigma_minus(conv), 1e-15));
        }
    }

    #[test]
    fn q_string_is_half_based() {
        let g = 1.0;
        let m = SiteMatrix::q_sigma_z(g);
        assert!((m.entry(0, 0).re - (0.5f64).exp()).abs() < 1e-15);
        assert!((m.entry(1, 1).re - (-0.5f64).exp()).abs() < 1e-15);
        // q^{σ_z} · q^{−σ_z} = I
        let prod = m.mul(&SiteMatrix::q_sigma_z(-g));
        assert!(prod.is_identity(1e-15));
    }

    #[test]
    fn adjoint_involution() {
        let m = SiteMatrix::new([
            [C64::new(1.0, 2.0), C64::new(-0.5, 0.25)],
            [C64::new(0.0, -3.0), C64::new(4.0, 0.0)],
        ]);
        assert!(m.adjoint().adjoint().approx_eq(&m, 0.0));
    }
}
