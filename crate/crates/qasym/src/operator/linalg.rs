//! Small dense linear-algebra helpers: Hermitian eigendecomposition (cyclic
//! Jacobi with complex rotations), LU inversion, and Hermitian matrix
//! functions. Intended for the modest dimensions (d ≲ few hundred) where the
//! symmetry and invariance checks operate.

// Index-based loops mirror the textbook formulation of the kernels.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64 as C64;

use super::dense::DenseOperator;
use super::site::{C_ONE, C_ZERO};
use super::OpError;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary whose columns are
/// the corresponding eigenvectors, so that `m = V · diag(λ) · V†`.
/// Only the Hermitian part of the input is seen (entries are symmetrized).
pub fn hermitian_eigen(m: &DenseOperator) -> (Vec<f64>, DenseOperator) {
    let d = m.dim();
    // Work on the explicitly Hermitized copy.
    let mut a: Vec<Vec<C64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (m.entry(i, j) + m.entry(j, i).conj()) * C64::new(0.5, 0.0))
                .collect()
        })
        .collect();
    let mut v: Vec<Vec<C64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { C_ONE } else { C_ZERO }).collect())
        .collect();

    let scale = a
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                off = off.max(a[p][q].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p][q];
                if apq.norm() <= tol {
                    continue;
                }
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let abs = apq.norm();
                let phase = apq / C64::new(abs, 0.0);
                let tau = (aqq - app) / (2.0 * abs);
                // Small root of t² − 2τt − 1 = 0, which zeroes the (p,q)
                // entry of U†AU.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary rotation U = [[c, −s̄σ], [sσ̄ ... ]] acting on the
                // (p,q) plane with σ = s·conj(phase):
                //   U[p][p] = c        U[p][q] = −conj(σ)
                //   U[q][p] = σ        U[q][q] = c
                let sigma = C64::new(s, 0.0) * phase.conj();

                // Column update: B = A·U touches columns p and q.
                for k in 0..d {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * C64::new(c, 0.0) + akq * sigma;
                    a[k][q] = akq * C64::new(c, 0.0) - akp * sigma.conj();
                }
                // Row update: A' = U†·B touches rows p and q.
                for k in 0..d {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * C64::new(c, 0.0) + aqk * sigma.conj();
                    a[q][k] = aqk * C64::new(c, 0.0) - apk * sigma;
                }
                a[p][q] = C_ZERO;
                a[q][p] = C_ZERO;
                // Accumulate eigenvectors: V ← V·U.
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp * C64::new(c, 0.0) + vq * sigma;
                    row[q] = vq * C64::new(c, 0.0) - vp * sigma.conj();
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i][i].re.partial_cmp(&a[j][j].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i].re).collect();
    let vectors = DenseOperator::from_fn(d, |i, j| v[i][order[j]]);
    (eigenvalues, vectors)
}

/// f(H) = V · diag(exp(z·λ_k)) · V† for Hermitian H.
///
/// With purely imaginary z this yields a unitary; with real z a positive
/// definite operator.
pub fn exp_hermitian(m: &DenseOperator, z: C64) -> DenseOperator {
    let (vals, v) = hermitian_eigen(m);
    let d = m.dim();
    let exp_diag =
        DenseOperator::from_diag(&vals.iter().map(|&l| (z * l).exp()).collect::<Vec<_>>());
    let vd = v.mul(&exp_diag).expect("dims agree");
    let out = vd.mul(&v.adjoint()).expect("dims agree");
    debug_assert_eq!(out.dim(), d);
    out
}

/// Matrix inverse via LU with partial pivoting.
pub fn inverse(m: &DenseOperator) -> Result<DenseOperator, OpError> {
    let d = m.dim();
    let mut lu: Vec<Vec<C64>> = (0..d)
        .map(|i| (0..d).map(|j| m.entry(i, j)).collect())
        .collect();
    let mut perm: Vec<usize> = (0..d).collect();
    let scale = m.max_abs().max(1e-300);

    for k in 0..d {
        // Pivot.
        let (pivot_row, pivot_abs) = (k..d)
            .map(|r| (r, lu[r][k].norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if pivot_abs <= 1e-14 * scale {
            return Err(OpError::Singular);
        }
        lu.swap(k, pivot_row);
        perm.swap(k, pivot_row);
        let inv_pivot = C_ONE / lu[k][k];
        for r in (k + 1)..d {
            let factor = lu[r][k] * inv_pivot;
            lu[r][k] = factor;
            for c in (k + 1)..d {
                let sub = factor * lu[k][c];
                lu[r][c] -= sub;
            }
        }
    }

    // Solve A x = e_i for each unit vector.
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(d);
    let mut col = vec![C_ZERO; d];
    for i in 0..d {
        for (r, slot) in col.iter_mut().enumerate() {
            *slot = if perm[r] == i { C_ONE } else { C_ZERO };
        }
        // Forward substitution (unit lower triangle).
        for r in 1..d {
            for c in 0..r {
                let sub = lu[r][c] * col[c];
                col[r] -= sub;
            }
        }
        // Back substitution.
        for r in (0..d).rev() {
            for c in (r + 1)..d {
                let sub = lu[r][c] * col[c];
                col[r] -= sub;
            }
            col[r] /= lu[r][r];
        }
        columns.push(col.clone());
    }
    Ok(DenseOperator::from_fn(d, |i, j| columns[j][i]))
}
