//! The asymmetry degree A(g, H) and its invariance properties.
//!
//! A(g, H) = Σ_j ‖[H, X_j]‖² / ‖H̃‖² with H̃ = H − (tr H / d)·I. The degree
//! is zero iff H commutes with every generator, unchanged under H → H + λI,
//! and unchanged under H → T H T† for unitary T commuting with all X_j.
//!
//! For operators proportional to the identity the definition degenerates to
//! 0/0; that case is a hard [`AsymmetryError::ScalarOperator`] rather than a
//! silent zero.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::operator::{linalg, Backend, DenseOperator, OpError, Operator};

/// Default threshold below which ‖H̃‖² is considered zero.
pub const EPS_SCALAR: f64 = 1e-12;

/// Default absolute tolerance on a commutator Frobenius norm for symmetry.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-10;

/// |A(g, H+λI) − A(g, H)| must stay below this for shift invariance.
pub const SHIFT_INVARIANCE_TOL: f64 = 1e-10;

/// |A(g, THT†) − A(g, H)| must stay below this for unitary invariance.
pub const UNITARY_INVARIANCE_TOL: f64 = 1e-9;

/// Tolerance for the preconditions of the conjugation checks (unitarity of T
/// and commutation of T with the generators).
pub const TRANSFORM_PRECONDITION_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum AsymmetryError {
    #[error(
        "operator is proportional to the identity (‖traceless part‖² = {norm_sq:.3e} ≤ {eps:.3e}); \
         the asymmetry degree is a 0/0 form there"
    )]
    ScalarOperator { norm_sq: f64, eps: f64 },
    #[error("generator set must be non-empty")]
    EmptyGeneratorSet,
    #[error("transform is not unitary: max |T†T − I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },
    #[error("transform does not commute with generator {label}: ‖[T, X]‖ = {norm:.3e}")]
    NonCommutingTransform { label: String, norm: f64 },
    #[error("transform is singular; cannot form T H T⁻¹")]
    SingularTransform,
    #[error(transparent)]
    Op(#[from] OpError),
}

/// A named representation of an algebra basis {X_j} on one Hilbert space.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    /// Label, e.g. "su2-fock-M2" or "suq2-chain-N4".
    pub name: String,
    /// Deformation parameter of the represented algebra (0 for undeformed).
    pub gamma: f64,
    gens: Vec<(String, Operator)>,
    dim: f64,
}

impl GeneratorSet {
    /// All generators must share one dimension and backend.
    pub fn new(
        name: impl Into<String>,
        gamma: f64,
        gens: Vec<(String, Operator)>,
    ) -> Result<Self, AsymmetryError> {
        let first = gens.first().ok_or(AsymmetryError::EmptyGeneratorSet)?;
        for (_, g) in gens.iter().skip(1) {
            first.1.same_space(g)?;
        }
        let dim = first.1.hilbert_dim();
        Ok(Self {
            name: name.into(),
            gamma,
            gens,
            dim,
        })
    }

    pub fn generators(&self) -> &[(String, Operator)] {
        &self.gens
    }

    pub fn backend(&self) -> Backend {
        self.gens[0].1.backend()
    }

    /// Hilbert-space dimension (exact float; powers of two stay exact).
    pub fn dim(&self) -> f64 {
        self.dim
    }

    /// Convert every generator to the dense backend.
    pub fn to_dense(&self) -> Result<Self, OpError> {
        let gens = self
            .gens
            .iter()
            .map(|(l, g)| Ok((l.clone(), Operator::Dense(g.to_dense()?))))
            .collect::<Result<Vec<_>, OpError>>()?;
        Ok(Self {
            name: self.name.clone(),
            gamma: self.gamma,
            gens,
            dim: self.dim,
        })
    }

    fn check_operator(&self, h: &Operator) -> Result<(), OpError> {
        self.gens[0].1.same_space(h)
    }
}

/// Result of an asymmetry computation.
#[derive(Debug, Clone, Serialize)]
pub struct AsymmetryReport {
    /// A(g, H) = Σ_j ‖[H, X_j]‖² / ‖H̃‖².
    pub total: f64,
    /// Raw squared commutator norms ‖[H, X_j]‖², one per generator.
    pub per_generator: Vec<(String, f64)>,
    /// ‖H̃‖², the normalizing denominator.
    pub norm_sq_traceless: f64,
    /// Which backend evaluated the norms.
    pub backend: String,
    /// Free-form metadata (generator-set name, model parameters, …).
    pub model_params: BTreeMap<String, String>,
    /// Whether H was Hermitian within 1e-10; non-Hermitian input is accepted
    /// but flagged.
    pub hermitian: bool,
}

impl AsymmetryReport {
    /// Relative residual of the defining identity
    /// total · ‖H̃‖² = Σ_j per_generator.
    pub fn decomposition_residual(&self) -> f64 {
        let sum: f64 = self.per_generator.iter().map(|(_, v)| v).sum();
        let lhs = self.total * self.norm_sq_traceless;
        (lhs - sum).abs() / sum.abs().max(f64::MIN_POSITIVE)
    }
}

/// Asymmetry degree of `h` with respect to `g`, with the default scalar
/// threshold [`EPS_SCALAR`].
pub fn asymmetry(g: &GeneratorSet, h: &Operator) -> Result<AsymmetryReport, AsymmetryError> {
    asymmetry_with_eps(g, h, EPS_SCALAR)
}

/// Asymmetry degree with an explicit scalar-degeneracy threshold.
pub fn asymmetry_with_eps(
    g: &GeneratorSet,
    h: &Operator,
    eps: f64,
) -> Result<AsymmetryReport, AsymmetryError> {
    g.check_operator(h)?;
    let norm_sq_traceless = h.traceless().norm_sq();
    if norm_sq_traceless <= eps {
        return Err(AsymmetryError::ScalarOperator {
            norm_sq: norm_sq_traceless,
            eps,
        });
    }
    let mut per_generator = Vec::with_capacity(g.generators().len());
    let mut sum = 0.0;
    for (label, x) in g.generators() {
        let c = h.commutator(x)?;
        let nsq = c.norm_sq();
        sum += nsq;
        per_generator.push((label.clone(), nsq));
    }
    let mut model_params = BTreeMap::new();
    model_params.insert("generator_set".to_string(), g.name.clone());
    Ok(AsymmetryReport {
        total: sum / norm_sq_traceless,
        per_generator,
        norm_sq_traceless,
        backend: g.backend().label().to_string(),
        model_params,
        hermitian: h.is_hermitian(1e-10),
    })
}

/// Outcome of a symmetry test: H is g-symmetric iff every commutator norm is
/// below the tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    /// max_j ‖[H, X_j]‖ (Frobenius norm, not squared).
    pub max_commutator_norm: f64,
    pub per_generator: Vec<(String, f64)>,
}

/// Is `h` symmetric under `g` at absolute tolerance `tol` on the commutator
/// Frobenius norms?
pub fn is_symmetric(
    g: &GeneratorSet,
    h: &Operator,
    tol: f64,
) -> Result<SymmetryCheck, AsymmetryError> {
    g.check_operator(h)?;
    let mut per_generator = Vec::with_capacity(g.generators().len());
    let mut max_norm: f64 = 0.0;
    for (label, x) in g.generators() {
        let norm = h.commutator(x)?.frobenius_norm();
        max_norm = max_norm.max(norm);
        per_generator.push((label.clone(), norm));
    }
    Ok(SymmetryCheck {
        symmetric: max_norm <= tol,
        max_commutator_norm: max_norm,
        per_generator,
    })
}

/// Does A(g, h + λI) equal A(g, h) within [`SHIFT_INVARIANCE_TOL`] for every
/// λ in `lambdas`?
pub fn check_shift_invariance(
    g: &GeneratorSet,
    h: &Operator,
    lambdas: &[f64],
) -> Result<bool, AsymmetryError> {
    let base = asymmetry(g, h)?.total;
    for &lambda in lambdas {
        let shifted = asymmetry(g, &h.shifted(lambda))?.total;
        if (shifted - base).abs() > SHIFT_INVARIANCE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

fn densify(op: &Operator) -> Result<DenseOperator, AsymmetryError> {
    Ok(op.to_dense()?)
}

/// Verify that conjugating by a unitary `t` commuting with every generator
/// leaves the asymmetry unchanged within [`UNITARY_INVARIANCE_TOL`].
///
/// Preconditions (each violation reported distinctly): `t` unitary within
/// 1e-10 and ‖[t, X_j]‖ ≤ 1e-10 for every generator. Operands are densified,
/// so this check is meant for spaces within the densification cap.
pub fn check_unitary_invariance(
    g: &GeneratorSet,
    h: &Operator,
    t: &Operator,
) -> Result<bool, AsymmetryError> {
    g.check_operator(h)?;
    let td = densify(t)?;
    let dev = td.unitarity_deviation();
    if dev > TRANSFORM_PRECONDITION_TOL {
        return Err(AsymmetryError::NotUnitary { deviation: dev });
    }
    let gd = g.to_dense()?;
    check_transform_commutes(&gd, &td)?;
    let hd = densify(h)?;
    let conjugated = td.mul(&hd)?.mul(&td.adjoint())?;
    let base = asymmetry(&gd, &Operator::Dense(hd))?.total;
    let moved = asymmetry(&gd, &Operator::Dense(conjugated))?.total;
    Ok((moved - base).abs() <= UNITARY_INVARIANCE_TOL)
}

/// A(g, T H T⁻¹) − A(g, H) for an invertible `t` commuting with every
/// generator. The sign of the difference is reported, not asserted: only the
/// unitary equality case is a theorem here, so non-unitary transforms are
/// exposed for empirical study.
pub fn explore_monotonicity(
    g: &GeneratorSet,
    h: &Operator,
    t: &Operator,
) -> Result<f64, AsymmetryError> {
    g.check_operator(h)?;
    let td = densify(t)?;
    let gd = g.to_dense()?;
    check_transform_commutes(&gd, &td)?;
    let t_inv = linalg::inverse(&td).map_err(|e| match e {
        OpError::Singular => AsymmetryError::SingularTransform,
        other => AsymmetryError::Op(other),
    })?;
    let hd = densify(h)?;
    let conjugated = td.mul(&hd)?.mul(&t_inv)?;
    let base = asymmetry(&gd, &Operator::Dense(hd))?.total;
    let moved = asymmetry(&gd, &Operator::Dense(conjugated))?.total;
    Ok(moved - base)
}

fn check_transform_commutes(
    g_dense: &GeneratorSet,
    t: &DenseOperator,
) -> Result<(), AsymmetryError> {
    for (label, x) in g_dense.generators() {
        let xd = x.to_dense()?;
        let norm = t.commutator(&xd)?.frobenius_norm();
        if norm > TRANSFORM_PRECONDITION_TOL {
            return Err(AsymmetryError::NonCommutingTransform {
                label: label.clone(),
                norm,
            });
        }
    }
    Ok(())
}
