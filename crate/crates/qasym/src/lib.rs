//! Algebraic asymmetry degrees of operators.
//!
//! Given a matrix (or tensor-term) representation {X_j} of an algebra basis
//! and an operator H on the same space, the asymmetry degree is
//!
//! ```text
//!   A(g, H) = Σ_j ‖[H, X_j]‖² / ‖H − (tr H / d)·I‖²
//! ```
//!
//! with ‖O‖² = tr(O†O) the squared Frobenius norm. A(g, H) is zero exactly
//! when H commutes with every generator, invariant under shifting H by a
//! multiple of the identity, and invariant under conjugation by unitaries
//! that commute with all generators.
//!
//! The crate provides:
//!
//! * [`operator`] — dense and tensor-term operator backends;
//! * [`asymmetry`] — the asymmetry degree and its invariance checks;
//! * [`models`] — su(2) and su_q(2) representations: two-mode Fock subspaces,
//!   two-spin co-products, q-deformed Casimir operators, and N-spin XXX/XXZ
//!   chains with boundary terms;
//! * [`closed_form`] — closed-form asymmetry expressions for those models,
//!   in both their originally stated and corrected variants, with machinery
//!   for comparing them against the direct matrix computation;
//! * [`mesh`] — sampled surfaces of the deformed-sphere family attached to
//!   the q-deformed Casimir level sets.

pub mod asymmetry;
pub mod closed_form;
pub mod mesh;
pub mod models;
pub mod operator;

pub use asymmetry::{asymmetry, is_symmetric, AsymmetryError, AsymmetryReport, GeneratorSet};
pub use operator::{Backend, DenseOperator, OpError, Operator, Scalar, TensorOperator};
