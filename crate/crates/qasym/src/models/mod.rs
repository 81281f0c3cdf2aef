//! Built-in representations: su(2) and su_q(2) on two-mode Fock subspaces,
//! two-spin co-products, and N-spin chains, together with the Hamiltonians
//! whose asymmetry they probe.

mod chain;
mod coproduct;
mod fock;
mod qnum;

pub use chain::{
    chain_su2_generators, chain_suq2_generators, h_q, h_xxx, resolve_convention, BondConvention,
    ChainSpec, ConventionCandidate, ConventionReport, QStringDirection,
};
pub use coproduct::{coproduct_su2, coproduct_su2_casimir, coproduct_suq2, qcasimir_matrix};
pub use fock::{fock_qhamiltonian, fock_su2_generators, FockSubspaceSpec};
pub use qnum::{q_number, DeformationParam, GAMMA_TAYLOR_CUTOFF};
