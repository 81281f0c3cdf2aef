//! Two-mode Fock M-subspace: the (M+1)-dimensional span of |m₁, m₂⟩ with
//! m₁ + m₂ = M, carrying su(2) via J_+ = a†₁a₂, J_− = a†₂a₁,
//! J₃ = (N₁ − N₂)/2, and the q-deformed two-oscillator Hamiltonian
//! H′ = b†₁b₁ + b†₂b₂ = diag([m₁]_q + [m₂]_q).
//!
//! Basis ordering is fixed as m₁ ascending, 0..=M, so matrix examples are
//! reproducible entry for entry.

use num_complex::Complex64 as C64;

use super::qnum::q_number;
use crate::asymmetry::GeneratorSet;
use crate::operator::{DenseOperator, Operator};

/// The subspace of fixed total excitation number M ≥ 1; dimension M + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSubspaceSpec {
    pub total_excitation: usize,
}

impl FockSubspaceSpec {
    pub fn new(total_excitation: usize) -> Self {
        assert!(total_excitation >= 1, "Fock subspace needs M >= 1");
        Self { total_excitation }
    }

    pub fn dim(&self) -> usize {
        self.total_excitation + 1
    }
}

/// su(2) generators {J_+, J_−, J_3} on the M-subspace.
///
/// J_+|m₁, m₂⟩ = √((m₁+1)m₂)|m₁+1, m₂−1⟩, J_− = J_+†, and J_3 is diagonal
/// with entries (m₁ − m₂)/2.
pub fn fock_su2_generators(spec: FockSubspaceSpec) -> GeneratorSet {
    let m = spec.total_excitation;
    let dim = spec.dim();
    // Column m1 maps to row m1+1 with amplitude √((m1+1)·m2), m2 = M − m1.
    let j_plus = DenseOperator::from_fn(dim, |r, c| {
        if r == c + 1 {
            C64::new((((c + 1) * (m - c)) as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let j_minus = j_plus.adjoint();
    let j3_diag: Vec<C64> = (0..dim)
        .map(|m1| C64::new((m1 as f64 - (m - m1) as f64) / 2.0, 0.0))
        .collect();
    let j3 = DenseOperator::from_diag(&j3_diag);
    GeneratorSet::new(
        format!("su2-fock-M{m}"),
        0.0,
        vec![
            ("J_+".into(), Operator::Dense(j_plus)),
            ("J_-".into(), Operator::Dense(j_minus)),
            ("J_3".into(), Operator::Dense(j3)),
        ],
    )
    .expect("non-empty, same dimension")
}

/// The q-deformed Hamiltonian restricted to the M-subspace:
/// diagonal entries [m₁]_q + [M − m₁]_q.
///
/// At γ = 0 this is M·I, a scalar operator: asymmetry computations reject it.
pub fn fock_qhamiltonian(spec: FockSubspaceSpec, gamma: f64) -> DenseOperator {
    let m = spec.total_excitation;
    let diag: Vec<C64> = (0..=m)
        .map(|m1| {
            let m2 = (m - m1) as f64;
            C64::new(q_number(m1 as f64, gamma) + q_number(m2, gamma), 0.0)
        })
        .collect();
    DenseOperator::from_diag(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(set: &GeneratorSet, label: &str) -> DenseOperator {
        set.generators()
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, op)| op.to_dense().unwrap())
            .unwrap()
    }

    #[test]
    fn smallest_subspace_m1() {
        let set = fock_su2_generators(FockSubspaceSpec::new(1));
        let jp = gen(&set, "J_+");
        // |0,1⟩ → |1,0⟩ with amplitude 1.
        assert!((jp.entry(1, 0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(jp.entry(0, 1), C64::new(0.0, 0.0));
        let j3 = gen(&set, "J_3");
        assert!((j3.entry(0, 0).re + 0.5).abs() < 1e-15);
        assert!((j3.entry(1, 1).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn m2_matrix_element() {
        // J_+|1,1⟩ = √2 |2,0⟩.
        let set = fock_su2_generators(FockSubspaceSpec::new(2));
        let jp = gen(&set, "J_+");
        assert!((jp.entry(2, 1).re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn su2_commutation_relations_up_to_m6() {
        for m in 1..=6 {
            let set = fock_su2_generators(FockSubspaceSpec::new(m));
            let jp = gen(&set, "J_+");
            let jm = gen(&set, "J_-");
            let j3 = gen(&set, "J_3");
            // [J_+, J_−] = 2 J_3
            let c = jp.commutator(&jm).unwrap();
            let want = j3.scale(C64::new(2.0, 0.0));
            assert!(
                c.max_abs_diff(&want).unwrap() < 1e-12,
                "[J+,J-] != 2J3 at M={m}"
            );
            // [J_3, J_±] = ±J_±
            let cp = j3.commutator(&jp).unwrap();
            assert!(cp.max_abs_diff(&jp).unwrap() < 1e-12, "[J3,J+] != J+ at M={m}");
            let cm = j3.commutator(&jm).unwrap();
            assert!(
                cm.max_abs_diff(&jm.scale(C64::new(-1.0, 0.0))).unwrap() < 1e-12,
                "[J3,J-] != -J- at M={m}"
            );
        }
    }

    #[test]
    fn qhamiltonian_limits_and_values() {
        let spec = FockSubspaceSpec::new(2);
        // γ → 0: H' = M·I.
        let h0 = fock_qhamiltonian(spec, 0.0);
        for i in 0..3 {
            assert!((h0.entry(i, i).re - 2.0).abs() < 1e-15);
        }
        // M=2, γ=1: diag(2cosh1, 2, 2cosh1).
        let h1 = fock_qhamiltonian(spec, 1.0);
        let c = 2.0 * 1f64.cosh();
        assert!((h1.entry(0, 0).re - c).abs() < 1e-14);
        assert!((h1.entry(1, 1).re - 2.0).abs() < 1e-14);
        assert!((h1.entry(2, 2).re - c).abs() < 1e-14);
        assert!(h1.is_hermitian(0.0));
    }

    #[test]
    fn qhamiltonian_commutes_with_j3() {
        for m in 1..=5 {
            for g in [-2.0, -0.5, 0.7, 3.0] {
                let set = fock_su2_generators(FockSubspaceSpec::new(m));
                let j3 = gen(&set, "J_3");
                let h = fock_qhamiltonian(FockSubspaceSpec::new(m), g);
                assert!(
                    h.commutator(&j3).unwrap().max_abs() == 0.0,
                    "[H', J_3] != 0 at M={m}, γ={g}"
                );
            }
        }
    }
}
