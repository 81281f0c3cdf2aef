//! Closed-form asymmetry expressions for the built-in models, and machinery
//! for comparing them against the direct matrix computation.
//!
//! Each expression ships in two variants:
//!
//! * `AsWritten` — the closed form exactly as originally stated;
//! * `Corrected` — the form that actually matches the matrix oracle, with
//!   every correction recorded in [`variant_corrections`].
//!
//! The corrections, each established by the dense oracle in this crate's
//! test suite:
//!
//! * **Fock model**: the squared-difference denominator is cosh²(γ/2), not
//!   cosh²γ (from [m+1]_q − [m]_q = cosh(γ(m+1/2))/cosh(γ/2) · sinh-free
//!   form), and the norm² sum Σ([j]_q+[M−j]_q)² must include the j = 0 term.
//!   As written, the normalizer R can go negative (R → −4 as γ → 0 at M=2),
//!   which no squared norm can do.
//! * **Chain model**: under the resolved convention (full Pauli, open bonds)
//!   the matrix value is 8[(N−1)(coshγ−1)² + sinh²γ] /
//!   [(N−1)(2+cosh²γ) + 2sinh²γ]: N−1 bonds rather than N, boundary weights
//!   4× lighter relative to the bulk, and an overall factor 8. Under the
//!   half-Pauli/periodic reading the matrix value is instead exactly 2× the
//!   as-written formula, γ-independently.
//! * **Casimir model**: the as-written result 16(coshγ−1)/(3coshγ) is
//!   confirmed; the corrected variant is identical.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::asymmetry::{asymmetry, AsymmetryError};
use crate::models::{
    chain_su2_generators, coproduct_su2, fock_qhamiltonian, fock_su2_generators, h_q, q_number,
    qcasimir_matrix, ChainSpec, FockSubspaceSpec,
};
use crate::operator::{Operator, PauliConvention};

/// Which form of a closed-form expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    AsWritten,
    Corrected,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::AsWritten => "as-written",
            Variant::Corrected => "corrected",
        }
    }
}

/// The model families with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CfModel {
    Fock,
    Casimir,
    Chain,
}

/// Human-readable list of sub-expressions the corrected variant changes.
pub fn variant_corrections(model: CfModel, variant: Variant) -> &'static [&'static str] {
    match (model, variant) {
        (_, Variant::AsWritten) => &[],
        (CfModel::Fock, Variant::Corrected) => &[
            "squared-difference denominator cosh²γ → cosh²(γ/2)",
            "norm² sum Σ_j ([j]_q+[M−j]_q)² extended to include the j=0 term",
        ],
        (CfModel::Casimir, Variant::Corrected) => &[],
        (CfModel::Chain, Variant::Corrected) => &[
            "bond count N → N−1 (open chain)",
            "boundary terms weighted 1× (numerator) and 2× (denominator) instead of 4× and 8×",
            "overall scale ×8 (matches the resolved full-Pauli/open-bond convention)",
        ],
    }
}

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("Fock closed form needs M ≥ 2 (M = 1 is the scalar-degenerate subspace)")]
    FockSubspaceTooSmall,
    #[error("Fock closed form is undefined at γ = 0 (the operator is scalar there)")]
    GammaZero,
    #[error(transparent)]
    Asymmetry(#[from] AsymmetryError),
    #[error(transparent)]
    Op(#[from] crate::operator::OpError),
}

/// Closed-form asymmetry of the q-deformed two-oscillator Hamiltonian on the
/// Fock M-subspace with respect to su(2).
pub fn cf_fock(m: usize, gamma: f64, variant: Variant) -> Result<f64, ClosedFormError> {
    if m < 2 {
        return Err(ClosedFormError::FockSubspaceTooSmall);
    }
    if gamma == 0.0 {
        return Err(ClosedFormError::GammaZero);
    }
    let mf = m as f64;
    let denom_cosh = match variant {
        Variant::AsWritten => gamma.cosh(),
        Variant::Corrected => (0.5 * gamma).cosh(),
    };
    let numerator: f64 = (1..=m)
        .map(|j| {
            let jf = j as f64;
            let diff = (gamma * (mf - jf + 0.5)).cosh() - (gamma * (jf - 0.5)).cosh();
            jf * (mf + 1.0 - jf) * diff * diff
        })
        .sum::<f64>()
        / (denom_cosh * denom_cosh);
    let sum_start = match variant {
        Variant::AsWritten => 1, // misses the j=0 contribution [M]_q²
        Variant::Corrected => 0,
    };
    let norm_sq: f64 = (sum_start..=m)
        .map(|j| {
            let v = q_number(j as f64, gamma) + q_number((m - j) as f64, gamma);
            v * v
        })
        .sum::<f64>()
        - 4.0 * (1..=m).map(|j| q_number(j as f64, gamma)).sum::<f64>().powi(2) / (mf + 1.0);
    Ok(2.0 * numerator / norm_sq)
}

/// The as-written normalizer R of the Fock closed form; exposed because its
/// sign is the smoking gun (a squared norm cannot be negative, but R → −4 as
/// γ → 0 at M = 2).
pub fn fock_norm_sq_as_written(m: usize, gamma: f64) -> f64 {
    let mf = m as f64;
    (1..=m)
        .map(|j| {
            let v = q_number(j as f64, gamma) + q_number((m - j) as f64, gamma);
            v * v
        })
        .sum::<f64>()
        - 4.0 * (1..=m).map(|j| q_number(j as f64, gamma)).sum::<f64>().powi(2) / (mf + 1.0)
}

/// Closed-form asymmetry of the q-deformed Casimir with respect to the
/// co-product su(2): 16(coshγ − 1)/(3coshγ). Even in γ, zero at γ = 0,
/// saturating at 16/3 as |γ| → ∞. Confirmed as written.
pub fn cf_casimir(gamma: f64) -> f64 {
    16.0 * (gamma.cosh() - 1.0) / (3.0 * gamma.cosh())
}

/// Chain length parameter: a finite N or the thermodynamic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainSize {
    Finite(usize),
    Infinite,
}

/// Closed-form asymmetry of H_q with respect to the total-spin su(2)
/// generators.
///
/// `AsWritten`: [N(coshγ−1)² + 4sinh²γ] / [N(2+cosh²γ) + 8sinh²γ], with the
/// N → ∞ limit (coshγ−1)²/(cosh²γ+2).
///
/// `Corrected` (frozen from the dense oracle under the resolved convention,
/// N = 3..8, γ ∈ [0.25, 3], relative agreement ~1e-14):
/// 8[(N−1)(coshγ−1)² + sinh²γ] / [(N−1)(2+cosh²γ) + 2sinh²γ], with the
/// N → ∞ limit 8(coshγ−1)²/(cosh²γ+2).
pub fn cf_chain(n: ChainSize, gamma: f64, variant: Variant) -> f64 {
    let c = gamma.cosh();
    let s2 = gamma.sinh().powi(2);
    let a = (c - 1.0) * (c - 1.0);
    match (variant, n) {
        (Variant::AsWritten, ChainSize::Finite(n)) => {
            let nf = n as f64;
            (nf * a + 4.0 * s2) / (nf * (2.0 + c * c) + 8.0 * s2)
        }
        (Variant::AsWritten, ChainSize::Infinite) => a / (c * c + 2.0),
        (Variant::Corrected, ChainSize::Finite(n)) => {
            let bonds = (n - 1) as f64;
            8.0 * (bonds * a + s2) / (bonds * (2.0 + c * c) + 2.0 * s2)
        }
        (Variant::Corrected, ChainSize::Infinite) => 8.0 * a / (c * c + 2.0),
    }
}

/// Least-squares fit of oracle ≈ k·cf over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct RatioFit {
    /// Best-fit constant k minimizing Σ(oracle − k·cf)².
    pub ratio: f64,
    /// Relative RMS residual: ‖oracle − k·cf‖ / ‖oracle‖ over the grid.
    pub residual: f64,
}

pub fn fit_constant_ratio(oracle: &[f64], cf: &[f64]) -> RatioFit {
    let num: f64 = oracle.iter().zip(cf.iter()).map(|(o, c)| o * c).sum();
    let den: f64 = cf.iter().map(|c| c * c).sum();
    let ratio = if den > 0.0 { num / den } else { f64::NAN };
    let res_sq: f64 = oracle
        .iter()
        .zip(cf.iter())
        .map(|(o, c)| (o - ratio * c).powi(2))
        .sum();
    let oracle_sq: f64 = oracle.iter().map(|o| o * o).sum();
    let residual = if oracle_sq > 0.0 {
        (res_sq / oracle_sq).sqrt()
    } else {
        res_sq.sqrt()
    };
    RatioFit { ratio, residual }
}

/// One closed-form variant compared against the oracle over a γ grid.
#[derive(Debug, Clone, Serialize)]
pub struct VariantComparison {
    pub variant: Variant,
    pub corrections: Vec<String>,
    pub values: Vec<f64>,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub ratio_fit: RatioFit,
}

/// Oracle-vs-closed-form comparison for one model instance.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub model: String,
    pub params: BTreeMap<String, String>,
    pub gammas: Vec<f64>,
    /// Direct matrix asymmetry at each grid point.
    pub oracle: Vec<f64>,
    pub variants: Vec<VariantComparison>,
    /// Relative tolerance the corrected variant is required to meet, if this
    /// report participates in the verification gate (as-written mismatches
    /// are documented findings and never gate anything).
    pub corrected_gate: Option<f64>,
}

impl DiscrepancyReport {
    pub fn variant(&self, v: Variant) -> &VariantComparison {
        self.variants
            .iter()
            .find(|c| c.variant == v)
            .expect("both variants always present")
    }

    /// Does the corrected variant meet this report's gate (if any)?
    pub fn gate_passes(&self) -> bool {
        match self.corrected_gate {
            None => true,
            Some(tol) => self.variant(Variant::Corrected).max_rel_dev <= tol,
        }
    }
}

fn compare(
    model: CfModel,
    oracle: &[f64],
    gammas: &[f64],
    eval: impl Fn(f64, Variant) -> f64,
) -> Vec<VariantComparison> {
    [Variant::AsWritten, Variant::Corrected]
        .into_iter()
        .map(|variant| {
            let values: Vec<f64> = gammas.iter().map(|&g| eval(g, variant)).collect();
            let mut max_abs_dev: f64 = 0.0;
            let mut max_rel_dev: f64 = 0.0;
            for (o, v) in oracle.iter().zip(values.iter()) {
                let abs = (o - v).abs();
                max_abs_dev = max_abs_dev.max(abs);
                max_rel_dev = max_rel_dev.max(abs / o.abs().max(f64::MIN_POSITIVE));
            }
            VariantComparison {
                variant,
                corrections: variant_corrections(model, variant)
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                ratio_fit: fit_constant_ratio(oracle, &values),
                values,
                max_abs_dev,
                max_rel_dev,
            }
        })
        .collect()
}

/// Default verification grid: ≥ 20 points in γ ∈ [0.25, 3].
pub fn default_gamma_grid() -> Vec<f64> {
    let n = 21;
    (0..n)
        .map(|i| 0.25 + (3.0 - 0.25) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Relative tolerance the corrected variants must meet against the oracle.
pub const CORRECTED_GATE_REL: f64 = 1e-9;

/// Absolute tolerance for the confirmed Casimir formula.
pub const CASIMIR_GATE_ABS: f64 = 1e-10;

/// Compare both Fock closed-form variants against the dense oracle.
pub fn verify_fock(m: usize, gammas: &[f64]) -> Result<DiscrepancyReport, ClosedFormError> {
    let spec = FockSubspaceSpec::new(m);
    let gens = fock_su2_generators(spec);
    let mut oracle = Vec::with_capacity(gammas.len());
    for &g in gammas {
        let h = Operator::Dense(fock_qhamiltonian(spec, g));
        oracle.push(asymmetry(&gens, &h)?.total);
    }
    let variants = compare(CfModel::Fock, &oracle, gammas, |g, v| {
        cf_fock(m, g, v).unwrap_or(f64::NAN)
    });
    let mut params = BTreeMap::new();
    params.insert("M".to_string(), m.to_string());
    Ok(DiscrepancyReport {
        model: "fock".to_string(),
        params,
        gammas: gammas.to_vec(),
        oracle,
        variants,
        corrected_gate: Some(CORRECTED_GATE_REL),
    })
}

/// Compare the Casimir closed form against the dense oracle.
pub fn verify_casimir(gammas: &[f64]) -> Result<DiscrepancyReport, ClosedFormError> {
    let gens = coproduct_su2(PauliConvention::Half);
    let mut oracle = Vec::with_capacity(gammas.len());
    for &g in gammas {
        let h = Operator::Dense(qcasimir_matrix(g));
        oracle.push(asymmetry(&gens, &h)?.total);
    }
    let variants = compare(CfModel::Casimir, &oracle, gammas, |g, _| cf_casimir(g));
    Ok(DiscrepancyReport {
        model: "casimir".to_string(),
        params: BTreeMap::new(),
        gammas: gammas.to_vec(),
        oracle,
        variants,
        corrected_gate: Some(CORRECTED_GATE_REL),
    })
}

/// Compare both chain closed-form variants against the dense oracle under
/// the given convention.
///
/// Gated only when `spec` is the resolved convention (that is what the
/// corrected variant is frozen against); other conventions produce
/// informational reports — in particular the literal half/periodic reading,
/// whose oracle is a γ-independent 2× of the as-written formula.
pub fn verify_chain(spec: &ChainSpec, gammas: &[f64]) -> Result<DiscrepancyReport, ClosedFormError> {
    let gens = chain_su2_generators(spec).to_dense()?;
    let mut oracle = Vec::with_capacity(gammas.len());
    for &g in gammas {
        let h = Operator::Dense(h_q(spec, g).to_dense()?);
        oracle.push(asymmetry(&gens, &h)?.total);
    }
    let n = spec.n_sites;
    let variants = compare(CfModel::Chain, &oracle, gammas, |g, v| {
        cf_chain(ChainSize::Finite(n), g, v)
    });
    let mut params = BTreeMap::new();
    params.insert("N".to_string(), n.to_string());
    params.insert("convention".to_string(), spec.convention_label());
    let gated = *spec == ChainSpec::resolved(n);
    Ok(DiscrepancyReport {
        model: "chain".to_string(),
        params,
        gammas: gammas.to_vec(),
        oracle,
        variants,
        corrected_gate: gated.then_some(CORRECTED_GATE_REL),
    })
}

/// Run every model at dense-verifiable sizes on the default grid:
/// Casimir (101 points in [−5, 5]), Fock M = 2..6, chain N = 3..8 under both
/// the resolved and the literal conventions.
pub fn verify_all() -> Result<Vec<DiscrepancyReport>, ClosedFormError> {
    let mut reports = Vec::new();
    let casimir_grid: Vec<f64> = (0..101).map(|i| -5.0 + 0.1 * i as f64).collect();
    reports.push(verify_casimir(&casimir_grid)?);
    let grid = default_gamma_grid();
    for m in 2..=6 {
        reports.push(verify_fock(m, &grid)?);
    }
    for n in 3..=8 {
        reports.push(verify_chain(&ChainSpec::resolved(n), &grid)?);
        reports.push(verify_chain(&ChainSpec::literal(n), &grid)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_corrected_m2_is_constant_12() {
        for g in [0.1, 0.5, 1.0, 2.0, -0.7, -3.0] {
            let v = cf_fock(2, g, Variant::Corrected).unwrap();
            assert!((v - 12.0).abs() < 1e-9, "γ={g}: {v}");
        }
    }

    #[test]
    fn fock_as_written_normalizer_goes_negative() {
        // R → −4 as γ → 0 at M=2: the as-written normalizer is not a norm².
        let r = fock_norm_sq_as_written(2, 0.01);
        assert!(r < 0.0, "R = {r}");
        assert!((fock_norm_sq_as_written(2, 1e-6) + 4.0).abs() < 1e-3);
        // Consequently the as-written value is negative there.
        let v = cf_fock(2, 0.01, Variant::AsWritten).unwrap();
        assert!(v < 0.0, "as-written value {v}");
    }

    #[test]
    fn fock_rejects_degenerate_inputs() {
        assert!(matches!(
            cf_fock(1, 1.0, Variant::Corrected),
            Err(ClosedFormError::FockSubspaceTooSmall)
        ));
        assert!(matches!(
            cf_fock(3, 0.0, Variant::Corrected),
            Err(ClosedFormError::GammaZero)
        ));
    }

    #[test]
    fn casimir_formula_values() {
        assert_eq!(cf_casimir(0.0), 0.0);
        // 16(cosh1 − 1)/(3cosh1) = 1.8770438737926…
        assert!((cf_casimir(1.0) - 1.877043873792611).abs() < 1e-12);
        assert!((cf_casimir(1.0) - 1.87704).abs() < 1e-4);
    }

    #[test]
    fn casimir_even_monotone_bounded() {
        let mut prev = 0.0;
        for i in 0..=50 {
            let g = 0.1 * i as f64;
            let v = cf_casimir(g);
            assert!((v - cf_casimir(-g)).abs() < 1e-14);
            assert!(v >= prev - 1e-14, "not monotone at γ={g}");
            assert!(v < 16.0 / 3.0);
            prev = v;
        }
        // Saturates toward 16/3.
        assert!((cf_casimir(20.0) - 16.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn chain_zero_at_gamma_zero() {
        for n in [2, 3, 50] {
            for v in [Variant::AsWritten, Variant::Corrected] {
                assert_eq!(cf_chain(ChainSize::Finite(n), 0.0, v), 0.0);
            }
        }
        assert_eq!(cf_chain(ChainSize::Infinite, 0.0, Variant::AsWritten), 0.0);
    }

    #[test]
    fn chain_infinite_limit_value() {
        // (cosh2 − 1)²/(cosh²2 + 2) = 0.4723084097212…
        let v = cf_chain(ChainSize::Infinite, 2.0, Variant::AsWritten);
        assert!((v - 0.47230840972122345).abs() < 1e-12, "got {v}");
        assert!((v - 0.47229).abs() < 5e-4);
    }

    #[test]
    fn chain_finite_approaches_infinite() {
        for v in [Variant::AsWritten, Variant::Corrected] {
            for g in [0.5, 1.5, 3.0] {
                let inf = cf_chain(ChainSize::Infinite, g, v);
                let mut prev_gap = f64::INFINITY;
                for n in [10, 100, 1000, 10000] {
                    let gap = (cf_chain(ChainSize::Finite(n), g, v) - inf).abs();
                    assert!(gap < prev_gap, "gap not shrinking at N={n}");
                    assert!(
                        gap < 40.0 / n as f64,
                        "gap {gap} too large at N={n}, γ={g}"
                    );
                    prev_gap = gap;
                }
            }
        }
    }

    #[test]
    fn chain_triple_is_monotone_in_n_at_fixed_gamma() {
        // The N=3 / N=50 / N→∞ curves never cross: monotone in N at fixed γ
        // (direction flips with γ, matching the formula's c(c−4) factor).
        for v in [Variant::AsWritten, Variant::Corrected] {
            for i in 1..=30 {
                let g = 0.1 * i as f64;
                let a = cf_chain(ChainSize::Finite(3), g, v);
                let b = cf_chain(ChainSize::Finite(50), g, v);
                let c = cf_chain(ChainSize::Infinite, g, v);
                let increasing = a <= b + 1e-15 && b <= c + 1e-15;
                let decreasing = a >= b - 1e-15 && b >= c - 1e-15;
                assert!(increasing || decreasing, "not monotone at γ={g}: {a} {b} {c}");
            }
        }
    }

    #[test]
    fn closed_forms_are_even_in_gamma() {
        for g in [0.25, 0.8, 2.0, 4.5] {
            assert!((cf_casimir(g) - cf_casimir(-g)).abs() < 1e-13);
            for v in [Variant::AsWritten, Variant::Corrected] {
                assert!(
                    (cf_chain(ChainSize::Finite(5), g, v) - cf_chain(ChainSize::Finite(5), -g, v))
                        .abs()
                        < 1e-13
                );
                let f = cf_fock(4, g, v).unwrap();
                let fm = cf_fock(4, -g, v).unwrap();
                assert!((f - fm).abs() < 1e-10 * f.abs().max(1.0));
            }
        }
    }

    #[test]
    fn ratio_fit_recovers_exact_ratio() {
        let cf = [1.0, 2.0, 3.0, 4.0];
        let oracle: Vec<f64> = cf.iter().map(|v| 2.0 * v).collect();
        let fit = fit_constant_ratio(&oracle, &cf);
        assert!((fit.ratio - 2.0).abs() < 1e-15);
        assert!(fit.residual < 1e-15);
    }

    #[test]
    fn verify_casimir_confirms_formula() {
        let grid: Vec<f64> = (0..41).map(|i| -5.0 + 0.25 * i as f64).collect();
        let report = verify_casimir(&grid).unwrap();
        let asw = report.variant(Variant::AsWritten);
        assert!(asw.max_abs_dev < 1e-10, "max dev {}", asw.max_abs_dev);
        assert!(report.gate_passes());
    }

    #[test]
    fn verify_fock_m2_oracle_is_12_and_as_written_disagrees() {
        let grid = default_gamma_grid();
        let report = verify_fock(2, &grid).unwrap();
        for o in &report.oracle {
            assert!((o - 12.0).abs() < 1e-9, "oracle {o}");
        }
        assert!(report.variant(Variant::Corrected).max_rel_dev < 1e-9);
        assert!(
            report.variant(Variant::AsWritten).max_abs_dev > 1.0,
            "as-written should be wildly off"
        );
        assert!(report.gate_passes());
    }

    #[test]
    fn verify_chain_resolved_and_literal() {
        let grid = default_gamma_grid();
        for n in [3, 5] {
            let resolved = verify_chain(&ChainSpec::resolved(n), &grid).unwrap();
            assert!(resolved.variant(Variant::Corrected).max_rel_dev < 1e-9);
            assert!(resolved.gate_passes());

            let literal = verify_chain(&ChainSpec::literal(n), &grid).unwrap();
            let fit = &literal.variant(Variant::AsWritten).ratio_fit;
            assert!((fit.ratio - 2.0).abs() < 1e-10, "ratio {}", fit.ratio);
            assert!(fit.residual < 1e-6, "residual {}", fit.residual);
            assert!(literal.corrected_gate.is_none());
        }
    }
}
