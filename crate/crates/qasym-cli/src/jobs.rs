//! Model dispatch and sweep execution.
//!
//! A sweep evaluates the asymmetry on a γ grid for one or more parameter
//! values. Grid points are independent pure computations, so they run on a
//! worker pool; results are assembled in input order, which makes the output
//! byte-identical regardless of the thread count.

use qasym::asymmetry::{asymmetry, AsymmetryError, GeneratorSet};
use qasym::closed_form::{cf_chain, ChainSize, Variant};
use qasym::models::{
    chain_su2_generators, coproduct_su2, fock_qhamiltonian, fock_su2_generators, h_q,
    qcasimir_matrix, BondConvention, ChainSpec, FockSubspaceSpec, QStringDirection,
};
use qasym::operator::{Backend, Operator, PauliConvention};

use crate::emit::SweepRow;

/// Dense densification bound for `--backend auto`: dense while 2^N ≤ 4096.
pub const AUTO_DENSE_MAX_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    Dense,
    Tensor,
    Auto,
}

impl BackendChoice {
    pub fn for_chain(self, n_sites: usize) -> Backend {
        match self {
            BackendChoice::Dense => Backend::Dense,
            BackendChoice::Tensor => Backend::Tensor,
            BackendChoice::Auto => {
                let within = n_sites < usize::BITS as usize
                    && (1usize << n_sites) <= AUTO_DENSE_MAX_DIM;
                if within {
                    Backend::Dense
                } else {
                    Backend::Tensor
                }
            }
        }
    }
}

/// A chain parameter in a sweep: finite size or the thermodynamic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainParam {
    Finite(usize),
    Infinite,
}

impl ChainParam {
    pub fn parse(token: &str) -> Result<Self, String> {
        if token.eq_ignore_ascii_case("inf") {
            return Ok(ChainParam::Infinite);
        }
        let n: usize = token
            .parse()
            .map_err(|_| format!("bad chain size {token:?} (expected an integer or `inf`)"))?;
        if n < 2 {
            return Err(format!("chain size must be at least 2, got {n}"));
        }
        Ok(ChainParam::Finite(n))
    }

    pub fn label(&self) -> String {
        match self {
            ChainParam::Finite(n) => n.to_string(),
            ChainParam::Infinite => "inf".to_string(),
        }
    }
}

/// Everything needed to evaluate one sweep.
#[derive(Debug, Clone)]
pub enum SweepModel {
    Casimir,
    Fock {
        m: usize,
    },
    Chain {
        sizes: Vec<ChainParam>,
        pauli: PauliConvention,
        bonds: BondConvention,
        backend: BackendChoice,
        variant: Variant,
    },
}

/// Inclusive γ grid with `steps` points.
pub fn gamma_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// A single evaluation: the asymmetry value, or `None` where the operator is
/// scalar-degenerate (propagating every other error).
fn eval_or_degenerate(
    gens: &GeneratorSet,
    h: &Operator,
) -> Result<Option<f64>, AsymmetryError> {
    match asymmetry(gens, h) {
        Ok(rep) => Ok(Some(rep.total)),
        Err(AsymmetryError::ScalarOperator { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evaluate the whole sweep on a rayon pool of `threads` workers
/// (0 = rayon's default). Rows come back in deterministic param-major,
/// γ-ascending order; `footnotes` collects the degenerate-point notes.
pub fn run_sweep(
    model: &SweepModel,
    gammas: &[f64],
    threads: usize,
) -> Result<(Vec<SweepRow>, Vec<String>), String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| format!("thread pool: {e}"))?;
    let rows = pool.install(|| evaluate_points(model, gammas))?;
    let mut footnotes = Vec::new();
    if rows.iter().any(|r| r.asymmetry.is_none()) {
        footnotes.push(
            "rows with null asymmetry are scalar-degenerate points (the operator is \
             proportional to the identity there, e.g. the Fock model at gamma = 0), where the \
             asymmetry degree is a 0/0 form"
                .to_string(),
        );
    }
    Ok((rows, footnotes))
}

fn evaluate_points(model: &SweepModel, gammas: &[f64]) -> Result<Vec<SweepRow>, String> {
    use rayon::prelude::*;
    match model {
        SweepModel::Casimir => {
            let gens = coproduct_su2(PauliConvention::Half);
            gammas
                .par_iter()
                .map(|&g| {
                    let h = Operator::Dense(qcasimir_matrix(g));
                    let value = eval_or_degenerate(&gens, &h).map_err(|e| e.to_string())?;
                    Ok(SweepRow {
                        model: "casimir".into(),
                        param: "-".into(),
                        gamma: g,
                        asymmetry: value,
                        backend: "dense".into(),
                    })
                })
                .collect()
        }
        SweepModel::Fock { m } => {
            let spec = FockSubspaceSpec::new(*m);
            let gens = fock_su2_generators(spec);
            gammas
                .par_iter()
                .map(|&g| {
                    let h = Operator::Dense(fock_qhamiltonian(spec, g));
                    let value = eval_or_degenerate(&gens, &h).map_err(|e| e.to_string())?;
                    Ok(SweepRow {
                        model: "fock".into(),
                        param: m.to_string(),
                        gamma: g,
                        asymmetry: value,
                        backend: "dense".into(),
                    })
                })
                .collect()
        }
        SweepModel::Chain {
            sizes,
            pauli,
            bonds,
            backend,
            variant,
        } => {
            let mut rows = Vec::new();
            for size in sizes {
                match *size {
                    ChainParam::Infinite => {
                        let mut batch: Vec<SweepRow> = gammas
                            .par_iter()
                            .map(|&g| SweepRow {
                                model: "chain".into(),
                                param: "inf".into(),
                                gamma: g,
                                asymmetry: Some(cf_chain(ChainSize::Infinite, g, *variant)),
                                backend: "closed-form".into(),
                            })
                            .collect();
                        rows.append(&mut batch);
                    }
                    ChainParam::Finite(n) => {
                        // The string direction only enters su_q(2)
                        // generators, which a su(2) sweep never builds.
                        let spec =
                            ChainSpec::new(n, *pauli, *bonds, QStringDirection::InverseRight);
                        let chosen = backend.for_chain(n);
                        let gens = match chosen {
                            Backend::Tensor => chain_su2_generators(&spec),
                            Backend::Dense => chain_su2_generators(&spec)
                                .to_dense()
                                .map_err(|e| e.to_string())?,
                        };
                        let mut batch: Vec<SweepRow> = gammas
                            .par_iter()
                            .map(|&g| {
                                let ht = h_q(&spec, g);
                                let h = match chosen {
                                    Backend::Tensor => Operator::Tensor(ht),
                                    Backend::Dense => Operator::Dense(
                                        ht.to_dense().map_err(|e| e.to_string())?,
                                    ),
                                };
                                let value =
                                    eval_or_degenerate(&gens, &h).map_err(|e| e.to_string())?;
                                Ok(SweepRow {
                                    model: "chain".into(),
                                    param: n.to_string(),
                                    gamma: g,
                                    asymmetry: value,
                                    backend: chosen.label().into(),
                                })
                            })
                            .collect::<Result<Vec<_>, String>>()?;
                        rows.append(&mut batch);
                    }
                }
            }
            Ok(rows)
        }
    }
}
