//! Acceptance suite: every shipped claim, one test per criterion, each
//! printing a PASS line with the measured numbers (run with --nocapture to
//! see them). Tolerances are pinned here, not configurable.

use std::process::Command;
use std::time::Instant;

use qasym::asymmetry::{asymmetry, check_shift_invariance, check_unitary_invariance};
use qasym::closed_form::{
    cf_casimir, cf_chain, cf_fock, fit_constant_ratio, ChainSize, Variant,
};
use qasym::mesh::{deformed_sphere_mesh, implicit_residual, SurfaceSpec};
use qasym::models::{
    chain_su2_generators, coproduct_su2, coproduct_su2_casimir, fock_qhamiltonian,
    fock_su2_generators, h_q, qcasimir_matrix, resolve_convention, ChainSpec, FockSubspaceSpec,
};
use qasym::operator::{linalg, DenseOperator, Operator, PauliConvention, Scalar};
use qasym_cli::emit::sweep_from_csv;

fn chain_dense_asymmetry(n: usize, gamma: f64) -> f64 {
    let spec = ChainSpec::resolved(n);
    let gens = chain_su2_generators(&spec).to_dense().unwrap();
    let h = Operator::Dense(h_q(&spec, gamma).to_dense().unwrap());
    asymmetry(&gens, &h).unwrap().total
}

fn chain_tensor_asymmetry(n: usize, gamma: f64) -> f64 {
    let spec = ChainSpec::resolved(n);
    let gens = chain_su2_generators(&spec);
    let h = Operator::Tensor(h_q(&spec, gamma));
    asymmetry(&gens, &h).unwrap().total
}

#[test]
fn criterion_1_casimir_closed_form() {
    let gens = coproduct_su2(PauliConvention::Half);
    let start = Instant::now();
    let mut max_dev: f64 = 0.0;
    for i in 0..101 {
        let g = -5.0 + 0.1 * i as f64;
        let h = Operator::Dense(qcasimir_matrix(g));
        let a = asymmetry(&gens, &h).unwrap().total;
        max_dev = max_dev.max((a - cf_casimir(g)).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(max_dev < 1e-10, "max |oracle − formula| = {max_dev}");
    assert!(elapsed < 1.0, "101-point sweep took {elapsed}s");
    let at_one = asymmetry(&gens, &Operator::Dense(qcasimir_matrix(1.0)))
        .unwrap()
        .total;
    assert!((at_one - 1.877043873792611).abs() < 1e-12);
    assert!((at_one - 1.87704).abs() < 1e-4);
    println!(
        "[criterion 1] PASS — Casimir formula 16(coshγ−1)/(3coshγ) confirmed over 101 points \
         in [−5,5]: max dev {max_dev:.3e}, {elapsed:.3}s, A(γ=1) = {at_one:.6}"
    );
}

#[test]
fn criterion_2_fock_oracle_constant_12_and_corrected_form() {
    // Oracle at M = 2 is the constant 12 for every γ ≠ 0.
    let spec = FockSubspaceSpec::new(2);
    let gens = fock_su2_generators(spec);
    let mut max_dev: f64 = 0.0;
    for i in 1..=12 {
        for sign in [1.0, -1.0] {
            let g = sign * 0.25 * i as f64;
            let h = Operator::Dense(fock_qhamiltonian(spec, g));
            let a = asymmetry(&gens, &h).unwrap().total;
            max_dev = max_dev.max((a - 12.0).abs());
        }
    }
    assert!(max_dev < 1e-9, "M=2 oracle deviates from 12 by {max_dev}");

    // The as-written closed form disagrees with that oracle (the documented
    // discrepancy: its γ-dependent curve is not reproducible from matrices).
    let asw = cf_fock(2, 1.0, Variant::AsWritten).unwrap();
    assert!(
        (asw - 12.0).abs() > 1.0,
        "as-written unexpectedly matches: {asw}"
    );

    // The corrected form matches the oracle for M ≤ 6.
    let mut max_rel: f64 = 0.0;
    for m in 2..=6 {
        let spec = FockSubspaceSpec::new(m);
        let gens = fock_su2_generators(spec);
        for i in 1..=12 {
            for sign in [1.0, -1.0] {
                let g = sign * 0.25 * i as f64;
                let h = Operator::Dense(fock_qhamiltonian(spec, g));
                let oracle = asymmetry(&gens, &h).unwrap().total;
                let cf = cf_fock(m, g, Variant::Corrected).unwrap();
                max_rel = max_rel.max((oracle - cf).abs() / oracle);
            }
        }
    }
    assert!(max_rel < 1e-9, "corrected form off by rel {max_rel}");
    println!(
        "[criterion 2] PASS — Fock oracle: A(M=2) = 12 within {max_dev:.3e}; as-written value \
         at γ=1 is {asw:.4} (documented discrepancy); corrected form matches oracle for \
         M ≤ 6 within rel {max_rel:.3e}"
    );
}

#[test]
fn criterion_3_chain_symmetry_restoration() {
    let mut worst_small: f64 = 0.0;
    for n in 2..=8 {
        let at_zero = chain_tensor_asymmetry(n, 0.0);
        assert!(
            at_zero.abs() < 1e-12,
            "A != 0 at γ=0, N={n}: {at_zero}"
        );
        let at_zero_dense = chain_dense_asymmetry(n, 0.0);
        assert!(at_zero_dense.abs() < 1e-12);

        let small = chain_tensor_asymmetry(n, 1e-4);
        assert!(small < 1e-7, "A(γ=1e-4) = {small} at N={n}");
        worst_small = worst_small.max(small);
    }
    println!(
        "[criterion 3] PASS — A(su(2), H_q) is exactly 0 at γ=0 (N ≤ 8) and at γ=1e-4 stays \
         below 1e-7 (worst {worst_small:.3e})"
    );
}

#[test]
fn criterion_4_suq2_symmetry_of_h_q() {
    let mut norms = Vec::new();
    for n in [3, 4, 5] {
        let report = resolve_convention(n, 1.0, 1e-10);
        assert!(
            !report.winners.is_empty(),
            "no symmetric convention found at N={n}: {:?}",
            report
                .candidates
                .iter()
                .map(|c| (c.spec.convention_label(), c.max_commutator_norm))
                .collect::<Vec<_>>()
        );
        // The frozen convention is the (unique) winner.
        assert_eq!(report.winners, vec![ChainSpec::resolved(n)]);
        let winner_norm = report
            .candidates
            .iter()
            .find(|c| c.spec == ChainSpec::resolved(n))
            .unwrap()
            .max_commutator_norm;
        assert!(winner_norm < 1e-10);
        norms.push(format!("N={n}: {winner_norm:.2e}"));
    }
    println!(
        "[criterion 4] PASS — resolve_convention finds exactly full/open/inverse-right \
         symmetric at γ=1 (max ‖[H_q, J'_α]‖: {})",
        norms.join(", ")
    );
}

#[test]
fn criterion_5_chain_closed_form() {
    let grid: Vec<f64> = (0..21).map(|i| 0.25 + (3.0 - 0.25) * i as f64 / 20.0).collect();

    // Corrected variant vs the dense oracle under the resolved convention.
    let mut max_rel: f64 = 0.0;
    for n in 3..=8 {
        for &g in &grid {
            let oracle = chain_dense_asymmetry(n, g);
            let cf = cf_chain(ChainSize::Finite(n), g, Variant::Corrected);
            max_rel = max_rel.max((oracle - cf).abs() / oracle);
        }
    }
    assert!(max_rel < 1e-9, "corrected vs oracle rel dev {max_rel}");

    // Under the literal half-Pauli/periodic reading the oracle is a
    // γ-independent constant multiple of the as-written formula: the
    // normalization discrepancy is exactly 2.
    let mut worst_residual: f64 = 0.0;
    let mut ratios = Vec::new();
    for n in 3..=8 {
        let spec = ChainSpec::literal(n);
        let gens = chain_su2_generators(&spec).to_dense().unwrap();
        let oracle: Vec<f64> = grid
            .iter()
            .map(|&g| {
                let h = Operator::Dense(h_q(&spec, g).to_dense().unwrap());
                asymmetry(&gens, &h).unwrap().total
            })
            .collect();
        let as_written: Vec<f64> = grid
            .iter()
            .map(|&g| cf_chain(ChainSize::Finite(n), g, Variant::AsWritten))
            .collect();
        let fit = fit_constant_ratio(&oracle, &as_written);
        assert!(
            fit.residual < 1e-6,
            "ratio not γ-independent at N={n}: residual {}",
            fit.residual
        );
        assert!((fit.ratio - 2.0).abs() < 1e-9, "ratio {}", fit.ratio);
        worst_residual = worst_residual.max(fit.residual);
        ratios.push(fit.ratio);
    }

    // The thermodynamic-limit formula agrees with N = 10⁴ evaluation.
    for v in [Variant::AsWritten, Variant::Corrected] {
        for &g in &grid {
            let inf = cf_chain(ChainSize::Infinite, g, v);
            let big = cf_chain(ChainSize::Finite(10_000), g, v);
            assert!(
                (inf - big).abs() < 1e-3,
                "limit mismatch at γ={g}: {inf} vs {big}"
            );
        }
    }
    println!(
        "[criterion 5] PASS — corrected chain form matches the dense oracle for N=3..8 within \
         rel {max_rel:.3e}; under the half/periodic reading oracle = {:.12}×as-written \
         (γ-independent, residual ≤ {worst_residual:.3e}); N→∞ formula matches N=10⁴ within 1e-3",
        ratios[0]
    );
}

#[test]
fn criterion_6_property_suite() {
    let lambdas = [-3.0, 1.0, 7.5];
    let theta = Scalar::new(0.0, 0.7);
    let mut checked = 0usize;

    // (generator set, operator, commuting Hermitian generator of a unitary).
    let mut cases: Vec<(qasym::GeneratorSet, Operator, DenseOperator, String)> = Vec::new();
    for m in 2..=6 {
        let spec = FockSubspaceSpec::new(m);
        let gens = fock_su2_generators(spec);
        let h = Operator::Dense(fock_qhamiltonian(spec, 1.0));
        // Casimir of the Fock representation: J_3² + (J_+J_− + J_−J_+)/2.
        let g = |i: usize| gens.generators()[i].1.to_dense().unwrap();
        let (jp, jm, j3) = (g(0), g(1), g(2));
        let casimir = j3
            .mul(&j3)
            .unwrap()
            .add(
                &jp.mul(&jm)
                    .unwrap()
                    .add(&jm.mul(&jp).unwrap())
                    .unwrap()
                    .scale(Scalar::new(0.5, 0.0)),
            )
            .unwrap();
        cases.push((gens, h, casimir, format!("fock M={m}")));
    }
    {
        let gens = coproduct_su2(PauliConvention::Half);
        let h = Operator::Dense(qcasimir_matrix(1.0));
        let casimir = coproduct_su2_casimir(PauliConvention::Half);
        cases.push((gens, h, casimir, "casimir".into()));
    }
    for n in 3..=6 {
        let spec = ChainSpec::resolved(n);
        let gens = chain_su2_generators(&spec).to_dense().unwrap();
        let h = Operator::Dense(h_q(&spec, 1.0).to_dense().unwrap());
        let g = |i: usize| gens.generators()[i].1.to_dense().unwrap();
        let (jp, jm, j3) = (g(0), g(1), g(2));
        let casimir = j3
            .mul(&j3)
            .unwrap()
            .add(
                &jp.mul(&jm)
                    .unwrap()
                    .add(&jm.mul(&jp).unwrap())
                    .unwrap()
                    .scale(Scalar::new(0.5, 0.0)),
            )
            .unwrap();
        cases.push((gens, h, casimir, format!("chain N={n}")));
    }

    for (gens, h, casimir, label) in &cases {
        let rep = asymmetry(gens, h).unwrap();
        // Nonnegativity and per-generator decomposition.
        assert!(rep.total >= 0.0, "{label}: negative asymmetry");
        for (_, v) in &rep.per_generator {
            assert!(*v >= 0.0);
        }
        assert!(
            rep.decomposition_residual() < 1e-12,
            "{label}: decomposition residual {}",
            rep.decomposition_residual()
        );
        // Shift invariance.
        assert!(
            check_shift_invariance(gens, h, &lambdas).unwrap(),
            "{label}: shift invariance failed"
        );
        // Unitary invariance under exp(iθ·Casimir) and a global phase.
        let t = Operator::Dense(linalg::exp_hermitian(casimir, theta));
        assert!(
            check_unitary_invariance(gens, h, &t).unwrap(),
            "{label}: unitary invariance failed"
        );
        let dim = h.to_dense().unwrap().dim();
        let phase = Operator::Dense(
            DenseOperator::identity(dim).scale(Scalar::new(0.0, 0.4).exp()),
        );
        assert!(check_unitary_invariance(gens, h, &phase).unwrap());
        checked += 1;
    }

    // γ-evenness on every deformed family, A(γ) = A(−γ) over ±{0.25..5}.
    let mut max_even_dev: f64 = 0.0;
    for i in 1..=20 {
        let g = 0.25 * i as f64;
        for m in 2..=6 {
            let spec = FockSubspaceSpec::new(m);
            let gens = fock_su2_generators(spec);
            let a = |gg: f64| {
                asymmetry(&gens, &Operator::Dense(fock_qhamiltonian(spec, gg)))
                    .unwrap()
                    .total
            };
            max_even_dev = max_even_dev.max((a(g) - a(-g)).abs());
        }
        {
            let gens = coproduct_su2(PauliConvention::Half);
            let a = |gg: f64| {
                asymmetry(&gens, &Operator::Dense(qcasimir_matrix(gg)))
                    .unwrap()
                    .total
            };
            max_even_dev = max_even_dev.max((a(g) - a(-g)).abs());
        }
        for n in [3, 6, 8] {
            let diff = (chain_tensor_asymmetry(n, g) - chain_tensor_asymmetry(n, -g)).abs();
            max_even_dev = max_even_dev.max(diff);
        }
    }
    assert!(max_even_dev < 1e-10, "evenness violated: {max_even_dev}");

    println!(
        "[criterion 6] PASS — nonnegativity, per-generator decomposition (<1e-12), shift \
         invariance (λ ∈ {{−3, 1, 7.5}}, <1e-10), unitary g-commuting conjugation invariance \
         (<1e-9) on {checked} models; γ-evenness within {max_even_dev:.3e}"
    );
}

#[test]
fn criterion_7_backend_equivalence_and_scaling() {
    let mut max_rel: f64 = 0.0;
    for n in 2..=10 {
        let dense = chain_dense_asymmetry(n, 1.0);
        let tensor = chain_tensor_asymmetry(n, 1.0);
        let rel = (dense - tensor).abs() / dense.abs();
        max_rel = max_rel.max(rel);
    }
    assert!(max_rel < 1e-10, "backend disagreement rel {max_rel}");

    let start = Instant::now();
    let value = chain_tensor_asymmetry(100, 1.0);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "N=100 took {elapsed}s");
    assert!(value.is_finite() && value > 0.0);
    println!(
        "[criterion 7] PASS — tensor and dense backends agree for H_q, N ≤ 10, within rel \
         {max_rel:.3e}; N=100 tensor asymmetry = {value:.9} in {elapsed:.3}s (< 10s)"
    );
}

#[test]
fn criterion_8_mesh_validity() {
    let radius = 1.0;
    for gamma in [0.0, 1.0, 2.0, 5.0] {
        let spec = SurfaceSpec::new(gamma, radius, 40, 48).unwrap();
        let mesh = deformed_sphere_mesh(&spec);
        // Vertex residuals.
        let bound = 1e-8 * radius * radius;
        for v in &mesh.vertices {
            let r = implicit_residual(*v, &spec).abs();
            assert!(r < bound, "γ={gamma}: residual {r}");
        }
        // Watertight.
        assert_eq!(
            mesh.boundary_edge_violations(),
            0,
            "γ={gamma}: not watertight"
        );
        // z → −z symmetry.
        for v in &mesh.vertices {
            let found = mesh.vertices.iter().any(|w| {
                (v[0] - w[0]).abs() < 1e-12
                    && (v[1] - w[1]).abs() < 1e-12
                    && (v[2] + w[2]).abs() < 1e-12
            });
            assert!(found, "γ={gamma}: no mirror of {v:?}");
        }
        // γ = 0 is the round sphere.
        if gamma == 0.0 {
            for v in &mesh.vertices {
                let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                assert!((r - radius).abs() < 1e-10);
            }
        }
    }
    println!(
        "[criterion 8] PASS — meshes at γ ∈ {{0, 1, 2, 5}}: all vertex residuals < 1e-8·r², \
         watertight, z→−z symmetric; γ=0 reduces to the round sphere within 1e-10"
    );
}

#[test]
fn criterion_9_sweep_csv_curve_shapes() {
    let path = {
        let mut p = std::env::temp_dir();
        p.push(format!("qasym-acceptance-fig3-{}.csv", std::process::id()));
        p
    };
    let out = Command::new(env!("CARGO_BIN_EXE_qasym"))
        .args([
            "sweep",
            "--model",
            "chain",
            "--N",
            "3,50,inf",
            "--gamma-min",
            "-3",
            "--gamma-max",
            "3",
            "--steps",
            "61",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "sweep failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = sweep_from_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(rows.len(), 3 * 61);

    for param in ["3", "50", "inf"] {
        let curve: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.param == param)
            .map(|r| (r.gamma, r.asymmetry.expect("no degenerate points here")))
            .collect();
        assert_eq!(curve.len(), 61);
        // Even in γ.
        for (g, v) in &curve {
            let (_, mirror) = curve
                .iter()
                .find(|(g2, _)| (g + g2).abs() < 1e-12)
                .unwrap();
            assert!((v - mirror).abs() < 1e-10, "N={param}: not even at γ={g}");
        }
        // Zero at γ = 0.
        let at_zero = curve.iter().find(|(g, _)| *g == 0.0).unwrap().1;
        assert!(at_zero.abs() < 1e-12, "N={param}: A(0) = {at_zero}");
        // Monotone non-decreasing in |γ|, with shrinking late increments
        // (saturation).
        let positive: Vec<f64> = curve
            .iter()
            .filter(|(g, _)| *g >= 0.0)
            .map(|(_, v)| *v)
            .collect();
        let mut max_step: f64 = 0.0;
        for w in positive.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "N={param}: not monotone");
            max_step = max_step.max(w[1] - w[0]);
        }
        let tail_step = positive[positive.len() - 1] - positive[positive.len() - 2];
        assert!(
            tail_step < 0.5 * max_step,
            "N={param}: no saturation (tail step {tail_step}, max {max_step})"
        );
    }
    println!(
        "[criterion 9] PASS — sweep CSV for N ∈ {{3, 50, ∞}} over [−3, 3]: all three curves \
         even, zero at γ=0, monotone in |γ| with shrinking late increments"
    );
}
