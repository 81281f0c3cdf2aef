//! `qasym` — asymmetry degrees of operators with respect to su(2)/su_q(2)
//! generator representations: single computations, γ-sweeps, closed-form
//! verification reports, deformed-sphere mesh export, and tensor-backend
//! benchmarks.
//!
//! Exit codes: 0 ok, 2 usage, 3 scalar-degenerate operator, 4 I/O,
//! 5 verification failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qasym::asymmetry::{asymmetry, AsymmetryError, DEFAULT_SYMMETRY_TOL};
use qasym::closed_form::{cf_chain, ChainSize, Variant};
use qasym::mesh::{deformed_sphere_mesh, SurfaceSpec};
use qasym::models::{
    chain_su2_generators, coproduct_su2, fock_qhamiltonian, fock_su2_generators, h_q,
    qcasimir_matrix, resolve_convention, BondConvention, ChainSpec, FockSubspaceSpec,
    QStringDirection,
};
use qasym::operator::{Backend, Operator, PauliConvention};

use qasym_cli::emit::{mesh_to_csv, mesh_to_obj, sweep_to_csv, sweep_to_json};
use qasym_cli::jobs::{gamma_grid, run_sweep, BackendChoice, ChainParam, SweepModel};

#[derive(Parser)]
#[command(
    name = "qasym",
    version,
    about = "Algebraic asymmetry degrees of su(2)/su_q(2) model Hamiltonians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single asymmetry value and print it as JSON.
    Compute(ComputeArgs),
    /// Evaluate an asymmetry over a γ grid and write CSV or JSON.
    Sweep(SweepArgs),
    /// Compare closed forms against the matrix oracle for all models.
    Verify(VerifyArgs),
    /// Export a deformed-sphere mesh (OBJ or CSV point cloud).
    Mesh(MeshArgs),
    /// Time the tensor backend on long chains.
    Bench(BenchArgs),
    /// List the built-in models and the resolved chain convention.
    Models,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelId {
    Fock,
    Casimir,
    Chain,
    ChainInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Dense,
    Tensor,
    Auto,
}

impl From<BackendArg> for BackendChoice {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Dense => BackendChoice::Dense,
            BackendArg::Tensor => BackendChoice::Tensor,
            BackendArg::Auto => BackendChoice::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PauliArg {
    Half,
    Full,
}

impl From<PauliArg> for PauliConvention {
    fn from(p: PauliArg) -> Self {
        match p {
            PauliArg::Half => PauliConvention::Half,
            PauliArg::Full => PauliConvention::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BondsArg {
    Open,
    Periodic,
}

impl From<BondsArg> for BondConvention {
    fn from(b: BondsArg) -> Self {
        match b {
            BondsArg::Open => BondConvention::Open,
            BondsArg::Periodic => BondConvention::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    AsWritten,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AsWritten => Variant::AsWritten,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    model: ModelId,
    /// Deformation parameter γ = log q.
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    /// Fock total excitation number (fock model).
    #[arg(long = "M", short = 'M')]
    m: Option<usize>,
    /// Chain length (chain model).
    #[arg(long = "N", short = 'N')]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    backend: BackendArg,
    #[arg(long, value_enum, default_value = "full")]
    pauli: PauliArg,
    #[arg(long, value_enum, default_value = "open")]
    bonds: BondsArg,
    /// Closed-form variant (chain-inf model).
    #[arg(long, value_enum, default_value = "corrected")]
    variant: VariantArg,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    model: ModelId,
    #[arg(long = "M", short = 'M')]
    m: Option<usize>,
    /// Comma-separated chain sizes; `inf` selects the closed-form limit
    /// curve (e.g. `--N 3,50,inf`).
    #[arg(long = "N", short = 'N', value_delimiter = ',')]
    n: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    gamma_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    gamma_max: f64,
    /// Number of grid points (inclusive endpoints, ≥ 2).
    #[arg(long, default_value = "61")]
    steps: usize,
    #[arg(long, value_enum, default_value = "auto")]
    backend: BackendArg,
    #[arg(long, value_enum, default_value = "full")]
    pauli: PauliArg,
    #[arg(long, value_enum, default_value = "open")]
    bonds: BondsArg,
    /// Closed-form variant used for `inf` rows.
    #[arg(long, value_enum, default_value = "corrected")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (0 = all cores); env ASYM_THREADS is the fallback.
    /// Values are bitwise independent of the thread count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Write the full JSON reports here (the human summary always prints).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative tolerance the corrected variants must meet.
    #[arg(long, default_value = "1e-9")]
    tol: f64,
}

#[derive(Args)]
struct MeshArgs {
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value = "1.0")]
    radius: f64,
    /// Height samples including poles.
    #[arg(long, default_value = "64")]
    nz: usize,
    /// Azimuthal samples per ring.
    #[arg(long, default_value = "96")]
    nphi: usize,
    #[arg(long, value_enum, default_value = "obj")]
    format: MeshFormat,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeshFormat {
    Obj,
    Csv,
}

#[derive(Args)]
struct BenchArgs {
    /// Chain sizes to time.
    #[arg(long, value_delimiter = ',', default_value = "10,50,100,200")]
    sizes: Vec<usize>,
    #[arg(long, default_value = "1.0", allow_hyphen_values = true)]
    gamma: f64,
    /// Wall-time bound asserted for N = 100 (seconds).
    #[arg(long, default_value = "10.0")]
    budget: f64,
}

enum CliError {
    Usage(String),
    ScalarDegenerate(String),
    Io(String),
    VerificationFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ScalarDegenerate(_) => 3,
            CliError::Io(_) => 4,
            CliError::VerificationFailed(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::ScalarDegenerate(m)
            | CliError::Io(m)
            | CliError::VerificationFailed(m) => m,
        }
    }
}

impl From<AsymmetryError> for CliError {
    fn from(e: AsymmetryError) -> Self {
        match e {
            AsymmetryError::ScalarOperator { .. } => CliError::ScalarDegenerate(format!(
                "{e}; this happens at q = 1 (gamma = 0) or on the M = 1 Fock subspace, \
                 where the Hamiltonian is a multiple of the identity"
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Models => cmd_models(),
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn chain_spec(n: usize, pauli: PauliArg, bonds: BondsArg) -> ChainSpec {
    ChainSpec::new(
        n,
        pauli.into(),
        bonds.into(),
        QStringDirection::InverseRight,
    )
}

fn cmd_compute(args: ComputeArgs) -> Result<(), CliError> {
    let gamma = args.gamma;
    let report = match args.model {
        ModelId::Casimir => {
            let gens = coproduct_su2(PauliConvention::Half);
            let h = Operator::Dense(qcasimir_matrix(gamma));
            let rep = asymmetry(&gens, &h)?;
            serde_json::json!({
                "model": "casimir",
                "params": {},
                "gamma": gamma,
                "value": rep.total,
                "per_generator": rep.per_generator,
                "norm_sq_traceless": rep.norm_sq_traceless,
                "backend": rep.backend,
                "convention": { "pauli": "half" },
            })
        }
        ModelId::Fock => {
            let m = args
                .m
                .ok_or_else(|| CliError::Usage("fock model needs --M".into()))?;
            if m < 1 {
                return Err(CliError::Usage("--M must be at least 1".into()));
            }
            let spec = FockSubspaceSpec::new(m);
            let gens = fock_su2_generators(spec);
            let h = Operator::Dense(fock_qhamiltonian(spec, gamma));
            let rep = asymmetry(&gens, &h)?;
            serde_json::json!({
                "model": "fock",
                "params": { "M": m },
                "gamma": gamma,
                "value": rep.total,
                "per_generator": rep.per_generator,
                "norm_sq_traceless": rep.norm_sq_traceless,
                "backend": rep.backend,
                "convention": { "basis": "m1 ascending" },
            })
        }
        ModelId::Chain => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("chain model needs --N".into()))?;
            if n < 2 {
                return Err(CliError::Usage("--N must be at least 2".into()));
            }
            let spec = chain_spec(n, args.pauli, args.bonds);
            let backend = BackendChoice::from(args.backend).for_chain(n);
            let gens = match backend {
                Backend::Tensor => chain_su2_generators(&spec),
                Backend::Dense => chain_su2_generators(&spec)
                    .to_dense()
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            };
            let ht = h_q(&spec, gamma);
            let h = match backend {
                Backend::Tensor => Operator::Tensor(ht),
                Backend::Dense => Operator::Dense(
                    ht.to_dense().map_err(|e| CliError::Usage(e.to_string()))?,
                ),
            };
            let rep = asymmetry(&gens, &h)?;
            serde_json::json!({
                "model": "chain",
                "params": { "N": n },
                "gamma": gamma,
                "value": rep.total,
                "per_generator": rep.per_generator,
                "norm_sq_traceless": rep.norm_sq_traceless,
                "backend": rep.backend,
                "convention": {
                    "pauli": spec.pauli.label(),
                    "bonds": spec.bonds.label(),
                },
            })
        }
        ModelId::ChainInf => {
            let variant: Variant = args.variant.into();
            serde_json::json!({
                "model": "chain-inf",
                "params": { "variant": variant.label() },
                "gamma": gamma,
                "value": cf_chain(ChainSize::Infinite, gamma, variant),
                "per_generator": [],
                "norm_sq_traceless": null,
                "backend": "closed-form",
                "convention": { "variant": variant.label() },
            })
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("json serializable")
    );
    Ok(())
}

fn threads_from(args_threads: Option<usize>) -> usize {
    args_threads
        .or_else(|| {
            std::env::var("ASYM_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    if args.gamma_min >= args.gamma_max || args.gamma_min.is_nan() || args.gamma_max.is_nan() {
        return Err(CliError::Usage(
            "--gamma-min must be strictly below --gamma-max".into(),
        ));
    }
    let model = match args.model {
        ModelId::Casimir => SweepModel::Casimir,
        ModelId::Fock => {
            let m = args
                .m
                .ok_or_else(|| CliError::Usage("fock sweep needs --M".into()))?;
            if m < 1 {
                return Err(CliError::Usage("--M must be at least 1".into()));
            }
            SweepModel::Fock { m }
        }
        ModelId::Chain | ModelId::ChainInf => {
            let tokens = match args.model {
                ModelId::ChainInf => vec!["inf".to_string()],
                _ => args
                    .n
                    .clone()
                    .ok_or_else(|| CliError::Usage("chain sweep needs --N".into()))?,
            };
            let sizes = tokens
                .iter()
                .map(|t| ChainParam::parse(t))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Usage)?;
            SweepModel::Chain {
                sizes,
                pauli: args.pauli.into(),
                bonds: args.bonds.into(),
                backend: args.backend.into(),
                variant: args.variant.into(),
            }
        }
    };
    let grid = gamma_grid(args.gamma_min, args.gamma_max, args.steps);
    let threads = threads_from(args.threads);
    let (rows, footnotes) = run_sweep(&model, &grid, threads).map_err(CliError::Usage)?;
    let contents = match args.format {
        TableFormat::Csv => sweep_to_csv(&rows),
        TableFormat::Json => {
            let job = serde_json::json!({
                "model": match args.model {
                    ModelId::Fock => "fock",
                    ModelId::Casimir => "casimir",
                    ModelId::Chain => "chain",
                    ModelId::ChainInf => "chain-inf",
                },
                "gamma_min": args.gamma_min,
                "gamma_max": args.gamma_max,
                "steps": args.steps,
            });
            let doc = sweep_to_json(job, &rows, &footnotes);
            let mut s = serde_json::to_string_pretty(&doc).expect("json serializable");
            s.push('\n');
            s
        }
    };
    write_file(&args.out, &contents)?;
    eprintln!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let reports = qasym::closed_form::verify_all()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut failures = Vec::new();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        let asw = r.variant(Variant::AsWritten);
        let cor = r.variant(Variant::Corrected);
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let label = format!("{} {}", r.model, params.join(" "));
        let gate = match r.corrected_gate {
            Some(_) => {
                let pass = cor.max_rel_dev <= args.tol;
                if !pass {
                    failures.push(format!("{label}: corrected rel dev {}", cor.max_rel_dev));
                }
                if pass {
                    "PASS"
                } else {
                    "FAIL"
                }
            }
            None => "INFO",
        };
        writeln!(
            out,
            "[{gate}] {label}\n       corrected: max rel dev {:.3e}   as-written: max |dev| {:.3e}, best-fit ratio {:.12} (residual {:.3e})",
            cor.max_rel_dev, asw.max_abs_dev, asw.ratio_fit.ratio, asw.ratio_fit.residual
        )
        .ok();
    }
    let all_pass = failures.is_empty();
    writeln!(
        out,
        "{}: {} reports, corrected-variant gate {}",
        if all_pass { "ok" } else { "FAILED" },
        reports.len(),
        if all_pass { "passed" } else { "failed" }
    )
    .ok();
    drop(out);
    if let Some(path) = &args.out {
        let doc = serde_json::to_string_pretty(&reports).expect("json serializable");
        write_file(path, &format!("{doc}\n"))?;
        eprintln!("wrote {} reports to {}", reports.len(), path.display());
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "corrected closed forms disagree with the matrix oracle: {}",
            failures.join("; ")
        )))
    }
}

fn cmd_mesh(args: MeshArgs) -> Result<(), CliError> {
    let spec = SurfaceSpec::new(args.gamma, args.radius, args.nz, args.nphi)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mesh = deformed_sphere_mesh(&spec);
    let contents = match args.format {
        MeshFormat::Obj => mesh_to_obj(
            &mesh,
            &format!(
                "deformed sphere: gamma={} radius={} nz={} nphi={}",
                args.gamma, args.radius, args.nz, args.nphi
            ),
        ),
        MeshFormat::Csv => mesh_to_csv(&mesh),
    };
    write_file(&args.out, &contents)?;
    eprintln!(
        "wrote {} vertices / {} faces to {}",
        mesh.vertex_count(),
        mesh.face_count(),
        args.out.display()
    );
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    println!("tensor-backend asymmetry of H_q w.r.t. su(2), gamma = {}", args.gamma);
    println!("{:>6} {:>10} {:>12} {:>18}", "N", "H terms", "seconds", "value");
    let mut n100_elapsed = None;
    for &n in &args.sizes {
        if n < 2 {
            return Err(CliError::Usage("bench sizes must be at least 2".into()));
        }
        let spec = ChainSpec::resolved(n);
        let gens = chain_su2_generators(&spec);
        let h = h_q(&spec, args.gamma);
        let terms = h.term_count();
        let start = Instant::now();
        let rep = asymmetry(&gens, &Operator::Tensor(h))?;
        let elapsed = start.elapsed().as_secs_f64();
        println!("{n:>6} {terms:>10} {elapsed:>12.4} {:>18.12}", rep.total);
        if n == 100 {
            n100_elapsed = Some(elapsed);
        }
        if n == 10 {
            // Cross-check the tensor value against the dense backend.
            let dgens = chain_su2_generators(&spec)
                .to_dense()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let dh = Operator::Dense(
                h_q(&spec, args.gamma)
                    .to_dense()
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            );
            let dense_val = asymmetry(&dgens, &dh)?.total;
            let rel = (rep.total - dense_val).abs() / dense_val.abs().max(f64::MIN_POSITIVE);
            println!("       dense cross-check at N=10: rel diff {rel:.3e}");
        }
    }
    if let Some(t) = n100_elapsed {
        if t > args.budget {
            return Err(CliError::VerificationFailed(format!(
                "N=100 tensor asymmetry took {t:.2}s, over the {:.2}s budget",
                args.budget
            )));
        }
        println!("N=100 within the {:.1}s budget ({t:.4}s)", args.budget);
    }
    Ok(())
}

fn cmd_models() -> Result<(), CliError> {
    println!("built-in models (A(g, H) = Sum_j ||[H, X_j]||^2 / ||H - (tr H/d) I||^2):");
    println!();
    println!("  fock       H' = diag([m1]_q + [M-m1]_q) on the (M+1)-dim Fock subspace,");
    println!("             w.r.t. su(2) {{J_+, J_-, J_3}}; params: --M >= 1, --gamma.");
    println!("             Scalar-degenerate at gamma = 0 and for M = 1 (exit 3).");
    println!("  casimir    q-deformed Casimir 4x4 matrix w.r.t. the two-spin co-product");
    println!("             su(2); params: --gamma. Closed form 16(cosh g - 1)/(3 cosh g).");
    println!("  chain      H_q (XXZ + boundary term) w.r.t. total-spin su(2) on N spins;");
    println!("             params: --N >= 2, --gamma, --pauli, --bonds, --backend.");
    println!("  chain-inf  closed-form N -> infinity limit; params: --gamma, --variant.");
    println!();
    println!("backend auto rule: dense while 2^N <= 4096, tensor beyond.");
    println!();
    let report = resolve_convention(4, 1.0, DEFAULT_SYMMETRY_TOL);
    println!(
        "chain convention search (N = {}, gamma = {}, tol = {:.1e}):",
        report.n_sites, report.gamma, report.tol
    );
    for c in &report.candidates {
        println!(
            "  {:<30} max ||[H_q, J'_a]|| = {:>12.3e}   {}",
            c.spec.convention_label(),
            c.max_commutator_norm,
            if c.symmetric { "symmetric" } else { "-" }
        );
    }
    println!(
        "resolved: {} (used as the default convention)",
        report
            .winners
            .first()
            .map(|w| w.convention_label())
            .unwrap_or_else(|| "none".to_string())
    );
    Ok(())
}
