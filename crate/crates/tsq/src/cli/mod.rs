//! The `tsq` command line: estimators, verification suites, reductions and the
//! scaling bench, with JSON or CSV reports.
//!
//! Exit codes: 0 on success or a passing suite, 1 on a failing suite or a
//! failed check, 2 on usage and input errors.

mod bench;
pub mod format;

pub use bench::{bench_scaling, log_log_slope, BenchRow, BenchTable};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::chebapprox::fit_for_epsilon;
use crate::error::Error;
use crate::estimator::{Backend, EstimateResult, EstimatorConfig, QueryEstimator, SampleConfig, SampleEstimator};
use crate::ineqlab::{
    auxiliary_fact_suite, binary_bound_suite, data_processing_suite, default_q_grid, qjt_link_suite,
    qjt_sandwich_suite, uniform_tv_full_suite, PairEnsemble, SandwichLink, SuiteOptions, SuiteReport,
};
use crate::qcore::{prepare_state, DensityMatrix, GateCircuit, StateJson};
use crate::reductions::{
    bisearch, call_bound, mixed_state_reduce, mixed_state_reduce_states, pure_state_reduce,
    pure_state_reduce_circuits, qscmm_check, Checked, ExactDecider, GapPolicy, MixedParams, PureParams,
    ReductionOutput, SOUNDNESS_TOL,
};
use format::{to_csv, to_json, Cell};

#[derive(Debug, Parser)]
#[command(name = "tsq", version, about = "Tsallis entropy estimation and verification toolkit")]
struct Cli {
    /// Base seed of every random stream.
    #[arg(long, global = true, env = "TSQ_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for suites; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Report format; `bench` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the polynomial for x^(q-1)/2 and print its certificate.
    Approx {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Estimate tr(rho^q) and S_q(rho) for a state or circuit.
    Estimate(EstimateArgs),
    /// Run an inequality suite.
    Verify {
        /// Where a failing suite writes its worst case.
        #[arg(long, global = true)]
        replay: Option<PathBuf>,
        #[command(subcommand)]
        suite: VerifyCmd,
    },
    /// Build and report a reduction instance.
    Reduce {
        #[command(subcommand)]
        which: ReduceCmd,
    },
    /// Query-count scaling of the exact-backend estimator.
    Bench {
        #[arg(long)]
        q: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.1, 0.05, 0.025])]
        eps_list: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Report wall_ms as 0 so reports are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Shot,
    Sample,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    q: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    state: Option<PathBuf>,
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Median of 2m+1 runs.
    #[arg(long)]
    boost: Option<usize>,
    /// Amplitude-estimation grid size M (power of two).
    #[arg(long)]
    ae_grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LinkArg {
    Both,
    Lower,
    Upper,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// QJT_q against its trace-distance sandwich on random pairs.
    QjtSandwich {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        /// Hilbert-space dimensions, powers of two.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        q_grid: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "both")]
        link: LinkArg,
    },
    /// Closed-form bounds on the binary Tsallis entropy.
    BinaryBounds {
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Monotonicity of QJT_q under random channels.
    DataProcessing {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
    },
    /// Uniform-distance entropy bounds, random and brute force.
    UniformTv {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
    },
    /// Supporting lemmas, including the classical JT lower bound.
    AuxFacts {
        #[arg(long, default_value_t = 10_000)]
        jt_pairs: usize,
    },
    /// Every suite above.
    All {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
}

#[derive(Debug, Args)]
struct PairInputs {
    #[arg(long, requires = "state1")]
    state0: Option<PathBuf>,
    #[arg(long, requires = "state0")]
    state1: Option<PathBuf>,
    #[arg(long, requires = "circuit1", conflicts_with_all = ["state0", "state1"])]
    circuit0: Option<PathBuf>,
    #[arg(long, requires = "circuit0")]
    circuit1: Option<PathBuf>,
    /// Fail unless the output respects the promised direction.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Above,
    Below,
    Nearest,
    Random,
}

#[derive(Debug, Subcommand)]
enum ReduceCmd {
    /// Pure-state inputs to a QJT_q difference instance.
    Pure {
        #[command(flatten)]
        inputs: PairInputs,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
    },
    /// Mixed-state inputs to an entropy-difference instance.
    Mixed {
        #[command(flatten)]
        inputs: PairInputs,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Entropy threshold check against the n-qubit promise.
    Qscmm {
        #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
        state: Option<PathBuf>,
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Locate an entropy with a threshold oracle.
    Bisearch {
        /// Entropy the oracle answers for.
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        value: Option<f64>,
        /// Use S_q of this state instead; needs --q.
        #[arg(long, requires = "q")]
        state: Option<PathBuf>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        g: f64,
        /// Oracle answers inside the ambiguous band.
        #[arg(long, value_enum, default_value = "nearest")]
        policy: PolicyArg,
    },
}

enum Failure {
    /// Bad flags or inputs.
    Usage(String),
    /// A check or suite ran and failed.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx {
    seed: u64,
    jobs: usize,
    format: Format,
    output: Option<PathBuf>,
    argv: Vec<String>,
}

impl Ctx {
    fn opts(&self) -> SuiteOptions {
        SuiteOptions { seed: self.seed, jobs: self.jobs }
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.output {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let ctx = Ctx {
        seed: cli.seed,
        jobs: cli.jobs,
        format: cli.format.unwrap_or(match cli.command {
            Command::Bench { .. } => Format::Csv,
            _ => Format::Json,
        }),
        output: cli.output.clone(),
        argv: argv.iter().map(|s| s.to_string_lossy().into_owned()).collect(),
    };
    let res = match cli.command {
        Command::Approx { q, eps } => approx(&ctx, q, eps),
        Command::Estimate(a) => estimate(&ctx, &a),
        Command::Verify { replay, suite } => verify(&ctx, &suite, replay.as_deref()),
        Command::Reduce { which } => reduce(&ctx, &which),
        Command::Bench { q, eps_list, trials, no_timing } => bench(&ctx, q, &eps_list, trials, no_timing),
    };
    match res {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn read_state(path: &Path) -> CliResult<StateJson> {
    read_json(path)
}

fn read_density(path: &Path) -> CliResult<DensityMatrix> {
    Ok(read_state(path)?.to_density()?)
}

fn read_circuit(path: &Path) -> CliResult<GateCircuit> {
    let c: GateCircuit = read_json(path)?;
    c.validate()?;
    Ok(c)
}

fn json_text(v: &impl serde::Serialize) -> CliResult<String> {
    Ok(to_json(v)?)
}

// ------------------------------------------------------------------ approx

fn approx(ctx: &Ctx, q: f64, eps: f64) -> CliResult<()> {
    let (series, cert) = fit_for_epsilon(q, eps)?;
    let text = match ctx.format {
        Format::Json => json_text(&json!({
            "q": q,
            "eps": eps,
            "degree": series.degree,
            "parity": series.parity,
            "certificate": cert,
            "accepted": cert.accepted(),
            "coefficients": series.coeffs,
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<Cell>> =
                series.coeffs.iter().enumerate().map(|(k, c)| vec![Cell::I(k as u64), Cell::F(*c)]).collect();
            let trailer = vec![
                ("q".to_string(), Cell::F(q)),
                ("eps".to_string(), Cell::F(eps)),
                ("degree".to_string(), Cell::I(series.degree as u64)),
                ("sup_err_measured".to_string(), Cell::F(cert.sup_err_measured)),
                ("max_abs_measured".to_string(), Cell::F(cert.max_abs_measured)),
                ("grid_size".to_string(), Cell::I(cert.grid_size as u64)),
            ];
            to_csv(&["k", "coefficient"], &rows, &trailer)?
        }
    };
    ctx.emit(&text)
}

// ---------------------------------------------------------------- estimate

fn estimate(ctx: &Ctx, a: &EstimateArgs) -> CliResult<()> {
    let circuit = a.circuit.as_deref().map(read_circuit).transpose()?;
    let rho = match (&a.state, &circuit) {
        (Some(p), _) => read_density(p)?,
        (None, Some(c)) => prepare_state(c)?,
        (None, None) => return Err(Failure::Usage("one of --state or --circuit is required".into())),
    };
    let result: EstimateResult = match a.backend {
        BackendArg::Sample => {
            if a.boost.is_some() || a.ae_grid.is_some() {
                return Err(Failure::Usage("--boost and --ae-grid apply to the query backends only".into()));
            }
            let mut cfg = SampleConfig::new(a.q, a.eps);
            cfg.seed = ctx.seed;
            SampleEstimator::new(cfg)?.estimate(&rho, 0)?
        }
        b => {
            let backend = if b == BackendArg::Shot { Backend::Shot } else { Backend::Exact };
            let mut cfg = EstimatorConfig::new(a.q, a.eps).with_backend(backend).with_seed(ctx.seed);
            cfg.boost = a.boost;
            cfg.ae_grid = a.ae_grid;
            let est = QueryEstimator::new(cfg)?;
            match &circuit {
                Some(c) => est.estimate_circuit(c, 0)?,
                None => est.estimate_density(&rho, 0)?,
            }
        }
    };
    let truth = rho.trace_power(a.q);
    let backend = match a.backend {
        BackendArg::Exact => "exact",
        BackendArg::Shot => "shot",
        BackendArg::Sample => "sample",
    };
    let text = match ctx.format {
        Format::Json => json_text(&json!({
            "q": a.q,
            "eps": a.eps,
            "backend": backend,
            "estimate_trace_power": result.trace_power,
            "estimate_tsallis": result.tsallis,
            "truth": truth,
            "err_bound": result.err_bound,
            "ledger": result.ledger,
            "runs": [result],
        }))?,
        Format::Csv => to_csv(
            &["q", "eps", "backend", "estimate_trace_power", "estimate_tsallis", "truth", "err_bound", "degree"],
            &[vec![
                Cell::F(a.q),
                Cell::F(a.eps),
                Cell::S(backend.into()),
                Cell::F(result.trace_power),
                Cell::F(result.tsallis),
                Cell::F(truth),
                Cell::F(result.err_bound),
                Cell::I(result.degree as u64),
            ]],
            &[],
        )?,
    };
    ctx.emit(&text)
}

// ------------------------------------------------------------------ verify

fn qubit_range(dims: &[usize]) -> CliResult<PairEnsemble> {
    if dims.is_empty() || dims.iter().any(|d| *d < 2 || !d.is_power_of_two()) {
        return Err(Failure::Usage("--dims must list powers of two, each at least 2".into()));
    }
    let qubits = |d: &usize| d.trailing_zeros() as usize;
    let (lo, hi) = (dims.iter().map(qubits).min().unwrap_or(1), dims.iter().map(qubits).max().unwrap_or(1));
    if (lo..=hi).count() != {
        let mut q: Vec<usize> = dims.iter().map(qubits).collect();
        q.sort_unstable();
        q.dedup();
        q.len()
    } {
        return Err(Failure::Usage("--dims must be consecutive powers of two".into()));
    }
    Ok(PairEnsemble { min_qubits: lo, max_qubits: hi })
}

fn verify(ctx: &Ctx, cmd: &VerifyCmd, replay: Option<&Path>) -> CliResult<()> {
    let opts = ctx.opts();
    let reports: Vec<SuiteReport> = match cmd {
        VerifyCmd::QjtSandwich { cases, dims, q_grid, link } => {
            let ens = qubit_range(dims)?;
            let grid = q_grid.clone().unwrap_or_else(default_q_grid);
            vec![match link {
                LinkArg::Both => qjt_sandwich_suite(*cases, &grid, ens, &opts)?,
                LinkArg::Lower => qjt_link_suite(SandwichLink::Lower, *cases, &grid, ens, &opts)?,
                LinkArg::Upper => qjt_link_suite(SandwichLink::Upper, *cases, &grid, ens, &opts)?,
            }]
        }
        VerifyCmd::BinaryBounds { points } => vec![binary_bound_suite(*points, &opts)?],
        VerifyCmd::DataProcessing { cases } => vec![data_processing_suite(*cases, &opts)?],
        VerifyCmd::UniformTv { cases } => vec![uniform_tv_full_suite(*cases, &opts)?],
        VerifyCmd::AuxFacts { jt_pairs } => vec![auxiliary_fact_suite(*jt_pairs, &opts)?],
        VerifyCmd::All { cases, points } => vec![
            qjt_sandwich_suite(*cases, &default_q_grid(), PairEnsemble::default(), &opts)?,
            binary_bound_suite(*points, &opts)?,
            data_processing_suite(*cases, &opts)?,
            uniform_tv_full_suite(*cases, &opts)?,
            auxiliary_fact_suite(*cases, &opts)?,
        ],
    };
    let pass = reports.iter().all(|r| r.pass);
    let text = match ctx.format {
        Format::Json if reports.len() == 1 => json_text(&reports[0])?,
        Format::Json => json_text(&json!({
            "suite": "all",
            "pass": pass,
            "failed_parts": reports.iter().flat_map(|r| r.failed_parts.clone()).collect::<Vec<_>>(),
            "reports": reports,
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = reports
                .iter()
                .map(|r| {
                    vec![
                        Cell::S(r.suite.clone()),
                        Cell::I(r.cases as u64),
                        Cell::F(r.max_violation),
                        Cell::F(r.tolerance),
                        Cell::I(r.float_noise as u64),
                        Cell::S(r.pass.to_string()),
                        Cell::S(r.failed_parts.join(";")),
                    ]
                })
                .collect();
            to_csv(&["suite", "cases", "max_violation", "tolerance", "float_noise", "pass", "failed_parts"], &rows, &[])?
        }
    };
    ctx.emit(&text)?;
    if pass {
        return Ok(());
    }
    let worst = reports
        .iter()
        .filter(|r| !r.pass)
        .max_by(|a, b| (a.max_violation - a.tolerance).total_cmp(&(b.max_violation - b.tolerance)))
        .expect("a failing report");
    let path = replay.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(format!("tsq-replay-{}-{}.json", worst.suite, ctx.seed)));
    let record = json!({
        "suite": worst.suite,
        "seed": ctx.seed,
        "argv": ctx.argv,
        "max_violation": worst.max_violation,
        "tolerance": worst.tolerance,
        "failed_parts": worst.failed_parts,
        "worst_case": worst.worst_case,
    });
    std::fs::write(&path, json_text(&record)?)
        .map_err(|e| Failure::Usage(format!("cannot write replay file {}: {e}", path.display())))?;
    Err(Failure::Check(format!(
        "suite {} failed (parts: {}); worst case written to {}",
        worst.suite,
        worst.failed_parts.join(", "),
        path.display()
    )))
}

// ------------------------------------------------------------------ reduce

fn pair_output(
    inputs: &PairInputs,
    from_states: impl FnOnce(StateJson, StateJson) -> crate::Result<ReductionOutput>,
    from_circuits: impl FnOnce(&GateCircuit, &GateCircuit) -> crate::Result<ReductionOutput>,
) -> CliResult<ReductionOutput> {
    match (&inputs.state0, &inputs.state1, &inputs.circuit0, &inputs.circuit1) {
        (Some(s0), Some(s1), None, None) => Ok(from_states(read_state(s0)?, read_state(s1)?)?),
        (None, None, Some(c0), Some(c1)) => Ok(from_circuits(&read_circuit(c0)?, &read_circuit(c1)?)?),
        _ => Err(Failure::Usage("give either --state0/--state1 or --circuit0/--circuit1".into())),
    }
}

fn emit_kv(ctx: &Ctx, value: &Value) -> CliResult<String> {
    match ctx.format {
        Format::Json => json_text(value),
        Format::Csv => {
            let Value::Object(map) = value else { unreachable!("reports are objects") };
            let rows: Vec<Vec<Cell>> = map
                .iter()
                .filter_map(|(k, v)| {
                    let cell = match v {
                        Value::Number(n) if n.is_u64() => Cell::I(n.as_u64()?),
                        Value::Number(n) => Cell::F(n.as_f64()?),
                        Value::String(s) => Cell::S(s.clone()),
                        Value::Bool(b) => Cell::S(b.to_string()),
                        _ => return None,
                    };
                    Some(vec![Cell::S(k.clone()), cell])
                })
                .collect();
            Ok(to_csv(&["key", "value"], &rows, &[])?)
        }
    }
}

fn finish_reduction(ctx: &Ctx, out: &ReductionOutput, verify: bool) -> CliResult<()> {
    let value = serde_json::to_value(out.report()).map_err(|e| Failure::Check(e.to_string()))?;
    ctx.emit(&emit_kv(ctx, &value)?)?;
    if verify {
        out.verify(SOUNDNESS_TOL).map_err(|e| Failure::Check(e.to_string()))?;
    }
    Ok(())
}

fn reduce(ctx: &Ctx, cmd: &ReduceCmd) -> CliResult<()> {
    match cmd {
        ReduceCmd::Pure { inputs, q, alpha, beta } => {
            let p = PureParams { q: *q, alpha: *alpha, beta: *beta };
            let out = pair_output(
                inputs,
                |a, b| pure_state_reduce(&a.to_pure()?, &b.to_pure()?, &p),
                |a, b| pure_state_reduce_circuits(a, b, &p),
            )?;
            finish_reduction(ctx, &out, inputs.verify)
        }
        ReduceCmd::Mixed { inputs, q, gamma, eps } => {
            let p = MixedParams { q: *q, gamma: *gamma, eps: *eps };
            let out = pair_output(
                inputs,
                |a, b| mixed_state_reduce_states(&a.to_density()?, &b.to_density()?, &p),
                |a, b| mixed_state_reduce(a, b, *q, *gamma, *eps),
            )?;
            finish_reduction(ctx, &out, inputs.verify)
        }
        ReduceCmd::Qscmm { state, circuit, verify } => {
            let rho = match (state, circuit) {
                (Some(s), _) => read_density(s)?,
                (None, Some(c)) => prepare_state(&read_circuit(c)?)?,
                (None, None) => return Err(Failure::Usage("one of --state or --circuit is required".into())),
            };
            let check = qscmm_check(&rho)?;
            let mut value = serde_json::to_value(check).map_err(|e| Failure::Check(e.to_string()))?;
            if ctx.format == Format::Csv {
                // Flatten the threshold spec into top-level keys.
                if let Some(Value::Object(spec)) = value.as_object_mut().and_then(|m| m.remove("spec")) {
                    for (k, v) in spec {
                        value[format!("spec_{k}")] = v;
                    }
                }
            }
            ctx.emit(&emit_kv(ctx, &value)?)?;
            if *verify {
                match check.slack {
                    None => return Err(Failure::Check("state lies outside the promise".into())),
                    Some(s) if s < -SOUNDNESS_TOL => {
                        return Err(Failure::Check(format!("entropy misses the threshold side by {}", -s)))
                    }
                    Some(_) => {}
                }
            }
            Ok(())
        }
        ReduceCmd::Bisearch { value, state, q, tau, g, policy } => {
            let s = match (value, state, q) {
                (Some(v), _, _) => *v,
                (None, Some(p), Some(q)) => read_density(p)?.tsallis(*q)?,
                _ => return Err(Failure::Usage("give --value, or --state with --q".into())),
            };
            let policy = match policy {
                PolicyArg::Above => GapPolicy::Above,
                PolicyArg::Below => GapPolicy::Below,
                PolicyArg::Nearest => GapPolicy::Nearest,
                PolicyArg::Random => GapPolicy::random(ctx.seed),
            };
            let mut decider = Checked::new(ExactDecider::new(s, policy));
            let outcome = bisearch(&mut decider, *tau, *g)?;
            let bound = call_bound(*tau, *g);
            let report = json!({
                "value": s,
                "tau": tau,
                "g": g,
                "estimate": outcome.estimate,
                "abs_error": (outcome.estimate - s).abs(),
                "calls": outcome.calls,
                "call_bound": bound,
                "queries": outcome.queries,
            });
            ctx.emit(&emit_kv(ctx, &report)?)?;
            if outcome.calls > bound || (outcome.estimate - s).abs() > g / 2.0 + 1e-12 {
                return Err(Failure::Check("search exceeded its call bound or accuracy".into()));
            }
            Ok(())
        }
    }
}

// ------------------------------------------------------------------- bench

fn bench(ctx: &Ctx, q: f64, eps_list: &[f64], trials: usize, no_timing: bool) -> CliResult<()> {
    let mut table = bench_scaling(q, eps_list, trials, ctx.seed)?;
    if no_timing {
        for r in &mut table.rows {
            r.wall_ms = 0.0;
        }
    }
    let text = match ctx.format {
        Format::Json => json_text(&table)?,
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::F(r.eps),
                        Cell::I(r.degree as u64),
                        Cell::I(r.prep_queries),
                        Cell::F(r.wall_ms),
                        Cell::F(r.abs_error),
                    ]
                })
                .collect();
            let trailer = vec![
                ("q".to_string(), Cell::F(q)),
                ("trials".to_string(), Cell::I(trials as u64)),
                ("slope".to_string(), Cell::F(table.slope)),
            ];
            to_csv(&["eps", "degree", "prep_queries", "wall_ms", "abs_error"], &rows, &trailer)?
        }
    };
    ctx.emit(&text)
}
