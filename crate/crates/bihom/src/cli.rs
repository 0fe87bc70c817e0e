//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use bihom_core::forms::{LineKind, Shape};
use bihom_core::random::DEFAULT_COORD_BOUND;
use bihom_core::structure::{analyze_pair, case_iii_recognizer, generate_instance, verify_ee7, StructureError};
use bihom_core::sylvester::{self, BinaryWitness, NumericResult, SylvesterError, SylvesterResult};
use bihom_core::tangential::{
    dependency_set, reducible_decompose, tangential_decompose, tangential_rank, TangentDecomposition,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::json::{self as fmt, nums, BinaryFormJson, FormatError, InstanceJson, JetJson};
use crate::suites::{self, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "bihom", version, about = "Exact decompositions of bi-homogeneous forms")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Trials per shape or family for `verify`.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Shape `n1,n2,d1,d2`.
    #[arg(long, global = true, value_parser = fmt::parse_shape)]
    pub shape: Option<Shape>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Scalar backend for binary-form decomposition.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    pub backend: Backend,
    /// Random coordinates are drawn from `[-B, B]`.
    #[arg(long = "coord-bound", global = true, default_value_t = DEFAULT_COORD_BOUND)]
    pub coord_bound: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Alpha,
    Beta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Binary forms: border rank, rank and decompositions.
    #[command(subcommand)]
    Sylvester(SylvesterCmd),
    /// Pairs of minimal decompositions of a bi-homogeneous form.
    #[command(subcommand)]
    Structure(StructureCmd),
    /// Tangent vectors given by jets.
    #[command(subcommand)]
    Tangent(TangentCmd),
    /// Runs a seeded verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum SylvesterCmd {
    /// Border rank, rank and one decomposition.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Distinct rank decompositions drawn from the family of all of them.
    Sample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum StructureCmd {
    /// A form with two planted minimal decompositions sharing `E`.
    Generate {
        #[arg(long, value_enum, default_value_t = KindArg::Beta)]
        kind: KindArg,
        /// Border rank of the binary form on the line.
        #[arg(long)]
        b: usize,
        /// Number of common points off the line.
        #[arg(long)]
        e: usize,
    },
    /// Special line, `E`, `Q` and `b` of an instance.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Pairwise agreement over `S`, `A` and `K` further decompositions.
    VerifyEe7 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TangentCmd {
    /// Dependency set and rank of the tangent vector.
    Rank {
        #[arg(long)]
        jet: PathBuf,
    },
    /// A decomposition with as many terms as the rank.
    Decompose {
        #[arg(long)]
        jet: PathBuf,
        /// Use the two lines through the base point instead of a smooth curve.
        #[arg(long)]
        reducible: bool,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of the suite names listed by `--help`.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
    pub suite: String,
    /// Extra decompositions per instance (prop-ee7).
    #[arg(long)]
    pub extra: Option<usize>,
    /// Fresh decompositions of `Q` per instance (thm-ee11).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random candidate sets per mixed jet (thm-i1).
    #[arg(long)]
    pub falsify: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{message}")]
    Failed { message: String, output: Option<Value> },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) => 2,
            CliError::Failed { .. } => 1,
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        CliError::Failed { message: message.into(), output: None }
    }
}

/// Result of a successful command: the JSON to print and the exit code.
pub struct Output {
    pub value: Value,
    pub code: i32,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

/// Parses `args`, runs the command and writes the result; returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let result = execute(&cli);
    let (value, code) = match result {
        Ok(out) => (Some(out.value), out.code),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            let code = e.exit_code();
            match e {
                CliError::Failed { output, .. } => (output, code),
                _ => (None, code),
            }
        }
    };
    if let Some(v) = value {
        let text = serde_json::to_string_pretty(&v).expect("serializes") + "\n";
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            None => {
                let _ = stdout.write_all(text.as_bytes());
            }
        }
    }
    code
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    if cli.coord_bound < 1 {
        return Err(CliError::Usage(format!("--coord-bound must be positive, got {}", cli.coord_bound)));
    }
    match &cli.command {
        Command::Sylvester(SylvesterCmd::Analyze { input }) => sylvester_analyze(cli, input),
        Command::Sylvester(SylvesterCmd::Sample { input, count }) => sylvester_sample(cli, input, *count),
        Command::Structure(StructureCmd::Generate { kind, b, e }) => structure_generate(cli, *kind, *b, *e),
        Command::Structure(StructureCmd::Analyze { input }) => structure_analyze(input),
        Command::Structure(StructureCmd::VerifyEe7 { input, extra }) => structure_verify_ee7(cli, input, *extra),
        Command::Tangent(TangentCmd::Rank { jet }) => tangent_rank(jet),
        Command::Tangent(TangentCmd::Decompose { jet, reducible }) => tangent_decompose(jet, *reducible),
        Command::Verify(args) => verify(cli, args),
    }
}

fn load_binary(path: &Path) -> Result<bihom_core::BinaryForm, CliError> {
    let (ctx, raw): (_, BinaryFormJson) = fmt::load(path)?;
    Ok(ctx.binary_form("$", &raw)?)
}

fn binary_witness_json(w: &BinaryWitness) -> Value {
    Value::from(w.iter().map(|(c, p)| json!({ "w": fmt::Num::from(c), "point": nums(p.coords()) })).collect::<Vec<_>>())
}

fn exact_json(r: &SylvesterResult) -> Value {
    json!({
        "backend": "exact",
        "degree": r.degree,
        "border_rank": r.border_rank,
        "rank": r.rank,
        "kernel_vector": nums(&r.kernel_vector),
        "kernel_dim": r.kernel_dim,
        "witness": r.witness.as_ref().map(binary_witness_json),
    })
}

fn numeric_json(r: &NumericResult, fallback: bool) -> Value {
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|t| json!({ "w": [t.weight.re, t.weight.im], "point": [[t.point[0].re, t.point[0].im], [t.point[1].re, t.point[1].im]] }))
        .collect();
    json!({
        "backend": "numeric",
        "fallback_from_exact": fallback,
        "degree": r.degree,
        "border_rank": r.border_rank,
        "rank": r.rank,
        "terms": terms,
        "residual": r.residual,
    })
}

const NUMERIC_TOL: f64 = 1e-9;

fn sylvester_analyze(cli: &Cli, input: &Path) -> Result<Output, CliError> {
    let q = load_binary(input)?;
    let numeric = |fallback: bool| -> Result<Output, CliError> {
        let r = sylvester::analyze_numeric(&q, NUMERIC_TOL).map_err(|e| CliError::failed(e.to_string()))?;
        Ok(Output::ok(numeric_json(&r, fallback)))
    };
    match cli.backend {
        Backend::Numeric => numeric(false),
        Backend::Exact => match sylvester::analyze(&q) {
            Ok(r) => Ok(Output::ok(exact_json(&r))),
            Err(SylvesterError::DoesNotSplit { .. }) => numeric(true),
            Err(e) => Err(CliError::failed(e.to_string())),
        },
    }
}

fn sylvester_sample(cli: &Cli, input: &Path, count: usize) -> Result<Output, CliError> {
    if cli.backend == Backend::Numeric {
        return Err(CliError::Usage("sampling is exact only".into()));
    }
    let q = load_binary(input)?;
    let inv = sylvester::invariants(&q).map_err(|e| CliError::failed(e.to_string()))?;
    let samples = sylvester::sample_solutions(&q, count, cli.seed).map_err(|e| CliError::failed(e.to_string()))?;
    Ok(Output::ok(json!({
        "degree": inv.degree,
        "border_rank": inv.border_rank,
        "rank": inv.rank,
        "seed": cli.seed,
        "samples": samples.iter().map(binary_witness_json).collect::<Vec<_>>(),
    })))
}

fn structure_generate(cli: &Cli, kind: KindArg, b: usize, e: usize) -> Result<Output, CliError> {
    let shape = cli.shape.ok_or_else(|| CliError::Usage("structure generate needs --shape n1,n2,d1,d2".into()))?;
    let kind = match kind {
        KindArg::Alpha => LineKind::Alpha,
        KindArg::Beta => LineKind::Beta,
    };
    match generate_instance(&shape, kind, b, e, cli.seed, cli.coord_bound) {
        Ok(inst) => Ok(Output::ok(serde_json::to_value(fmt::instance_json(&inst)).expect("serializes"))),
        Err(err @ StructureError::Infeasible(_)) => Err(CliError::Usage(err.to_string())),
        Err(err) => Err(CliError::failed(err.to_string())),
    }
}

fn load_instance(path: &Path) -> Result<(bihom_core::BiForm, bihom_core::structure::WitnessDecomposition, bihom_core::structure::WitnessDecomposition), CliError> {
    let (ctx, raw): (_, InstanceJson) = fmt::load(path)?;
    Ok(ctx.instance(&raw)?)
}

fn structure_analyze(input: &Path) -> Result<Output, CliError> {
    let (p, s, a) = load_instance(input)?;
    match analyze_pair(&p, &s, &a) {
        Ok(split) => Ok(Output::ok(json!({
            "kind": fmt::kind_name(split.kind()),
            "line": fmt::line_json(&split.slice),
            "E": split.e.iter().map(fmt::point_pair_json).collect::<Vec<_>>(),
            "q_vector": nums(&split.q_vector),
            "q_form": fmt::binary_form_json(&split.q_form),
            "b": split.border_rank,
            "residual_rank": split.residual_rank,
            "rank": split.rank,
        }))),
        Err(StructureError::NoSpecialLine) => {
            let conic = case_iii_recognizer(&s, &a);
            Err(CliError::Failed {
                message: StructureError::NoSpecialLine.to_string(),
                output: Some(json!({ "special_line": null, "case_iii_conic_factor": conic.map(|i| i + 1) })),
            })
        }
        Err(e) => Err(CliError::failed(e.to_string())),
    }
}

fn structure_verify_ee7(cli: &Cli, input: &Path, extra: usize) -> Result<Output, CliError> {
    let (p, s, a) = load_instance(input)?;
    let split = analyze_pair(&p, &s, &a).map_err(|e| CliError::failed(e.to_string()))?;
    let more = suites::extensions(&split, &s, &[&a], extra, cli.seed).map_err(CliError::failed)?;
    let mut all = vec![s, a];
    all.extend(more);
    let report = verify_ee7(&p, &all).map_err(|e| CliError::failed(e.to_string()))?;
    let pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|o| {
            json!({
                "i": o.i, "j": o.j, "agrees": o.agrees,
                "kind": o.kind.map(fmt::kind_name), "E": o.e_size, "b": o.border_rank, "error": o.error,
            })
        })
        .collect();
    let value = json!({
        "witnesses": all.iter().map(fmt::witness_json).collect::<Vec<_>>(),
        "pairs": pairs,
        "pass": report.pass,
    });
    Ok(Output { value, code: if report.pass { 0 } else { 1 } })
}

fn load_jet(path: &Path) -> Result<bihom_core::tangential::JetK, CliError> {
    let (ctx, raw): (_, JetJson) = fmt::load(path)?;
    Ok(ctx.jet("$", &raw)?)
}

fn tangent_rank(path: &Path) -> Result<Output, CliError> {
    let j = load_jet(path)?;
    let r = tangential_rank(&j);
    Ok(Output::ok(json!({
        "degrees": j.degrees(),
        "dependency_set": dependency_set(&j).iter().map(|i| i + 1).collect::<Vec<_>>(),
        "rank": r.rank,
        "degenerate": r.degenerate,
    })))
}

fn decomposition_json(d: &TangentDecomposition) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|(w, pts)| json!({ "w": fmt::Num::from(w), "points": pts.iter().map(|p| nums(p.coords())).collect::<Vec<_>>() }))
        .collect();
    json!({ "kind": d.kind.name(), "degrees": d.degrees, "rank": d.len(), "terms": terms })
}

fn tangent_decompose(path: &Path, reducible: bool) -> Result<Output, CliError> {
    let j = load_jet(path)?;
    let d = if reducible { reducible_decompose(&j) } else { tangential_decompose(&j) };
    let d = d.map_err(|e| CliError::failed(e.to_string()))?;
    Ok(Output::ok(decomposition_json(&d)))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Output, CliError> {
    let defaults = SuiteConfig::default();
    let cfg = SuiteConfig {
        seed: cli.seed,
        trials: cli.trials,
        shape: cli.shape,
        coord_bound: cli.coord_bound,
        extra: args.extra.unwrap_or(defaults.extra),
        samples: args.samples.unwrap_or(defaults.samples),
        falsify: args.falsify.unwrap_or(defaults.falsify),
    };
    let report = suites::run_suite(&args.suite, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let code = report.exit_code();
    Ok(Output { value: serde_json::to_value(&report).expect("serializes"), code })
}
