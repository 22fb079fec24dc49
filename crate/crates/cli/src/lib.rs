//! Commands behind the `cartansuper` binary. Each `cmd_*` function returns a
//! report value; [`run`] renders it and picks the exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cartansuper::derivations::{derivation_report, transitivity_check, DerivationReport};
use cartansuper::families::LPrimeModel;
use cartansuper::liesuper::{check_axioms, check_axioms_sampled, AxiomReport};
use cartansuper::localcert::{certify_2local, certify_with, separating_t, Certificate, CertifyConfig, Verdict};
use cartansuper::{build_family, build_lprime, AlgebraModel, Family};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Models up to this dimension get the full Jacobi scan in `check`.
pub const FULL_SCAN_MAX_DIM: usize = 128;
pub const SAMPLED_TRIPLES: usize = 100_000;

pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Internal(_) => exit::CHECK_FAILED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cartansuper", version, about = "Cartan type Lie superalgebras and their local superderivations")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "CARTANSUPER_FORMAT")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "CARTANSUPER_OUT")]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel solvers.
    #[arg(long, global = true, env = "CARTANSUPER_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the model JSON of a family.
    Build(SpecArgs),
    /// Dimensions, grading depths, roots.
    Info(ModelArgs),
    /// Axioms, Der L = ad L′, transitivity.
    Check(CheckArgs),
    /// Certify LDer(L) = Der(L) and the 2-local statement at this n.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, env = "CARTANSUPER_FAMILY")]
    pub family: String,
    #[arg(long, env = "CARTANSUPER_N")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, env = "CARTANSUPER_FAMILY", required_unless_present = "input")]
    pub family: Option<String>,
    #[arg(long, env = "CARTANSUPER_N", required_unless_present = "input")]
    pub n: Option<usize>,
    /// Model JSON written by `build`; overrides --family/--n.
    #[arg(long, env = "CARTANSUPER_INPUT")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Seed for the sampled Jacobi scan on large models.
    #[arg(long, default_value_t = 0, env = "CARTANSUPER_SEED")]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0, env = "CARTANSUPER_SEED")]
    pub seed: u64,
    /// Cap on recorded escalation probes (default 4·dim L).
    #[arg(long, env = "CARTANSUPER_BUDGET")]
    pub budget: Option<usize>,
    /// Record elapsed_ms in the certificate.
    #[arg(long, env = "CARTANSUPER_TIMINGS")]
    pub timings: bool,
}

pub fn parse_family(s: &str) -> Result<Family, CliError> {
    s.parse().map_err(|e: cartansuper::Error| CliError::Input(e.to_string()))
}

fn build_spec(family: &str, n: usize) -> Result<AlgebraModel, CliError> {
    build_family(parse_family(family)?, n).map_err(|e| CliError::Input(e.to_string()))
}

pub fn load_model(args: &ModelArgs) -> Result<AlgebraModel, CliError> {
    if let Some(path) = &args.input {
        return read_model(path);
    }
    match (&args.family, args.n) {
        (Some(f), Some(n)) => build_spec(f, n),
        _ => Err(CliError::Input("either --input or both --family and --n are required".into())),
    }
}

pub fn read_model(path: &Path) -> Result<AlgebraModel, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    AlgebraModel::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn lprime_of(a: &AlgebraModel) -> Result<LPrimeModel, CliError> {
    build_lprime(a).map_err(|e| CliError::Input(e.to_string()))
}

pub fn cmd_build(family: Family, n: usize) -> Result<String, CliError> {
    let a = build_family(family, n).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(a.to_json())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoReport {
    pub schema_version: u32,
    pub family: String,
    pub n: usize,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    #[serde(rename = "dim_Lprime")]
    pub dim_lprime: usize,
    pub min_degree: i64,
    pub max_degree: i64,
    pub grading_modulus: Option<i64>,
    #[serde(rename = "dim_L0")]
    pub dim_l0: usize,
    pub root_count: usize,
    pub cartan_rank: usize,
    pub separating_t: i64,
}

pub fn cmd_info(a: &AlgebraModel) -> Result<InfoReport, CliError> {
    let p = lprime_of(a)?;
    Ok(InfoReport {
        schema_version: REPORT_SCHEMA_VERSION,
        family: a.family().to_string(),
        n: a.n(),
        dim_l: a.dim(),
        dim_lprime: p.dim_lprime(),
        min_degree: a.min_degree().unwrap_or(0),
        max_degree: a.max_degree().unwrap_or(0),
        grading_modulus: a.grading_modulus(),
        dim_l0: a.degree_component(0).len(),
        root_count: a.root_set().len(),
        cartan_rank: a.rank(),
        separating_t: separating_t(&p).t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSummary {
    pub mode: &'static str,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub passed: bool,
    pub violation: Option<String>,
}

impl AxiomSummary {
    fn new(mode: &'static str, r: &AxiomReport) -> Self {
        Self {
            mode,
            pairs_checked: r.pairs_checked,
            triples_checked: r.triples_checked,
            passed: r.passed(),
            violation: r.violation.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub family: String,
    pub n: usize,
    pub axioms: AxiomSummary,
    pub derivations: DerivationReport,
    pub passed: bool,
    /// First failing check, if any.
    pub failure: Option<String>,
}

pub fn cmd_check(a: &AlgebraModel, seed: u64) -> Result<CheckReport, CliError> {
    let axioms = if a.dim() <= FULL_SCAN_MAX_DIM {
        AxiomSummary::new("full", &check_axioms(a))
    } else {
        AxiomSummary::new("sampled", &check_axioms_sampled(a, SAMPLED_TRIPLES, seed))
    };
    // L′ is rebuilt from the basis descriptors; Der L is solved from the
    // table as loaded, so a corrupted table shows up as a mismatch.
    let rebuilt = lprime_of(a)?;
    let p = LPrimeModel::from_parts(a.clone(), rebuilt.ext().clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let derivations = derivation_report(&p);
    let failure = if let Some(v) = &axioms.violation {
        Some(v.clone())
    } else if !derivations.lemma_der_holds {
        Some(format!(
            "Der L has dimension {} but ad L′ spans {} (dim L′ = {})",
            derivations.dim_der,
            cartansuper::derivations::ad_image(&p).dim(),
            derivations.dim_lprime
        ))
    } else if !derivations.transitive {
        let w = transitivity_check(&p).witness.expect("witness for a failed check");
        Some(format!("L′ is not transitive: nonnegative-degree element {w:?} kills L′₋₁"))
    } else {
        None
    };
    Ok(CheckReport {
        schema_version: REPORT_SCHEMA_VERSION,
        family: a.family().to_string(),
        n: a.n(),
        passed: failure.is_none(),
        axioms,
        derivations,
        failure,
    })
}

/// Runs certify then certify_2local. `elapsed_ms` is kept only with
/// `timings`, so equal inputs give byte-identical certificates.
pub fn cmd_certify(a: &AlgebraModel, cfg: &CertifyConfig, timings: bool) -> Result<Certificate, CliError> {
    let p = lprime_of(a)?;
    let c = certify_with(&p, cfg);
    let mut c = certify_2local(&p, &c, cfg);
    if !timings {
        c.elapsed_ms = None;
    }
    Ok(c)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

pub fn render_info(r: &InfoReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => {
            let modulus = r.grading_modulus.map(|m| format!(" (mod {m})")).unwrap_or_default();
            format!(
                "{}({})\n  dim L      {}\n  dim L'     {}\n  degrees    [{}, {}]{modulus}\n  dim L0     {}\n  roots      {}\n  rank       {}\n  t          {}\n",
                r.family, r.n, r.dim_l, r.dim_lprime, r.min_degree, r.max_degree, r.dim_l0, r.root_count, r.cartan_rank,
                r.separating_t
            )
        }
    }
}

pub fn render_check(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => {
            let ok = |b: bool| if b { "ok" } else { "FAILED" };
            let mut s = format!(
                "{}({})\n  axioms ({}, {} triples)  {}\n  Der L = ad L' (dim {})  {}\n  L' transitive  {}\n",
                r.family,
                r.n,
                r.axioms.mode,
                r.axioms.triples_checked,
                ok(r.axioms.passed),
                r.derivations.dim_der,
                ok(r.derivations.lemma_der_holds),
                ok(r.derivations.transitive)
            );
            if let Some(f) = &r.failure {
                s += &format!("  first failure: {f}\n");
            }
            s
        }
    }
}

pub fn render_certificate(c: &Certificate, format: Format) -> String {
    match format {
        Format::Json => c.to_json(),
        Format::Text => {
            let two = c.twolocal_verdict.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let mut s = format!(
                "{}({}) t={} seed={}\n  probes     {} recorded ({} from the proof, {} random of {} tried)\n  dim C      {}\n  dim ad L'  {}\n  local      {}\n  2-local    {two}\n",
                c.family,
                c.n,
                c.t,
                c.seed,
                c.probe_labels.len(),
                c.proof_probe_count,
                c.probe_labels.len() - c.proof_probe_count,
                c.candidates_tried,
                c.dim_c,
                c.dim_ad_lprime,
                c.verdict
            );
            if let Some(ms) = c.elapsed_ms {
                s += &format!("  elapsed    {ms} ms\n");
            }
            s
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string())),
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    if let Some(j) = cli.jobs {
        // fails only if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Build(s) => {
            let json = cmd_build(parse_family(&s.family)?, s.n)?;
            emit(out, &json)?;
            Ok(exit::OK)
        }
        Command::Info(m) => {
            let r = cmd_info(&load_model(m)?)?;
            emit(out, &render_info(&r, cli.format))?;
            Ok(exit::OK)
        }
        Command::Check(c) => {
            let r = cmd_check(&load_model(&c.model)?, c.seed)?;
            emit(out, &render_check(&r, cli.format))?;
            if let Some(f) = &r.failure {
                eprintln!("check failed: {f}");
                return Ok(exit::CHECK_FAILED);
            }
            Ok(exit::OK)
        }
        Command::Certify(c) => {
            let cfg = CertifyConfig { budget: c.budget, seed: c.seed, ..CertifyConfig::default() };
            let cert = cmd_certify(&load_model(&c.model)?, &cfg, c.timings)?;
            emit(out, &render_certificate(&cert, cli.format))?;
            Ok(if cert.is_certified() && cert.twolocal_verdict == Some(Verdict::Certified) {
                exit::OK
            } else {
                exit::INCONCLUSIVE
            })
        }
    }
}
