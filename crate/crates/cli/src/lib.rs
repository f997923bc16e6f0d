//! `ipcurv` command-line front end.
//!
//! Every command prints one JSON document on standard output carrying
//! `"schema": 1`, the crate version, the full run configuration, and either a
//! report or an error. Exit status: 0 when all checks pass, 1 when a
//! mathematical check fails, 2 on usage, input or sampling errors.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ipcurv::curvature::{spacelike_rank_profile, validate_symmetries, CurvatureTensor};
use ipcurv::exact::{parse_rational, Field, Rational};
use ipcurv::factory::{build_example, ExampleSpec};
use ipcurv::io::{self as json_io, TripleFile};
use ipcurv::jordan::{
    almost_complex_check, ip_check, jr_spectrum, verify_lemma_orthogonality,
    verify_product_vanishing, verify_theorem5_blocks, IpConfig,
};
use ipcurv::space::{CausalType, Delta, PlaneSampler, VectorSampler, DEFAULT_MAX_ATTEMPTS};
use ipcurv::{Error, Result};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ipcurv",
    version,
    about = "Exact checks of IP algebraic curvature tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a two-term example tensor from an admissible triple.
    BuildExample(BuildArgs),
    /// Check antisymmetry, pair symmetry and the first Bianchi identity.
    CheckSymmetries(InputArgs),
    /// Sample planes and compare Jordan invariants of R(π).
    IpCheck(IpArgs),
    /// Sample spacelike planes and compare rank R(π).
    RankProfile(ProfileArgs),
    /// Spectrum of J R(π) on sampled complex lines.
    JrSpectrum(SpectrumArgs),
    /// Orthogonality and product-vanishing identities of a triple.
    VerifyLemma(SampledArgs),
    /// Block structure of R(π)² on spacelike complex lines.
    VerifyTheorem5(SampledArgs),
    /// J R(x, Jx) = R(x, Jx) J on basis vectors, pairs and samples.
    AlmostComplexCheck(SampledArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlaneType {
    Spacelike,
    Timelike,
    Mixed,
}

impl From<PlaneType> for CausalType {
    fn from(p: PlaneType) -> Self {
        match p {
            PlaneType::Spacelike => CausalType::Spacelike,
            PlaneType::Timelike => CausalType::Timelike,
            PlaneType::Mixed => CausalType::Mixed,
        }
    }
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_delta)]
    delta1: Delta,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_delta)]
    delta2: Delta,
    /// The 8-dimensional Riemannian variant (needs both deltas +1).
    #[arg(long)]
    reduced: bool,
    #[arg(long, default_value = "2", allow_hyphen_values = true, value_parser = parse_rat)]
    lambda1: Rational,
    #[arg(long, default_value = "3", allow_hyphen_values = true, value_parser = parse_rat)]
    lambda2: Rational,
    /// Tensor output file, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Triple sidecar path; defaults to `<output stem>.triple.json`.
    #[arg(long)]
    triple_out: Option<PathBuf>,
    /// Include the dense component array (dimension at most 16).
    #[arg(long)]
    dense: bool,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Tensor file, `-` for standard input.
    input: String,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(i64).range(1..))]
    bound: i64,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
}

#[derive(Args, Debug)]
struct IpArgs {
    input: String,
    #[arg(long, value_enum, default_value = "spacelike")]
    plane_type: PlaneType,
    /// Sample complex lines {x, Jx} only.
    #[arg(long)]
    complex_lines: bool,
    /// Also compare invariant factors of R(π) between planes with det h in
    /// the same rational square class.
    #[arg(long)]
    strict_square_class: bool,
    /// Triple sidecar; defaults to the one next to the input.
    #[arg(long)]
    triple: Option<PathBuf>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    input: String,
    #[arg(long)]
    complex_lines: bool,
    #[arg(long)]
    triple: Option<PathBuf>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    input: String,
    #[arg(long, value_enum, default_value = "spacelike")]
    plane_type: PlaneType,
    #[arg(long)]
    triple: Option<PathBuf>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct SampledArgs {
    input: String,
    #[arg(long)]
    triple: Option<PathBuf>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

fn parse_delta(s: &str) -> std::result::Result<Delta, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Outcome of a command: the report, whether its checks passed, and the
/// configuration echo.
struct Outcome {
    config: Value,
    report: Value,
    passed: bool,
}

/// Runs the CLI on `args` (including the program name) and writes the JSON
/// document to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_PASS;
            }
            let doc = json!({
                "schema": SCHEMA,
                "version": VERSION,
                "error": { "code": "usage", "message": e.to_string().trim_end() },
            });
            let _ = out.write_all(json_io::to_pretty(&doc).as_bytes());
            return EXIT_ERROR;
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command, out) {
        Ok(None) => EXIT_PASS,
        Ok(Some(outcome)) => {
            let doc = json!({
                "schema": SCHEMA,
                "version": VERSION,
                "command": name,
                "config": outcome.config,
                "passed": outcome.passed,
                "report": outcome.report,
            });
            let _ = out.write_all(json_io::to_pretty(&doc).as_bytes());
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let doc = json!({
                "schema": SCHEMA,
                "version": VERSION,
                "command": name,
                "error": { "code": e.code(), "message": e.to_string() },
            });
            let _ = out.write_all(json_io::to_pretty(&doc).as_bytes());
            EXIT_ERROR
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::BuildExample(_) => "build-example",
        Command::CheckSymmetries(_) => "check-symmetries",
        Command::IpCheck(_) => "ip-check",
        Command::RankProfile(_) => "rank-profile",
        Command::JrSpectrum(_) => "jr-spectrum",
        Command::VerifyLemma(_) => "verify-lemma",
        Command::VerifyTheorem5(_) => "verify-theorem5",
        Command::AlmostComplexCheck(_) => "almost-complex-check",
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Option<Outcome>> {
    match command {
        Command::BuildExample(a) => build(a, out),
        Command::CheckSymmetries(a) => check_symmetries(a).map(Some),
        Command::IpCheck(a) => ip(a).map(Some),
        Command::RankProfile(a) => rank_profile(a).map(Some),
        Command::JrSpectrum(a) => spectrum(a).map(Some),
        Command::VerifyLemma(a) => lemma(a).map(Some),
        Command::VerifyTheorem5(a) => theorem5(a).map(Some),
        Command::AlmostComplexCheck(a) => almost_complex(a).map(Some),
    }
}

fn io_error(path: &str, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("{path}: {e}"))
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_error("<stdin>", e))?;
        Ok(s)
    } else {
        fs::read_to_string(input).map_err(|e| io_error(input, e))
    }
}

fn load_tensor(input: &str) -> Result<CurvatureTensor> {
    json_io::read_tensor(&read_input(input)?).map_err(|e| e.at(display_input(input)))
}

fn display_input(input: &str) -> String {
    if input == "-" {
        "<stdin>".into()
    } else {
        input.into()
    }
}

/// `t.json` → `t.triple.json`.
pub fn sidecar_path(tensor: &Path) -> PathBuf {
    let name = tensor
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name.strip_suffix(".json").unwrap_or(&name);
    tensor.with_file_name(format!("{stem}.triple.json"))
}

fn resolve_triple(input: &str, explicit: Option<&PathBuf>) -> Result<PathBuf> {
    match explicit {
        Some(p) => Ok(p.clone()),
        None if input == "-" => Err(Error::InvalidArgument(
            "reading from standard input needs --triple".into(),
        )),
        None => Ok(sidecar_path(Path::new(input))),
    }
}

fn load_triple(
    input: &str,
    explicit: Option<&PathBuf>,
    tensor: &CurvatureTensor,
) -> Result<(PathBuf, TripleFile)> {
    let path = resolve_triple(input, explicit)?;
    let shown = path.display().to_string();
    let text = fs::read_to_string(&path).map_err(|e| io_error(&shown, e))?;
    let triple = json_io::read_triple(&text).map_err(|e| e.at(&shown))?;
    if triple.space != *tensor.space() {
        return Err(Error::SpaceMismatch.at(shown));
    }
    Ok((path, triple))
}

fn sampling_json(s: &SamplingArgs) -> Value {
    json!({ "samples": s.samples, "seed": s.seed, "bound": s.bound, "max_attempts": s.max_attempts })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn build(a: BuildArgs, out: &mut dyn Write) -> Result<Option<Outcome>> {
    let spec = ExampleSpec {
        delta1: a.delta1,
        delta2: a.delta2,
        lambda1: a.lambda1,
        lambda2: a.lambda2,
        reduced: a.reduced,
    };
    let ex = build_example(&spec)?;
    let tensor_doc = json_io::to_pretty(&json_io::tensor_json(&ex.tensor, a.dense)?);
    let triple_doc = json_io::to_pretty(&json_io::triple_json(
        &ex.space,
        &ex.triple,
        Some((&spec.lambda1, &spec.lambda2)),
    ));
    let triple_path = match (&a.triple_out, a.output.as_str()) {
        (Some(p), _) => Some(p.clone()),
        (None, "-") => None,
        (None, o) => Some(sidecar_path(Path::new(o))),
    };
    if let Some(p) = &triple_path {
        fs::write(p, &triple_doc).map_err(|e| io_error(&p.display().to_string(), e))?;
    }
    if a.output == "-" {
        out.write_all(tensor_doc.as_bytes())
            .map_err(|e| io_error("<stdout>", e))?;
        return Ok(None);
    }
    fs::write(&a.output, &tensor_doc).map_err(|e| io_error(&a.output, e))?;
    let symmetries = validate_symmetries(&ex.tensor);
    let (p, q) = ex.space.signature();
    Ok(Some(Outcome {
        config: json!({
            "delta1": spec.delta1.value(),
            "delta2": spec.delta2.value(),
            "lambda1": json_io::rational_json(&spec.lambda1),
            "lambda2": json_io::rational_json(&spec.lambda2),
            "reduced": spec.reduced,
            "dense": a.dense,
            "output": a.output,
            "triple_out": triple_path.as_ref().map(|p| p.display().to_string()),
        }),
        report: json!({
            "dim": ex.space.dim(),
            "signature": [p, q],
            "deltas": [ex.triple.phi1.delta().value(), ex.triple.phi2.delta().value()],
            "symmetries_passed": symmetries.passed(),
        }),
        passed: symmetries.passed(),
    }))
}

fn check_symmetries(a: InputArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let report = validate_symmetries(&t);
    Ok(Outcome {
        config: json!({ "input": display_input(&a.input) }),
        passed: report.passed(),
        report: json_io::symmetry_report_json(&report),
    })
}

fn ip(a: IpArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let plane_type: CausalType = a.plane_type.into();
    if a.complex_lines && plane_type == CausalType::Mixed {
        return Err(Error::NoMixedComplexLines);
    }
    let triple = if a.complex_lines {
        Some(load_triple(&a.input, a.triple.as_ref(), &t)?)
    } else {
        None
    };
    let config = IpConfig {
        plane_type,
        samples: a.sampling.samples,
        seed: a.sampling.seed,
        bound: a.sampling.bound,
        complex_lines: a.complex_lines,
        strict: a.strict_square_class,
        max_attempts: a.sampling.max_attempts,
    };
    let report = ip_check(&t, &config, triple.as_ref().map(|(_, f)| &f.triple.j))?;
    Ok(Outcome {
        config: merge(
            sampling_json(&a.sampling),
            json!({
                "input": display_input(&a.input),
                "plane_type": plane_type.as_str(),
                "complex_lines": a.complex_lines,
                "strict_square_class": a.strict_square_class,
                "triple": triple.as_ref().map(|(p, _)| p.display().to_string()),
            }),
        ),
        passed: report.passed(),
        report: json_io::ip_report_json(&report),
    })
}

fn rank_profile(a: ProfileArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let triple = if a.complex_lines {
        Some(load_triple(&a.input, a.triple.as_ref(), &t)?)
    } else {
        None
    };
    let s = &a.sampling;
    let report = spacelike_rank_profile(
        &t,
        s.samples,
        s.seed,
        s.bound,
        triple.as_ref().map(|(_, f)| &f.triple.j),
    )?;
    Ok(Outcome {
        config: merge(
            sampling_json(s),
            json!({
                "input": display_input(&a.input),
                "complex_lines": a.complex_lines,
                "triple": triple.as_ref().map(|(p, _)| p.display().to_string()),
            }),
        ),
        passed: report.ranks_constant,
        report: json_io::rank_profile_json(&report),
    })
}

fn spectrum(a: SpectrumArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let plane_type: CausalType = a.plane_type.into();
    let (triple_path, file) = load_triple(&a.input, a.triple.as_ref(), &t)?;
    let s = &a.sampling;
    let mut sampler = PlaneSampler::new(s.seed, s.bound).with_max_attempts(s.max_attempts);
    let mut first = None;
    let mut mismatch = None;
    for index in 0..s.samples {
        let line = sampler.complex_line(t.space(), &file.triple.j, plane_type)?;
        let report = jr_spectrum(&t, &file.triple.j, &line)?;
        match &first {
            None => first = Some(report),
            Some(r0) if *r0 != report => {
                mismatch = Some(json!({
                    "index": index,
                    "line": json_io::plane_json(&line),
                    "spectrum": json_io::spectrum_report_json(&report),
                }));
                break;
            }
            Some(_) => {}
        }
    }
    let riemannian = t.space().is_riemannian();
    let constant = mismatch.is_none();
    let pattern_ok = first.as_ref().is_none_or(|r| r.pattern_ok);
    Ok(Outcome {
        config: merge(
            sampling_json(s),
            json!({
                "input": display_input(&a.input),
                "plane_type": plane_type.as_str(),
                "triple": triple_path.display().to_string(),
            }),
        ),
        passed: constant && (pattern_ok || !riemannian),
        report: json!({
            "constant": constant,
            "spectrum": first.as_ref().map(json_io::spectrum_report_json),
            "pattern_applies": riemannian,
            "mismatch": mismatch,
        }),
    })
}

fn lemma(a: SampledArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let (triple_path, file) = load_triple(&a.input, a.triple.as_ref(), &t)?;
    let s = &a.sampling;
    let n = t.dim();
    let mut vectors = VectorSampler::new(s.seed, s.bound);
    let mut failure = None;
    let mut checked = 0;
    while checked < s.samples {
        let x = spacelike_vector(&file, &mut vectors, n, s.max_attempts)?;
        checked += 1;
        let orth = verify_lemma_orthogonality(&file.space, &file.triple, &x);
        let prod = verify_product_vanishing(&file.space, &file.triple, &x);
        if !(orth.passed() && prod.passed()) {
            failure = Some(
                json!({ "index": checked - 1, "check": json_io::lemma_report_json(&x, &orth, &prod) }),
            );
            break;
        }
    }
    Ok(Outcome {
        config: merge(
            sampling_json(s),
            json!({ "input": display_input(&a.input), "triple": triple_path.display().to_string() }),
        ),
        passed: failure.is_none(),
        report: json!({ "checked": checked, "failure": failure }),
    })
}

fn spacelike_vector(
    file: &TripleFile,
    vectors: &mut VectorSampler,
    n: usize,
    max_attempts: usize,
) -> Result<Vec<Rational>> {
    for _ in 0..max_attempts {
        let x = vectors.vector(n);
        if ipcurv::exact::rational::is_positive(&file.space.norm_sq(&x)) {
            return Ok(x);
        }
    }
    Err(Error::SamplerExhausted {
        wanted: CausalType::Spacelike,
        attempts: max_attempts,
    })
}

/// Coefficients of `φ₁` and `φ₂` in the tensor, from its terms.
fn triple_lambdas(t: &CurvatureTensor, file: &TripleFile) -> Result<(Rational, Rational)> {
    let (mut l1, mut l2) = (Rational::zero(), Rational::zero());
    for (i, term) in t.terms().iter().enumerate() {
        if term.phi == file.triple.phi1 {
            l1 += &term.lambda;
        } else if term.phi == file.triple.phi2 {
            l2 += &term.lambda;
        } else {
            return Err(Error::InvalidArgument(format!(
                "term {i} is neither phi1 nor phi2 of the triple"
            )));
        }
    }
    Ok((l1, l2))
}

fn theorem5(a: SampledArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let (triple_path, file) = load_triple(&a.input, a.triple.as_ref(), &t)?;
    let (l1, l2) = triple_lambdas(&t, &file)?;
    let s = &a.sampling;
    let mut sampler = PlaneSampler::new(s.seed, s.bound).with_max_attempts(s.max_attempts);
    let mut first = None;
    let mut failure = None;
    for index in 0..s.samples {
        let line = sampler.complex_line(&file.space, &file.triple.j, CausalType::Spacelike)?;
        let report = verify_theorem5_blocks(&file.space, &file.triple, &l1, &l2, &line)?;
        if !report.passed() {
            failure = Some(json!({
                "index": index,
                "line": json_io::plane_json(&line),
                "check": json_io::theorem5_report_json(&report),
            }));
            break;
        }
        if first.is_none() {
            first = Some(report);
        }
    }
    Ok(Outcome {
        config: merge(
            sampling_json(s),
            json!({ "input": display_input(&a.input), "triple": triple_path.display().to_string() }),
        ),
        passed: failure.is_none(),
        report: json!({
            "lambda1": json_io::rational_json(&l1),
            "lambda2": json_io::rational_json(&l2),
            "first_line": first.as_ref().map(json_io::theorem5_report_json),
            "failure": failure,
        }),
    })
}

fn almost_complex(a: SampledArgs) -> Result<Outcome> {
    let t = load_tensor(&a.input)?;
    let (triple_path, file) = load_triple(&a.input, a.triple.as_ref(), &t)?;
    let s = &a.sampling;
    let report = almost_complex_check(&t, &file.triple.j, s.samples, s.seed, s.bound)?;
    Ok(Outcome {
        config: merge(
            sampling_json(s),
            json!({ "input": display_input(&a.input), "triple": triple_path.display().to_string() }),
        ),
        passed: report.holds,
        report: json_io::almost_complex_report_json(&report),
    })
}
