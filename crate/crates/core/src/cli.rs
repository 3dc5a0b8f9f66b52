//! Command handlers behind the `bezout` binary.
//!
//! Each handler takes the raw input document and returns the text to print
//! together with the process exit code, so the whole surface can be driven
//! in-process by tests.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure,
//! 3 negative verdict (not the unit ideal).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{parse_rational, rational_int, ModulusBound, Rational};
use crate::error::Error;
use crate::glue::{run_glue_with, DiskSchedule, LocalSolutionProvider};
use crate::groebner::{buchberger, solve_bezout, BezoutCertificate, TermOrder};
use crate::json::{
    infer_n, tuple_from_input, tuple_to_json, upper_from_input, CertificateJson, MatrixJson,
    PolyInput, PolyJson, TraceJson, UpperJson,
};
use crate::param::{apply_shift, difference_matrix, AntisymMatrix};
use crate::verify::verify_trace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Certify,
    Solve,
    Shift,
    Diff,
    Glue,
    Verify,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub order: TermOrder,
    pub modulus_bound: ModulusBound,
    pub pretty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotUnitIdeal => EXIT_NEGATIVE,
        Error::VerificationFailure(_)
        | Error::InternalVerificationFailure(_)
        | Error::NotASolution(_) => EXIT_VERIFICATION,
        _ => EXIT_INPUT,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::error(exit_code(&e), e.to_string())
    }
}

fn render<T: Serialize>(value: &T, opts: &Options) -> String {
    let mut s = if opts.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("wire types always serialize");
    s.push('\n');
    s
}

fn success<T: Serialize>(value: &T, opts: &Options) -> Outcome {
    Outcome {
        code: EXIT_OK,
        stdout: render(value, opts),
        stderr: String::new(),
    }
}

/// Parses JSON, reporting syntax errors with line and column.
fn parse_document<T: for<'de> Deserialize<'de>>(input: &str) -> Result<T, Outcome> {
    let value: Value = serde_json::from_str(input).map_err(|e| {
        Outcome::error(
            EXIT_INPUT,
            format!("input:{}:{}: {e}", e.line(), e.column()),
        )
    })?;
    serde_json::from_value(value)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("input: schema: {e}")))
}

pub fn run(command: Command, input: &str, opts: &Options) -> Outcome {
    let result = match command {
        Command::Certify => cmd_certify(input, opts),
        Command::Solve => cmd_solve(input, opts),
        Command::Shift => cmd_shift(input, opts),
        Command::Diff => cmd_diff(input, opts),
        Command::Glue => cmd_glue(input, opts),
        Command::Verify => cmd_verify(input, opts),
    };
    result.unwrap_or_else(|o| o)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorsInput {
    Doc { n: Option<usize>, f: Vec<PolyInput> },
    Bare(Vec<PolyInput>),
}

impl GeneratorsInput {
    fn tuple(&self) -> crate::Result<crate::PolyTuple> {
        let (n, f) = match self {
            GeneratorsInput::Doc { n, f } => (*n, f),
            GeneratorsInput::Bare(f) => (None, f),
        };
        tuple_from_input(f, infer_n(n, f)?)
    }
}

#[derive(Serialize)]
struct Verdict {
    unit_ideal: bool,
}

pub fn cmd_certify(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: GeneratorsInput = parse_document(input)?;
    let f = doc.tuple()?;
    let basis = buchberger(&f, opts.order)?;
    let unit = basis.is_unit_ideal();
    let mut out = success(&Verdict { unit_ideal: unit }, opts);
    if !unit {
        out.code = EXIT_NEGATIVE;
    }
    Ok(out)
}

pub fn cmd_solve(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: GeneratorsInput = parse_document(input)?;
    let f = doc.tuple()?;
    match solve_bezout(&f, opts.order) {
        Ok(cert) => {
            let cert = BezoutCertificate::checked(cert.f, cert.g)?;
            if !cert.verified {
                return Err(Error::InternalVerificationFailure(
                    "certificate failed re-check".into(),
                )
                .into());
            }
            Ok(success(&CertificateJson::from_certificate(&cert), opts))
        }
        Err(Error::NotUnitIdeal) => {
            let mut out = success(&Verdict { unit_ideal: false }, opts);
            out.code = EXIT_NEGATIVE;
            out.stderr = "not the unit ideal: no Bezout certificate exists\n".into();
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Full(MatrixJson<PolyInput>),
    Upper(UpperJson<PolyInput>),
}

impl MatrixInput {
    fn polys(&self) -> impl Iterator<Item = &PolyInput> {
        let upper = match self {
            MatrixInput::Full(m) => &m.upper,
            MatrixInput::Upper(u) => u,
        };
        upper.0.iter().map(|(_, p)| p)
    }

    fn to_matrix(&self, size: usize, n: usize) -> crate::Result<AntisymMatrix> {
        match self {
            MatrixInput::Full(m) => {
                if m.size != size {
                    return Err(Error::DimensionMismatch {
                        expected: size,
                        found: m.size,
                    });
                }
                upper_from_input(&m.upper, size, n)
            }
            MatrixInput::Upper(u) => upper_from_input(u, size, n),
        }
    }
}

#[derive(Deserialize)]
struct ShiftInput {
    n: Option<usize>,
    a: Vec<PolyInput>,
    x: Vec<PolyInput>,
    #[serde(rename = "H")]
    h: MatrixInput,
}

#[derive(Serialize)]
struct ShiftOutput {
    y: Vec<PolyJson>,
    x_dot_a: PolyJson,
    y_dot_a: PolyJson,
}

pub fn cmd_shift(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: ShiftInput = parse_document(input)?;
    let n = infer_n(doc.n, doc.a.iter().chain(&doc.x).chain(doc.h.polys()))?;
    let a = tuple_from_input(&doc.a, n)?;
    let x = tuple_from_input(&doc.x, n)?;
    let h = doc.h.to_matrix(a.len(), n)?;
    let y = apply_shift(&a, &x, &h)?;
    let out = ShiftOutput {
        x_dot_a: PolyJson::from_poly(&x.dot(&a)?),
        y_dot_a: PolyJson::from_poly(&y.dot(&a)?),
        y: tuple_to_json(&y),
    };
    Ok(success(&out, opts))
}

#[derive(Deserialize)]
struct DiffInput {
    n: Option<usize>,
    x: Vec<PolyInput>,
    y: Vec<PolyInput>,
    a: Option<Vec<PolyInput>>,
}

#[derive(Serialize)]
struct DiffOutput {
    #[serde(rename = "H")]
    h: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconstructs: Option<bool>,
}

pub fn cmd_diff(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: DiffInput = parse_document(input)?;
    let all = doc.x.iter().chain(&doc.y).chain(doc.a.iter().flatten());
    let n = infer_n(doc.n, all)?;
    let x = tuple_from_input(&doc.x, n)?;
    let y = tuple_from_input(&doc.y, n)?;
    let h = difference_matrix(&x, &y)?;
    let reconstructs = match &doc.a {
        Some(a) => {
            let a = tuple_from_input(a, n)?;
            Some(apply_shift(&a, &x, &h)? == y)
        }
        None => None,
    };
    Ok(success(
        &DiffOutput {
            h: MatrixJson::from_matrix(&h),
            reconstructs,
        },
        opts,
    ))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BaseInput {
    Keyword(String),
    Explicit { g: Vec<PolyInput> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RadiusInput {
    Int(i64),
    Text(String),
}

impl RadiusInput {
    fn value(&self) -> crate::Result<Rational> {
        match self {
            RadiusInput::Int(v) => Ok(rational_int(*v)),
            RadiusInput::Text(s) => parse_rational(s),
        }
    }
}

/// Configuration for `glue`. `perturbations[k-1]` shifts the stage-`k`
/// solution; missing entries are zero. `radii` defaults to `1, 2, ...`.
#[derive(Deserialize)]
struct GlueInput {
    n: Option<usize>,
    f: Vec<PolyInput>,
    #[serde(default = "auto_base")]
    base: BaseInput,
    #[serde(default)]
    perturbations: Vec<MatrixInput>,
    radii: Option<Vec<RadiusInput>>,
    stages: usize,
}

fn auto_base() -> BaseInput {
    BaseInput::Keyword("auto".into())
}

pub fn cmd_glue(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: GlueInput = parse_document(input)?;
    let mut polys: Vec<&PolyInput> = doc.f.iter().collect();
    if let BaseInput::Explicit { g } = &doc.base {
        polys.extend(g);
    }
    polys.extend(doc.perturbations.iter().flat_map(MatrixInput::polys));
    let n = infer_n(doc.n, polys)?;
    let f = tuple_from_input(&doc.f, n)?;

    let base = match &doc.base {
        BaseInput::Keyword(k) if k == "auto" => solve_bezout(&f, opts.order)?,
        BaseInput::Keyword(k) => {
            return Err(Error::InvalidInput(format!(
                "base must be \"auto\" or {{\"g\": [...]}}, got {k:?}"
            ))
            .into())
        }
        BaseInput::Explicit { g } => {
            BezoutCertificate::checked(f.clone(), tuple_from_input(g, n)?)?
        }
    };
    let perturbations = doc
        .perturbations
        .iter()
        .map(|p| p.to_matrix(f.len(), n))
        .collect::<crate::Result<Vec<_>>>()?;
    let schedule = match &doc.radii {
        Some(r) => DiskSchedule::new(
            n,
            r.iter()
                .map(RadiusInput::value)
                .collect::<crate::Result<_>>()?,
        )?,
        None => DiskSchedule::standard(n, doc.stages + 1),
    };
    let provider = LocalSolutionProvider::new(base, perturbations)?;
    let trace = run_glue_with(&provider, &schedule, doc.stages, opts.modulus_bound)?;
    let json = TraceJson::from_trace(&trace);
    verify_trace(&json)?;
    Ok(success(&json, opts))
}

#[derive(Serialize)]
struct VerifyOutput {
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    stages: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

pub fn cmd_verify(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let doc: TraceJson = parse_document(input)?;
    match verify_trace(&doc) {
        Ok(report) => Ok(success(
            &VerifyOutput {
                verified: true,
                stages: Some(report.max_stage),
                checks: report.checks,
                failure: None,
            },
            opts,
        )),
        Err(Error::VerificationFailure(msg)) => {
            let mut out = success(
                &VerifyOutput {
                    verified: false,
                    stages: None,
                    checks: vec![],
                    failure: Some(msg.clone()),
                },
                opts,
            );
            out.code = EXIT_VERIFICATION;
            out.stderr = format!("verification failed: {msg}\n");
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}
