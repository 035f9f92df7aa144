//! JSON wire formats and the canonical serializer.
//!
//! Every floating-point number is written in scientific notation with 17
//! significant digits, so output is byte-stable across runs and parses
//! back to bit-identical values. Key order follows struct declaration
//! order and never changes.
//!
//! Loading splits failures three ways. `Parse` covers text that is not
//! the documented JSON shape, `Schema` covers well-formed JSON whose
//! dimensions disagree with its own declared sizes, and `Validation`
//! covers structurally sound data that fails a domain invariant (an
//! asymmetric matrix, a negative spectrum). The split drives process
//! exit codes: 2 for the first two, 3 for the last.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::breaking::BrokenEvent;
use crate::chronometry::{CausalClass, Event};
use crate::error::Error as DomainError;
use crate::mechanics::{AngularMomentum, ElementarySystem, Momentum};
use crate::projection::{CandidateMap, DensityMatrix, Falsification};
use crate::symmetry::{LorentzElement, PoincareElement};
use crate::tolerance::Tolerance;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("inconsistent shape: {0}")]
    Schema(String),
    #[error(transparent)]
    Validation(#[from] DomainError),
}

impl LoadError {
    /// Exit code a command should terminate with when loading fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Parse(_) | LoadError::Schema(_) => 2,
            LoadError::Validation(_) => 3,
        }
    }
}

// Floats print as "{:.16e}": 17 significant digits, enough for any
// double to survive a write/read cycle exactly. serde_json routes
// non-finite values to write_null before this hook is consulted, and
// every quantity the crate emits is finite by construction.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes with fixed key order and the 17-digit float format.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("plain data serializes without io");
    String::from_utf8(buf).expect("serializer emits utf-8")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventDto {
    r: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BrokenEventDto {
    r: usize,
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityDto {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDto {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoincareDto {
    lambda: MatrixDto,
    beta: EventDto,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDto {
    #[serde(rename = "P")]
    p: EventDto,
    l: MatrixDto,
}

#[derive(Serialize)]
struct FalsificationDto {
    #[serde(rename = "counterexample_X")]
    counterexample_x: BrokenEventDto,
    image: EventDto,
    input_class: String,
    image_class: String,
}

/// Classification result in wire order.
#[derive(Serialize)]
pub struct ClassReport {
    pub rank: usize,
    pub p: usize,
    pub q: usize,
    pub label: String,
    pub delta: f64,
}

pub fn class_report(class: &CausalClass, delta: f64) -> ClassReport {
    ClassReport {
        rank: class.rank,
        p: class.plus,
        q: class.minus,
        label: class.label.as_str().to_string(),
        delta,
    }
}

fn check_shape(name: &str, data: &[Vec<f64>], rows: usize, cols: usize) -> Result<(), LoadError> {
    if data.len() != rows || data.iter().any(|row| row.len() != cols) {
        return Err(LoadError::Schema(format!(
            "\"{name}\" must be a {rows}x{cols} row-major array of numbers"
        )));
    }
    Ok(())
}

fn matrix_from_parts(
    ctx: &str,
    re: &[Vec<f64>],
    im: &[Vec<f64>],
    rows: usize,
    cols: usize,
) -> Result<DMatrix<Complex64>, LoadError> {
    let (re_name, im_name) = if ctx.is_empty() {
        ("re".to_string(), "im".to_string())
    } else {
        (format!("{ctx}.re"), format!("{ctx}.im"))
    };
    check_shape(&re_name, re, rows, cols)?;
    check_shape(&im_name, im, rows, cols)?;
    Ok(DMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(re[i][j], im[i][j])
    }))
}

fn matrix_parts(m: &DMatrix<Complex64>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let im = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect())
        .collect();
    (re, im)
}

fn event_dto(x: &Event) -> EventDto {
    let (re, im) = matrix_parts(x.matrix());
    EventDto { r: x.dim(), re, im }
}

fn event_from_dto(ctx: &str, dto: &EventDto, tol: &Tolerance) -> Result<Event, LoadError> {
    if dto.r == 0 {
        return Err(LoadError::Schema(format!(
            "\"{}r\" must be positive",
            if ctx.is_empty() { String::new() } else { format!("{ctx}.") }
        )));
    }
    let m = matrix_from_parts(ctx, &dto.re, &dto.im, dto.r, dto.r)?;
    Ok(Event::new(m, tol)?)
}

pub fn event_to_json(x: &Event) -> String {
    to_canonical_json(&event_dto(x))
}

pub fn event_from_json(text: &str, tol: &Tolerance) -> Result<Event, LoadError> {
    let dto: EventDto = serde_json::from_str(text)?;
    event_from_dto("", &dto, tol)
}

fn broken_event_dto(x: &BrokenEvent) -> BrokenEventDto {
    let (re, im) = matrix_parts(x.matrix());
    BrokenEventDto {
        r: x.dim(),
        n: x.internal_dim(),
        re,
        im,
    }
}

pub fn broken_event_to_json(x: &BrokenEvent) -> String {
    to_canonical_json(&broken_event_dto(x))
}

pub fn broken_event_from_json(text: &str, tol: &Tolerance) -> Result<BrokenEvent, LoadError> {
    let dto: BrokenEventDto = serde_json::from_str(text)?;
    if dto.n == 0 {
        return Err(LoadError::Schema("\"n\" must be positive".to_string()));
    }
    if dto.r != 2 * dto.n {
        return Err(LoadError::Schema(format!(
            "\"r\" must equal 2n (r = {}, n = {})",
            dto.r, dto.n
        )));
    }
    let m = matrix_from_parts("", &dto.re, &dto.im, dto.r, dto.r)?;
    Ok(BrokenEvent::new(m, dto.n, tol)?)
}

fn density_matrix_from_dto(dto: &DensityDto) -> Result<DMatrix<Complex64>, LoadError> {
    if dto.n == 0 {
        return Err(LoadError::Schema("\"n\" must be positive".to_string()));
    }
    matrix_from_parts("", &dto.re, &dto.im, dto.n, dto.n)
}

pub fn density_from_json(text: &str, tol: &Tolerance) -> Result<DensityMatrix, LoadError> {
    let dto: DensityDto = serde_json::from_str(text)?;
    Ok(DensityMatrix::new(density_matrix_from_dto(&dto)?, tol)?)
}

/// Loads a density-matrix file without the positivity gate, so that
/// non-PSD candidates can still reach the falsifier.
pub fn candidate_from_json(text: &str, tol: &Tolerance) -> Result<CandidateMap, LoadError> {
    let dto: DensityDto = serde_json::from_str(text)?;
    Ok(CandidateMap::new(density_matrix_from_dto(&dto)?, tol)?)
}

pub fn poincare_to_json(g: &PoincareElement) -> String {
    let (re, im) = matrix_parts(g.lambda.matrix());
    to_canonical_json(&PoincareDto {
        lambda: MatrixDto { re, im },
        beta: event_dto(&g.beta),
    })
}

pub fn poincare_from_json(text: &str, tol: &Tolerance) -> Result<PoincareElement, LoadError> {
    let dto: PoincareDto = serde_json::from_str(text)?;
    let beta = event_from_dto("beta", &dto.beta, tol)?;
    let r = beta.dim();
    let lm = matrix_from_parts("lambda", &dto.lambda.re, &dto.lambda.im, r, r)?;
    let lambda = LorentzElement::new(lm, tol)?;
    Ok(PoincareElement::new(lambda, beta)?)
}

pub fn system_to_json(sys: &ElementarySystem) -> String {
    let (re, im) = matrix_parts(sys.angular_momentum().matrix());
    to_canonical_json(&SystemDto {
        p: event_dto(sys.momentum().event()),
        l: MatrixDto { re, im },
    })
}

pub fn system_from_json(text: &str, tol: &Tolerance) -> Result<ElementarySystem, LoadError> {
    let dto: SystemDto = serde_json::from_str(text)?;
    let p = event_from_dto("P", &dto.p, tol)?;
    let r = p.dim();
    let lm = matrix_from_parts("l", &dto.l.re, &dto.l.im, r, r)?;
    let angular = AngularMomentum::new(lm, tol)?;
    Ok(ElementarySystem::new(Momentum::new(p), angular)?)
}

pub fn falsification_to_json(f: &Falsification) -> String {
    to_canonical_json(&FalsificationDto {
        counterexample_x: broken_event_dto(&f.input),
        image: event_dto(&f.image),
        input_class: f.input_class.label.as_str().to_string(),
        image_class: f.image_class.label.as_str().to_string(),
    })
}
