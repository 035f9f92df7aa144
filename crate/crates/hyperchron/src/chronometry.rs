//! Events and intervals as weakly Hermitian matrices, the chronometric
//! form and its polarization, causal classification, canonical
//! decomposition, proper time, and the two-dimensional Minkowski
//! correspondence.
//!
//! The chronometric form of an r×r interval is r!·det. Its full
//! polarization (one value per r-tuple of intervals) is recovered by
//! inclusion-exclusion over determinants of subset sums; on r equal slots
//! the two agree, which the test suite checks against an explicit
//! permutation-sum contraction.

use crate::linalg::{
    factorial, hermitian_defect, matrix_from_hermitian_functional, max_abs, symmetrize,
};
use crate::{Error, Result, Tolerance};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::ops::{Add, Neg, Sub};

/// A point (or, as a difference, a separation) of the r²-dimensional
/// space-time: an r×r weakly Hermitian complex matrix.
///
/// The stored matrix is exactly Hermitian: constructors validate the input
/// against a tolerance, then average away the rounding asymmetry once.
/// Sums, differences, negation and real scaling preserve exact Hermiticity,
/// so downstream code never re-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    m: DMatrix<Complex64>,
}

/// A separation vector between two events. Same representation, same
/// invariant; the distinction is bookkeeping for readers.
pub type Interval = Event;

impl Event {
    pub fn new(m: DMatrix<Complex64>, tol: &Tolerance) -> Result<Event> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::WrongDimension { expected: 1, actual: 0 });
        }
        let defect = hermitian_defect(&m);
        if defect > tol.threshold(max_abs(&m)) {
            return Err(Error::NonHermitianInput { defect });
        }
        Ok(Event { m: symmetrize(&m) })
    }

    /// Internal constructor for matrices Hermitian by construction
    /// (products λxλ†, sums of a matrix and its adjoint, ...). Symmetrizes
    /// once instead of validating.
    pub(crate) fn wrap(m: DMatrix<Complex64>) -> Event {
        Event { m: symmetrize(&m) }
    }

    pub fn zero(r: usize) -> Event {
        assert!(r >= 1, "events have dimension at least 1");
        Event { m: DMatrix::zeros(r, r) }
    }

    pub fn identity(r: usize) -> Event {
        assert!(r >= 1, "events have dimension at least 1");
        Event { m: DMatrix::identity(r, r) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn scale(&self, c: f64) -> Event {
        Event { m: self.m.scale(c) }
    }
}

// Entrywise sums and real scalings of exactly Hermitian matrices are
// exactly Hermitian in IEEE arithmetic, so these skip re-symmetrization.
// The operators panic on dimension mismatch; fallible call sites go
// through the checked constructors instead.
impl Add for &Event {
    type Output = Event;
    fn add(self, rhs: &Event) -> Event {
        assert_eq!(self.dim(), rhs.dim(), "event dimensions differ");
        Event { m: &self.m + &rhs.m }
    }
}

impl Sub for &Event {
    type Output = Event;
    fn sub(self, rhs: &Event) -> Event {
        assert_eq!(self.dim(), rhs.dim(), "event dimensions differ");
        Event { m: &self.m - &rhs.m }
    }
}

impl Neg for &Event {
    type Output = Event;
    fn neg(self) -> Event {
        Event { m: -&self.m }
    }
}

pub fn is_weakly_hermitian(m: &DMatrix<Complex64>, tol: &Tolerance) -> bool {
    m.nrows() == m.ncols() && hermitian_defect(m) <= tol.threshold(max_abs(m))
}

/// The chronometric form Δ(v) = r!·det(v). Real for weakly Hermitian v.
pub fn chronometric_form(v: &Interval) -> f64 {
    factorial(v.dim()) * v.matrix().determinant().re
}

/// Inclusion-exclusion polarization over subset sums. The determinant of a
/// Hermitian sum is real, so only real parts are accumulated.
fn polarization_sum(slots: &[&DMatrix<Complex64>]) -> f64 {
    let r = slots.len();
    debug_assert!(r >= 1 && r <= 63);
    let mut acc = 0.0;
    for mask in 1u64..(1u64 << r) {
        let mut sum = DMatrix::<Complex64>::zeros(r, r);
        for (i, slot) in slots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += *slot;
            }
        }
        let sign = if (r - mask.count_ones() as usize) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * sum.determinant().re;
    }
    acc
}

/// The chronometric tensor evaluated on r distinct slots: the unique
/// symmetric multilinear extension of the form, with
/// mixed_chronometric(v, ..., v) = chronometric_form(v).
pub fn mixed_chronometric(slots: &[Interval]) -> Result<f64> {
    let first = slots.first().ok_or(Error::WrongArity { expected: 1, actual: 0 })?;
    let r = first.dim();
    if slots.len() != r {
        return Err(Error::WrongArity { expected: r, actual: slots.len() });
    }
    for s in slots {
        if s.dim() != r {
            return Err(Error::DimensionMismatch { left: r, right: s.dim() });
        }
    }
    let mats: Vec<&DMatrix<Complex64>> = slots.iter().map(|s| s.matrix()).collect();
    Ok(polarization_sum(&mats))
}

/// The one-slot-open chronometric functional g(·, v₁, ..., v_{r-1}) as a
/// dual matrix N under the entrywise pairing
/// ⟨N,u⟩ = Σ_{A,A'} N[A][A']·u[A][A'].
/// N is Hermitian because the functional is real on Hermitian arguments.
pub fn polarized_covector(vs: &[Interval]) -> Result<DMatrix<Complex64>> {
    let first = vs.first().ok_or(Error::WrongArity { expected: 1, actual: 0 })?;
    let r = first.dim();
    if vs.len() + 1 != r {
        return Err(Error::WrongArity { expected: r.saturating_sub(1), actual: vs.len() });
    }
    for s in vs {
        if s.dim() != r {
            return Err(Error::DimensionMismatch { left: r, right: s.dim() });
        }
    }
    Ok(matrix_from_hermitian_functional(r, |e| {
        let mut mats: Vec<&DMatrix<Complex64>> = Vec::with_capacity(r);
        mats.push(e);
        mats.extend(vs.iter().map(|s| s.matrix()));
        Complex64::new(polarization_sum(&mats), 0.0)
    }))
}

/// Causal type of a separation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalLabel {
    Zero,
    FutureNull,
    PastNull,
    DegenerateFutureTimelike,
    DegeneratePastTimelike,
    DegenerateSpacelike,
    DegenerateFutureSemiSpacelike,
    DegeneratePastSemiSpacelike,
    FutureTimelike,
    PastTimelike,
    Spacelike,
    FutureSemiSpacelike,
    PastSemiSpacelike,
}

impl CausalLabel {
    pub const ALL: [CausalLabel; 13] = [
        CausalLabel::Zero,
        CausalLabel::FutureNull,
        CausalLabel::PastNull,
        CausalLabel::DegenerateFutureTimelike,
        CausalLabel::DegeneratePastTimelike,
        CausalLabel::DegenerateSpacelike,
        CausalLabel::DegenerateFutureSemiSpacelike,
        CausalLabel::DegeneratePastSemiSpacelike,
        CausalLabel::FutureTimelike,
        CausalLabel::PastTimelike,
        CausalLabel::Spacelike,
        CausalLabel::FutureSemiSpacelike,
        CausalLabel::PastSemiSpacelike,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CausalLabel::Zero => "Zero",
            CausalLabel::FutureNull => "FutureNull",
            CausalLabel::PastNull => "PastNull",
            CausalLabel::DegenerateFutureTimelike => "DegenerateFutureTimelike",
            CausalLabel::DegeneratePastTimelike => "DegeneratePastTimelike",
            CausalLabel::DegenerateSpacelike => "DegenerateSpacelike",
            CausalLabel::DegenerateFutureSemiSpacelike => "DegenerateFutureSemiSpacelike",
            CausalLabel::DegeneratePastSemiSpacelike => "DegeneratePastSemiSpacelike",
            CausalLabel::FutureTimelike => "FutureTimelike",
            CausalLabel::PastTimelike => "PastTimelike",
            CausalLabel::Spacelike => "Spacelike",
            CausalLabel::FutureSemiSpacelike => "FutureSemiSpacelike",
            CausalLabel::PastSemiSpacelike => "PastSemiSpacelike",
        }
    }
}

impl std::fmt::Display for CausalLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signature data of a separation: counts of eigenvalues above and below
/// the spectral threshold, their sum (the rank), and the derived label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CausalClass {
    pub rank: usize,
    pub plus: usize,
    pub minus: usize,
    pub label: CausalLabel,
}

fn spectrum(v: &Interval) -> DVector<f64> {
    v.matrix().clone().symmetric_eigen().eigenvalues
}

fn signature(v: &Interval, tol: &Tolerance) -> (usize, usize) {
    let eigen = spectrum(v);
    let scale = eigen.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let theta = tol.threshold(scale);
    let plus = eigen.iter().filter(|l| **l > theta).count();
    let minus = eigen.iter().filter(|l| **l < -theta).count();
    (plus, minus)
}

fn label_for(r: usize, plus: usize, minus: usize) -> CausalLabel {
    let rank = plus + minus;
    if rank == 0 {
        CausalLabel::Zero
    } else if rank == r {
        if minus == 0 {
            CausalLabel::FutureTimelike
        } else if plus == 0 {
            CausalLabel::PastTimelike
        } else if plus == minus {
            CausalLabel::Spacelike
        } else if plus > minus {
            CausalLabel::FutureSemiSpacelike
        } else {
            CausalLabel::PastSemiSpacelike
        }
    } else if rank == 1 {
        if plus == 1 { CausalLabel::FutureNull } else { CausalLabel::PastNull }
    } else if minus == 0 {
        CausalLabel::DegenerateFutureTimelike
    } else if plus == 0 {
        CausalLabel::DegeneratePastTimelike
    } else if plus == minus {
        CausalLabel::DegenerateSpacelike
    } else if plus > minus {
        CausalLabel::DegenerateFutureSemiSpacelike
    } else {
        CausalLabel::DegeneratePastSemiSpacelike
    }
}

/// Eigenvalue counts against the relative threshold
/// θ = abs_eps + rel_eps·max|λ|, so the classifier is scale equivariant.
pub fn causal_classify(v: &Interval, tol: &Tolerance) -> CausalClass {
    let (plus, minus) = signature(v, tol);
    CausalClass { rank: plus + minus, plus, minus, label: label_for(v.dim(), plus, minus) }
}

/// Weighted-eigenvector decomposition v = Σ sign·α α†.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    /// (sign, α) terms, ordered by descending eigenvalue; each α is
    /// √|λ|·(unit eigenvector) with its largest component rotated to the
    /// positive real axis.
    pub terms: Vec<(f64, DVector<Complex64>)>,
}

pub fn canonical_decompose(v: &Interval, tol: &Tolerance) -> CanonicalDecomposition {
    let r = v.dim();
    let se = v.matrix().clone().symmetric_eigen();
    let scale = se.eigenvalues.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let theta = tol.threshold(scale);
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let mut terms = Vec::new();
    for idx in order {
        let lambda = se.eigenvalues[idx];
        if lambda.abs() <= theta {
            continue;
        }
        let mut alpha: DVector<Complex64> = se.eigenvectors.column(idx).into_owned();
        alpha *= Complex64::new(lambda.abs().sqrt(), 0.0);
        let mut k = 0;
        for j in 1..r {
            if alpha[j].norm() > alpha[k].norm() {
                k = j;
            }
        }
        let a = alpha[k];
        if a.norm() > 0.0 {
            alpha *= (a / Complex64::new(a.norm(), 0.0)).conj();
        }
        terms.push((if lambda > 0.0 { 1.0 } else { -1.0 }, alpha));
    }
    CanonicalDecomposition { terms }
}

/// Proper time of a timelike separation: |Δ|^{1/r}.
pub fn interval_proper_time(v: &Interval, tol: &Tolerance) -> Result<f64> {
    let cls = causal_classify(v, tol);
    match cls.label {
        CausalLabel::FutureTimelike | CausalLabel::PastTimelike => {
            Ok(chronometric_form(v).abs().powf(1.0 / v.dim() as f64))
        }
        _ => Err(Error::NotTimelike { rank: cls.rank, plus: cls.plus, minus: cls.minus }),
    }
}

pub fn proper_time(x: &Event, y: &Event, tol: &Tolerance) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    interval_proper_time(&(x - y), tol)
}

/// The 2×2 image of Minkowski coordinates,
/// (1/√2)·[[t+z, x+iy], [x−iy, t−z]]. Hermitian by construction;
/// 2·det = t² − x² − y² − z².
pub fn minkowski_to_event(t: f64, x: f64, y: f64, z: f64) -> Event {
    let s = std::f64::consts::SQRT_2;
    let m = DMatrix::from_row_slice(2, 2, &[
        Complex64::new((t + z) / s, 0.0),
        Complex64::new(x / s, y / s),
        Complex64::new(x / s, -y / s),
        Complex64::new((t - z) / s, 0.0),
    ]);
    Event { m }
}

pub fn event_to_minkowski(v: &Event) -> Result<(f64, f64, f64, f64)> {
    if v.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, actual: v.dim() });
    }
    let s = std::f64::consts::SQRT_2;
    let m = v.matrix();
    let t = (m[(0, 0)].re + m[(1, 1)].re) / s;
    let z = (m[(0, 0)].re - m[(1, 1)].re) / s;
    let x = s * m[(0, 1)].re;
    let y = s * m[(0, 1)].im;
    Ok((t, x, y, z))
}

/// Membership in the closed future cone minus the origin: positive
/// semi-definite and nonzero at the spectral threshold.
pub fn is_future_causal(v: &Interval, tol: &Tolerance) -> bool {
    let (plus, minus) = signature(v, tol);
    minus == 0 && plus >= 1
}

/// Closed future cone including the origin.
pub fn is_future_causal_or_zero(v: &Interval, tol: &Tolerance) -> bool {
    let (_, minus) = signature(v, tol);
    minus == 0
}
