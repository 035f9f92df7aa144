//! The r = 2n symmetry-breaking decomposition: an internal n-dimensional
//! factor is split off, Minkowski space sits inside as the slice x ⊗ I,
//! and the ordinary Poincaré group acts through the lifted generators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::chronometry::Event;
use crate::error::{Error, Result};
use crate::linalg::{matrix_from_hermitian_functional, max_abs};
use crate::symmetry::{LorentzElement, PoincareElement};
use crate::tolerance::Tolerance;

/// Event of a broken quantum space-time, a 2n×2n weakly Hermitian matrix
/// with the row index clumped spinor-major: row a = A·n + i, so the n×n
/// block at block position (A,A') carries the internal indices.
#[derive(Clone, Debug, PartialEq)]
pub struct BrokenEvent {
    event: Event,
    n: usize,
}

impl BrokenEvent {
    pub fn new(m: DMatrix<Complex64>, n: usize, tol: &Tolerance) -> Result<BrokenEvent> {
        if n == 0 {
            return Err(Error::WrongDimension { expected: 1, actual: 0 });
        }
        if m.nrows() != 2 * n || m.ncols() != 2 * n {
            return Err(Error::WrongDimension {
                expected: 2 * n,
                actual: m.nrows().min(m.ncols()),
            });
        }
        Ok(BrokenEvent {
            event: Event::new(m, tol)?,
            n,
        })
    }

    pub fn from_event(event: Event, n: usize) -> Result<BrokenEvent> {
        if n == 0 || event.dim() != 2 * n {
            return Err(Error::WrongDimension {
                expected: 2 * n.max(1),
                actual: event.dim(),
            });
        }
        Ok(BrokenEvent { event, n })
    }

    fn wrap(m: DMatrix<Complex64>, n: usize) -> BrokenEvent {
        BrokenEvent {
            event: Event::wrap(m),
            n,
        }
    }

    /// Full dimension 2n.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Internal dimension n.
    pub fn internal_dim(&self) -> usize {
        self.n
    }

    pub fn event(&self) -> &Event {
        &self.event
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.event.matrix()
    }

    /// The n×n internal block at spinor position (a, a').
    pub fn block(&self, a: usize, ap: usize) -> DMatrix<Complex64> {
        assert!(a < 2 && ap < 2, "spinor block indices run over 0..2");
        self.matrix()
            .view((a * self.n, ap * self.n), (self.n, self.n))
            .clone_owned()
    }
}

/// Embeds a Minkowski event as x ⊗ I_n, the canonical slice of the
/// broken space-time.
pub fn embed_minkowski(x: &Event, n: usize) -> Result<BrokenEvent> {
    if x.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, actual: x.dim() });
    }
    if n == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    let big = x.matrix().kronecker(&DMatrix::<Complex64>::identity(n, n));
    Ok(BrokenEvent::wrap(big, n))
}

/// Tests membership of the embedded slice: the candidate base point is
/// read off from the internal block traces, and the residual against its
/// embedding is measured entrywise.
pub fn is_embedded(x: &BrokenEvent, tol: f64) -> Option<Event> {
    let n = x.internal_dim();
    let base = DMatrix::from_fn(2, 2, |a, ap| x.block(a, ap).trace() / Complex64::new(n as f64, 0.0));
    let candidate = Event::wrap(base);
    let rebuilt = candidate
        .matrix()
        .kronecker(&DMatrix::<Complex64>::identity(n, n));
    let deviation = max_abs(&(x.matrix() - rebuilt));
    if deviation <= tol {
        Some(candidate)
    } else {
        None
    }
}

/// Lifts an ordinary Poincaré element to the broken space-time as
/// (λ ⊗ I_n, β ⊗ I_n). The unimodularity check runs on the 2×2 factor:
/// det(λ)ⁿ = 1 does not imply det(λ) = 1 for even n.
pub fn lift_poincare(
    lambda2: &DMatrix<Complex64>,
    beta2: &Event,
    n: usize,
    tol: &Tolerance,
) -> Result<PoincareElement> {
    if lambda2.nrows() != 2 || lambda2.ncols() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: lambda2.nrows().min(lambda2.ncols()),
        });
    }
    if beta2.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, actual: beta2.dim() });
    }
    if n == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    let defect = (lambda2.determinant() - Complex64::ONE).norm();
    if defect > tol.threshold(1.0) {
        return Err(Error::NotUnimodular { defect });
    }
    let eye = DMatrix::<Complex64>::identity(n, n);
    let lambda = LorentzElement::new(lambda2.kronecker(&eye), tol)?;
    let beta = Event::wrap(beta2.matrix().kronecker(&eye));
    PoincareElement::new(lambda, beta)
}

/// A preferred invertible weakly Hermitian element, turning hyperspinor
/// conjugation into an operation on mixed-index matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianCorrelation {
    t: DMatrix<Complex64>,
    t_inv: DMatrix<Complex64>,
}

impl HermitianCorrelation {
    pub fn new(t: DMatrix<Complex64>, tol: &Tolerance) -> Result<HermitianCorrelation> {
        if t.nrows() != t.ncols() {
            return Err(Error::DimensionMismatch { left: t.nrows(), right: t.ncols() });
        }
        let defect = crate::linalg::hermitian_defect(&t);
        if defect > tol.threshold(max_abs(&t)) {
            return Err(Error::NonHermitianInput { defect });
        }
        // Weak Hermiticity makes |spectrum| the singular values.
        let spectrum = t.clone().symmetric_eigen().eigenvalues;
        let top = spectrum.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let bottom = spectrum.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        if bottom <= tol.threshold(top) {
            return Err(Error::SingularCorrelation);
        }
        let t_inv = t.clone().try_inverse().ok_or(Error::SingularCorrelation)?;
        Ok(HermitianCorrelation { t, t_inv })
    }

    pub fn dim(&self) -> usize {
        self.t.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.t
    }
}

/// The t-induced conjugate t⁻¹·μ†·t of a mixed-index matrix. With the
/// identity correlation this is the ordinary conjugate transpose, and it
/// is an involution for any admissible t.
pub fn strong_hermitian_conjugate(
    mu: &DMatrix<Complex64>,
    t: &HermitianCorrelation,
) -> Result<DMatrix<Complex64>> {
    if mu.nrows() != t.dim() || mu.ncols() != t.dim() {
        return Err(Error::DimensionMismatch {
            left: mu.nrows().min(mu.ncols()),
            right: t.dim(),
        });
    }
    Ok(&t.t_inv * mu.adjoint() * &t.t)
}

/// Whether μ equals its own t-induced conjugate.
pub fn is_strong_hermitian(
    mu: &DMatrix<Complex64>,
    t: &HermitianCorrelation,
    tol: &Tolerance,
) -> Result<bool> {
    let conj = strong_hermitian_conjugate(mu, t)?;
    Ok(max_abs(&(mu - conj)) <= tol.threshold(max_abs(mu)))
}

/// A pair of hyperspinors (ω, π) of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypertwistor {
    omega: DVector<Complex64>,
    pi: DVector<Complex64>,
}

impl Hypertwistor {
    pub fn new(omega: DVector<Complex64>, pi: DVector<Complex64>) -> Result<Hypertwistor> {
        if omega.len() != pi.len() {
            return Err(Error::DimensionMismatch { left: omega.len(), right: pi.len() });
        }
        if omega.is_empty() {
            return Err(Error::WrongDimension { expected: 1, actual: 0 });
        }
        Ok(Hypertwistor { omega, pi })
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &DVector<Complex64> {
        &self.omega
    }

    pub fn pi(&self) -> &DVector<Complex64> {
        &self.pi
    }
}

/// Pseudo-norm 2·Re Σ ω_k·conj(π_k). The induced form on the doubled
/// space has split signature (r, r).
pub fn twistor_pseudo_norm(z: &Hypertwistor) -> f64 {
    2.0 * z
        .omega
        .iter()
        .zip(z.pi.iter())
        .map(|(w, p)| (w * p.conj()).re)
        .sum::<f64>()
}

/// Applies a 2r×2r block matrix to the stacked (ω, π) column.
pub fn apply_twistor_map(m: &DMatrix<Complex64>, z: &Hypertwistor) -> Result<Hypertwistor> {
    let r = z.dim();
    if m.nrows() != 2 * r || m.ncols() != 2 * r {
        return Err(Error::DimensionMismatch {
            left: m.nrows().min(m.ncols()),
            right: 2 * r,
        });
    }
    let mut stacked = DVector::<Complex64>::zeros(2 * r);
    stacked.rows_mut(0, r).copy_from(&z.omega);
    stacked.rows_mut(r, r).copy_from(&z.pi);
    let moved = m * stacked;
    Ok(Hypertwistor {
        omega: moved.rows(0, r).clone_owned(),
        pi: moved.rows(r, r).clone_owned(),
    })
}

/// Rank-1 factorization Z^{αi} = Z^α·ψ^i when it exists.
///
/// The factorization is unique up to reciprocal scaling of the factors;
/// determinism is restored by giving the left factor unit norm and a
/// real positive leading component. Returns None when the residual
/// outside the leading singular direction is too large relative to the
/// leading singular value.
///
/// The leading direction comes from the Hermitian eigenproblem of the
/// Gram matrix Z†Z rather than a general SVD, and the rank test uses the
/// explicitly deflated residual Z(I − vv†): the rank-1 part cancels
/// there to rounding, so small second singular values are resolved at
/// full precision instead of the squared-condition floor of the Gram
/// spectrum alone.
pub fn segre_factor(
    z: &DMatrix<Complex64>,
    tol: &Tolerance,
) -> Result<Option<(DVector<Complex64>, DVector<Complex64>)>> {
    if z.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::ZeroInput);
    }
    let gram = z.adjoint() * z;
    let eigen = gram.symmetric_eigen();
    let mut lead_idx = 0;
    for (k, value) in eigen.eigenvalues.iter().enumerate() {
        if *value > eigen.eigenvalues[lead_idx] {
            lead_idx = k;
        }
    }
    let v: DVector<Complex64> = eigen.eigenvectors.column(lead_idx).into_owned();
    let zv = z * &v;
    let top = zv.norm();
    if top == 0.0 {
        return Err(Error::ZeroInput);
    }
    let residual = z - &zv * v.adjoint();
    if residual.norm() > tol.rel_eps * top {
        return Ok(None);
    }
    let left_raw = zv.map(|c| c / Complex64::new(top, 0.0));
    let right_raw = v.map(|c| c.conj() * top);

    let lead = left_raw
        .iter()
        .find(|c| c.norm() > 1e-12)
        .copied()
        .unwrap_or(Complex64::ONE);
    let phase = lead / lead.norm();
    let left = left_raw.map(|c| c * phase.conj());
    let right = right_raw.map(|c| c * phase);
    Ok(Some((left, right)))
}

/// A scalar field on the broken space-time, evaluable near embedded
/// points. Evaluators must be reentrant.
pub struct ScalarField {
    f: Box<dyn Fn(&BrokenEvent) -> Complex64 + Send + Sync>,
}

impl ScalarField {
    pub fn new<F>(f: F) -> ScalarField
    where
        F: Fn(&BrokenEvent) -> Complex64 + Send + Sync + 'static,
    {
        ScalarField { f: Box::new(f) }
    }

    pub fn eval(&self, x: &BrokenEvent) -> Complex64 {
        (self.f)(x)
    }
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField").finish_non_exhaustive()
    }
}

/// First-order term of a field expansion about an embedded point,
/// reorganized into the four internal n×n blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGradient {
    n: usize,
    entries: DMatrix<Complex64>,
}

impl FieldGradient {
    pub fn internal_dim(&self) -> usize {
        self.n
    }

    /// Full 2n×2n representative pairing entrywise with tangents.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn block(&self, a: usize, ap: usize) -> DMatrix<Complex64> {
        assert!(a < 2 && ap < 2, "spinor block indices run over 0..2");
        self.entries
            .view((a * self.n, ap * self.n), (self.n, self.n))
            .clone_owned()
    }
}

/// Default central-difference step for `field_expand`.
pub fn default_field_step(x: &Event) -> f64 {
    1e-5 * (1.0 + max_abs(x.matrix()))
}

/// Zeroth- and first-order terms of a scalar field about the embedded
/// point of x. The gradient is assembled from central differences along
/// the weakly Hermitian coordinate directions, so it pairs entrywise
/// with tangent matrices and works for complex-valued fields.
pub fn field_expand(
    phi: &ScalarField,
    x: &Event,
    n: usize,
    h: f64,
) -> Result<(Complex64, FieldGradient)> {
    assert!(h > 0.0, "step must be positive");
    let base = embed_minkowski(x, n)?;
    let phi0 = phi.eval(&base);
    let entries = matrix_from_hermitian_functional(2 * n, |e| {
        let fwd = phi.eval(&BrokenEvent::wrap(base.matrix() + e.scale(h), n));
        let bwd = phi.eval(&BrokenEvent::wrap(base.matrix() - e.scale(h), n));
        (fwd - bwd) / Complex64::new(2.0 * h, 0.0)
    });
    Ok((phi0, FieldGradient { n, entries }))
}
