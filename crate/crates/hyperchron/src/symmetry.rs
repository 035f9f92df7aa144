//! Group actions on events, seeded sampling of unimodular elements,
//! geodesics, the proper-time functional, and the symmetry generators with
//! their conserved quantities along geodesics.

use crate::chronometry::{
    causal_classify, chronometric_form, interval_proper_time, mixed_chronometric,
    polarized_covector, CausalLabel, Event, Interval,
};
use crate::linalg::{hermitian_basis, max_abs};
use crate::sample::{random_matrix, rng_from_seed};
use crate::{Error, Result, Tolerance};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Unimodular r×r complex matrix acting on events by x ↦ λxλ†.
#[derive(Clone, Debug)]
pub struct LorentzElement {
    lambda: DMatrix<Complex64>,
}

impl LorentzElement {
    pub fn new(lambda: DMatrix<Complex64>, tol: &Tolerance) -> Result<LorentzElement> {
        if lambda.nrows() != lambda.ncols() {
            return Err(Error::DimensionMismatch { left: lambda.nrows(), right: lambda.ncols() });
        }
        let defect = (lambda.determinant() - Complex64::new(1.0, 0.0)).norm();
        if defect > tol.threshold(1.0) {
            return Err(Error::NotUnimodular { defect });
        }
        Ok(LorentzElement { lambda })
    }

    /// For products of validated elements, where unimodularity holds to
    /// rounding by construction.
    fn compose_unchecked(lambda: DMatrix<Complex64>) -> LorentzElement {
        LorentzElement { lambda }
    }

    pub fn dim(&self) -> usize {
        self.lambda.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.lambda
    }
}

/// A symmetry of the space-time: x ↦ λxλ† + β.
#[derive(Clone, Debug)]
pub struct PoincareElement {
    pub lambda: LorentzElement,
    pub beta: Event,
}

impl PoincareElement {
    pub fn new(lambda: LorentzElement, beta: Event) -> Result<PoincareElement> {
        if lambda.dim() != beta.dim() {
            return Err(Error::DimensionMismatch { left: lambda.dim(), right: beta.dim() });
        }
        Ok(PoincareElement { lambda, beta })
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    /// Group law: (λ₁,β₁)∘(λ₂,β₂) = (λ₁λ₂, λ₁β₂λ₁† + β₁).
    pub fn compose(&self, other: &PoincareElement) -> Result<PoincareElement> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let lambda = self.lambda.matrix() * other.lambda.matrix();
        let moved = Event::wrap(self.lambda.matrix() * other.beta.matrix() * self.lambda.matrix().adjoint());
        Ok(PoincareElement {
            lambda: LorentzElement::compose_unchecked(lambda),
            beta: &moved + &self.beta,
        })
    }
}

pub fn apply_poincare(g: &PoincareElement, x: &Event) -> Result<Event> {
    if g.dim() != x.dim() {
        return Err(Error::DimensionMismatch { left: g.dim(), right: x.dim() });
    }
    let moved = g.lambda.matrix() * x.matrix() * g.lambda.matrix().adjoint();
    Ok(&Event::wrap(moved) + &g.beta)
}

const SL_SAMPLE_ATTEMPTS: usize = 64;
const SL_CONDITION_LIMIT: f64 = 1e6;

/// Seeded random unimodular element: a complex Gaussian matrix rescaled by
/// the principal r-th root of its determinant. Ill-conditioned or
/// near-singular draws are logged and resampled.
pub fn random_sl(r: usize, seed: u64) -> Result<LorentzElement> {
    let mut rng = rng_from_seed(seed);
    random_sl_from(&mut rng, r)
}

/// Unimodular sample drawn from an existing stream; see `random_sl`.
pub fn random_sl_from(rng: &mut crate::sample::SampleRng, r: usize) -> Result<LorentzElement> {
    if r < 2 {
        return Err(Error::WrongDimension { expected: 2, actual: r });
    }
    for _ in 0..SL_SAMPLE_ATTEMPTS {
        let g = random_matrix(rng, r, r);
        let det = g.determinant();
        if det.norm() < 1e-12 {
            log::debug!("resampling unimodular draw: determinant {:.3e}", det.norm());
            continue;
        }
        let root = det.powf(1.0 / r as f64);
        let lambda = g.map(|z| z / root);
        let svd = lambda.clone().svd(false, false);
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        log::debug!("unimodular draw condition number {cond:.3e}");
        if cond > SL_CONDITION_LIMIT {
            continue;
        }
        return Ok(LorentzElement { lambda });
    }
    Err(Error::SingularSample { attempts: SL_SAMPLE_ATTEMPTS })
}

/// Infinitesimal symmetry: a traceless matrix part m and a translation
/// part b, inducing the field x ↦ m·x + x·m† + b.
#[derive(Clone, Debug)]
pub struct PoincareGenerator {
    m: DMatrix<Complex64>,
    b: Event,
}

impl PoincareGenerator {
    pub fn new(m: DMatrix<Complex64>, b: Event, tol: &Tolerance) -> Result<PoincareGenerator> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: m.ncols() });
        }
        if m.nrows() != b.dim() {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: b.dim() });
        }
        let defect = m.trace().norm();
        if defect > tol.threshold(max_abs(&m)) {
            return Err(Error::NotTraceless { defect });
        }
        Ok(PoincareGenerator { m, b })
    }

    fn exact(m: DMatrix<Complex64>, b: Event) -> PoincareGenerator {
        PoincareGenerator { m, b }
    }

    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    pub fn m(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn b(&self) -> &Event {
        &self.b
    }
}

/// The field value m·x + x·m† + b, weakly Hermitian for any x.
pub fn generator_field(gen: &PoincareGenerator, x: &Event) -> Result<Interval> {
    if gen.dim() != x.dim() {
        return Err(Error::DimensionMismatch { left: gen.dim(), right: x.dim() });
    }
    let moved = &gen.m * x.matrix() + x.matrix() * gen.m.adjoint();
    Ok(&Event::wrap(moved) + &gen.b)
}

/// A parametrized path of events. The evaluator must accept parameters
/// slightly outside [a,b] (within the differencing step), since tangents
/// and curvatures are taken by central differences at the endpoints too.
pub struct Curve {
    a: f64,
    b: f64,
    f: Box<dyn Fn(f64) -> Event + Send + Sync>,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Curve").field("a", &self.a).field("b", &self.b).finish_non_exhaustive()
    }
}

/// Relative step for tangents along a curve.
const TANGENT_STEP: f64 = 1e-5;

impl Curve {
    pub fn new<F>(a: f64, b: f64, f: F) -> Curve
    where
        F: Fn(f64) -> Event + Send + Sync + 'static,
    {
        assert!(b > a, "curve parameter range must be nondegenerate");
        Curve { a, b, f: Box::new(f) }
    }

    pub fn span(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eval(&self, lambda: f64) -> Event {
        (self.f)(lambda)
    }

    /// Central-difference tangent.
    pub fn tangent(&self, lambda: f64, h: f64) -> Interval {
        (&self.eval(lambda + h) - &self.eval(lambda - h)).scale(1.0 / (2.0 * h))
    }

    /// Central-difference second derivative.
    pub fn curvature(&self, lambda: f64, h: f64) -> Interval {
        let plus = self.eval(lambda + h);
        let minus = self.eval(lambda - h);
        let mid = self.eval(lambda);
        (&(&plus + &minus) - &mid.scale(2.0)).scale(1.0 / (h * h))
    }

    fn default_step(&self) -> f64 {
        TANGENT_STEP * (self.b - self.a)
    }
}

/// The affine segment from z to y, parametrized at unit speed: the
/// parameter runs over [0, τ] with τ the proper time of the separation,
/// x(0) = z and x(τ) = y.
pub fn geodesic_between(y: &Event, z: &Event, tol: &Tolerance) -> Result<Curve> {
    if y.dim() != z.dim() {
        return Err(Error::DimensionMismatch { left: y.dim(), right: z.dim() });
    }
    let v = y - z;
    let cls = causal_classify(&v, tol);
    if cls.label != CausalLabel::FutureTimelike {
        return Err(Error::NotTimelike { rank: cls.rank, plus: cls.plus, minus: cls.minus });
    }
    let tau = interval_proper_time(&v, tol)?;
    let start = z.clone();
    let direction = v.scale(1.0 / tau);
    Ok(Curve::new(0.0, tau, move |s| &start + &direction.scale(s)))
}

/// Composite Simpson quadrature of Δ(tangent)^{1/r} along the curve. The
/// step count is rounded up to the next even number; tangents are central
/// differences with step 1e−5·(b−a) and must classify FutureTimelike at
/// every sample point.
pub fn proper_time_functional(c: &Curve, steps: usize, tol: &Tolerance) -> Result<f64> {
    let steps = { let s = steps.max(2); s + s % 2 };
    let (a, b) = c.span();
    let dl = (b - a) / steps as f64;
    let h = c.default_step();
    let r = c.eval(a).dim();
    let mut acc = 0.0;
    for i in 0..=steps {
        let lambda = a + dl * i as f64;
        let v = c.tangent(lambda, h);
        let cls = causal_classify(&v, tol);
        if cls.label != CausalLabel::FutureTimelike {
            return Err(Error::NotTimelikeTangent { param: lambda });
        }
        let integrand = chronometric_form(&v).powf(1.0 / r as f64);
        let weight = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += weight * integrand;
    }
    Ok(acc * dl / 3.0)
}

/// Max-norm of the covector g(·, dv/dλ, v, ..., v) at λ0, with derivatives
/// by central differences of step h. Vanishes along affine lines.
pub fn geodesic_residual(c: &Curve, lambda0: f64, h: f64) -> f64 {
    let r = c.eval(lambda0).dim();
    if r == 1 {
        // One slot only: the variational condition is vacuous.
        return 0.0;
    }
    let v = c.tangent(lambda0, h);
    let vdot = c.curvature(lambda0, h);
    let mut slots = vec![vdot];
    for _ in 0..r.saturating_sub(2) {
        slots.push(v.clone());
    }
    let n = polarized_covector(&slots).expect("slots assembled with matching dimensions");
    max_abs(&n)
}

/// The conserved quantity of a generator along a curve:
/// g(ξ(x(λ)), v, ..., v) with r−1 tangent slots. Constant in λ when the
/// curve is an affine geodesic.
pub fn killing_conserved_quantity(
    gen: &PoincareGenerator,
    c: &Curve,
    lambda: f64,
) -> Result<f64> {
    let field = generator_field(gen, &c.eval(lambda))?;
    let v = c.tangent(lambda, c.default_step());
    let mut slots = vec![field];
    for _ in 0..v.dim().saturating_sub(1) {
        slots.push(v.clone());
    }
    mixed_chronometric(&slots)
}

/// Basis of the 3r²−2 dimensional symmetry algebra, in a fixed documented
/// order: the r²−1 Hermitian traceless matrix parts, then the same list
/// multiplied by i (anti-Hermitian traceless), then the r² Hermitian
/// translation directions. Within each matrix-part block the order is
/// diagonal differences E_jj − E_{j+1,j+1} first, then for each j<k the
/// real and imaginary off-diagonal directions.
pub fn poincare_generator_basis(r: usize) -> Vec<PoincareGenerator> {
    assert!(r >= 2, "the symmetry algebra needs dimension at least 2");
    let mut sl_part: Vec<DMatrix<Complex64>> = Vec::with_capacity(r * r - 1);
    for j in 0..r - 1 {
        let mut d = DMatrix::<Complex64>::zeros(r, r);
        d[(j, j)] = Complex64::new(1.0, 0.0);
        d[(j + 1, j + 1)] = Complex64::new(-1.0, 0.0);
        sl_part.push(d);
    }
    for j in 0..r {
        for k in (j + 1)..r {
            let mut s = DMatrix::<Complex64>::zeros(r, r);
            s[(j, k)] = Complex64::new(1.0, 0.0);
            s[(k, j)] = Complex64::new(1.0, 0.0);
            sl_part.push(s);
            let mut a = DMatrix::<Complex64>::zeros(r, r);
            a[(j, k)] = Complex64::new(0.0, 1.0);
            a[(k, j)] = Complex64::new(0.0, -1.0);
            sl_part.push(a);
        }
    }
    let mut basis = Vec::with_capacity(3 * r * r - 2);
    for m in &sl_part {
        basis.push(PoincareGenerator::exact(m.clone(), Event::zero(r)));
    }
    for m in &sl_part {
        basis.push(PoincareGenerator::exact(
            m.map(|z| z * Complex64::new(0.0, 1.0)),
            Event::zero(r),
        ));
    }
    for b in hermitian_basis(r) {
        basis.push(PoincareGenerator::exact(
            DMatrix::zeros(r, r),
            Event::new(b, &Tolerance::default()).expect("basis directions are Hermitian"),
        ));
    }
    basis
}
