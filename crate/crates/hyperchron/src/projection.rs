//! The density-matrix projection from a broken quantum space-time down
//! to Minkowski space, with equivariance and causality verification and
//! a constructive falsifier for candidates that are not positive.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::breaking::{lift_poincare, BrokenEvent};
use crate::chronometry::{causal_classify, CausalClass, Event};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_defect, max_abs};
use crate::sample::{random_matrix, random_spinor, rng_for_trial};
use crate::symmetry::{apply_poincare, LorentzElement, PoincareElement};
use crate::tolerance::Tolerance;

/// Hermitian unit-trace internal matrix; positivity is deliberately not
/// required, so this is the hypothesis set the falsifier works on.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateMap {
    rho: DMatrix<Complex64>,
}

impl CandidateMap {
    pub fn new(rho: DMatrix<Complex64>, tol: &Tolerance) -> Result<CandidateMap> {
        if rho.nrows() != rho.ncols() || rho.nrows() == 0 {
            return Err(Error::DimensionMismatch { left: rho.nrows(), right: rho.ncols() });
        }
        let defect = hermitian_defect(&rho);
        if defect > tol.threshold(max_abs(&rho)) {
            return Err(Error::NonHermitianInput { defect });
        }
        let trace_defect = (rho.trace() - Complex64::ONE).norm();
        if trace_defect > tol.threshold(1.0) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace deviates from one by {trace_defect:.3e}"),
            });
        }
        Ok(CandidateMap { rho })
    }

    pub fn internal_dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }
}

/// Positive semi-definite unit-trace internal state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    cand: CandidateMap,
}

impl DensityMatrix {
    pub fn new(rho: DMatrix<Complex64>, tol: &Tolerance) -> Result<DensityMatrix> {
        let cand = CandidateMap::new(rho, tol)?;
        let eigen = cand.matrix().clone().symmetric_eigen().eigenvalues;
        let scale = eigen.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let min = eigen.iter().fold(f64::INFINITY, |a, b| a.min(*b));
        if min < -tol.threshold(scale) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("spectrum reaches {min:.3e}"),
            });
        }
        Ok(DensityMatrix { cand })
    }

    pub fn internal_dim(&self) -> usize {
        self.cand.internal_dim()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.cand.matrix()
    }

    pub fn as_candidate(&self) -> &CandidateMap {
        &self.cand
    }
}

fn project_raw(rho: &DMatrix<Complex64>, x: &BrokenEvent) -> Result<Event> {
    let n = x.internal_dim();
    if rho.nrows() != n {
        return Err(Error::DimensionMismatch { left: rho.nrows(), right: n });
    }
    let y = DMatrix::from_fn(2, 2, |a, ap| (rho * x.block(a, ap)).trace());
    Ok(Event::wrap(y))
}

/// Y[A][A'] = tr(ρ·B^{AA'}): contracts the internal indices of a broken
/// event against a state, landing in Minkowski space. Linear in x, sends
/// zero to zero, and inverts the embedding whenever tr(ρ) = 1.
pub fn project(rho: &DensityMatrix, x: &BrokenEvent) -> Result<Event> {
    project_raw(rho.matrix(), x)
}

/// The same contraction for a candidate that need not be positive.
pub fn project_candidate(cand: &CandidateMap, x: &BrokenEvent) -> Result<Event> {
    project_raw(cand.matrix(), x)
}

/// Verifies project(ρ, lift(g)·X) = g·project(ρ, X) for one ordinary
/// Poincaré element g = (λ₂, β₂).
pub fn check_equivariance(
    cand: &CandidateMap,
    lambda2: &DMatrix<Complex64>,
    beta2: &Event,
    x: &BrokenEvent,
    tol: f64,
) -> Result<bool> {
    let strict = Tolerance::default();
    let n = x.internal_dim();
    let lifted = lift_poincare(lambda2, beta2, n, &strict)?;
    let moved_big = apply_poincare(&lifted, x.event())?;
    let lhs = project_raw(cand.matrix(), &BrokenEvent::from_event(moved_big, n)?)?;

    let small = PoincareElement::new(
        LorentzElement::new(lambda2.clone(), &strict)?,
        beta2.clone(),
    )?;
    let rhs = apply_poincare(&small, &project_raw(cand.matrix(), x)?)?;
    Ok(max_abs(&(lhs.matrix() - rhs.matrix())) <= tol)
}

/// Outcome of a sampled causality-preservation check.
#[derive(Clone, Debug, PartialEq)]
pub struct CausalityReport {
    pub trials: usize,
    pub min_image_eigenvalue: f64,
    pub pass: bool,
}

/// Samples future-causal events of the broken space-time (alternating
/// rank-1 hyperspinor outer products and PSD mixtures), projects each,
/// and records the most negative image eigenvalue. A valid state must
/// keep every image inside the closed future cone.
pub fn check_causality_preservation(
    rho: &DensityMatrix,
    trials: usize,
    seed: u64,
    check_tol: f64,
) -> CausalityReport {
    let n = rho.internal_dim();
    let mut min_eig = f64::INFINITY;
    for trial in 0..trials {
        let mut rng = rng_for_trial(seed, trial as u64);
        let x = if trial % 2 == 0 {
            let alpha = random_spinor(&mut rng, 2 * n);
            DMatrix::from_fn(2 * n, 2 * n, |a, b| alpha[a] * alpha[b].conj())
        } else {
            let g = random_matrix(&mut rng, 2 * n, 2 * n);
            &g * g.adjoint()
        };
        let big = BrokenEvent::from_event(Event::wrap(x), n).expect("sampled shape");
        let image = project_raw(rho.matrix(), &big).expect("dims agree");
        let eigen = image.matrix().clone().symmetric_eigen().eigenvalues;
        for value in eigen.iter() {
            min_eig = min_eig.min(*value);
        }
    }
    if trials == 0 {
        min_eig = 0.0;
    }
    CausalityReport {
        trials,
        min_image_eigenvalue: min_eig,
        pass: min_eig >= -check_tol,
    }
}

/// A verified causality violation: a future-causal input whose image
/// points into the past.
#[derive(Clone, Debug, PartialEq)]
pub struct Falsification {
    pub input: BrokenEvent,
    pub image: Event,
    pub input_class: CausalClass,
    pub image_class: CausalClass,
}

/// Constructs a causality violation for any candidate with a negative
/// eigenvalue, or returns None for PSD candidates.
///
/// With v a most-negative eigenvector and α a fixed spinor, the input
/// X = (αα†)⊗(vv†) is future-null, and its image (v†·cand·v)·αα† is the
/// negative eigenvalue times a rank-1 future projector: past-null.
pub fn falsify_non_psd(cand: &CandidateMap, tol: &Tolerance) -> Option<Falsification> {
    let eigen = cand.matrix().clone().symmetric_eigen();
    let mut idx = 0;
    for (k, value) in eigen.eigenvalues.iter().enumerate() {
        if *value < eigen.eigenvalues[idx] {
            idx = k;
        }
    }
    let min = eigen.eigenvalues[idx];
    let scale = eigen.eigenvalues.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if min >= -tol.threshold(scale) {
        return None;
    }
    let n = cand.internal_dim();
    let v = eigen.eigenvectors.column(idx).into_owned();

    let mut alpha_outer = DMatrix::<Complex64>::zeros(2, 2);
    alpha_outer[(0, 0)] = Complex64::ONE;
    let v_outer = DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
    let input = BrokenEvent::from_event(
        Event::wrap(alpha_outer.kronecker(&v_outer)),
        n,
    )
    .expect("kron shape");
    let image = project_raw(cand.matrix(), &input).expect("dims agree");

    let class_tol = Tolerance::default();
    Some(Falsification {
        input_class: causal_classify(input.event(), &class_tol),
        image_class: causal_classify(&image, &class_tol),
        input,
        image,
    })
}

/// Equivariance over a batch of sampled Poincaré elements; returns the
/// first failing trial if any.
pub fn check_equivariance_sampled(
    cand: &CandidateMap,
    x: &BrokenEvent,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<Option<usize>> {
    for trial in 0..trials {
        let mut rng = rng_for_trial(seed, trial as u64);
        let lambda2 = crate::symmetry::random_sl_from(&mut rng, 2)?;
        let beta2 = crate::sample::random_hermitian(&mut rng, 2);
        if !check_equivariance(cand, lambda2.matrix(), &beta2, x, tol)? {
            return Ok(Some(trial));
        }
    }
    Ok(None)
}
