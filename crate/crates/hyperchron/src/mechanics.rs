//! Relativistic mechanics of elementary systems: momentum covectors,
//! angular momentum about an origin, mass, and the spin covector.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chronometry::{chronometric_form, is_future_causal, Event, Interval};
use crate::error::{Error, Result};
use crate::linalg::{factorial, max_abs};
use crate::symmetry::LorentzElement;
use crate::tolerance::Tolerance;

/// Momentum covector of an elementary system, stored with the unprimed
/// index on rows like every other weakly Hermitian block.
#[derive(Clone, Debug, PartialEq)]
pub struct Momentum(Event);

impl Momentum {
    pub fn new(p: Event) -> Momentum {
        Momentum(p)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.0.matrix()
    }

    pub fn event(&self) -> &Event {
        &self.0
    }

    /// Whether the momentum lies on the closed future cone with at least
    /// one strictly positive direction, i.e. carries positive energy in
    /// every frame.
    pub fn positive_energy(&self, tol: &Tolerance) -> bool {
        is_future_causal(&self.0, tol)
    }
}

/// Angular momentum about the current origin. The generator block is
/// trace-free for a system described about its own origin; shifting the
/// origin adds a momentum-dependent piece whose trace is not controlled,
/// so shifted values bypass the constructor check.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularMomentum {
    l: DMatrix<Complex64>,
}

impl AngularMomentum {
    pub fn new(l: DMatrix<Complex64>, tol: &Tolerance) -> Result<AngularMomentum> {
        if l.nrows() != l.ncols() {
            return Err(Error::DimensionMismatch {
                left: l.nrows(),
                right: l.ncols(),
            });
        }
        let defect = l.trace().norm();
        if defect > tol.threshold(max_abs(&l)) {
            return Err(Error::NotTraceless { defect });
        }
        Ok(AngularMomentum { l })
    }

    fn carried(l: DMatrix<Complex64>) -> AngularMomentum {
        AngularMomentum { l }
    }

    pub fn dim(&self) -> usize {
        self.l.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.l
    }
}

/// A free elementary system: a momentum covector together with the
/// angular momentum block about the chosen origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementarySystem {
    momentum: Momentum,
    angular: AngularMomentum,
}

impl ElementarySystem {
    pub fn new(momentum: Momentum, angular: AngularMomentum) -> Result<ElementarySystem> {
        if momentum.dim() != angular.dim() {
            return Err(Error::DimensionMismatch {
                left: momentum.dim(),
                right: angular.dim(),
            });
        }
        Ok(ElementarySystem { momentum, angular })
    }

    pub fn dim(&self) -> usize {
        self.momentum.dim()
    }

    pub fn momentum(&self) -> &Momentum {
        &self.momentum
    }

    pub fn angular_momentum(&self) -> &AngularMomentum {
        &self.angular
    }
}

/// Rest mass, the r-th root of the chronometric form of the momentum.
/// Zero momentum gives zero mass; a momentum outside the closed cone has
/// negative form and is rejected as tachyonic.
pub fn mass(p: &Momentum) -> Result<f64> {
    let delta = chronometric_form(p.event());
    if delta < 0.0 {
        return Err(Error::TachyonicMomentum { delta });
    }
    Ok(delta.powf(1.0 / p.dim() as f64))
}

/// Moves the origin by beta. The momentum is unchanged; the angular
/// momentum picks up beta times the entrywise conjugate of the momentum.
pub fn shift_origin(sys: &ElementarySystem, beta: &Event) -> Result<ElementarySystem> {
    if beta.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            left: sys.dim(),
            right: beta.dim(),
        });
    }
    let p_conj = sys.momentum.matrix().map(|z| z.conj());
    let l = sys.angular.matrix() + beta.matrix() * p_conj;
    Ok(ElementarySystem {
        momentum: sys.momentum.clone(),
        angular: AngularMomentum::carried(l),
    })
}

/// Spin covector S = (i/m)(lᵀP − P·conj(l)) of a massive system.
///
/// Origin shifts cancel identically: a shift adds β·conj(P) to l, and
/// weak Hermiticity of P and β makes both bracket terms pick up the same
/// P·conj(β)·P piece, so S depends only on the intrinsic state.
pub fn spin_covector(sys: &ElementarySystem) -> Result<Interval> {
    let m = mass(&sys.momentum)?;
    if m <= 0.0 {
        return Err(Error::MasslessSystem);
    }
    let l = sys.angular.matrix();
    let p = sys.momentum.matrix();
    let s = (l.transpose() * p - p * l.map(|z| z.conj())).map(|z| z * Complex64::new(0.0, 1.0 / m));
    Ok(Event::wrap(s))
}

/// Spin magnitude, the r-th root of the absolute chronometric form of
/// the spin covector.
pub fn spin_magnitude(sys: &ElementarySystem) -> Result<f64> {
    let s = spin_covector(sys)?;
    let r = sys.dim() as f64;
    Ok((factorial(sys.dim()) * s.matrix().determinant().re)
        .abs()
        .powf(1.0 / r))
}

/// Entrywise totals of a collection of systems sharing one origin.
pub fn system_totals(systems: &[ElementarySystem]) -> Result<(Momentum, AngularMomentum)> {
    let first = systems.first().ok_or(Error::WrongArity {
        expected: 1,
        actual: 0,
    })?;
    let r = first.dim();
    let mut p_sum = DMatrix::<Complex64>::zeros(r, r);
    let mut l_sum = DMatrix::<Complex64>::zeros(r, r);
    for sys in systems {
        if sys.dim() != r {
            return Err(Error::DimensionMismatch {
                left: r,
                right: sys.dim(),
            });
        }
        p_sum += sys.momentum.matrix();
        l_sum += sys.angular.matrix();
    }
    Ok((
        Momentum::new(Event::wrap(p_sum)),
        AngularMomentum::carried(l_sum),
    ))
}

/// Applies a hyper-Lorentz transformation to a system.
///
/// The momentum transforms contragrediently, P ↦ λ⁻†Pλ⁻¹, which keeps
/// the pairing with events and hence the mass. With the upper index of
/// the angular momentum stored on rows, the companion rule forced by
/// covariance of the spin covector is conjugation by the entrywise
/// conjugate, l ↦ λ̄·l·λ̄⁻¹; the spin covector then transforms exactly
/// like the momentum and its magnitude is invariant.
pub fn transform_system(sys: &ElementarySystem, g: &LorentzElement) -> Result<ElementarySystem> {
    if g.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            left: sys.dim(),
            right: g.dim(),
        });
    }
    let inv = g
        .matrix()
        .clone()
        .try_inverse()
        .expect("unimodular elements are invertible");
    let p = inv.adjoint() * sys.momentum.matrix() * &inv;
    let l = g.matrix().map(|z| z.conj()) * sys.angular.matrix() * inv.map(|z| z.conj());
    Ok(ElementarySystem {
        momentum: Momentum::new(Event::wrap(p)),
        angular: AngularMomentum::carried(l),
    })
}
