//! Seeded verification suites behind `verify`: each samples a property
//! over many trials and reports the worst violation seen. Trials run in
//! parallel; every trial derives its own stream from (seed, index), so
//! reports are byte-stable regardless of worker count.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::chronometry::{causal_classify, chronometric_form, CausalLabel, Event};
use crate::linalg::max_abs;
use crate::mechanics::{
    shift_origin, spin_covector, AngularMomentum, ElementarySystem, Momentum,
};
use crate::projection::{
    check_equivariance, falsify_non_psd, project_candidate, CandidateMap, DensityMatrix,
    Falsification,
};
use crate::sample::{
    random_future_timelike, random_hermitian, random_matrix, random_spinor, random_traceless,
    rng_for_trial,
};
use crate::symmetry::{
    apply_poincare, generator_field, geodesic_between, killing_conserved_quantity,
    poincare_generator_basis, random_sl_from, PoincareElement,
};
use crate::tolerance::Tolerance;

pub const INVARIANCE_TOL: f64 = 1e-8;
pub const KILLING_TOL: f64 = 1e-7;
pub const CONE_TOL: f64 = 0.5;
pub const NORMALIZED_TOL: f64 = 1.0;
pub const DIMENSION_TOL: f64 = 0.5;

/// Finite sentinel for discrete failures (a causal label changed); keeps
/// reports JSON-clean while dwarfing every analog tolerance.
pub const LABEL_MISMATCH_VIOLATION: f64 = 1e30;

/// Aggregated outcome of one suite run. Wall time is deliberately not a
/// field: reports must be byte-identical across machines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_violation: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn max_over_trials<F>(trials: usize, body: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(&body)
        .reduce(|| 0.0, f64::max)
}

/// Form and label invariance under sampled hyper-Poincaré actions.
/// Violation: |Δ(gx) − Δ(x)| / max(1, |Δ(x)|), or the label sentinel.
pub fn run_invariance(r: usize, trials: usize, seed: u64) -> SuiteReport {
    let tol = Tolerance::default();
    let max_violation = max_over_trials(trials, |trial| {
        let mut rng = rng_for_trial(seed, trial);
        let x = random_hermitian(&mut rng, r);
        let lambda = random_sl_from(&mut rng, r).expect("sampler repeats until well conditioned");
        let beta = random_hermitian(&mut rng, r);
        let g = PoincareElement::new(lambda, beta).expect("dims agree");

        // Separations of points transform through the homogeneous part:
        // translations cancel in differences, so the interval carried by
        // x moves to g·x − g·0.
        let moved = apply_poincare(&g, &x).expect("dims agree");
        let origin_image = apply_poincare(&g, &Event::zero(r)).expect("dims agree");
        let interval = &moved - &origin_image;

        if causal_classify(&x, &tol).label != causal_classify(&interval, &tol).label {
            return LABEL_MISMATCH_VIOLATION;
        }
        let d0 = chronometric_form(&x);
        let d1 = chronometric_form(&interval);
        (d1 - d0).abs() / d0.abs().max(1.0)
    });
    SuiteReport {
        suite: "invariance".into(),
        r: Some(r),
        n: None,
        trials,
        seed,
        max_violation,
        pass: max_violation <= INVARIANCE_TOL,
        counterexample: None,
    }
}

/// Constancy of every basis conserved quantity along sampled geodesics.
/// Violation: spread of the quantity over interior samples, relative to
/// max(1, |K|).
pub fn run_killing(r: usize, trials: usize, seed: u64) -> SuiteReport {
    let tol = Tolerance::default();
    let generators = poincare_generator_basis(r);
    let max_violation = max_over_trials(trials, |trial| {
        let mut rng = rng_for_trial(seed, trial);
        let z = random_hermitian(&mut rng, r);
        let step = random_future_timelike(&mut rng, r);
        let y = &z + &step;
        let curve = geodesic_between(&y, &z, &tol).expect("future-timelike by construction");
        let (a, b) = curve.span();
        let width = b - a;
        let mut worst = 0.0f64;
        for gen in &generators {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for k in 0..11 {
                let lambda = a + width * (0.05 + 0.9 * k as f64 / 10.0);
                let q = killing_conserved_quantity(gen, &curve, lambda)
                    .expect("timelike interior tangents");
                lo = lo.min(q);
                hi = hi.max(q);
            }
            let scale = hi.abs().max(lo.abs()).max(1.0);
            worst = worst.max((hi - lo) / scale);
        }
        worst
    });
    SuiteReport {
        suite: "killing".into(),
        r: Some(r),
        n: None,
        trials,
        seed,
        max_violation,
        pass: max_violation <= KILLING_TOL,
        counterexample: None,
    }
}

/// Convexity of the future cone: sums of future-timelike events stay
/// future-timelike. Violation is 0 or 1 per trial.
pub fn run_cone(r: usize, trials: usize, seed: u64) -> SuiteReport {
    let tol = Tolerance::default();
    let max_violation = max_over_trials(trials, |trial| {
        let mut rng = rng_for_trial(seed, trial);
        let a = random_future_timelike(&mut rng, r);
        let b = random_future_timelike(&mut rng, r);
        let class = causal_classify(&(&a + &b), &tol);
        if class.label == CausalLabel::FutureTimelike {
            0.0
        } else {
            1.0
        }
    });
    SuiteReport {
        suite: "cone".into(),
        r: Some(r),
        n: None,
        trials,
        seed,
        max_violation,
        pass: max_violation <= CONE_TOL,
        counterexample: None,
    }
}

const SPIN_SHIFT_TOL: f64 = 1e-9;

/// Origin-shift invariance of the spin covector. Violation: entrywise
/// drift normalized by the shift tolerance, so pass means ≤ 1.
pub fn run_mechanics(r: usize, trials: usize, seed: u64) -> SuiteReport {
    let tol = Tolerance::default();
    let max_violation = max_over_trials(trials, |trial| {
        let mut rng = rng_for_trial(seed, trial);
        let p = Momentum::new(random_future_timelike(&mut rng, r));
        let l = AngularMomentum::new(random_traceless(&mut rng, r), &tol)
            .expect("trace-free by construction");
        let sys = ElementarySystem::new(p, l).expect("dims agree");
        let beta = random_hermitian(&mut rng, r);

        let s0 = spin_covector(&sys).expect("massive by construction");
        let shifted = shift_origin(&sys, &beta).expect("dims agree");
        let s1 = spin_covector(&shifted).expect("mass unchanged");
        let scale = max_abs(s0.matrix()).max(1.0);
        max_abs(&(s0.matrix() - s1.matrix())) / scale / SPIN_SHIFT_TOL
    });
    SuiteReport {
        suite: "mechanics".into(),
        r: Some(r),
        n: None,
        trials,
        seed,
        max_violation,
        pass: max_violation <= NORMALIZED_TOL,
        counterexample: None,
    }
}

const ROUND_TRIP_TOL: f64 = 1e-12;
const CONE_IMAGE_TOL: f64 = 1e-12;
const EQUIVARIANCE_TOL: f64 = 1e-9;

/// Projection-map contract for one internal state: embed/project round
/// trips, image positivity on sampled cone elements, and equivariance.
/// Violations are normalized by the per-check tolerance, so pass means
/// every check stayed within its own bound.
///
/// A state with a negative eigenvalue is not checked statistically: the
/// falsifier produces the explicit counterexample instead and the report
/// fails with the normalized spectrum violation.
pub fn run_projection(
    n: usize,
    trials: usize,
    seed: u64,
    state: Option<&CandidateMap>,
) -> (SuiteReport, Option<Falsification>) {
    let tol = Tolerance::default();
    let mixed;
    let cand = match state {
        Some(c) => c,
        None => {
            mixed = CandidateMap::new(
                DMatrix::<Complex64>::identity(n, n).scale(1.0 / n as f64),
                &tol,
            )
            .expect("maximally mixed state");
            &mixed
        }
    };

    if let Some(falsification) = falsify_non_psd(cand, &tol) {
        let spectrum = cand.matrix().clone().symmetric_eigen().eigenvalues;
        let min = spectrum.iter().fold(f64::INFINITY, |a, b| a.min(*b));
        let report = SuiteReport {
            suite: "projection".into(),
            r: None,
            n: Some(cand.internal_dim()),
            trials,
            seed,
            max_violation: -min / CONE_IMAGE_TOL,
            pass: false,
            counterexample: None,
        };
        return (report, Some(falsification));
    }

    let rho = DensityMatrix::new(cand.matrix().clone(), &tol).expect("falsifier found no defect");
    let n = rho.internal_dim();
    let max_violation = max_over_trials(trials, |trial| {
        let mut rng = rng_for_trial(seed, trial);
        let mut worst = 0.0f64;

        let x = random_hermitian(&mut rng, 2);
        let big = crate::breaking::embed_minkowski(&x, n).expect("dims agree");
        let back = project_candidate(rho.as_candidate(), &big).expect("dims agree");
        worst = worst.max(max_abs(&(back.matrix() - x.matrix())) / ROUND_TRIP_TOL);

        let cone_sample = if trial % 2 == 0 {
            let alpha = random_spinor(&mut rng, 2 * n);
            DMatrix::from_fn(2 * n, 2 * n, |a, b| alpha[a] * alpha[b].conj())
        } else {
            let g = random_matrix(&mut rng, 2 * n, 2 * n);
            &g * g.adjoint()
        };
        let big = crate::breaking::BrokenEvent::from_event(Event::wrap(cone_sample), n)
            .expect("sampled shape");
        let image = project_candidate(rho.as_candidate(), &big).expect("dims agree");
        let eigen = image.matrix().clone().symmetric_eigen().eigenvalues;
        let min = eigen.iter().fold(f64::INFINITY, |a, b| a.min(*b));
        worst = worst.max((-min).max(0.0) / CONE_IMAGE_TOL);

        let lambda = random_sl_from(&mut rng, 2).expect("sampler repeats until well conditioned");
        let beta = random_hermitian(&mut rng, 2);
        let target =
            crate::breaking::BrokenEvent::from_event(random_hermitian(&mut rng, 2 * n), n)
                .expect("sampled shape");
        let ok = check_equivariance(
            rho.as_candidate(),
            lambda.matrix(),
            &beta,
            &target,
            EQUIVARIANCE_TOL,
        )
        .expect("valid lift");
        if !ok {
            worst = worst.max(2.0);
        }
        worst
    });
    let report = SuiteReport {
        suite: "projection".into(),
        r: None,
        n: Some(n),
        trials,
        seed,
        max_violation,
        pass: max_violation <= NORMALIZED_TOL,
        counterexample: None,
    };
    (report, None)
}

fn real_rank(m: &DMatrix<f64>, rel_cutoff: f64) -> usize {
    let svs = m.clone().svd(false, false).singular_values;
    let top = svs.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    svs.iter().filter(|s| **s > rel_cutoff * top).count()
}

/// Dimension of the symmetry algebra: the generator basis must have
/// 3r²−2 members and their fields must stay independent when evaluated
/// at sampled points. Violation: |rank − expected| + |count − expected|.
pub fn run_dimension(r: usize, trials: usize, seed: u64) -> SuiteReport {
    let generators = poincare_generator_basis(r);
    let expected = 3 * r * r - 2;
    let points: Vec<Event> = (0..trials.max(4) as u64)
        .map(|k| {
            let mut rng = rng_for_trial(seed, k);
            random_hermitian(&mut rng, r)
        })
        .collect();

    let cols = points.len() * 2 * r * r;
    let mut stacked = DMatrix::<f64>::zeros(generators.len(), cols);
    for (row, gen) in generators.iter().enumerate() {
        let mut col = 0;
        for point in &points {
            let field = generator_field(gen, point).expect("dims agree");
            for value in field.matrix().iter() {
                stacked[(row, col)] = value.re;
                stacked[(row, col + 1)] = value.im;
                col += 2;
            }
        }
    }
    let rank = real_rank(&stacked, 1e-8);
    let max_violation =
        (rank as f64 - expected as f64).abs() + (generators.len() as f64 - expected as f64).abs();
    SuiteReport {
        suite: "dimension".into(),
        r: Some(r),
        n: None,
        trials,
        seed,
        max_violation,
        pass: max_violation <= DIMENSION_TOL,
        counterexample: None,
    }
}
