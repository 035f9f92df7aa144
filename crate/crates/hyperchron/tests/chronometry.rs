mod common;

use common::*;
use hyperchron::chronometry::{
    canonical_decompose, causal_classify, chronometric_form, event_to_minkowski, is_future_causal,
    is_future_causal_or_zero, is_weakly_hermitian, minkowski_to_event, mixed_chronometric,
    polarized_covector, proper_time, CausalLabel, Event,
};
use hyperchron::sample::{random_future_timelike, random_hermitian, rng_from_seed};
use hyperchron::{Error, Tolerance};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn weak_hermiticity_check_on_small_examples() {
    let t = tol();
    assert!(is_weakly_hermitian(&DMatrix::identity(2, 2), &t));
    let anti = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    assert!(!is_weakly_hermitian(&anti, &t));
    let s = 1.0 / SQRT2;
    let hadamard = DMatrix::from_row_slice(2, 2, &[cr(s), cr(s), cr(s), cr(-s)]);
    assert!(is_weakly_hermitian(&hadamard, &t));
}

#[test]
fn event_construction_rejects_bad_input() {
    let t = tol();
    let anti = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    match Event::new(anti, &t) {
        Err(Error::NonHermitianInput { defect }) => assert!(defect > 1.0),
        other => panic!("expected NonHermitianInput, got {other:?}"),
    }
    let rect = DMatrix::<Complex64>::zeros(2, 3);
    assert!(Event::new(rect, &t).is_err());
    let empty = DMatrix::<Complex64>::zeros(0, 0);
    assert!(Event::new(empty, &t).is_err());
}

#[test]
fn form_of_unit_time_vector_is_one() {
    let v = ev(rdiag(&[1.0 / SQRT2, 1.0 / SQRT2]));
    assert!((chronometric_form(&v) - 1.0).abs() < 1e-15);
}

#[test]
fn form_of_zero_is_zero() {
    for r in 1..=4 {
        assert_eq!(chronometric_form(&Event::zero(r)), 0.0);
    }
}

#[test]
fn form_of_identity_three_matches_cofactor_oracle() {
    let v = ev_diag(&[1.0, 1.0, 1.0]);
    let oracle = 6.0 * det_cofactor(v.matrix()).re;
    assert!((chronometric_form(&v) - 6.0).abs() < 1e-12);
    assert!((chronometric_form(&v) - oracle).abs() < 1e-12);
}

#[test]
fn form_matches_full_contraction_on_random_input() {
    let mut rng = rng_from_seed(11);
    for r in 2..=4 {
        for _ in 0..50 {
            let v = random_hermitian(&mut rng, r);
            let slots: Vec<DMatrix<Complex64>> = (0..r).map(|_| v.matrix().clone()).collect();
            let oracle = epsilon_contraction(&slots);
            assert!(oracle.im.abs() < 1e-9 * (1.0 + oracle.re.abs()));
            let got = chronometric_form(&v);
            assert!(
                (got - oracle.re).abs() <= 1e-9 * (1.0 + oracle.re.abs()),
                "r={r}: form {got} vs contraction {}",
                oracle.re
            );
        }
    }
}

#[test]
fn mixed_form_on_equal_slots_reduces_to_the_form() {
    let mut rng = rng_from_seed(12);
    for r in 2..=4 {
        for _ in 0..30 {
            let v = random_hermitian(&mut rng, r);
            let slots: Vec<Event> = (0..r).map(|_| v.clone()).collect();
            let mixed = mixed_chronometric(&slots).unwrap();
            let direct = chronometric_form(&v);
            assert!((mixed - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
        }
    }
}

#[test]
fn mixed_form_identity_pair_is_two() {
    let i2 = Event::identity(2);
    let got = mixed_chronometric(&[i2.clone(), i2]).unwrap();
    assert!((got - 2.0).abs() < 1e-12);
}

#[test]
fn mixed_form_of_diagonal_pair_crosses_entries() {
    for (a1, a2, b1, b2) in [(2.0, 3.0, 5.0, 7.0), (1.0, -1.0, 0.5, 2.0), (0.0, 4.0, -3.0, 1.0)] {
        let got = mixed_chronometric(&[ev_diag(&[a1, a2]), ev_diag(&[b1, b2])]).unwrap();
        let want = a1 * b2 + a2 * b1;
        assert!((got - want).abs() < 1e-12, "({a1},{a2})x({b1},{b2}): {got} vs {want}");
    }
}

#[test]
fn mixed_form_rank_three_example() {
    let got = mixed_chronometric(&[
        Event::identity(3),
        Event::identity(3),
        ev_diag(&[1.0, 0.0, 0.0]),
    ])
    .unwrap();
    assert!((got - 2.0).abs() < 1e-12);
}

#[test]
fn mixed_form_requires_exactly_r_slots() {
    let i3 = Event::identity(3);
    match mixed_chronometric(&[i3.clone(), i3]) {
        Err(Error::WrongArity { expected, actual }) => {
            assert_eq!(expected, 3);
            assert_eq!(actual, 2);
        }
        other => panic!("expected WrongArity, got {other:?}"),
    }
}

#[test]
fn mixed_form_matches_full_contraction_on_distinct_slots() {
    let mut rng = rng_from_seed(13);
    for r in 2..=3 {
        for _ in 0..25 {
            let slots: Vec<Event> = (0..r).map(|_| random_hermitian(&mut rng, r)).collect();
            let raw: Vec<DMatrix<Complex64>> =
                slots.iter().map(|e| e.matrix().clone()).collect();
            let oracle = epsilon_contraction(&raw).re;
            let got = mixed_chronometric(&slots).unwrap();
            assert!((got - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()));
        }
    }
}

#[test]
fn mixed_form_is_symmetric_and_multilinear() {
    let mut rng = rng_from_seed(14);
    let a = random_hermitian(&mut rng, 3);
    let b = random_hermitian(&mut rng, 3);
    let d = random_hermitian(&mut rng, 3);
    let base = mixed_chronometric(&[a.clone(), b.clone(), d.clone()]).unwrap();
    for perm in [[0, 1, 2], [1, 0, 2], [2, 1, 0], [1, 2, 0]] {
        let all = [&a, &b, &d];
        let slots: Vec<Event> = perm.iter().map(|&i| all[i].clone()).collect();
        let got = mixed_chronometric(&slots).unwrap();
        assert!((got - base).abs() <= 1e-9 * (1.0 + base.abs()));
    }
    let u = random_hermitian(&mut rng, 3);
    let w = random_hermitian(&mut rng, 3);
    let combo = &u.scale(2.5) + &w.scale(-0.75);
    let lhs = mixed_chronometric(&[combo, b.clone(), d.clone()]).unwrap();
    let fu = mixed_chronometric(&[u, b.clone(), d.clone()]).unwrap();
    let fw = mixed_chronometric(&[w, b, d]).unwrap();
    let rhs = 2.5 * fu - 0.75 * fw;
    assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
}

/// Entrywise pairing of a dual matrix against a tangent matrix.
fn pair(n: &DMatrix<Complex64>, u: &DMatrix<Complex64>) -> Complex64 {
    n.iter().zip(u.iter()).map(|(a, b)| a * b).sum()
}

#[test]
fn covector_pairing_reproduces_mixed_form() {
    let mut rng = rng_from_seed(15);
    for r in 2..=3 {
        for _ in 0..20 {
            let vs: Vec<Event> = (0..r - 1).map(|_| random_hermitian(&mut rng, r)).collect();
            let n = polarized_covector(&vs).unwrap();
            assert!(is_weakly_hermitian(&n, &tol()), "covector matrix must be Hermitian");
            let u = random_hermitian(&mut rng, r);
            let mut slots = vec![u.clone()];
            slots.extend(vs.iter().cloned());
            let want = mixed_chronometric(&slots).unwrap();
            let got = pair(&n, u.matrix());
            assert!(got.im.abs() <= 1e-9 * (1.0 + got.re.abs()));
            assert!((got.re - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }
}

#[test]
fn covector_of_identity_slot_is_identity() {
    let n = polarized_covector(&[Event::identity(2)]).unwrap();
    assert!(max_abs_diff(&n, &DMatrix::identity(2, 2)) < 1e-12);
}

#[test]
fn covector_of_zero_slot_vanishes() {
    let n = polarized_covector(&[Event::zero(2)]).unwrap();
    assert!(n.iter().all(|z| z.norm() < 1e-14));
}

#[test]
fn covector_identity_pair_pairs_to_six() {
    let n = polarized_covector(&[Event::identity(3), Event::identity(3)]).unwrap();
    let got = pair(&n, &DMatrix::identity(3, 3));
    assert!((got.re - 6.0).abs() < 1e-12 && got.im.abs() < 1e-12);
}

#[test]
fn covector_matches_directional_derivative_of_form() {
    // g(u, x, ..., x) = (1/r) d/dt form(x + t u) at t=0, by central differences.
    let mut rng = rng_from_seed(16);
    for r in 2..=3 {
        for _ in 0..10 {
            let x = random_hermitian(&mut rng, r);
            let u = random_hermitian(&mut rng, r);
            let vs: Vec<Event> = (0..r - 1).map(|_| x.clone()).collect();
            let n = polarized_covector(&vs).unwrap();
            let got = pair(&n, u.matrix()).re;
            let h = 1e-6;
            let plus = chronometric_form(&(&x + &u.scale(h)));
            let minus = chronometric_form(&(&x + &u.scale(-h)));
            let oracle = (plus - minus) / (2.0 * h * r as f64);
            assert!((got - oracle).abs() <= 1e-5 * (1.0 + oracle.abs()));
        }
    }
}

#[test]
fn classification_of_canonical_examples() {
    let t = tol();
    let cases: Vec<(Event, usize, usize, usize, CausalLabel)> = vec![
        (Event::zero(2), 0, 0, 0, CausalLabel::Zero),
        (Event::zero(3), 0, 0, 0, CausalLabel::Zero),
        (ev(rdiag(&[1.0 / SQRT2, 1.0 / SQRT2])), 2, 2, 0, CausalLabel::FutureTimelike),
        (ev_diag(&[-1.0, -1.0]), 2, 0, 2, CausalLabel::PastTimelike),
        (ev_diag(&[1.0, 0.0]), 1, 1, 0, CausalLabel::FutureNull),
        (ev_diag(&[-1.0, 0.0]), 1, 0, 1, CausalLabel::PastNull),
        (ev_diag(&[1.0, -1.0]), 2, 1, 1, CausalLabel::Spacelike),
        (ev_diag(&[1.0, 0.0, 0.0]), 1, 1, 0, CausalLabel::FutureNull),
        (ev_diag(&[-1.0, 0.0, 0.0]), 1, 0, 1, CausalLabel::PastNull),
        (ev_diag(&[1.0, 1.0, 0.0]), 2, 2, 0, CausalLabel::DegenerateFutureTimelike),
        (ev_diag(&[-1.0, -1.0, 0.0]), 2, 0, 2, CausalLabel::DegeneratePastTimelike),
        (ev_diag(&[1.0, -1.0, 0.0]), 2, 1, 1, CausalLabel::DegenerateSpacelike),
        (ev_diag(&[1.0, 1.0, 1.0]), 3, 3, 0, CausalLabel::FutureTimelike),
        (ev_diag(&[-1.0, -1.0, -1.0]), 3, 0, 3, CausalLabel::PastTimelike),
        (ev_diag(&[1.0, 1.0, -1.0]), 3, 2, 1, CausalLabel::FutureSemiSpacelike),
        (ev_diag(&[1.0, -1.0, -1.0]), 3, 1, 2, CausalLabel::PastSemiSpacelike),
        (ev_diag(&[1.0, 1.0, -1.0, -1.0]), 4, 2, 2, CausalLabel::Spacelike),
        (ev_diag(&[1.0, 1.0, 1.0, -1.0]), 4, 3, 1, CausalLabel::FutureSemiSpacelike),
        (ev_diag(&[1.0, 1.0, -1.0, 0.0]), 3, 2, 1, CausalLabel::DegenerateFutureSemiSpacelike),
        (ev_diag(&[-1.0, -1.0, 1.0, 0.0]), 3, 1, 2, CausalLabel::DegeneratePastSemiSpacelike),
        (ev_diag(&[1.0, -1.0, 0.0, 0.0]), 2, 1, 1, CausalLabel::DegenerateSpacelike),
        (ev_diag(&[2.0]), 1, 1, 0, CausalLabel::FutureTimelike),
        (ev_diag(&[-2.0]), 1, 0, 1, CausalLabel::PastTimelike),
    ];
    for (v, rank, p, q, label) in cases {
        let cls = causal_classify(&v, &t);
        assert_eq!(cls.rank, rank, "{label:?}");
        assert_eq!(cls.plus, p, "{label:?}");
        assert_eq!(cls.minus, q, "{label:?}");
        assert_eq!(cls.label, label);
    }
}

fn swapped(label: CausalLabel) -> CausalLabel {
    match label {
        CausalLabel::Zero => CausalLabel::Zero,
        CausalLabel::FutureNull => CausalLabel::PastNull,
        CausalLabel::PastNull => CausalLabel::FutureNull,
        CausalLabel::DegenerateFutureTimelike => CausalLabel::DegeneratePastTimelike,
        CausalLabel::DegeneratePastTimelike => CausalLabel::DegenerateFutureTimelike,
        CausalLabel::DegenerateSpacelike => CausalLabel::DegenerateSpacelike,
        CausalLabel::DegenerateFutureSemiSpacelike => CausalLabel::DegeneratePastSemiSpacelike,
        CausalLabel::DegeneratePastSemiSpacelike => CausalLabel::DegenerateFutureSemiSpacelike,
        CausalLabel::FutureTimelike => CausalLabel::PastTimelike,
        CausalLabel::PastTimelike => CausalLabel::FutureTimelike,
        CausalLabel::Spacelike => CausalLabel::Spacelike,
        CausalLabel::FutureSemiSpacelike => CausalLabel::PastSemiSpacelike,
        CausalLabel::PastSemiSpacelike => CausalLabel::FutureSemiSpacelike,
    }
}

#[test]
fn negation_swaps_signature_and_time_orientation() {
    let t = tol();
    let mut rng = rng_from_seed(17);
    for r in 2..=4 {
        for _ in 0..50 {
            let v = random_hermitian(&mut rng, r);
            let cls = causal_classify(&v, &t);
            let neg = causal_classify(&-&v, &t);
            assert_eq!(neg.plus, cls.minus);
            assert_eq!(neg.minus, cls.plus);
            assert_eq!(neg.rank, cls.rank);
            assert_eq!(neg.label, swapped(cls.label));
        }
    }
}

#[test]
fn classification_threshold_is_relative_to_scale() {
    let t = tol();
    // An eigenvalue ten orders below the spectral radius counts as zero.
    let cls = causal_classify(&ev_diag(&[1.0, 1e-10]), &t);
    assert_eq!(cls.label, CausalLabel::FutureNull);
    // The same matrix rescaled classifies identically.
    let cls_big = causal_classify(&ev_diag(&[1e8, 1e-2]), &t);
    assert_eq!(cls_big.label, CausalLabel::FutureNull);
    let mut rng = rng_from_seed(18);
    for _ in 0..30 {
        let v = random_hermitian(&mut rng, 3);
        let a = causal_classify(&v, &t);
        let b = causal_classify(&v.scale(1e6), &t);
        assert_eq!(a.label, b.label);
        assert_eq!((a.plus, a.minus), (b.plus, b.minus));
    }
}

#[test]
fn canonical_terms_of_rank_one_projector() {
    let alpha = DMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
    let dec = canonical_decompose(&ev(alpha), &tol());
    assert_eq!(dec.terms.len(), 1);
    let (sign, a) = &dec.terms[0];
    assert_eq!(*sign, 1.0);
    assert!((a[0] - cr(1.0)).norm() < 1e-12 && a[1].norm() < 1e-12);
}

#[test]
fn canonical_terms_of_indefinite_diagonal() {
    let dec = canonical_decompose(&ev_diag(&[4.0, -1.0]), &tol());
    assert_eq!(dec.terms.len(), 2);
    let (s0, a0) = &dec.terms[0];
    let (s1, a1) = &dec.terms[1];
    assert_eq!(*s0, 1.0);
    assert!((a0[0] - cr(2.0)).norm() < 1e-12 && a0[1].norm() < 1e-12);
    assert_eq!(*s1, -1.0);
    assert!(a1[0].norm() < 1e-12 && (a1[1] - cr(1.0)).norm() < 1e-12);
}

#[test]
fn canonical_decomposition_of_zero_is_empty() {
    assert!(canonical_decompose(&Event::zero(3), &tol()).terms.is_empty());
}

#[test]
fn canonical_decomposition_reconstructs_random_input() {
    let t = tol();
    let mut rng = rng_from_seed(19);
    for r in 1..=5 {
        for _ in 0..40 {
            let v = random_hermitian(&mut rng, r);
            let cls = causal_classify(&v, &t);
            let dec = canonical_decompose(&v, &t);
            assert_eq!(dec.terms.len(), cls.rank);
            let mut rebuilt = DMatrix::<Complex64>::zeros(r, r);
            for (sign, a) in &dec.terms {
                let col = DMatrix::from_column_slice(r, 1, a.as_slice());
                rebuilt += (&col * col.adjoint()).scale(*sign);
            }
            let scale = v.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max);
            let err = max_abs_diff(&rebuilt, v.matrix());
            assert!(err <= 10.0 * (t.abs_eps + t.rel_eps * scale) + 1e-10, "r={r} err={err}");
            // Phase convention: the largest component of each term is real positive.
            for (_, a) in &dec.terms {
                let k = (0..r).max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).unwrap()).unwrap();
                assert!(a[k].im.abs() < 1e-10 && a[k].re > 0.0);
            }
        }
    }
}

#[test]
fn proper_time_of_unit_separation_is_one() {
    let x = ev(rdiag(&[1.0 / SQRT2, 1.0 / SQRT2]));
    let y = Event::zero(2);
    assert!((proper_time(&x, &y, &tol()).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn proper_time_of_identity_three_matches_cube_root_oracle() {
    let x = Event::identity(3);
    let y = Event::zero(3);
    let oracle = (6.0 * det_cofactor(x.matrix()).re).powf(1.0 / 3.0);
    let got = proper_time(&x, &y, &tol()).unwrap();
    assert!((got - 6f64.powf(1.0 / 3.0)).abs() < 1e-12);
    assert!((got - oracle).abs() < 1e-12);
}

#[test]
fn proper_time_rejects_spacelike_separation() {
    let x = ev_diag(&[1.0, -1.0]);
    let y = Event::zero(2);
    match proper_time(&x, &y, &tol()) {
        Err(Error::NotTimelike { rank, plus, minus }) => {
            assert_eq!((rank, plus, minus), (2, 1, 1));
        }
        other => panic!("expected NotTimelike, got {other:?}"),
    }
}

#[test]
fn proper_time_accepts_past_timelike_separation() {
    let x = ev_diag(&[-1.0, -1.0]);
    let y = Event::zero(2);
    let got = proper_time(&x, &y, &tol()).unwrap();
    assert!((got - SQRT2).abs() < 1e-12);
}

#[test]
fn proper_time_is_positively_homogeneous() {
    let mut rng = rng_from_seed(20);
    for r in 2..=4 {
        for _ in 0..20 {
            let v = random_future_timelike(&mut rng, r);
            let base = proper_time(&v, &Event::zero(r), &tol()).unwrap();
            for cscale in [0.5, 3.0, 1e4] {
                let scaled = proper_time(&v.scale(cscale), &Event::zero(r), &tol()).unwrap();
                assert!((scaled - cscale * base).abs() <= 1e-10 * (1.0 + cscale * base));
            }
        }
    }
}

#[test]
fn minkowski_map_on_axis_vectors() {
    let t = minkowski_to_event(1.0, 0.0, 0.0, 0.0);
    assert!(max_abs_diff(t.matrix(), &rdiag(&[1.0 / SQRT2, 1.0 / SQRT2])) < 1e-15);
    let zero = minkowski_to_event(0.0, 0.0, 0.0, 0.0);
    assert!(zero.matrix().iter().all(|z| z.norm() == 0.0));
    let x = minkowski_to_event(0.0, 1.0, 0.0, 0.0);
    let want = DMatrix::from_row_slice(2, 2, &[
        cr(0.0),
        cr(1.0 / SQRT2),
        cr(1.0 / SQRT2),
        cr(0.0),
    ]);
    assert!(max_abs_diff(x.matrix(), &want) < 1e-15);
    assert!((chronometric_form(&x) - (-1.0)).abs() < 1e-15);
}

#[test]
fn minkowski_round_trip_is_tight() {
    let mut rng = rng_from_seed(21);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let coords: Vec<f64> = (0..4)
            .map(|_| {
                use hyperchron::sample::standard_complex;
                standard_complex(&mut rng).re * 3.0
            })
            .collect();
        let (t, x, y, z) = (coords[0], coords[1], coords[2], coords[3]);
        let e = minkowski_to_event(t, x, y, z);
        let (t2, x2, y2, z2) = event_to_minkowski(&e).unwrap();
        for (a, b) in [(t, t2), (x, x2), (y, y2), (z, z2)] {
            worst = worst.max((a - b).abs());
        }
        let delta = chronometric_form(&e);
        let want = t * t - x * x - y * y - z * z;
        assert!((delta - want).abs() <= 1e-10 * (1.0 + want.abs()));
    }
    assert!(worst <= 1e-12, "round trip error {worst}");
}

#[test]
fn minkowski_inverse_requires_two_by_two() {
    match event_to_minkowski(&Event::identity(3)) {
        Err(Error::WrongDimension { expected, actual }) => {
            assert_eq!((expected, actual), (2, 3));
        }
        other => panic!("expected WrongDimension, got {other:?}"),
    }
}

#[test]
fn classification_agrees_with_minkowski_taxonomy() {
    let t = tol();
    let mut rng = rng_from_seed(22);
    let mut checked = 0;
    for _ in 0..1000 {
        use hyperchron::sample::standard_complex;
        let tv = standard_complex(&mut rng).re;
        let xv = standard_complex(&mut rng).re;
        let yv = standard_complex(&mut rng).re;
        let zv = standard_complex(&mut rng).re;
        let s = tv * tv - xv * xv - yv * yv - zv * zv;
        if s.abs() < 1e-6 {
            continue;
        }
        let e = minkowski_to_event(tv, xv, yv, zv);
        let cls = causal_classify(&e, &t);
        let want = if s > 0.0 {
            if tv > 0.0 { CausalLabel::FutureTimelike } else { CausalLabel::PastTimelike }
        } else {
            CausalLabel::Spacelike
        };
        assert_eq!(cls.label, want, "({tv},{xv},{yv},{zv})");
        checked += 1;
    }
    assert!(checked > 900);
}

#[test]
fn future_cone_membership() {
    let t = tol();
    assert!(is_future_causal(&ev_diag(&[1.0, 0.0]), &t));
    assert!(!is_future_causal(&ev_diag(&[1.0, -0.1]), &t));
    assert!(!is_future_causal(&Event::zero(2), &t));
    assert!(is_future_causal_or_zero(&Event::zero(2), &t));
    let mut rng = rng_from_seed(23);
    for _ in 0..200 {
        let a = random_future_timelike(&mut rng, 3);
        let b = random_future_timelike(&mut rng, 3);
        assert!(is_future_causal(&(&a + &b), &t));
    }
}

#[test]
fn form_parity_under_negation() {
    let mut rng = rng_from_seed(24);
    for r in 2..=4 {
        for _ in 0..20 {
            let v = random_hermitian(&mut rng, r);
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let a = chronometric_form(&v);
            let b = chronometric_form(&-&v);
            assert!((b - sign * a).abs() <= 1e-10 * (1.0 + a.abs()));
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn hermitian_strategy(r: usize) -> impl Strategy<Value = Event> {
        proptest::collection::vec(-5.0f64..5.0, r * r * 2).prop_map(move |params| {
            let mut m = DMatrix::<Complex64>::zeros(r, r);
            let mut it = params.into_iter();
            for j in 0..r {
                m[(j, j)] = cr(it.next().unwrap());
                it.next();
            }
            for j in 0..r {
                for k in (j + 1)..r {
                    let re = it.next().unwrap();
                    let im = it.next().unwrap();
                    m[(j, k)] = c(re, im);
                    m[(k, j)] = c(re, -im);
                }
            }
            ev(m)
        })
    }

    proptest! {
        #[test]
        fn signature_counts_are_consistent(v in hermitian_strategy(3)) {
            let cls = causal_classify(&v, &Tolerance::default());
            prop_assert_eq!(cls.plus + cls.minus, cls.rank);
            prop_assert!(cls.rank <= 3);
        }

        #[test]
        fn form_agrees_with_equal_slot_mixed_form(v in hermitian_strategy(3)) {
            let slots = vec![v.clone(), v.clone(), v.clone()];
            let mixed = mixed_chronometric(&slots).unwrap();
            let direct = chronometric_form(&v);
            prop_assert!((mixed - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
        }

        #[test]
        fn decomposition_reconstructs(v in hermitian_strategy(2)) {
            let t = Tolerance::default();
            let dec = canonical_decompose(&v, &t);
            let mut rebuilt = DMatrix::<Complex64>::zeros(2, 2);
            for (sign, a) in &dec.terms {
                let col = DMatrix::from_column_slice(2, 1, a.as_slice());
                rebuilt += (&col * col.adjoint()).scale(*sign);
            }
            let scale = v.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(max_abs_diff(&rebuilt, v.matrix()) <= 10.0 * (t.abs_eps + t.rel_eps * scale) + 1e-10);
        }
    }
}
