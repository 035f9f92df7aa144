//! Seeded sampling for the verification suites and tests. Every generator
//! is deterministic given its RNG state; parallel suites derive one
//! independent stream per trial so results do not depend on worker count.

use crate::chronometry::Event;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for one trial index. Neighbouring trials get
/// decorrelated 256-bit keys, so a suite can fan trials out across workers
/// and still be reproducible from (seed, trial) alone.
pub fn rng_for_trial(seed: u64, trial: u64) -> SampleRng {
    let mut state = seed ^ trial.wrapping_mul(0xa076_1d64_78bd_642f).wrapping_add(1);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Standard complex Gaussian: independent N(0, 1/2) real and imaginary
/// parts, so E|z|² = 1.
pub fn standard_complex(rng: &mut SampleRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / Complex64::new(std::f64::consts::SQRT_2, 0.0)
}

pub fn random_matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

pub fn random_spinor(rng: &mut SampleRng, r: usize) -> DVector<Complex64> {
    DVector::from_fn(r, |_, _| standard_complex(rng))
}

pub fn random_hermitian(rng: &mut SampleRng, r: usize) -> Event {
    let g = random_matrix(rng, r, r);
    Event::wrap((&g + g.adjoint()).scale(0.5))
}

/// Positive definite with a spectral floor at a fifth of the mean
/// eigenvalue, so classification never sits on the rank threshold.
pub fn random_future_timelike(rng: &mut SampleRng, r: usize) -> Event {
    let g = random_matrix(rng, r, r);
    let w = &g * g.adjoint();
    let mean = w.trace().re / r as f64;
    let floor = DMatrix::<Complex64>::identity(r, r).scale(0.2 * mean.max(1e-3));
    Event::wrap(w + floor)
}

pub fn random_traceless(rng: &mut SampleRng, r: usize) -> DMatrix<Complex64> {
    let g = random_matrix(rng, r, r);
    let shift = g.trace() / Complex64::new(r as f64, 0.0);
    &g - DMatrix::<Complex64>::identity(r, r) * shift
}

pub fn random_psd(rng: &mut SampleRng, n: usize) -> DMatrix<Complex64> {
    let g = random_matrix(rng, n, n);
    &g * g.adjoint()
}

/// Random density matrix: PSD normalized to unit trace.
pub fn random_density(rng: &mut SampleRng, n: usize) -> DMatrix<Complex64> {
    let w = random_psd(rng, n);
    let tr = w.trace().re;
    w.scale(1.0 / tr)
}

/// Hermitian with unit trace but indefinite in general.
pub fn random_unit_trace_hermitian(rng: &mut SampleRng, n: usize) -> DMatrix<Complex64> {
    let g = random_matrix(rng, n, n);
    let h = (&g + g.adjoint()).scale(0.5);
    let correction = (1.0 - h.trace().re) / n as f64;
    &h + DMatrix::<Complex64>::identity(n, n).scale(correction)
}
