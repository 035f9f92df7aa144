//! Shared matrix helpers: Hermitian bookkeeping, the Hermitian coordinate
//! basis, and reconstruction of linear functionals as matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermitian_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..m.nrows() {
        for k in 0..m.ncols() {
            worst = worst.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    worst
}

pub fn symmetrize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).scale(0.5)
}

/// Real basis of the Hermitian r×r matrices: the r diagonal units first,
/// then for each j<k (in row-major pair order) the real off-diagonal
/// direction E_jk + E_kj followed by the imaginary one i(E_jk - E_kj).
pub fn hermitian_basis(r: usize) -> Vec<DMatrix<Complex64>> {
    let mut basis = Vec::with_capacity(r * r);
    for j in 0..r {
        let mut e = DMatrix::<Complex64>::zeros(r, r);
        e[(j, j)] = Complex64::new(1.0, 0.0);
        basis.push(e);
    }
    for j in 0..r {
        for k in (j + 1)..r {
            let mut s = DMatrix::<Complex64>::zeros(r, r);
            s[(j, k)] = Complex64::new(1.0, 0.0);
            s[(k, j)] = Complex64::new(1.0, 0.0);
            basis.push(s);
            let mut a = DMatrix::<Complex64>::zeros(r, r);
            a[(j, k)] = Complex64::new(0.0, 1.0);
            a[(k, j)] = Complex64::new(0.0, -1.0);
            basis.push(a);
        }
    }
    basis
}

/// Matrix N of a linear functional f under the entrywise pairing
/// f(u) = Σ_jk N[j][k]·u[j][k], recovered from f's values on the Hermitian
/// basis directions. Works for complex-valued f; when f is real on
/// Hermitian arguments the result is Hermitian.
pub fn matrix_from_hermitian_functional<F>(r: usize, mut f: F) -> DMatrix<Complex64>
where
    F: FnMut(&DMatrix<Complex64>) -> Complex64,
{
    let mut n = DMatrix::<Complex64>::zeros(r, r);
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    for j in 0..r {
        let mut e = DMatrix::<Complex64>::zeros(r, r);
        e[(j, j)] = Complex64::new(1.0, 0.0);
        n[(j, j)] = f(&e);
    }
    for j in 0..r {
        for k in (j + 1)..r {
            let mut sym = DMatrix::<Complex64>::zeros(r, r);
            sym[(j, k)] = Complex64::new(1.0, 0.0);
            sym[(k, j)] = Complex64::new(1.0, 0.0);
            let s = f(&sym);
            let mut anti = DMatrix::<Complex64>::zeros(r, r);
            anti[(j, k)] = Complex64::new(0.0, 1.0);
            anti[(k, j)] = Complex64::new(0.0, -1.0);
            let t = f(&anti);
            n[(j, k)] = (s - i * t) * half;
            n[(k, j)] = (s + i * t) * half;
        }
    }
    n
}
