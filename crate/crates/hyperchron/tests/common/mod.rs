//! Shared oracles for the integration tests. Everything here is computed by
//! a route independent of the library code under test: cofactor expansion
//! instead of LU, explicit permutation sums instead of the polarization
//! formula, and Minkowski-component formulas instead of spinor algebra.

#![allow(dead_code)]

use hyperchron::chronometry::Event;
use hyperchron::Tolerance;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Real diagonal matrix as a complex DMatrix.
pub fn rdiag(vals: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(vals.len(), vals.len(), |i, j| {
        if i == j { cr(vals[i]) } else { cr(0.0) }
    })
}

pub fn ev(m: DMatrix<Complex64>) -> Event {
    Event::new(m, &Tolerance::default()).expect("test matrix must be weakly Hermitian")
}

pub fn ev_diag(vals: &[f64]) -> Event {
    ev(rdiag(vals))
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// All permutations of 0..n with their signs, built by counting inversions.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn build(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            build(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut perms = Vec::new();
    build(&mut Vec::new(), &mut (0..n).collect(), &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let mut inv = 0usize;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
            (p, sign)
        })
        .collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor(m: &DMatrix<Complex64>) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    if n == 0 {
        return cr(1.0);
    }
    if n == 1 {
        return m[(0, 0)];
    }
    let mut acc = cr(0.0);
    for j in 0..n {
        let minor = m.clone().remove_row(0).remove_column(j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += m[(0, j)] * det_cofactor(&minor) * cr(sign);
    }
    acc
}

/// Adjugate from cofactors: adj(M)[i][j] = (-1)^{i+j} det(minor_{j,i}).
pub fn adjugate_cofactor(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let minor = m.clone().remove_row(j).remove_column(i);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        det_cofactor(&minor) * cr(sign)
    })
}

/// The full two-epsilon contraction
/// Σ_{σ,τ} sgn(σ)·sgn(τ)·Π_k slots[k][σ(k)][τ(k)].
/// This is the chronometric tensor evaluated on r slots, term by term.
pub fn epsilon_contraction(slots: &[DMatrix<Complex64>]) -> Complex64 {
    let r = slots.len();
    assert!(slots.iter().all(|m| m.nrows() == r && m.ncols() == r));
    let perms = permutations(r);
    let mut acc = cr(0.0);
    for (sigma, ssign) in &perms {
        for (tau, tsign) in &perms {
            let mut prod = cr(ssign * tsign);
            for k in 0..r {
                prod *= slots[k][(sigma[k], tau[k])];
            }
            acc += prod;
        }
    }
    acc
}

/// Image of Minkowski components under the standard spinor correspondence,
/// re-derived here so the library's own map is not in the loop.
pub fn sigma_image(t: f64, x: f64, y: f64, z: f64) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[
        c(t + z, 0.0) / SQRT2,
        c(x, y) / SQRT2,
        c(x, -y) / SQRT2,
        c(t - z, 0.0) / SQRT2,
    ])
}

/// Components of a Hermitian 2x2 matrix in the basis used by `sigma_image`.
pub fn sigma_components(m: &DMatrix<Complex64>) -> [f64; 4] {
    let t = (m[(0, 0)].re + m[(1, 1)].re) / SQRT2;
    let z = (m[(0, 0)].re - m[(1, 1)].re) / SQRT2;
    let x = SQRT2 * m[(0, 1)].re;
    let y = SQRT2 * m[(0, 1)].im;
    [t, x, y, z]
}

fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> f64 {
    let p = [i, j, k, l];
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0.0;
            }
        }
    }
    let mut inv = 0usize;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1.0 } else { -1.0 }
}

/// Pauli-Lubanski spin magnitude of a classical system given the stored
/// momentum covector matrix and the 2x2 trace-free angular momentum
/// spinor l. Everything is done in Minkowski components: the angular
/// momentum tensor is read off from the map V -> lV + Vl†, then
/// W_mu = (1/2) eps_{mu nu rho sigma} M^{nu rho} P^sigma and
/// s = sqrt(-W·W)/m.
///
/// Covectors pair with events entrywise, so the matrix holding covariant
/// components (P0, P1, P2, P3) is sigma_image(P0, P1, -P2, P3): reading
/// components back through `sigma_components` flips the sign of the
/// second spatial slot. The mass norm is blind to that flip but the
/// epsilon contraction is not.
pub fn pauli_lubanski_spin(p: &DMatrix<Complex64>, l: &DMatrix<Complex64>) -> f64 {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let raw = sigma_components(p);
    let p_cov = [raw[0], raw[1], -raw[2], raw[3]];

    let mut m_mixed = [[0.0f64; 4]; 4];
    for nu in 0..4 {
        let mut e = [0.0; 4];
        e[nu] = 1.0;
        let s = sigma_image(e[0], e[1], e[2], e[3]);
        let w = l * &s + &s * l.adjoint();
        let comps = sigma_components(&w);
        for mu in 0..4 {
            m_mixed[mu][nu] = comps[mu];
        }
    }
    let mut m_up = [[0.0f64; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            m_up[mu][nu] = m_mixed[mu][nu] * eta[nu];
        }
    }
    for mu in 0..4 {
        for nu in 0..4 {
            assert!(
                (m_up[mu][nu] + m_up[nu][mu]).abs() <= 1e-9 * (1.0 + m_up[mu][nu].abs()),
                "angular momentum tensor must be antisymmetric for trace-free l"
            );
        }
    }

    let p_up: Vec<f64> = (0..4).map(|a| eta[a] * p_cov[a]).collect();
    let mut w_cov = [0.0f64; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sig in 0..4 {
                    let eps = levi_civita(mu, nu, rho, sig);
                    if eps != 0.0 {
                        w_cov[mu] += 0.5 * eps * m_up[nu][rho] * p_up[sig];
                    }
                }
            }
        }
    }
    let w2: f64 = (0..4).map(|a| eta[a] * w_cov[a] * w_cov[a]).sum();
    let m2: f64 = (0..4).map(|a| eta[a] * p_cov[a] * p_cov[a]).sum();
    assert!(m2 > 0.0, "oracle needs a timelike momentum");
    ((-w2).max(0.0) / m2).sqrt()
}

/// Matrix exponential by scaling-and-squaring with a truncated series.
/// Inputs here are small generator samples; 24 terms at norm <= 1/2 is far
/// below the tolerances the tests assert.
pub fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max) * n as f64;
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let a = m / cr(2f64.powi(s as i32));
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=24 {
        term = &term * &a / cr(k as f64);
        acc += &term;
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// Numerical rank of a real matrix at a relative singular-value cutoff.
pub fn real_rank(m: &DMatrix<f64>, rel_cutoff: f64) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|s| **s > rel_cutoff * smax).count()
}
