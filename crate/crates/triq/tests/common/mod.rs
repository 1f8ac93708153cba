//! Shared oracles for the integration tests.
//!
//! These deliberately avoid the library's eigensolver paths: the
//! characteristic polynomial comes from the Faddeev–LeVerrier trace
//! recursion and roots from Durand–Kerner iteration, so the spin-flip
//! spectrum can be checked against the non-Hermitian product
//! `rho * rho_tilde` through an independent route.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use triq::linalg::{ComplexMatrix, DensityMatrix};

/// Monic characteristic polynomial coefficients of `m`,
/// `det(lambda I - m) = lambda^n + c[n-1] lambda^(n-1) + ... + c[0]`,
/// returned as `c[0..n]` (constant term first).
pub fn charpoly(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / (k as f64);
        coeffs[n - k] = ck;
        if k < n {
            let mut shifted = mk.clone();
            for i in 0..n {
                shifted[(i, i)] += ck;
            }
            mk = m * &shifted;
        }
    }
    coeffs
}

fn eval_monic(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All complex roots of a monic polynomial by Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let delta = eval_monic(coeffs, roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    roots
}

/// Expands `prod (lambda - r_i)` into monic coefficients, constant term
/// first and the leading 1 dropped, matching [`charpoly`]'s layout.
pub fn poly_from_roots(roots: &[f64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    coeffs.pop();
    coeffs
}

/// Random mixed two-qubit density matrix: a convex mixture of pure
/// projectors with an identity floor so all four eigenvalues stay away
/// from zero.
pub fn random_full_rank_density<R: Rng>(rng: &mut R) -> DensityMatrix {
    let mut m = ComplexMatrix::identity(4).scaled(0.05);
    let mut weight_left = 0.8f64;
    for k in 0..3 {
        let mut amp = [Complex64::new(0.0, 0.0); 4];
        for a in &mut amp {
            *a = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amp {
            *a /= norm;
        }
        let w = if k == 2 { weight_left } else { weight_left / 2.0 };
        weight_left -= w;
        let proj = ComplexMatrix::from_fn(4, |r, c| amp[r] * amp[c].conj());
        m = &m + &proj.scaled(w);
    }
    DensityMatrix::new(m).expect("mixture of projectors is a density matrix")
}
