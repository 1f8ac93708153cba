//! Seeded state sampling.
//!
//! All randomized checks draw from a ChaCha8 stream seeded with a u64,
//! so every run with the same seed sees the same states on every
//! platform. A Haar-like pure state is 8 complex amplitudes with
//! independent standard-normal real and imaginary parts, normalized.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::states::{Family, ParametricParams, PureState3};

/// The deterministic generator used everywhere randomness is needed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-like random pure state: 16 unit Gaussians, normalized.
pub fn random_pure_state<R: Rng>(rng: &mut R) -> PureState3 {
    let mut amp = [Complex64::new(0.0, 0.0); 8];
    for a in &mut amp {
        *a = gaussian_complex(rng);
    }
    PureState3::normalized(amp).expect("a 16-Gaussian draw is nonzero")
}

/// Random normalized parameter triple (Haar-phase complex Gaussians).
pub fn random_parametric<R: Rng>(rng: &mut R, family: Family) -> ParametricParams {
    loop {
        let a = gaussian_complex(rng);
        let b = gaussian_complex(rng);
        let (g, norm) = if family == Family::III {
            (None, (a.norm_sqr() + b.norm_sqr()).sqrt())
        } else {
            let g = gaussian_complex(rng);
            (Some(g), (a.norm_sqr() + b.norm_sqr() + g.norm_sqr()).sqrt())
        };
        if norm <= 1e-12 {
            continue;
        }
        let p = ParametricParams::new(family, a / norm, b / norm, g.map(|g| g / norm));
        if let Ok(p) = p {
            return p;
        }
    }
}

const QUBIT_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Projects a state onto the fully permutation-symmetric subspace and
/// renormalizes; `None` when the projection vanishes.
pub fn symmetrize(state: &PureState3) -> Option<PureState3> {
    let mut sym = [Complex64::new(0.0, 0.0); 8];
    for perm in QUBIT_PERMUTATIONS {
        for i in 0..8usize {
            // Qubit positions (A, B, C) = bits (2, 1, 0); qubit k of the
            // source ket moves to position perm[k].
            let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
            let mut j = 0usize;
            for (k, &bit) in bits.iter().enumerate() {
                j |= bit << (2 - perm[k]);
            }
            sym[j] += state.amplitudes()[i];
        }
    }
    PureState3::normalized(sym).ok()
}

/// Samples Haar-like states until the symmetric projection is nonzero
/// (in practice the first draw).
pub fn random_symmetric_state<R: Rng>(rng: &mut R) -> PureState3 {
    loop {
        if let Some(s) = symmetrize(&random_pure_state(rng)) {
            return s;
        }
    }
}
