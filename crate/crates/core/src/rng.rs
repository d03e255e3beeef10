//! Seeded random generators used by sampling routines and tests. Everything is
//! ChaCha-based so results are identical across platforms and runs.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, cr, CMat};

/// Deterministic generator for a seed.
pub(crate) fn chacha(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard-normal real draw.
pub(crate) fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix with independent complex Gaussian entries.
pub(crate) fn gaussian_cmat(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| c(normal(rng), normal(rng)))
}

/// Matrix with independent real Gaussian entries.
pub(crate) fn gaussian_real_cmat(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| cr(normal(rng)))
}

/// Vector with independent complex Gaussian entries.
pub(crate) fn gaussian_vec(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n).map(|_| c(normal(rng), normal(rng))).collect()
}

/// Seeded random Hermitian matrix (G + G†)/2. Test support.
#[cfg(test)]
pub(crate) fn random_hermitian(d: usize, seed: u64) -> CMat {
    let mut rng = chacha(seed);
    let g = gaussian_cmat(d, d, &mut rng);
    g.add(&g.adjoint()).scale(cr(0.5))
}

/// k orthonormal columns in dimension d (complex), by Gram–Schmidt on Gaussian draws.
pub(crate) fn random_orthonormal_cols(
    d: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Complex64>> {
    assert!(k <= d, "cannot draw {k} orthonormal vectors in dimension {d}");
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v = gaussian_vec(d, rng);
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (ve, ue) in v.iter_mut().zip(u) {
                *ve -= dot * ue;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue; // measure-zero degenerate draw; take a fresh one
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    cols
}

/// Seeded random unit vector.
pub(crate) fn random_unit_vec(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    loop {
        let v = gaussian_vec(n, rng);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}
