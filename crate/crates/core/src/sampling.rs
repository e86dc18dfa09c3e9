//! Seeded random operators and states.
//!
//! Used by the property tests and by the CLI `check` command; everything is
//! deterministic for a given seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::{expm_hermitian_generator, hermitize, CMatrix, CVector};
use crate::states::DensityOperator;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Random Hermitian matrix with O(1) entries (Gaussian ensemble).
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    hermitize(&g)
}

/// Haar-like random unitary, `exp(-iH)` for a random Hermitian `H`.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let h = random_hermitian(rng, dim);
    expm_hermitian_generator(&h, 1.0).expect("random Hermitian generator")
}

/// Random full-rank density operator (normalized Wishart).
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityOperator {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let mut w = &g * g.adjoint();
    // keep it comfortably full rank
    w += CMatrix::identity(dim, dim).scale(0.05 * dim as f64);
    let trace = w.trace().re;
    DensityOperator::new(w.unscale(trace)).expect("normalized Wishart state")
}

/// Random normalized state vector.
pub fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> CVector {
    let v = CVector::from_fn(dim, |_, _| complex_normal(rng));
    let n = v.norm();
    v.unscale(n)
}
