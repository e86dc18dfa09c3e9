//! Two-photon Franson interferometry with polarization-entangled input, plus
//! the single-photon interferometer that measures the interferometric phase.
//!
//! The source emits the Schmidt-form pair
//! `|Ψ_0⟩ = √((1+r)/2)|HH⟩ + √((1-r)/2)|VV⟩`; waveplates `u(α, θ)` and the
//! matched ancilla plate act on the long arms, a U(1) shift χ on a short arm,
//! and coincidence detection interferes `|Ψ_0⟩` with `|Ψ_τ⟩`. The ideal
//! coincidence law is `1 + ν cos(χ - φ_g)` with `ν e^{iφ_g}` the bi-local
//! overlap.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::evolution::{ancilla_waveplate_params, waveplate_unitary, WaveplateParams};
use crate::holonomy::{
    purified_state, PhaseResult, PurifiedState, VISIBILITY_FLOOR,
};
use crate::numerics::{expm_hermitian_generator, identity, CMatrix, CVector};
use crate::states::{density_from_bloch, spectral, BlochVector, DensityOperator};

/// Franson run configuration.
#[derive(Debug, Clone)]
pub struct FransonConfig {
    /// Schmidt/Bloch parameter of the source.
    pub r: f64,
    /// System-arm waveplate; the ancilla plate is derived from it.
    pub plate: WaveplateParams,
    /// U(1) shift settings, each in `[0, 2π)`.
    pub chi_grid: Vec<f64>,
    /// 1 gives the ideal interference law; larger values simulate Poisson
    /// photon counting with that many counts per unit intensity.
    pub samples_per_point: u32,
    /// Seed for the counting noise; split per grid point so results do not
    /// depend on evaluation order.
    pub seed: u64,
}

impl FransonConfig {
    pub fn new(r: f64, plate: WaveplateParams, chi_grid: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::BlochNormExceeded { norm: r });
        }
        if chi_grid.is_empty()
            || chi_grid
                .iter()
                .any(|&chi| !(0.0..2.0 * std::f64::consts::PI).contains(&chi))
        {
            return Err(Error::IllConditionedFit);
        }
        Ok(Self {
            r,
            plate,
            chi_grid,
            samples_per_point: 1,
            seed: 0,
        })
    }

    pub fn with_sampling(mut self, samples_per_point: u32, seed: u64) -> Self {
        self.samples_per_point = samples_per_point.max(1);
        self.seed = seed;
        self
    }
}

/// Coincidence scan: normalized rate per χ setting (ideal range `[0, 2]`).
#[derive(Debug, Clone, PartialEq)]
pub struct FringeScan {
    pub chi: Vec<f64>,
    pub intensity: Vec<f64>,
}

/// The polarization-entangled pair in Schmidt form,
/// `√((1+r)/2)|HH⟩ + √((1-r)/2)|VV⟩`; its reduced state is `½(1 + rσ_z)` in
/// the H-V basis.
pub fn entangled_source(r: f64) -> Result<PurifiedState> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::BlochNormExceeded { norm: r });
    }
    let mut amps = CVector::zeros(4);
    amps[0] = Complex64::new(((1.0 + r) / 2.0).sqrt(), 0.0);
    amps[3] = Complex64::new(((1.0 - r) / 2.0).sqrt(), 0.0);
    PurifiedState::new(2, 2, amps)
}

/// Reduced system state of the source.
fn source_state(r: f64) -> Result<DensityOperator> {
    density_from_bloch(BlochVector::new(0.0, 0.0, r))
}

/// Bi-local overlap `⟨Ψ_0|(u_τ ⊗ y_τ)|Ψ_0⟩` with `u_τ = u(α, θ)` and
/// `y_τ = u†(α̃, θ̃)` the matched ancilla plate.
pub fn bilocal_overlap(r: f64, plate: &WaveplateParams) -> Result<Complex64> {
    let u = waveplate_unitary(plate);
    let y = waveplate_unitary(&ancilla_waveplate_params(plate, r)).adjoint();
    let rho0 = source_state(r)?;
    let start = purified_state(&rho0, &identity(2), &identity(2))?;
    let end = purified_state(&rho0, &u, &y)?;
    start.inner(&end)
}

/// Coincidence fringe `I(χ) = 1 + |c| cos(χ - arg c)` over the configured χ
/// grid, with optional Poisson counting noise.
pub fn coincidence_fringe(cfg: &FransonConfig) -> Result<FringeScan> {
    let c = bilocal_overlap(cfg.r, &cfg.plate)?;
    let (nu, phi) = (c.norm(), c.arg());
    let intensity = cfg
        .chi_grid
        .iter()
        .enumerate()
        .map(|(i, &chi)| {
            let ideal = 1.0 + nu * (chi - phi).cos();
            if cfg.samples_per_point <= 1 {
                ideal
            } else {
                sample_poisson_rate(ideal, cfg.samples_per_point, point_seed(cfg.seed, i))
            }
        })
        .collect();
    Ok(FringeScan {
        chi: cfg.chi_grid.clone(),
        intensity,
    })
}

fn point_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn sample_poisson_rate(rate: f64, samples: u32, seed: u64) -> f64 {
    let lambda = rate * samples as f64;
    if lambda <= 0.0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts: f64 = Poisson::new(lambda)
        .expect("positive Poisson rate")
        .sample(&mut rng);
    counts / samples as f64
}

/// Least-squares fit of `I(χ) = a + b cos χ + c sin χ`, reported as
/// visibility `√(b² + c²)/a` and phase `atan2(c, b)` of the model
/// `I = a(1 + ν cos(χ - φ))`. Recovery is exact on noiseless model data.
pub fn fit_fringe(scan: &FringeScan) -> Result<PhaseResult> {
    if scan.chi.len() != scan.intensity.len() {
        return Err(Error::DimensionMismatch {
            left: scan.chi.len(),
            right: scan.intensity.len(),
        });
    }
    let mut distinct: Vec<f64> = scan.chi.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let span = match (distinct.first(), distinct.last()) {
        (Some(first), Some(last)) => last - first,
        _ => 0.0,
    };
    if distinct.len() < 3 || span <= std::f64::consts::PI {
        return Err(Error::IllConditionedFit);
    }

    // normal equations for the 3-parameter linear model
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    for (&chi, &y) in scan.chi.iter().zip(scan.intensity.iter()) {
        let row = nalgebra::Vector3::new(1.0, chi.cos(), chi.sin());
        ata += row * row.transpose();
        atb += row * y;
    }
    let solved = ata
        .lu()
        .solve(&atb)
        .ok_or(Error::IllConditionedFit)?;
    let (a, b, c) = (solved[0], solved[1], solved[2]);
    if a.abs() < VISIBILITY_FLOOR {
        return Err(Error::IllConditionedFit);
    }
    Ok(PhaseResult::from_overlap(Complex64::new(b / a, c / a)))
}

/// Cyclic (α = 2π) fringe visibility
/// `ν = √[cos²(πs) + (r² cos²2θ / s²) sin²(πs)]`, `s = √(1 - r² sin²2θ)`,
/// with the removable singularity at `s = 0` taken by its limit (1).
pub fn cyclic_visibility(r: f64, theta: f64) -> f64 {
    assert!((0.0..=1.0).contains(&r), "r must lie in [0, 1]");
    let two_theta = 2.0 * theta;
    let s2 = 1.0 - r * r * two_theta.sin().powi(2);
    if s2 < 1e-24 {
        return 1.0;
    }
    let s = s2.sqrt();
    let (cs, sn) = ((std::f64::consts::PI * s).cos(), (std::f64::consts::PI * s).sin());
    let geometric = r * r * two_theta.cos().powi(2) / s2;
    (cs * cs + geometric * sn * sn).sqrt().min(1.0)
}

/// Single-photon interferometer test of the interferometric phase: one arm
/// carries `u_τ` composed with the compensation `exp(+iτD)`, `D` the diagonal
/// of `H` in the ρ₀ eigenbasis, which cancels the accumulated local phase of
/// each eigenstate. The resulting fringe is `1 + ν cos(χ - Φ_g)`; the fitted
/// phase equals [`crate::holonomy::interferometric_phase`].
pub fn single_photon_phi_test(
    rho0: &DensityOperator,
    h: &CMatrix,
    tau: f64,
    chi_grid: &[f64],
) -> Result<(FringeScan, PhaseResult)> {
    if h.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: h.nrows(),
            right: rho0.dim(),
        });
    }
    if chi_grid.is_empty() {
        return Err(Error::IllConditionedFit);
    }
    let dec = spectral(rho0)?;
    let contributing: Vec<usize> = (0..rho0.dim())
        .filter(|&k| dec.probabilities[k] > 1e-9)
        .collect();
    for (a, &k) in contributing.iter().enumerate() {
        for &l in &contributing[a + 1..] {
            if (dec.probabilities[k] - dec.probabilities[l]).abs() < 1e-9 {
                return Err(Error::DegenerateSpectrum);
            }
        }
    }
    // compensation unitary exp(+iτD) in the eigenbasis of ρ₀
    let dim = rho0.dim();
    let mut comp_eig = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let kvec = dec.vector(k);
        let energy = kvec.dotc(&(h * &kvec)).re;
        comp_eig[(k, k)] = Complex64::from_polar(1.0, tau * energy);
    }
    let compensation = &dec.basis * comp_eig * dec.basis.adjoint();
    let composite = compensation * expm_hermitian_generator(h, tau)?;
    let c = (rho0.matrix() * composite).trace();
    let (nu, phi) = (c.norm(), c.arg());
    let scan = FringeScan {
        chi: chi_grid.to_vec(),
        intensity: chi_grid
            .iter()
            .map(|&chi| 1.0 + nu * (chi - phi).cos())
            .collect(),
    };
    let fitted = fit_fringe(&scan)?;
    Ok((scan, fitted))
}
