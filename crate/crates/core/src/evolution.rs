//! Hamiltonians and unitary path generation: qubit precession, the ancilla
//! Hamiltonian that drives Uhlmann parallel transport for time-independent
//! systems, and the optical waveplate unitaries with their ancilla
//! counterparts.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, hermitize, propagator_from_eig, CMatrix};
use crate::states::{
    density_from_bloch, pauli_dot, spectral, BlochVector, DensityOperator, StatePath,
};

/// Qubit precession scenario: initial Bloch length `r` along z, precession
/// axis `(n_x, 0, n_z)` with `n_x² + n_z² = 1`, evolution parameter `tau`
/// (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionParams {
    pub r: f64,
    pub n_x: f64,
    pub n_z: f64,
    pub tau: f64,
}

impl PrecessionParams {
    pub fn new(r: f64, n_x: f64, n_z: f64, tau: f64) -> Result<Self> {
        let axis_norm = n_x * n_x + n_z * n_z;
        if (axis_norm - 1.0).abs() >= 1e-12 {
            return Err(Error::BlochNormExceeded { norm: axis_norm });
        }
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::BlochNormExceeded { norm: r });
        }
        if tau < 0.0 || !tau.is_finite() {
            return Err(Error::IndeterminatePhase);
        }
        Ok(Self { r, n_x, n_z, tau })
    }

    /// Convenience constructor with `n_z = +√(1 - n_x²)`.
    pub fn with_axis_x(r: f64, n_x: f64, tau: f64) -> Result<Self> {
        if n_x.abs() > 1.0 {
            return Err(Error::BlochNormExceeded { norm: n_x.abs() });
        }
        Self::new(r, n_x, (1.0 - n_x * n_x).max(0.0).sqrt(), tau)
    }

    /// Initial state ½(1 + r σ_z).
    pub fn initial_state(&self) -> DensityOperator {
        density_from_bloch(BlochVector::new(0.0, 0.0, self.r)).expect("r validated in [0, 1]")
    }
}

/// Waveplate settings: precession angle `alpha` (proportional to plate
/// thickness; π/2 for a quarter-wave plate) and plate angle `theta` from the
/// vertical axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplateParams {
    pub alpha: f64,
    pub theta: f64,
}

impl WaveplateParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if alpha < 0.0 || !alpha.is_finite() || !theta.is_finite() {
            return Err(Error::IndeterminatePhase);
        }
        Ok(Self { alpha, theta })
    }
}

/// `H = ½(n_x σ_x + n_z σ_z)`: traceless Hermitian with eigenvalues ±½.
pub fn precession_hamiltonian(p: &PrecessionParams) -> CMatrix {
    pauli_dot([p.n_x, 0.0, p.n_z]).scale(0.5)
}

/// The ancilla Hamiltonian `H̃` whose transport `v_t = exp(itH̃)` realizes
/// Uhlmann parallel transport of `ρ_t = u_t ρ_0 u_t†` for time-independent
/// `H`:
///
/// `H̃ = Σ_{k,l} [2√(λ_k λ_l)/(λ_k + λ_l)] |k⟩⟨l| ⟨k|H|l⟩`,
///
/// expressed back in the original basis. Conventions for the rank-deficient
/// case: diagonal weights are 1 even in the λ→0 limit, and off-diagonal
/// weights with `λ_k = λ_l = 0` are 0 (the kernel block never reaches the
/// amplitude `w_t = u_t √ρ_0 v_t`, so the choice is pure gauge).
pub fn ancilla_hamiltonian(h: &CMatrix, rho0: &DensityOperator) -> Result<CMatrix> {
    if h.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: h.nrows(),
            right: rho0.dim(),
        });
    }
    let dec = spectral(rho0)?;
    let dim = rho0.dim();
    let h_eig = dec.basis.adjoint() * h * &dec.basis;
    let mut scaled = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        for l in 0..dim {
            let weight = if k == l {
                1.0
            } else {
                let (lk, ll) = (dec.probabilities[k], dec.probabilities[l]);
                let denom = lk + ll;
                if denom < 1e-12 {
                    0.0
                } else {
                    2.0 * (lk * ll).max(0.0).sqrt() / denom
                }
            };
            scaled[(k, l)] = h_eig[(k, l)].scale(weight);
        }
    }
    Ok(hermitize(&(&dec.basis * scaled * dec.basis.adjoint())))
}

/// Propagators `u_t = exp(-itH)` at `t = j·tau/steps`, `j = 0..=steps`.
pub fn unitary_path(h: &CMatrix, tau: f64, steps: usize) -> Result<Vec<CMatrix>> {
    assert!(steps >= 1, "unitary_path requires at least one step");
    let eig = hermitian_eig(h)?;
    Ok((0..=steps)
        .map(|j| propagator_from_eig(&eig, tau * j as f64 / steps as f64))
        .collect())
}

/// The orbit `ρ_j = u_j ρ_0 u_j†` of the precession scenario as a state path.
pub fn precession_state_path(p: &PrecessionParams, steps: usize) -> Result<StatePath> {
    let h = precession_hamiltonian(p);
    let rho0 = p.initial_state();
    let us = unitary_path(&h, p.tau, steps)?;
    let times: Vec<f64> = (0..=steps)
        .map(|j| p.tau * j as f64 / steps as f64)
        .collect();
    let states: Vec<DensityOperator> = us
        .iter()
        .map(|u| rho0.evolve(u))
        .collect::<Result<_>>()?;
    // tau = 0 collapses the grid; keep a two-point constant path usable
    if p.tau == 0.0 {
        let synthetic: Vec<f64> = (0..=steps).map(|j| j as f64).collect();
        return StatePath::new(synthetic, states);
    }
    StatePath::new(times, states)
}

/// SU(2) waveplate action in the H-V basis:
/// `u(α, θ) = exp(-i(α/2) n_θ·σ)` with `n_θ = (sin 2θ, 0, cos 2θ)`,
/// evaluated in closed form.
pub fn waveplate_unitary(p: &WaveplateParams) -> CMatrix {
    let (half, two_theta) = (0.5 * p.alpha, 2.0 * p.theta);
    let n = [two_theta.sin(), 0.0, two_theta.cos()];
    let cos = Complex64::new(half.cos(), 0.0);
    let msin = Complex64::new(0.0, -half.sin());
    crate::numerics::identity(2) * cos + pauli_dot(n) * msin
}

/// Thickness and orientation of the ancilla plate paired with `(α, θ)` for a
/// source of Schmidt parameter `r`:
///
/// `α̃/α = √(1 - r² sin²2θ)`, `tan 2θ̃ = √(1-r²) tan 2θ`,
///
/// with `2θ̃` placed in the quadrant of `2θ` (two-argument arctangent), which
/// keeps θ̃ continuous in `r` down to θ̃ = θ at r = 0. The ancilla unitary is
/// `y = u†(α̃, θ̃)`.
pub fn ancilla_waveplate_params(p: &WaveplateParams, r: f64) -> WaveplateParams {
    assert!((0.0..=1.0).contains(&r), "r must lie in [0, 1]");
    let two_theta = 2.0 * p.theta;
    let s = (1.0 - r * r * two_theta.sin().powi(2)).max(0.0).sqrt();
    let alpha = p.alpha * s;
    let two_theta_tilde = ((1.0 - r * r).max(0.0).sqrt() * two_theta.sin()).atan2(two_theta.cos());
    WaveplateParams {
        alpha,
        theta: 0.5 * two_theta_tilde,
    }
}
