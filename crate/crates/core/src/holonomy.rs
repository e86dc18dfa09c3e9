//! Mixed-state geometric phases.
//!
//! Two distinct holonomies live here. The Uhlmann phase `φ_g = arg⟨w_0, w_τ⟩`
//! is taken along a parallel lift of the density-operator path, realized
//! discretely by an iterated polar-decomposition update that makes every
//! consecutive amplitude overlap Hermitian positive, and in spectral form
//! through the ancilla Hamiltonian for unitary precession. The
//! interferometric phase `Φ_g = arg Σ_k λ_k ν_k e^{iβ_k}` transports each
//! eigenstate of ρ₀ in a parallel manner and is a property of the system
//! alone. Qubit closed forms, the purified bi-local picture, and the
//! parallelity diagnostics that separate the two notions round out the
//! module.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{ancilla_hamiltonian, PrecessionParams};
use crate::numerics::{
    expm_hermitian_generator, hermitian_eig, hermiticity_residual, hs_inner, identity, max_norm,
    polar_unitary, CMatrix, CVector,
};
use crate::states::{spectral, DensityOperator, StatePath};

/// Below this overlap magnitude the argument of the overlap is noise and the
/// phase is reported as undefined.
pub const VISIBILITY_FLOOR: f64 = 1e-8;

/// Eigenvalues at or below this are treated as vanishing when selecting the
/// eigenstates that contribute to the interferometric phase.
const EIGENVALUE_FLOOR: f64 = 1e-9;

/// Wraps an angle to the principal interval `(-π, π]`.
pub fn normalize_angle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut a = x.rem_euclid(two_pi);
    if a > PI {
        a -= two_pi;
    }
    a
}

/// `|e^{ia} - e^{ib}|`: the mod-2π-safe distance between two phases.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    2.0 * (0.5 * (a - b)).sin().abs()
}

/// Phase and fringe contrast extracted from a complex overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// Principal value in `(-π, π]`; 0 when the phase is undefined.
    pub phase: f64,
    /// Overlap magnitude in `[0, 1]`.
    pub visibility: f64,
    /// False when the visibility sits below [`VISIBILITY_FLOOR`].
    pub phase_defined: bool,
}

impl PhaseResult {
    pub fn from_overlap(c: Complex64) -> Self {
        let visibility = c.norm();
        if visibility < VISIBILITY_FLOOR {
            Self {
                phase: 0.0,
                visibility,
                phase_defined: false,
            }
        } else {
            Self {
                phase: normalize_angle(c.arg()),
                visibility,
                phase_defined: true,
            }
        }
    }
}

/// Hilbert-Schmidt operator `w` with `w·w† = ρ`: a purification of ρ.
#[derive(Debug, Clone)]
pub struct Amplitude {
    matrix: CMatrix,
}

impl Amplitude {
    /// Validates that `w·w†` is Hermitian PSD with unit trace (within 1e-8).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let gram = &matrix * matrix.adjoint();
        let trace = gram.trace().re;
        if (trace - 1.0).abs() > 1e-8 {
            return Err(Error::TraceNotUnit { trace });
        }
        let eig = hermitian_eig(&crate::numerics::hermitize(&gram))?;
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -1e-8 {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// The state `ρ = w·w†` this amplitude purifies.
    pub fn state(&self) -> Result<DensityOperator> {
        DensityOperator::new(&self.matrix * self.matrix.adjoint())
    }
}

/// Bipartite pure state `|Ψ⟩ ∈ H_s ⊗ H_a` in flattened form: entry
/// `i·dim_a + j` is the coefficient of `|i⟩_s ⊗ |j⟩_a`.
#[derive(Debug, Clone)]
pub struct PurifiedState {
    dim_s: usize,
    dim_a: usize,
    amplitudes: CVector,
}

impl PurifiedState {
    pub fn new(dim_s: usize, dim_a: usize, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != dim_s * dim_a || dim_s == 0 || dim_a == 0 {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: dim_s * dim_a,
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::TraceNotUnit { trace: norm * norm });
        }
        Ok(Self {
            dim_s,
            dim_a,
            amplitudes,
        })
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim_s != other.dim_s || self.dim_a != other.dim_a {
            return Err(Error::DimensionMismatch {
                left: self.amplitudes.len(),
                right: other.amplitudes.len(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Reduced system state `Tr_a |Ψ⟩⟨Ψ|`.
    pub fn partial_trace_ancilla(&self) -> CMatrix {
        let mut rho = CMatrix::zeros(self.dim_s, self.dim_s);
        for i in 0..self.dim_s {
            for ip in 0..self.dim_s {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.dim_a {
                    acc += self.amplitudes[i * self.dim_a + j]
                        * self.amplitudes[ip * self.dim_a + j].conj();
                }
                rho[(i, ip)] = acc;
            }
        }
        rho
    }

    /// `(u ⊗ y)|Ψ⟩`.
    pub fn apply_bilocal(&self, u: &CMatrix, y: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim_s || y.nrows() != self.dim_a {
            return Err(Error::DimensionMismatch {
                left: u.nrows(),
                right: self.dim_s,
            });
        }
        let mut out = CVector::zeros(self.amplitudes.len());
        for i in 0..self.dim_s {
            for j in 0..self.dim_a {
                let mut acc = Complex64::new(0.0, 0.0);
                for ip in 0..self.dim_s {
                    for jp in 0..self.dim_a {
                        acc += u[(i, ip)] * y[(j, jp)] * self.amplitudes[ip * self.dim_a + jp];
                    }
                }
                out[i * self.dim_a + j] = acc;
            }
        }
        Self::new(self.dim_s, self.dim_a, out)
    }
}

/// Discrete geometric phase of a chain of pure states: the argument of the
/// Bargmann chain `⟨ψ_0|ψ_N⟩⟨ψ_N|ψ_{N-1}⟩ ⋯ ⟨ψ_1|ψ_0⟩`.
///
/// The phase is flagged undefined when any factor in the chain (including the
/// closing overlap) drops below the visibility floor.
pub fn pancharatnam_phase(states: &[CVector]) -> Result<PhaseResult> {
    if states.len() < 2 {
        return Err(Error::DimensionMismatch {
            left: states.len(),
            right: 2,
        });
    }
    let dim = states[0].len();
    if states.iter().any(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: 0,
        });
    }
    let mut product = states[0].dotc(&states[states.len() - 1]);
    let mut defined = product.norm() >= VISIBILITY_FLOOR;
    for j in (1..states.len()).rev() {
        let factor = states[j].dotc(&states[j - 1]);
        defined &= factor.norm() >= VISIBILITY_FLOOR;
        product *= factor;
    }
    let mut result = PhaseResult::from_overlap(product);
    if !defined {
        result.phase_defined = false;
        result.phase = 0.0;
    }
    Ok(result)
}

/// Gauge-invariant noncyclic geometric phase of a pure state under
/// time-independent `H`: `β = arg⟨ψ_0|u_τ|ψ_0⟩ + τ⟨ψ_0|H|ψ_0⟩`, i.e. the
/// total phase with the dynamical part removed.
pub fn pure_geometric_phase(psi0: &CVector, h: &CMatrix, tau: f64) -> Result<PhaseResult> {
    if psi0.len() != h.nrows() {
        return Err(Error::DimensionMismatch {
            left: psi0.len(),
            right: h.nrows(),
        });
    }
    let u = expm_hermitian_generator(h, tau)?;
    let overlap = psi0.dotc(&(&u * psi0));
    let energy = psi0.dotc(&(h * psi0)).re;
    Ok(PhaseResult::from_overlap(
        overlap * Complex64::from_polar(1.0, tau * energy),
    ))
}

/// Parallel amplitudes along a state path, built iteratively: `w_0 = √ρ_0`
/// and `w_{j+1} = √ρ_{j+1} · polar_unitary(√ρ_{j+1} √ρ_j U_j)`, which makes
/// every consecutive overlap `w_{j+1}† w_j` Hermitian PSD by construction.
fn discrete_amplitudes(path: &StatePath) -> Result<Vec<CMatrix>> {
    let sqrts: Vec<CMatrix> = path.states().iter().map(|s| s.sqrt()).collect();
    let dim = path.dim();
    let mut transport = identity(dim);
    let mut lift = Vec::with_capacity(path.len());
    lift.push(sqrts[0].clone());
    for j in 0..path.len() - 1 {
        let m = &sqrts[j + 1] * &sqrts[j] * &transport;
        if max_norm(&m) < VISIBILITY_FLOOR {
            return Err(Error::DegenerateStep { step: j });
        }
        transport = polar_unitary(&m);
        lift.push(&sqrts[j + 1] * &transport);
    }
    Ok(lift)
}

/// Uhlmann phase of a discretized path: phase and visibility of
/// `⟨w_0, w_N⟩` along the discrete parallel lift.
pub fn uhlmann_discrete(path: &StatePath) -> Result<PhaseResult> {
    let lift = discrete_amplitudes(path)?;
    let overlap = hs_inner(&lift[0], &lift[lift.len() - 1])?;
    Ok(PhaseResult::from_overlap(overlap))
}

/// The full discrete parallel lift as validated amplitudes, for parallelity
/// diagnostics.
pub fn uhlmann_discrete_lift(path: &StatePath) -> Result<Vec<Amplitude>> {
    discrete_amplitudes(path)?
        .into_iter()
        .map(Amplitude::new)
        .collect()
}

/// Uhlmann phase for unitary precession in spectral form:
/// `φ_g = arg Σ_{k,l} √(λ_k λ_l) ⟨l|u_τ|k⟩⟨k|v_τ|l⟩` with
/// `v_τ = exp(iτH̃)` generated by the ancilla Hamiltonian.
pub fn uhlmann_unitary(rho0: &DensityOperator, h: &CMatrix, tau: f64) -> Result<PhaseResult> {
    let dec = spectral(rho0)?;
    let u = expm_hermitian_generator(h, tau)?;
    let htilde = ancilla_hamiltonian(h, rho0)?;
    let v = expm_hermitian_generator(&htilde, -tau)?; // exp(+iτH̃)
    let ue = dec.basis.adjoint() * u * &dec.basis;
    let ve = dec.basis.adjoint() * v * &dec.basis;
    let dim = rho0.dim();
    let mut overlap = Complex64::new(0.0, 0.0);
    for k in 0..dim {
        for l in 0..dim {
            let weight = (dec.probabilities[k].max(0.0) * dec.probabilities[l].max(0.0)).sqrt();
            overlap += ue[(l, k)] * ve[(k, l)].scale(weight);
        }
    }
    Ok(PhaseResult::from_overlap(overlap))
}

/// Schmidt-form purification `|Ψ⟩ = Σ_k √λ_k (u|k⟩) ⊗ (y|k⟩)` built on the
/// spectral basis of ρ₀.
pub fn purified_state(rho0: &DensityOperator, u: &CMatrix, y: &CMatrix) -> Result<PurifiedState> {
    let dim = rho0.dim();
    if u.nrows() != dim || y.nrows() != dim {
        return Err(Error::DimensionMismatch {
            left: u.nrows().max(y.nrows()),
            right: dim,
        });
    }
    let dec = spectral(rho0)?;
    let uk = u * &dec.basis;
    let yk = y * &dec.basis;
    let mut amps = CVector::zeros(dim * dim);
    for k in 0..dim {
        let weight = dec.probabilities[k].max(0.0).sqrt();
        if weight == 0.0 {
            continue;
        }
        for i in 0..dim {
            for j in 0..dim {
                amps[i * dim + j] += uk[(i, k)] * yk[(j, k)].scale(weight);
            }
        }
    }
    PurifiedState::new(dim, dim, amps)
}

/// Phase of the bi-local evolution of the purified state:
/// `arg⟨Ψ_0|(u ⊗ y)|Ψ_0⟩`. With `y` the eigenbasis transpose of the ancilla
/// transport this reproduces [`uhlmann_unitary`].
pub fn purified_overlap(rho0: &DensityOperator, u: &CMatrix, y: &CMatrix) -> Result<PhaseResult> {
    let start = purified_state(rho0, &identity(rho0.dim()), &identity(rho0.dim()))?;
    let end = purified_state(rho0, u, y)?;
    Ok(PhaseResult::from_overlap(start.inner(&end)?))
}

/// Transpose of `m` taken in the eigenbasis of ρ₀, `K (K†mK)^T K†`. This is
/// the basis in which the ancilla unitary `y = v^T` of the purified picture
/// is defined.
pub fn eigenbasis_transpose(m: &CMatrix, rho0: &DensityOperator) -> Result<CMatrix> {
    if m.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: rho0.dim(),
        });
    }
    let dec = spectral(rho0)?;
    let me = dec.basis.adjoint() * m * &dec.basis;
    Ok(&dec.basis * me.transpose() * dec.basis.adjoint())
}

/// Relative (total) phase between initial and final states under a uni-local
/// unitary: `arg Tr[ρ_0 u]`.
pub fn relative_phase(rho0: &DensityOperator, u: &CMatrix) -> Result<PhaseResult> {
    if u.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: u.nrows(),
            right: rho0.dim(),
        });
    }
    Ok(PhaseResult::from_overlap((rho0.matrix() * u).trace()))
}

/// Interferometric mixed-state phase `Φ_g = arg Σ_k λ_k ν_k e^{iβ_k}`, where
/// `ν_k e^{iβ_k} = e^{iτ⟨k|H|k⟩}⟨k|u_τ|k⟩` is the parallel-transported
/// overlap of eigenstate `k`. Eigenstates with vanishing weight are excluded;
/// a degeneracy among the contributing weights leaves the transport — and the
/// phase — indeterminate.
pub fn interferometric_phase(
    rho0: &DensityOperator,
    h: &CMatrix,
    tau: f64,
) -> Result<PhaseResult> {
    if h.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: h.nrows(),
            right: rho0.dim(),
        });
    }
    let dec = spectral(rho0)?;
    let contributing: Vec<usize> = (0..rho0.dim())
        .filter(|&k| dec.probabilities[k] > EIGENVALUE_FLOOR)
        .collect();
    for (a, &k) in contributing.iter().enumerate() {
        for &l in &contributing[a + 1..] {
            if (dec.probabilities[k] - dec.probabilities[l]).abs() < 1e-9 {
                return Err(Error::DegenerateSpectrum);
            }
        }
    }
    let u = expm_hermitian_generator(h, tau)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &k in &contributing {
        let kvec = dec.vector(k);
        let nu_beta = kvec.dotc(&(&u * &kvec));
        let energy = kvec.dotc(&(h * &kvec)).re;
        sum += nu_beta * Complex64::from_polar(dec.probabilities[k], tau * energy);
    }
    Ok(PhaseResult::from_overlap(sum))
}

/// Closed-form interferometric phase of a precessing qubit,
/// `Φ_g = -arctan(r tan(Ω/2))` with the branch fixed by the underlying
/// overlap `cos(Ω/2) - i r sin(Ω/2)` (two-argument arctangent), reduced to
/// `(-π, π]`. `Ω` is the geodesically closed solid angle.
pub fn interferometric_qubit(r: f64, omega: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::BlochNormExceeded { norm: r });
    }
    if r == 0.0 {
        return Err(Error::IndeterminatePhase);
    }
    let half = 0.5 * omega;
    let c = Complex64::new(half.cos(), -r * half.sin());
    Ok(normalize_angle(c.arg()))
}

/// Complex overlap `⟨w_0, w_τ⟩ = Tr(√ρ_0 u_τ √ρ_0 v_τ)` of the parallel lift
/// for qubit precession, in closed form. Its argument is the noncyclic
/// Uhlmann phase; feeding real and imaginary parts to the two-argument
/// arctangent resolves the branch of the printed arctan expression.
pub fn uhlmann_qubit_overlap(p: &PrecessionParams) -> Complex64 {
    let r2 = p.r * p.r;
    let s = (1.0 - r2 * p.n_x * p.n_x).max(0.0).sqrt();
    let (c1, s1) = ((0.5 * p.tau).cos(), (0.5 * p.tau).sin());
    if s < 1e-12 {
        // only reachable at r = 1, |n_x| = 1, where every ñ-term carries
        // sin(τ̃/2) = 0
        return Complex64::new(c1, 0.0);
    }
    let tau_tilde = p.tau * s;
    let (ct, st) = ((0.5 * tau_tilde).cos(), (0.5 * tau_tilde).sin());
    let sq = (1.0 - r2).max(0.0).sqrt();
    let n_tx = sq * p.n_x / s;
    let n_tz = p.n_z / s;
    let re = c1 * ct + (p.n_z * n_tz + sq * p.n_x * n_tx) * s1 * st;
    let im = p.r * (c1 * st * n_tz - s1 * ct * p.n_z);
    Complex64::new(re, im)
}

/// Noncyclic Uhlmann phase of a precessing qubit in closed form, with the
/// intermediates `ñ_x = √(1-r²) n_x / √(1-r²n_x²)`, `ñ_z = n_z / √(1-r²n_x²)`
/// and `τ̃ = τ√(1-r²n_x²)` evaluated internally.
pub fn uhlmann_qubit_noncyclic(p: &PrecessionParams) -> Result<f64> {
    let c = uhlmann_qubit_overlap(p);
    if c.norm() < VISIBILITY_FLOOR {
        return Err(Error::IndeterminatePhase);
    }
    Ok(normalize_angle(c.arg()))
}

/// Cyclic (τ = 2π) Uhlmann phase of a precessing qubit,
/// `φ_g = arctan[(r n_z/√(1-r²n_x²)) tan(π√(1-r²n_x²))]` with
/// `n_z = +√(1-n_x²)`, branch-resolved through the overlap
/// `-cos(πs) - i r ñ_z sin(πs)`.
pub fn uhlmann_qubit_cyclic(r: f64, n_x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::BlochNormExceeded { norm: r });
    }
    if n_x.abs() > 1.0 {
        return Err(Error::BlochNormExceeded { norm: n_x.abs() });
    }
    let s = (1.0 - r * r * n_x * n_x).max(0.0).sqrt();
    let n_z = (1.0 - n_x * n_x).max(0.0).sqrt();
    let sinc = if s > 1e-12 { (PI * s).sin() / s } else { PI };
    let c = Complex64::new(-(PI * s).cos(), -r * n_z * sinc);
    if c.norm() < VISIBILITY_FLOOR {
        return Err(Error::IndeterminatePhase);
    }
    Ok(normalize_angle(c.arg()))
}

/// `arctan(n_z tan(τ/2))` continued across the tangent singularities at
/// `τ/2 = π/2 + mπ`.
fn unwrapped_arctan_tan_half(n_z: f64, tau: f64) -> f64 {
    let x = 0.5 * tau;
    let m = (x / PI + 0.5).floor();
    let y = x - m * PI; // in [-π/2, π/2)
    let principal = (n_z * y.tan()).atan();
    let sign = if n_z >= 0.0 { 1.0 } else { -1.0 };
    principal + m * PI * sign
}

/// Noncyclic pure-state (r = 1) geometric phase of qubit precession:
/// `φ_g = -arctan(n_z tan(τ/2)) + (τ/2) n_z mod 2π` with the arctan branch
/// tracked continuously in τ, reported in `(-π, π]`. Equals minus one half of
/// the geodesically closed solid angle.
pub fn pure_qubit_noncyclic(n_z: f64, tau: f64) -> f64 {
    assert!(n_z.abs() <= 1.0, "axis component must satisfy |n_z| <= 1");
    normalize_angle(-unwrapped_arctan_tan_half(n_z, tau) + 0.5 * tau * n_z)
}

/// Geodesically closed solid angle swept by the `|0⟩` eigenpath of qubit
/// precession about `(n_x, 0, n_z)`, continuous in τ (not mod-reduced), with
/// `Ω(2π) = 2π(1 - n_z) ≥ 0`.
pub fn solid_angle_precession(n_z: f64, tau: f64) -> f64 {
    assert!(n_z.abs() <= 1.0, "axis component must satisfy |n_z| <= 1");
    2.0 * unwrapped_arctan_tan_half(n_z, tau) - tau * n_z
}

/// Largest Hermiticity violation `max_j ‖A_j - A_j†‖_max` of the discrete
/// parallelity quotient `A_j = w_j†(w_{j+1} - w_j)/dt`. Near zero for
/// Uhlmann-parallel lifts; bounded away from zero for lifts that merely drag
/// the gauge along.
pub fn check_uhlmann_parallel(amplitudes: &[Amplitude], dt: f64) -> f64 {
    assert!(amplitudes.len() >= 2, "need at least two amplitudes");
    assert!(dt > 0.0, "dt must be positive");
    let mut worst = 0.0f64;
    for pair in amplitudes.windows(2) {
        let step = (pair[1].matrix() - pair[0].matrix()).unscale(dt);
        let quotient = pair[0].matrix().adjoint() * step;
        worst = worst.max(hermiticity_residual(&quotient));
    }
    worst
}

/// Largest violation `max_j |Im⟨Ψ_j|Ψ_{j+1}⟩|/dt` of the ordinary
/// parallel-transport condition `⟨Ψ|Ψ̇⟩ = 0` on the purified state evolving
/// under `u_j ⊗ y_j`. A much weaker constraint than Uhlmann parallelity:
/// every Uhlmann-parallel pair passes at O(dt).
pub fn check_standard_parallel(
    rho0: &DensityOperator,
    us: &[CMatrix],
    ys: &[CMatrix],
    dt: f64,
) -> Result<f64> {
    if us.len() != ys.len() || us.len() < 2 {
        return Err(Error::DimensionMismatch {
            left: us.len(),
            right: ys.len(),
        });
    }
    assert!(dt > 0.0, "dt must be positive");
    let states: Vec<PurifiedState> = us
        .iter()
        .zip(ys.iter())
        .map(|(u, y)| purified_state(rho0, u, y))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for pair in states.windows(2) {
        worst = worst.max(pair[0].inner(&pair[1])?.im.abs() / dt);
    }
    Ok(worst)
}
