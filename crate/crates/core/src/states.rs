//! Density operators, Bloch-vector parameterization, spectral decompositions,
//! and the Bures overlap.
//!
//! Conventions: standard Pauli matrices, `e_1 = |0⟩` is the north pole, and a
//! Bloch vector `(0, 0, r)` gives the diagonal state with eigenvalues
//! `½(1 ± r)` and majority eigenvector `|0⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{
    self, hermitian_eig, hermiticity_residual, hermitize, psd_sqrt, tolerance, CMatrix, CVector,
};

/// σ_x.
pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// σ_y.
pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// σ_z.
pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
}

/// `n·σ` for a real 3-vector.
pub fn pauli_dot(n: [f64; 3]) -> CMatrix {
    pauli_x().scale(n[0]) + pauli_y().scale(n[1]) + pauli_z().scale(n[2])
}

/// Hermitian, positive-semidefinite, unit-trace operator: the system state ρ.
///
/// Construction validates the invariants; trace drift up to the configured
/// tolerance is normalized away by rescaling, anything larger is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let tol = tolerance();
        let residual = hermiticity_residual(&matrix);
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceNotUnit { trace });
        }
        let matrix = hermitize(&matrix).unscale(trace);
        let eig = hermitian_eig(&matrix)?;
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `u ρ u†`.
    pub fn evolve(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: u.nrows(),
                right: self.dim(),
            });
        }
        Self::new(u * &self.matrix * u.adjoint())
    }

    /// Hermitian PSD square root `√ρ`, the canonical amplitude.
    pub fn sqrt(&self) -> CMatrix {
        psd_sqrt(&self.matrix).expect("validated state is PSD")
    }
}

/// Bloch 3-vector with `‖r‖ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// `ρ = ½(1 + b·σ)`.
pub fn density_from_bloch(b: BlochVector) -> Result<DensityOperator> {
    let norm = b.norm();
    if norm > 1.0 + tolerance() {
        return Err(Error::BlochNormExceeded { norm });
    }
    let m = (numerics::identity(2) + pauli_dot([b.x, b.y, b.z])).scale(0.5);
    DensityOperator::new(m)
}

/// Inverse of [`density_from_bloch`]: `b_i = Tr(ρ σ_i)`.
pub fn density_to_bloch(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 2,
        });
    }
    let m = rho.matrix();
    let x = (m * pauli_x()).trace().re;
    let y = (m * pauli_y()).trace().re;
    let z = (m * pauli_z()).trace().re;
    Ok(BlochVector::new(x, y, z))
}

/// Spectral decomposition of a density operator, ordered by descending
/// eigenvalue so index 0 is always the majority eigenvector.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues `λ_k`, descending; they sum to 1.
    pub probabilities: Vec<f64>,
    /// Matching orthonormal eigenvectors `|k⟩` as columns.
    pub basis: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }

    /// Eigenvector `|k⟩`.
    pub fn vector(&self, k: usize) -> CVector {
        self.basis.column(k).into_owned()
    }
}

/// Eigenvalues and eigenvectors of ρ, descending.
pub fn spectral(rho: &DensityOperator) -> Result<SpectralDecomposition> {
    let eig = hermitian_eig(rho.matrix())?;
    let dim = rho.dim();
    let probabilities: Vec<f64> = eig.eigenvalues.iter().rev().copied().collect();
    let mut basis = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        basis.set_column(k, &eig.eigenvectors.column(dim - 1 - k));
    }
    Ok(SpectralDecomposition {
        probabilities,
        basis,
    })
}

/// Bures overlap (root fidelity) `Tr√(√ρ1 ρ2 √ρ1)`, the maximum overlap
/// magnitude between amplitudes of the two states.
pub fn bures_overlap(rho1: &DensityOperator, rho2: &DensityOperator) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let s1 = rho1.sqrt();
    let inner = hermitize(&(&s1 * rho2.matrix() * &s1));
    let eig = hermitian_eig(&inner)?;
    Ok(eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum())
}

/// Discretized path of density operators `t ∈ [0, τ] → ρ_t`.
#[derive(Debug, Clone)]
pub struct StatePath {
    times: Vec<f64>,
    states: Vec<DensityOperator>,
}

impl StatePath {
    /// Requires at least two states, equal dimensions, and strictly ascending
    /// times of matching length.
    pub fn new(times: Vec<f64>, states: Vec<DensityOperator>) -> Result<Self> {
        if times.len() != states.len() || states.len() < 2 {
            return Err(Error::DimensionMismatch {
                left: times.len(),
                right: states.len(),
            });
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: states.iter().map(|s| s.dim()).max().unwrap_or(0),
            });
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::DimensionMismatch {
                left: times.len(),
                right: 0,
            });
        }
        Ok(Self { times, states })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityOperator] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_eq, hs_inner, identity, max_diff, CVector};
    use crate::sampling;

    #[test]
    fn bloch_origin_is_maximally_mixed() {
        let rho = density_from_bloch(BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert!(approx_eq(rho.matrix(), &identity(2).scale(0.5), 1e-15));
    }

    #[test]
    fn bloch_north_pole_is_pure() {
        let rho = density_from_bloch(BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(rho.matrix()[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn bloch_z_eigenvalues() {
        let r = 0.8;
        let rho = density_from_bloch(BlochVector::new(0.0, 0.0, r)).unwrap();
        let dec = spectral(&rho).unwrap();
        assert!((dec.probabilities[0] - 0.9).abs() < 1e-12);
        assert!((dec.probabilities[1] - 0.1).abs() < 1e-12);
        // majority eigenvector is |0⟩
        assert!((dec.basis[(0, 0)].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bloch_norm_rejected() {
        let err = density_from_bloch(BlochVector::new(0.8, 0.0, 0.8)).unwrap_err();
        assert!(matches!(err, Error::BlochNormExceeded { .. }));
    }

    #[test]
    fn bloch_round_trip() {
        for b in [
            BlochVector::new(0.0, 0.0, 0.0),
            BlochVector::new(0.5, 0.0, 0.0),
            BlochVector::new(0.1, -0.3, 0.7),
        ] {
            let rho = density_from_bloch(b).unwrap();
            let back = density_to_bloch(&rho).unwrap();
            assert!((back.x - b.x).abs() < 1e-12);
            assert!((back.y - b.y).abs() < 1e-12);
            assert!((back.z - b.z).abs() < 1e-12);
        }
    }

    #[test]
    fn constructor_rejects_trace_drift() {
        let m = identity(2).scale(0.51);
        assert!(matches!(
            DensityOperator::new(m),
            Err(Error::TraceNotUnit { .. })
        ));
        // drift below tolerance is normalized away
        let m = identity(2).scale(0.5 * (1.0 + 2e-10));
        let rho = DensityOperator::new(m).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constructor_rejects_non_hermitian_drift() {
        // adversarial near-violation: off-diagonal asymmetry just above tolerance
        let mut m = identity(2).scale(0.5);
        m[(0, 1)] = Complex64::new(0.0, 3e-9);
        assert!(matches!(
            DensityOperator::new(m),
            Err(Error::NotHermitian { .. })
        ));
        // below tolerance it is hermitized away
        let mut m = identity(2).scale(0.5);
        m[(0, 1)] = Complex64::new(0.0, 3e-10);
        assert!(DensityOperator::new(m).is_ok());
    }

    #[test]
    fn constructor_rejects_negative_state() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(1.2, 0.0),
            Complex64::new(-0.2, 0.0),
        ]));
        assert!(matches!(DensityOperator::new(m), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn spectral_of_pure_and_mixed() {
        let mixed = density_from_bloch(BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        let dec = spectral(&mixed).unwrap();
        assert!((dec.probabilities[0] - 0.5).abs() < 1e-12);
        assert!((dec.probabilities[1] - 0.5).abs() < 1e-12);

        let pure = density_from_bloch(BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let dec = spectral(&pure).unwrap();
        assert!((dec.probabilities[0] - 1.0).abs() < 1e-12);
        assert!(dec.probabilities[1].abs() < 1e-12);
    }

    #[test]
    fn bures_self_overlap_is_one() {
        let mut rng = sampling::rng(23);
        let rho = sampling::random_density(&mut rng, 3);
        assert!((bures_overlap(&rho, &rho).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bures_pure_states_reduce_to_overlap() {
        let mut rng = sampling::rng(29);
        let a = sampling::random_pure(&mut rng, 2);
        let b = sampling::random_pure(&mut rng, 2);
        let ra = DensityOperator::new(&a * a.adjoint()).unwrap();
        let rb = DensityOperator::new(&b * b.adjoint()).unwrap();
        let expected = a.dotc(&b).norm();
        assert!((bures_overlap(&ra, &rb).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn bures_precession_oracle() {
        // r = 0.5 z-state vs its half-turn about x; independent oracle is the
        // qubit closed form √(Tr(ρσ) + 2√(det ρ det σ)).
        let rho1 = density_from_bloch(BlochVector::new(0.0, 0.0, 0.5)).unwrap();
        let u = pauli_x() * Complex64::new(0.0, -1.0); // exp(-iπσ_x/2)
        let rho2 = rho1.evolve(&u).unwrap();
        let tr_prod = (rho1.matrix() * rho2.matrix()).trace().re;
        let det = |m: &CMatrix| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
        let oracle = (tr_prod + 2.0 * (det(rho1.matrix()) * det(rho2.matrix())).sqrt()).sqrt();
        let got = bures_overlap(&rho1, &rho2).unwrap();
        assert!((got - oracle).abs() < 1e-9, "got {got}, oracle {oracle}");
        assert!((got - 0.75f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bures_symmetric_and_unitary_invariant() {
        let mut rng = sampling::rng(31);
        let a = sampling::random_density(&mut rng, 3);
        let b = sampling::random_density(&mut rng, 3);
        let u = sampling::random_unitary(&mut rng, 3);
        let ab = bures_overlap(&a, &b).unwrap();
        let ba = bures_overlap(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-9);
        let au = a.evolve(&u).unwrap();
        let bu = b.evolve(&u).unwrap();
        assert!((bures_overlap(&au, &bu).unwrap() - ab).abs() < 1e-9);
    }

    #[test]
    fn bures_dominates_amplitude_overlaps() {
        // maximality over random unitary gauges w_i = √ρ_i x_i
        let mut rng = sampling::rng(37);
        let a = sampling::random_density(&mut rng, 3);
        let b = sampling::random_density(&mut rng, 3);
        let bound = bures_overlap(&a, &b).unwrap();
        for _ in 0..20 {
            let xa = sampling::random_unitary(&mut rng, 3);
            let xb = sampling::random_unitary(&mut rng, 3);
            let wa = a.sqrt() * xa;
            let wb = b.sqrt() * xb;
            let overlap = hs_inner(&wa, &wb).unwrap().norm();
            assert!(overlap <= bound + 1e-9, "overlap {overlap} > bures {bound}");
        }
    }

    #[test]
    fn state_path_validation() {
        let rho = density_from_bloch(BlochVector::new(0.0, 0.0, 0.5)).unwrap();
        assert!(StatePath::new(vec![0.0], vec![rho.clone()]).is_err());
        assert!(StatePath::new(vec![0.0, 0.0], vec![rho.clone(), rho.clone()]).is_err());
        let path = StatePath::new(vec![0.0, 1.0], vec![rho.clone(), rho]).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path.dim(), 2);
    }

    #[test]
    fn evolve_keeps_validity() {
        let mut rng = sampling::rng(41);
        let rho = sampling::random_density(&mut rng, 2);
        let u = sampling::random_unitary(&mut rng, 2);
        let evolved = rho.evolve(&u).unwrap();
        assert!((evolved.matrix().trace().re - 1.0).abs() < 1e-12);
        let back = evolved.evolve(&u.adjoint()).unwrap();
        assert!(max_diff(back.matrix(), rho.matrix()) < 1e-12);
    }
}
