//! Dense complex linear algebra for small operators.
//!
//! Everything in this crate works on matrices of modest dimension (nothing
//! beyond 16×16), so the decompositions favor determinism and accuracy over
//! scalability: eigenvalues are sorted ascending, degenerate pairs are ordered
//! by a lexicographic tie-break, and eigenvector phases are fixed so that
//! identical inputs always produce identical outputs.

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix; the working type for all operators.
pub type CMatrix = DMatrix<Complex64>;
/// Complex column vector; the working type for pure states.
pub type CVector = DVector<Complex64>;

/// Default absolute tolerance for Hermiticity and positivity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Stored as raw bits; 0 means "unset, use the default".
static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Current absolute tolerance used by Hermiticity/PSD checks and eigenvalue
/// clamping.
pub fn tolerance() -> f64 {
    let bits = TOLERANCE_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_TOLERANCE
    } else {
        f64::from_bits(bits)
    }
}

/// Overrides the numerics tolerance process-wide. Intended to be called once
/// at startup (the CLI wires it to `GEOPHASE_TOLERANCE`).
///
/// # Panics
/// Panics if `tol` is not a finite positive number.
pub fn set_tolerance(tol: f64) {
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// n×n identity.
pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Largest entry magnitude, `max_ij |m_ij|`.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max_ij |a_ij - b_ij|`; panics on shape mismatch.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_diff requires equal shapes");
    max_norm(&(a - b))
}

/// Elementwise comparison with an explicit absolute tolerance. Never compare
/// matrices with `==`.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && max_diff(a, b) <= tol
}

/// `max_ij |m_ij - conj(m_ji)|`, zero for Hermitian input.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_norm(&(m - m.adjoint()))
}

/// Replaces `m` by its Hermitian part `(m + m†)/2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn ensure_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn ensure_hermitian(m: &CMatrix) -> Result<()> {
    ensure_square(m)?;
    let residual = hermiticity_residual(m);
    if residual > tolerance() {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and ascending; `eigenvectors` holds the matching
/// orthonormal eigenvectors as columns, each with its largest-magnitude entry
/// made real and positive. Exact eigenvalue ties are ordered by lexicographic
/// comparison of the phase-fixed eigenvector entries.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    /// Rebuilds `V diag(f(λ)) V†` for a scalar function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let v = &self.eigenvectors;
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| f(l)),
        ));
        v * diag * v.adjoint()
    }
}

/// Fixes the global phase of an eigenvector: the largest-magnitude entry
/// (lowest index on ties) is rotated to the positive real axis.
fn phase_fix(v: &mut CVector) {
    let mut best = 0;
    let mut best_mag = 0.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag + 1e-300 {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag > 0.0 {
        let ph = v[best] / Complex64::new(best_mag, 0.0);
        let correction = ph.conj();
        for z in v.iter_mut() {
            *z *= correction;
        }
    }
}

fn lex_cmp(a: &CVector, b: &CVector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Hermitian eigendecomposition with deterministic ordering and phases.
///
/// Fails with [`Error::NotHermitian`] when `‖m - m†‖_max` exceeds the
/// configured tolerance.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    ensure_hermitian(m)?;
    let dim = m.nrows();
    let sym = hermitize(m).symmetric_eigen();
    let mut pairs: Vec<(f64, CVector)> = (0..dim)
        .map(|i| {
            let mut col: CVector = sym.eigenvectors.column(i).into_owned();
            phase_fix(&mut col);
            (sym.eigenvalues[i], col)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_cmp(&a.1, &b.1)));

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut eigenvectors = CMatrix::zeros(dim, dim);
    for (i, (_, col)) in pairs.iter().enumerate() {
        eigenvectors.set_column(i, col);
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Hermitian PSD square root, `√M`.
///
/// Eigenvalues in `(-tol, 0)` are clamped to zero; anything more negative is
/// an [`Error::NotPsd`].
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eig(m)?;
    let tol = tolerance();
    let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let root = eig.apply(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    Ok(hermitize(&root))
}

/// Unitary polar factor: the unitary `V` with `V†M` Hermitian PSD
/// (equivalently `M = V·√(M†M)`).
///
/// Computed from the eigendecomposition of `M†M`. For singular `M` the factor
/// is not unique; kernel singular directions are completed by orthonormalizing
/// the right-singular vectors themselves (so the kernel block of `V` stays as
/// close to the identity as the range allows), falling back to canonical basis
/// vectors when that degenerates. The completion is deterministic.
pub fn polar_unitary(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "polar_unitary requires a square matrix");
    let gram = hermitize(&(m.adjoint() * m));
    let eig = hermitian_eig(&gram).expect("hermitized Gram matrix is Hermitian");

    let sigmas: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    let sigma_max = sigmas.last().copied().unwrap_or(0.0);
    // The Gram route only resolves singular values down to σ_max·√ε; below
    // that, σ is pure noise and the direction belongs to the kernel.
    let cutoff = 1e-7 * sigma_max.max(f64::MIN_POSITIVE);

    let mut left = CMatrix::zeros(n, n);
    let mut filled = vec![false; n];
    // Descending σ: trusted range directions u_i = M w_i / σ_i first, then
    // kernel completion from the right-singular vectors themselves.
    for i in (0..n).rev() {
        let mut candidate: CVector = if sigmas[i] > cutoff {
            (m * eig.eigenvectors.column(i)).unscale(sigmas[i])
        } else {
            eig.eigenvectors.column(i).into_owned()
        };
        orthogonalize(&mut candidate, &left, &filled);
        if candidate.norm() < 0.5 {
            candidate = fallback_direction(n, &left, &filled);
        }
        let norm = candidate.norm();
        left.set_column(i, &candidate.unscale(norm));
        filled[i] = true;
    }
    &left * eig.eigenvectors.adjoint()
}

fn orthogonalize(v: &mut CVector, basis: &CMatrix, filled: &[bool]) {
    for (j, &used) in filled.iter().enumerate() {
        if used {
            let u = basis.column(j);
            let coeff = u.dotc(&*v);
            *v -= u.into_owned() * coeff;
        }
    }
}

fn fallback_direction(n: usize, basis: &CMatrix, filled: &[bool]) -> CVector {
    let mut best: Option<(f64, CVector)> = None;
    for k in 0..n {
        let mut e = CVector::zeros(n);
        e[k] = Complex64::new(1.0, 0.0);
        orthogonalize(&mut e, basis, filled);
        let norm = e.norm();
        if norm > 0.5 {
            return e;
        }
        if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
            best = Some((norm, e));
        }
    }
    best.expect("basis cannot span the whole space here").1
}

/// `exp(-i t H)` for Hermitian `H`, computed through the eigendecomposition
/// (exact for Hermitian generators at any `t`).
pub fn expm_hermitian_generator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(propagator_from_eig(&eig, t))
}

/// `exp(-i t H)` from a precomputed eigendecomposition of `H`.
pub fn propagator_from_eig(eig: &HermitianEig, t: f64) -> CMatrix {
    eig.apply(|l| (-Complex64::i() * (l * t)).exp())
}

/// Hilbert-Schmidt inner product `⟨A, B⟩ = Tr(A†B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}
