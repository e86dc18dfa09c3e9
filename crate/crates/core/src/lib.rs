//! Geometric phases of mixed quantum states under unitary evolution.
//!
//! The crate computes the two inequivalent mixed-state phase holonomies for
//! unitarily evolving density operators — the Uhlmann phase, taken along a
//! parallel purification and sensitive to the entangled ancilla, and the
//! interferometric phase, a property of the system alone — verifies how they
//! relate and where they differ, and simulates the two-photon Franson
//! experiment that would measure the former with polarization-entangled
//! photon pairs.
//!
//! Modules:
//! - [`numerics`]: deterministic dense complex linear algebra (Hermitian
//!   eigendecomposition, PSD square root, polar decomposition, matrix
//!   exponential, Hilbert-Schmidt inner product).
//! - [`states`]: density operators, Bloch parameterization, spectral
//!   decomposition, Bures overlap.
//! - [`evolution`]: precession and waveplate Hamiltonians/unitaries and the
//!   ancilla Hamiltonian that generates Uhlmann parallel transport.
//! - [`holonomy`]: the phase functionals, qubit closed forms, and
//!   parallelity diagnostics.
//! - [`franson`]: coincidence fringes, visibility predictions, fringe
//!   fitting, and the single-photon test.
//! - [`sampling`]: seeded random states and operators for checks and tests.

pub mod error;
pub mod evolution;
pub mod franson;
pub mod holonomy;
pub mod numerics;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use evolution::{PrecessionParams, WaveplateParams};
pub use holonomy::{Amplitude, PhaseResult, PurifiedState};
pub use numerics::{CMatrix, CVector};
pub use states::{BlochVector, DensityOperator, StatePath};
