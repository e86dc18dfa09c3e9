//! Command implementations: each builds the scenario from validated
//! arguments, evaluates the requested phase, and returns output records.

use std::f64::consts::PI;

use geophase::evolution::{
    precession_hamiltonian, precession_state_path, PrecessionParams, WaveplateParams,
};
use geophase::franson::{coincidence_fringe, fit_fringe, FransonConfig};
use geophase::holonomy::{
    interferometric_phase, interferometric_qubit, solid_angle_precession, uhlmann_discrete,
    uhlmann_qubit_overlap, uhlmann_unitary, PhaseResult,
};
use geophase::Error;

use crate::records::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Discrete,
    Closed,
    Spectral,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Discrete => "discrete",
            Method::Closed => "closed",
            Method::Spectral => "spectral",
        }
    }
}

/// Qubit precession scenario assembled from CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub r: f64,
    pub n_x: f64,
    pub n_z: f64,
    pub tau: f64,
}

impl Scenario {
    /// Builds validated precession parameters. When `n_z` is not supplied it
    /// defaults to `+√(1 - n_x²)`.
    pub fn resolve(r: f64, n_x: f64, n_z: Option<f64>, tau: f64) -> Result<Self, String> {
        let n_z = match n_z {
            Some(v) => v,
            None => {
                if n_x.abs() > 1.0 {
                    return Err(format!("--nx {n_x} must satisfy |nx| <= 1"));
                }
                (1.0 - n_x * n_x).max(0.0).sqrt()
            }
        };
        let params = PrecessionParams::new(r, n_x, n_z, tau)
            .map_err(|e| format!("invalid scenario: {e}"))?;
        Ok(Self {
            r: params.r,
            n_x: params.n_x,
            n_z: params.n_z,
            tau: params.tau,
        })
    }

    pub fn params(&self) -> PrecessionParams {
        PrecessionParams::new(self.r, self.n_x, self.n_z, self.tau)
            .expect("scenario was validated on construction")
    }

    fn stamp(&self, record: Record) -> Record {
        Record {
            r: Some(self.r),
            n_x: Some(self.n_x),
            n_z: Some(self.n_z),
            tau: Some(self.tau),
            ..record
        }
    }
}

/// Uhlmann phase of the precession scenario by the chosen route.
pub fn run_uhlmann(scen: &Scenario, method: Method, steps: usize) -> Result<Record, Error> {
    let p = scen.params();
    let result = match method {
        Method::Discrete => {
            let path = precession_state_path(&p, steps)?;
            uhlmann_discrete(&path)?
        }
        Method::Closed => PhaseResult::from_overlap(uhlmann_qubit_overlap(&p)),
        Method::Spectral => {
            uhlmann_unitary(&p.initial_state(), &precession_hamiltonian(&p), p.tau)?
        }
    };
    let steps_used = if method == Method::Discrete { steps as u64 } else { 0 };
    Ok(scen.stamp(Record::new("uhlmann", method.name(), steps_used).with_phase(&result)))
}

/// Interferometric mixed-state phase of the precession scenario.
pub fn run_interferometric(scen: &Scenario, method: Method) -> Result<Record, Error> {
    let p = scen.params();
    let result = match method {
        Method::Closed => {
            let omega = solid_angle_precession(p.n_z, p.tau);
            let phase = interferometric_qubit(p.r, omega)?;
            // visibility of the weighted eigenstate sum: |cos(Ω/2) - i r sin(Ω/2)|
            let half = 0.5 * omega;
            let visibility = (half.cos().powi(2) + (p.r * half.sin()).powi(2)).sqrt();
            PhaseResult {
                phase,
                visibility,
                phase_defined: true,
            }
        }
        _ => interferometric_phase(&p.initial_state(), &precession_hamiltonian(&p), p.tau)?,
    };
    Ok(scen.stamp(Record::new("interferometric", method.name(), 0).with_phase(&result)))
}

/// Franson settings assembled from CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct FransonScenario {
    pub r: f64,
    pub theta: f64,
    pub alpha: f64,
    pub chi_points: usize,
    pub samples: u32,
    pub seed: u64,
}

impl FransonScenario {
    fn config(&self) -> Result<FransonConfig, Error> {
        let plate = WaveplateParams::new(self.alpha, self.theta)?;
        let grid: Vec<f64> = (0..self.chi_points)
            .map(|j| 2.0 * PI * j as f64 / self.chi_points as f64)
            .collect();
        Ok(FransonConfig::new(self.r, plate, grid)?.with_sampling(self.samples, self.seed))
    }

    fn stamp(&self, record: Record) -> Record {
        Record {
            r: Some(self.r),
            theta: Some(self.theta),
            alpha: Some(self.alpha),
            ..record
        }
    }
}

/// Coincidence fringe rows; each row also carries the fitted phase and
/// visibility of the whole scan. For sampled runs (samples > 1) the steps
/// column reports the per-point sample count.
pub fn run_franson(scen: &FransonScenario) -> Result<Vec<Record>, Error> {
    let cfg = scen.config()?;
    let scan = coincidence_fringe(&cfg)?;
    let fitted = fit_fringe(&scan)?;
    let method = if scen.samples > 1 { "poisson" } else { "ideal" };
    Ok(scan
        .chi
        .iter()
        .zip(scan.intensity.iter())
        .map(|(&chi, &intensity)| {
            let mut rec = scen
                .stamp(Record::new("franson", method, scen.samples as u64))
                .with_phase(&fitted);
            rec.chi = Some(chi);
            rec.intensity = Some(intensity);
            rec
        })
        .collect())
}

/// Summary record (fitted phase and visibility only) for one Franson
/// setting; used by sweeps.
pub fn run_franson_summary(scen: &FransonScenario) -> Result<Record, Error> {
    let cfg = scen.config()?;
    let fitted = fit_fringe(&coincidence_fringe(&cfg)?)?;
    let method = if scen.samples > 1 { "poisson" } else { "ideal" };
    Ok(scen
        .stamp(Record::new("franson", method, scen.samples as u64))
        .with_phase(&fitted))
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn scenario_defaults_axis() {
        let s = Scenario::resolve(0.5, 0.6, None, 1.0).unwrap();
        assert!((s.n_z - 0.8).abs() < 1e-12);
        assert!(Scenario::resolve(0.5, 0.6, Some(0.9), 1.0).is_err());
        assert!(Scenario::resolve(1.5, 0.6, None, 1.0).is_err());
    }

    #[test]
    fn uhlmann_methods_agree() {
        let s = Scenario::resolve(0.5, INV_SQRT2, None, 2.0 * PI).unwrap();
        let closed = run_uhlmann(&s, Method::Closed, 0).unwrap();
        let spectral = run_uhlmann(&s, Method::Spectral, 0).unwrap();
        let discrete = run_uhlmann(&s, Method::Discrete, 2000).unwrap();
        let pc = closed.phase.unwrap();
        assert!((spectral.phase.unwrap() - pc).abs() < 1e-10);
        assert!((discrete.phase.unwrap() - pc).abs() < 1e-4);
        assert_eq!(discrete.steps, 2000);
        assert_eq!(closed.steps, 0);
    }

    #[test]
    fn interferometric_methods_agree() {
        let s = Scenario::resolve(0.5, 0.6, None, 2.0 * PI).unwrap();
        let closed = run_interferometric(&s, Method::Closed).unwrap();
        let spectral = run_interferometric(&s, Method::Spectral).unwrap();
        assert!((closed.phase.unwrap() - spectral.phase.unwrap()).abs() < 1e-10);
        assert!((closed.visibility.unwrap() - spectral.visibility.unwrap()).abs() < 1e-10);
    }

    #[test]
    fn franson_rows_match_grid() {
        let scen = FransonScenario {
            r: 0.5,
            theta: 0.3,
            alpha: 2.0 * PI,
            chi_points: 12,
            samples: 1,
            seed: 0,
        };
        let rows = run_franson(&scen).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.chi.is_some() && r.intensity.is_some()));
        let summary = run_franson_summary(&scen).unwrap();
        assert_eq!(summary.phase, rows[0].phase);
    }
}
