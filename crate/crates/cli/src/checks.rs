//! Built-in invariant suite behind `geophase check`: seeded randomized
//! verification of the library's core identities, one report line per
//! property.

use std::f64::consts::PI;

use geophase::evolution::{
    ancilla_hamiltonian, ancilla_waveplate_params, precession_hamiltonian, precession_state_path,
    waveplate_unitary, PrecessionParams, WaveplateParams,
};
use geophase::franson::{coincidence_fringe, cyclic_visibility, fit_fringe, FransonConfig};
use geophase::holonomy::{
    eigenbasis_transpose, pancharatnam_phase, phase_distance, purified_overlap, uhlmann_discrete,
    uhlmann_unitary,
};
use geophase::numerics::{
    expm_hermitian_generator, hermitian_eig, hermitize, hs_inner, identity, max_diff, polar_unitary,
    psd_sqrt,
};
use geophase::sampling;
use geophase::states::{bures_overlap, StatePath};
use geophase::{CVector, DensityOperator};

type CheckResult = Result<String, String>;

struct Check {
    name: &'static str,
    run: fn(u64) -> CheckResult,
}

fn eig_reconstruction(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed);
    let mut worst = 0.0f64;
    for dim in 2..=8 {
        let m = sampling::random_hermitian(&mut rng, dim);
        let eig = hermitian_eig(&m).map_err(|e| e.to_string())?;
        let rebuilt = eig.apply(|l| geophase::Complex64::new(l, 0.0));
        worst = worst.max(max_diff(&rebuilt, &m));
        worst = worst.max(max_diff(
            &(eig.eigenvectors.adjoint() * &eig.eigenvectors),
            &identity(dim),
        ));
    }
    if worst < 1e-10 {
        Ok(format!("max residual {worst:.2e}"))
    } else {
        Err(format!("reconstruction residual {worst:.2e} exceeds 1e-10"))
    }
}

fn sqrt_reconstruction(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0x51);
    let mut worst = 0.0f64;
    for dim in 2..=6 {
        let rho = sampling::random_density(&mut rng, dim);
        let s = psd_sqrt(rho.matrix()).map_err(|e| e.to_string())?;
        worst = worst.max(max_diff(&(&s * &s), rho.matrix()));
    }
    if worst < 1e-10 {
        Ok(format!("max residual {worst:.2e}"))
    } else {
        Err(format!("sqrt residual {worst:.2e} exceeds 1e-10"))
    }
}

fn polar_validity(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0x94);
    let mut worst = 0.0f64;
    for dim in 2..=5 {
        let m = sampling::random_hermitian(&mut rng, dim)
            + sampling::random_hermitian(&mut rng, dim) * geophase::Complex64::i();
        let v = polar_unitary(&m);
        worst = worst.max(max_diff(&(v.adjoint() * &v), &identity(dim)));
        let p = v.adjoint() * &m;
        worst = worst.max(geophase::numerics::hermiticity_residual(&p));
        let eig = hermitian_eig(&hermitize(&p)).map_err(|e| e.to_string())?;
        if eig.eigenvalues[0] < -1e-10 {
            return Err(format!("polar residue not PSD: {:.2e}", eig.eigenvalues[0]));
        }
    }
    if worst < 1e-9 {
        Ok(format!("max residual {worst:.2e}"))
    } else {
        Err(format!("polar residual {worst:.2e} exceeds 1e-9"))
    }
}

fn propagator_group(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xA1);
    let h = sampling::random_hermitian(&mut rng, 4);
    let (s, t) = (0.7, -1.9);
    let us = expm_hermitian_generator(&h, s).map_err(|e| e.to_string())?;
    let ut = expm_hermitian_generator(&h, t).map_err(|e| e.to_string())?;
    let ust = expm_hermitian_generator(&h, s + t).map_err(|e| e.to_string())?;
    let residual = max_diff(&(us * ut), &ust);
    if residual < 1e-10 {
        Ok(format!("residual {residual:.2e}"))
    } else {
        Err(format!("group property violated: {residual:.2e}"))
    }
}

fn bures_maximality(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xB2);
    let a = sampling::random_density(&mut rng, 3);
    let b = sampling::random_density(&mut rng, 3);
    let bound = bures_overlap(&a, &b).map_err(|e| e.to_string())?;
    let mut largest = 0.0f64;
    for _ in 0..50 {
        let xa = sampling::random_unitary(&mut rng, 3);
        let xb = sampling::random_unitary(&mut rng, 3);
        let overlap = hs_inner(&(a.sqrt() * xa), &(b.sqrt() * xb))
            .map_err(|e| e.to_string())?
            .norm();
        if overlap > bound + 1e-9 {
            return Err(format!("gauge overlap {overlap:.12} exceeds Bures {bound:.12}"));
        }
        largest = largest.max(overlap);
    }
    Ok(format!("max gauge overlap {largest:.6} <= bures {bound:.6}"))
}

fn bures_invariance(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xC3);
    let a = sampling::random_density(&mut rng, 3);
    let b = sampling::random_density(&mut rng, 3);
    let u = sampling::random_unitary(&mut rng, 3);
    let plain = bures_overlap(&a, &b).map_err(|e| e.to_string())?;
    let rotated = bures_overlap(
        &a.evolve(&u).map_err(|e| e.to_string())?,
        &b.evolve(&u).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let diff = (plain - rotated).abs();
    if diff < 1e-9 {
        Ok(format!("|Δ| = {diff:.2e}"))
    } else {
        Err(format!("unitary invariance violated: {diff:.2e}"))
    }
}

fn uhlmann_gauge_invariance(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xD4);
    let g = sampling::random_unitary(&mut rng, 2);
    let p = PrecessionParams::with_axis_x(0.5, 0.6, 2.5).map_err(|e| e.to_string())?;
    let path = precession_state_path(&p, 250).map_err(|e| e.to_string())?;
    let base = uhlmann_discrete(&path).map_err(|e| e.to_string())?;
    let conjugated: Result<Vec<DensityOperator>, _> =
        path.states().iter().map(|s| s.evolve(&g)).collect();
    let gpath = StatePath::new(path.times().to_vec(), conjugated.map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let got = uhlmann_discrete(&gpath).map_err(|e| e.to_string())?;
    let diff = phase_distance(base.phase, got.phase);
    if diff < 1e-8 {
        Ok(format!("|Δphase| = {diff:.2e}"))
    } else {
        Err(format!("gauge dependence detected: {diff:.2e}"))
    }
}

fn purity_reduction(seed: u64) -> CheckResult {
    let _ = seed;
    let p = PrecessionParams::with_axis_x(1.0, 0.6, 4.2).map_err(|e| e.to_string())?;
    let h = precession_hamiltonian(&p);
    let steps = 400;
    let path = precession_state_path(&p, steps).map_err(|e| e.to_string())?;
    let uhlmann = uhlmann_discrete(&path).map_err(|e| e.to_string())?;
    let psi = CVector::from_vec(vec![
        geophase::Complex64::new(1.0, 0.0),
        geophase::Complex64::new(0.0, 0.0),
    ]);
    let us = geophase::evolution::unitary_path(&h, p.tau, steps).map_err(|e| e.to_string())?;
    let rays: Vec<CVector> = us.iter().map(|u| u * &psi).collect();
    let chain = pancharatnam_phase(&rays).map_err(|e| e.to_string())?;
    let diff = phase_distance(uhlmann.phase, chain.phase);
    if diff < 1e-6 {
        Ok(format!("|Δphase| = {diff:.2e}"))
    } else {
        Err(format!("pure-state reduction violated: {diff:.2e}"))
    }
}

fn purification_equivalence(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xE5);
    let mut worst = 0.0f64;
    for dim in 2..=4 {
        let rho = sampling::random_density(&mut rng, dim);
        let h = sampling::random_hermitian(&mut rng, dim);
        let tau = 1.3;
        let spectral = uhlmann_unitary(&rho, &h, tau).map_err(|e| e.to_string())?;
        let u = expm_hermitian_generator(&h, tau).map_err(|e| e.to_string())?;
        let v = expm_hermitian_generator(
            &ancilla_hamiltonian(&h, &rho).map_err(|e| e.to_string())?,
            -tau,
        )
        .map_err(|e| e.to_string())?;
        let y = eigenbasis_transpose(&v, &rho).map_err(|e| e.to_string())?;
        let bilocal = purified_overlap(&rho, &u, &y).map_err(|e| e.to_string())?;
        worst = worst.max(phase_distance(spectral.phase, bilocal.phase));
        worst = worst.max((spectral.visibility - bilocal.visibility).abs());
    }
    if worst < 1e-10 {
        Ok(format!("max |Δ| = {worst:.2e}"))
    } else {
        Err(format!("spectral vs bi-local mismatch: {worst:.2e}"))
    }
}

fn ancilla_covariance(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0xF6);
    let h = sampling::random_hermitian(&mut rng, 3);
    let rho = sampling::random_density(&mut rng, 3);
    let u = sampling::random_unitary(&mut rng, 3);
    let direct = ancilla_hamiltonian(&h, &rho).map_err(|e| e.to_string())?;
    let rotated = ancilla_hamiltonian(
        &(&u * &h * u.adjoint()),
        &rho.evolve(&u).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let diff = max_diff(&rotated, &(&u * direct * u.adjoint()));
    if diff < 1e-9 {
        Ok(format!("covariance residual {diff:.2e}"))
    } else {
        Err(format!("basis covariance violated: {diff:.2e}"))
    }
}

fn fringe_fit_consistency(seed: u64) -> CheckResult {
    let _ = seed;
    let mut worst = 0.0f64;
    for (r, theta) in [(0.5, PI / 8.0), (0.8, PI / 6.0), (0.0, 0.4)] {
        let plate = WaveplateParams::new(2.0 * PI, theta).map_err(|e| e.to_string())?;
        let grid: Vec<f64> = (0..16).map(|j| 2.0 * PI * j as f64 / 16.0).collect();
        let cfg = FransonConfig::new(r, plate, grid).map_err(|e| e.to_string())?;
        let fitted = fit_fringe(&coincidence_fringe(&cfg).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.max((fitted.visibility - cyclic_visibility(r, theta)).abs());
        // the analytic overlap route must match the fitted one
        let u = waveplate_unitary(&plate);
        let y = waveplate_unitary(&ancilla_waveplate_params(&plate, r)).adjoint();
        let rho0 = geophase::states::density_from_bloch(geophase::BlochVector::new(0.0, 0.0, r))
            .map_err(|e| e.to_string())?;
        let oracle = purified_overlap(&rho0, &u, &y).map_err(|e| e.to_string())?;
        if fitted.phase_defined && oracle.phase_defined {
            worst = worst.max(phase_distance(fitted.phase, oracle.phase));
        }
    }
    if worst < 1e-8 {
        Ok(format!("max |Δ| = {worst:.2e}"))
    } else {
        Err(format!("fit inconsistency {worst:.2e} exceeds 1e-8"))
    }
}

fn visibility_bounds(seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed ^ 0x17);
    let mut largest = 0.0f64;
    for _ in 0..10 {
        let rho = sampling::random_density(&mut rng, 2);
        let h = sampling::random_hermitian(&mut rng, 2);
        let res = uhlmann_unitary(&rho, &h, 2.0).map_err(|e| e.to_string())?;
        largest = largest.max(res.visibility);
        if !(0.0..=1.0 + 1e-9).contains(&res.visibility) {
            return Err(format!("visibility {} out of [0, 1]", res.visibility));
        }
    }
    Ok(format!("max visibility {largest:.6}"))
}

const CHECKS: &[Check] = &[
    Check { name: "hermitian-eig-reconstruction", run: eig_reconstruction },
    Check { name: "psd-sqrt-reconstruction", run: sqrt_reconstruction },
    Check { name: "polar-factor-validity", run: polar_validity },
    Check { name: "propagator-group-property", run: propagator_group },
    Check { name: "bures-maximality", run: bures_maximality },
    Check { name: "bures-unitary-invariance", run: bures_invariance },
    Check { name: "uhlmann-gauge-invariance", run: uhlmann_gauge_invariance },
    Check { name: "pure-state-reduction", run: purity_reduction },
    Check { name: "purification-equivalence", run: purification_equivalence },
    Check { name: "ancilla-basis-covariance", run: ancilla_covariance },
    Check { name: "fringe-fit-consistency", run: fringe_fit_consistency },
    Check { name: "visibility-bounds", run: visibility_bounds },
];

/// Runs every invariant check, printing one line per property. Returns the
/// number of failures.
pub fn run_all(seed: u64, out: &mut impl std::io::Write) -> std::io::Result<usize> {
    let mut failures = 0;
    for check in CHECKS {
        match (check.run)(seed) {
            Ok(detail) => writeln!(out, "PASS {} ({detail})", check.name)?,
            Err(message) => {
                failures += 1;
                writeln!(out, "FAIL {} ({message})", check.name)?;
            }
        }
    }
    writeln!(
        out,
        "{} of {} properties passed",
        CHECKS.len() - failures,
        CHECKS.len()
    )?;
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_with_default_seed() {
        let mut buf = Vec::new();
        let failures = run_all(7, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(failures, 0, "{text}");
        assert_eq!(text.matches("PASS").count(), CHECKS.len());
    }
}
