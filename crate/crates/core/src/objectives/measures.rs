use serde::{Deserialize, Serialize};

use crate::quantum::linalg::clip_eigen_noise;
use crate::quantum::{
    hermitian_eigen, psd_sqrt, CMatrix, ControlProblem, DensityMatrix, FineControls, QuantumState,
};
use crate::{Error, Result};

/// Tolerance on negative eigenvalues before a density matrix is rejected.
const PSD_TOL: f64 = 1e-9;

/// Matrix norm applied to control operators in the energy and smoothness objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorNorm {
    #[default]
    Frobenius,
    Spectral,
}

pub fn operator_norm(m: &CMatrix, kind: OperatorNorm) -> f64 {
    match kind {
        OperatorNorm::Frobenius => m.norm(),
        OperatorNorm::Spectral => hermitian_eigen(m)
            .0
            .iter()
            .fold(0.0, |acc: f64, v| acc.max(v.abs())),
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Evaluation(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// `|⟨final|target⟩|²` with `final` normalized first.
pub fn fidelity_pure(final_state: &QuantumState, target: &QuantumState) -> Result<f64> {
    check_dims(final_state.dim(), target.dim())?;
    let psi = final_state.normalized()?;
    Ok(psi.inner(target).norm_sqr())
}

/// `Tr sqrt( sqrt(ρ) ρ_target sqrt(ρ) )`.
pub fn fidelity_mixed(rho: &DensityMatrix, target: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), target.dim())?;
    let root = psd_sqrt(rho.entries(), PSD_TOL)?;
    let inner = &root * target.entries() * &root;
    // Symmetrize away rounding before the eigen-decomposition.
    let inner = (&inner + inner.adjoint()).unscale(2.0);
    let (mut values, _) = hermitian_eigen(&inner);
    if let Some(v) = values.iter().find(|v| **v < -PSD_TOL) {
        return Err(Error::Evaluation(format!(
            "fidelity operator has eigenvalue {v:e}"
        )));
    }
    clip_eigen_noise(&mut values);
    Ok(values.iter().map(|v| v.max(0.0).sqrt()).sum())
}

/// `‖final - target‖` on the normalized final state; sensitive to global phase.
pub fn deviation_pure(final_state: &QuantumState, target: &QuantumState) -> Result<f64> {
    check_dims(final_state.dim(), target.dim())?;
    let psi = final_state.normalized()?;
    Ok((psi.amplitudes() - target.amplitudes()).norm())
}

/// Frobenius norm of `ρ - ρ_target`.
pub fn deviation_mixed(rho: &DensityMatrix, target: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), target.dim())?;
    Ok((rho.entries() - target.entries()).norm())
}

fn control_norms(problem: &ControlProblem, norm: OperatorNorm) -> Vec<f64> {
    (0..problem.num_controls)
        .map(|m| operator_norm(problem.control_operator(m), norm))
        .collect()
}

/// `Σ_m Σ_k |u_m(t_k)| ‖H_m‖ Δt`, left-endpoint sum over the fine grid.
pub fn energy(controls: &FineControls, problem: &ControlProblem, norm: OperatorNorm) -> f64 {
    let dt = controls.dt();
    let steps = controls.num_points() - 1;
    controls
        .values
        .iter()
        .zip(control_norms(problem, norm))
        .map(|(u, h)| u[..steps].iter().map(|v| v.abs()).sum::<f64>() * h * dt)
        .sum()
}

/// `Σ_m Σ_k ((U_m(t_{k+1}) - U_m(t_k)) / Δt)² Δt` with `U_m = |u_m| ‖H_m‖`.
pub fn smoothness(controls: &FineControls, problem: &ControlProblem, norm: OperatorNorm) -> f64 {
    let dt = controls.dt();
    controls
        .values
        .iter()
        .zip(control_norms(problem, norm))
        .map(|(u, h)| {
            u.windows(2)
                .map(|w| ((w[1].abs() - w[0].abs()) * h / dt).powi(2) * dt)
                .sum::<f64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{build_q1, build_q2, build_q3, fine_grid, CVector};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn state(v: &[f64]) -> QuantumState {
        QuantumState::from_real(v)
    }

    fn target3() -> QuantumState {
        state(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2])
    }

    fn controls(problem: &ControlProblem, rows: Vec<Vec<f64>>) -> FineControls {
        FineControls {
            times: fine_grid(problem.samples, 30, problem.total_time),
            values: rows,
        }
    }

    #[test]
    fn fidelity_pure_examples() {
        assert!((fidelity_pure(&target3(), &target3()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            fidelity_pure(&state(&[1.0, 0.0, 0.0]), &target3()).unwrap(),
            0.0
        );
        assert!((fidelity_pure(&state(&[0.0, 1.0, 0.0]), &target3()).unwrap() - 0.5).abs() < 1e-15);
        // Normalized before the overlap.
        assert!((fidelity_pure(&state(&[0.0, 2.0, 0.0]), &target3()).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity_pure(&state(&[0.0, 0.0, 0.0]), &target3()).is_err());
    }

    #[test]
    fn fidelity_mixed_examples() {
        let pure = DensityMatrix::from_state(&state(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]));
        assert!((fidelity_mixed(&pure, &pure).unwrap() - 1.0).abs() < 1e-9);
        let a = DensityMatrix::from_state(&state(&[1.0, 0.0]));
        let b = DensityMatrix::from_state(&state(&[0.0, 1.0]));
        assert!(fidelity_mixed(&a, &b).unwrap().abs() < 1e-9);
        let half = DensityMatrix::new(CMatrix::identity(2, 2).scale(0.5));
        assert!((fidelity_mixed(&half, &a).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(deviation_pure(&target3(), &target3()).unwrap(), 0.0);
        assert!(
            (deviation_pure(&state(&[1.0, 0.0, 0.0]), &target3()).unwrap() - SQRT_2).abs() < 1e-15
        );
        let flipped = state(&[0.0, -FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        assert!((deviation_pure(&flipped, &target3()).unwrap() - 2.0).abs() < 1e-15);

        let a = DensityMatrix::from_state(&state(&[1.0, 0.0]));
        let b = DensityMatrix::from_state(&state(&[0.0, 1.0]));
        assert_eq!(deviation_mixed(&a, &a).unwrap(), 0.0);
        assert!((deviation_mixed(&a, &b).unwrap() - SQRT_2).abs() < 1e-15);
        assert_eq!(
            deviation_mixed(&a, &b).unwrap(),
            deviation_mixed(&b, &a).unwrap()
        );
    }

    #[test]
    fn energy_examples() {
        let q1 = build_q1();
        let n = 301;
        let zero = controls(&q1, vec![vec![0.0; n]; 4]);
        assert_eq!(energy(&zero, &q1, OperatorNorm::Frobenius), 0.0);

        let mut rows = vec![vec![0.0; n]; 4];
        rows[0] = vec![1.0; n];
        let unit = controls(&q1, rows);
        assert!((energy(&unit, &q1, OperatorNorm::Frobenius) - SQRT_2).abs() < 1e-12);
        // Spectral norm of H_1 is 1.
        assert!((energy(&unit, &q1, OperatorNorm::Spectral) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn smoothness_examples() {
        let q1 = build_q1();
        let n = 301;
        let constant = controls(&q1, vec![vec![0.4; n]; 4]);
        assert_eq!(smoothness(&constant, &q1, OperatorNorm::Frobenius), 0.0);

        // U_1 = |u| * sqrt(2) ramping 0 -> 1 over T = 1.
        let mut rows = vec![vec![0.0; n]; 4];
        rows[0] = (0..n).map(|k| k as f64 / (n - 1) as f64 / SQRT_2).collect();
        let ramp = controls(&q1, rows.clone());
        assert!((smoothness(&ramp, &q1, OperatorNorm::Frobenius) - 1.0).abs() < 1e-9);

        rows[0].iter_mut().for_each(|v| *v = -*v);
        let flipped = controls(&q1, rows);
        assert_eq!(
            smoothness(&ramp, &q1, OperatorNorm::Frobenius),
            smoothness(&flipped, &q1, OperatorNorm::Frobenius)
        );
    }

    #[test]
    fn zero_controls_cost_nothing_on_every_problem() {
        for p in [build_q1(), build_q2(), build_q3()] {
            let n = 30 * p.samples + 1;
            let fc = controls(&p, vec![vec![0.0; n]; p.num_controls]);
            assert_eq!(energy(&fc, &p, OperatorNorm::Frobenius), 0.0);
            assert_eq!(smoothness(&fc, &p, OperatorNorm::Frobenius), 0.0);
        }
    }

    fn random_state(re: &[f64], im: &[f64]) -> QuantumState {
        let v = CVector::from_iterator(
            re.len(),
            re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)),
        );
        QuantumState::new(v).normalized().unwrap()
    }

    proptest! {
        #[test]
        fn homogeneity(
            rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 301), 4),
            scale in 0.1f64..4.0,
        ) {
            let q1 = build_q1();
            let fc = controls(&q1, rows.clone());
            let scaled = controls(&q1, rows.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect());
            let e = energy(&fc, &q1, OperatorNorm::Frobenius);
            let s = smoothness(&fc, &q1, OperatorNorm::Frobenius);
            prop_assert!((energy(&scaled, &q1, OperatorNorm::Frobenius) - scale * e).abs() <= 1e-9 * (1.0 + e));
            prop_assert!((smoothness(&scaled, &q1, OperatorNorm::Frobenius) - scale * scale * s).abs() <= 1e-9 * (1.0 + s * scale * scale));
        }

        #[test]
        fn global_phase(
            re in prop::collection::vec(-1.0f64..1.0, 3),
            im in prop::collection::vec(-1.0f64..1.0, 3),
            phase in 0.1f64..3.0,
        ) {
            prop_assume!(re.iter().chain(&im).any(|v| v.abs() > 1e-3));
            let psi = random_state(&re, &im);
            let rotated = QuantumState::new(psi.amplitudes() * Complex64::from_polar(1.0, phase));
            let f0 = fidelity_pure(&psi, &target3()).unwrap();
            prop_assert!((fidelity_pure(&rotated, &target3()).unwrap() - f0).abs() < 1e-12);
            let d0 = deviation_pure(&psi, &target3()).unwrap();
            let d1 = deviation_pure(&rotated, &target3()).unwrap();
            // Deviation changes unless the overlap with the target vanishes.
            let overlap = psi.inner(&target3()).norm();
            prop_assume!(overlap > 1e-3);
            prop_assert!((d0 - d1).abs() > 1e-9);
        }

        #[test]
        fn mixed_self_fidelity(
            re in prop::collection::vec(-1.0f64..1.0, 4),
            im in prop::collection::vec(-1.0f64..1.0, 4),
        ) {
            prop_assume!(re.iter().chain(&im).any(|v| v.abs() > 1e-3));
            let rho = DensityMatrix::from_state(&random_state(&re, &im));
            prop_assert!((fidelity_mixed(&rho, &rho).unwrap() - 1.0).abs() < 1e-9);
        }
    }
}
