use serde::{Deserialize, Serialize};

use super::measures::{
    deviation_mixed, deviation_pure, energy, fidelity_mixed, fidelity_pure, smoothness,
    OperatorNorm,
};
use crate::optimizer::{Bounds, Evaluation, Problem};
use crate::quantum::{
    decode_position, partial_trace_field, propagate_euler, ControlProblem, DensityMatrix,
    FineControls, Reduction, Target, Trajectory,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationSettings {
    /// Fine points per coarse interval.
    pub alpha: usize,
    /// 2 for (deviation, energy), 3 to add smoothness.
    pub num_objectives: usize,
    pub norm: OperatorNorm,
    pub renormalize: bool,
}

impl Default for EvaluationSettings {
    fn default() -> Self {
        Self {
            alpha: 30,
            num_objectives: 2,
            norm: OperatorNorm::Frobenius,
            renormalize: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationRecord {
    pub objectives: Vec<f64>,
    pub fidelity: f64,
    /// Norm of the unnormalized Euler terminal state.
    pub terminal_norm: f64,
}

/// Fidelity and deviation of a terminal state against the problem target.
pub(crate) fn score_terminal(
    problem: &ControlProblem,
    trajectory: &Trajectory,
) -> Result<(f64, f64)> {
    let psi = trajectory.final_state().normalized()?;
    match (&problem.target, problem.reduction) {
        (Target::Pure(target), Reduction::None) => {
            Ok((fidelity_pure(&psi, target)?, deviation_pure(&psi, target)?))
        }
        (Target::Mixed(target), reduction) => {
            let rho = match reduction {
                Reduction::TraceOutField => partial_trace_field(&psi)?,
                Reduction::None => DensityMatrix::from_state(&psi),
            };
            Ok((
                fidelity_mixed(&rho, target)?,
                deviation_mixed(&rho, target)?,
            ))
        }
        (Target::Pure(_), Reduction::TraceOutField) => Err(Error::Evaluation(
            "a reduced problem needs a density-matrix target".into(),
        )),
    }
}

/// Decodes, upsamples and propagates a position, then scores it.
pub fn evaluate_quantum(
    position: &[f64],
    problem: &ControlProblem,
    settings: &EvaluationSettings,
) -> Result<EvaluationRecord> {
    let controls = decode_position(position, problem, settings.alpha)?;
    evaluate_controls(&controls, problem, settings)
}

pub(crate) fn evaluate_controls(
    controls: &FineControls,
    problem: &ControlProblem,
    settings: &EvaluationSettings,
) -> Result<EvaluationRecord> {
    let trajectory = propagate_euler(problem, controls, settings.renormalize)?;
    let terminal_norm = trajectory.final_state().norm();
    let (fidelity, deviation) = score_terminal(problem, &trajectory)?;
    let mut objectives = vec![deviation, energy(controls, problem, settings.norm)];
    match settings.num_objectives {
        2 => {}
        3 => objectives.push(smoothness(controls, problem, settings.norm)),
        k => return Err(Error::Config(format!("objectives must be 2 or 3, got {k}"))),
    }
    Ok(EvaluationRecord {
        objectives,
        fidelity,
        terminal_norm,
    })
}

/// A control problem packaged for the optimizer.
#[derive(Debug, Clone)]
pub struct QuantumObjective {
    problem: ControlProblem,
    settings: EvaluationSettings,
    bounds: Bounds,
}

impl QuantumObjective {
    pub fn new(problem: ControlProblem, settings: EvaluationSettings) -> Result<Self> {
        if !(2..=3).contains(&settings.num_objectives) {
            return Err(Error::Config(format!(
                "objectives must be 2 or 3, got {}",
                settings.num_objectives
            )));
        }
        if settings.alpha == 0 {
            return Err(Error::Config("alpha must be at least 1".into()));
        }
        let bounds = problem.search_bounds();
        Ok(Self {
            problem,
            settings,
            bounds,
        })
    }

    pub fn problem(&self) -> &ControlProblem {
        &self.problem
    }

    pub fn settings(&self) -> &EvaluationSettings {
        &self.settings
    }

    pub fn record(&self, position: &[f64]) -> Result<EvaluationRecord> {
        evaluate_quantum(position, &self.problem, &self.settings)
    }
}

impl Problem for QuantumObjective {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn num_objectives(&self) -> usize {
        self.settings.num_objectives
    }

    fn evaluate(&self, position: &[f64]) -> Evaluation {
        match self.record(position) {
            Ok(r) => Evaluation {
                objectives: r.objectives,
                fidelity: r.fidelity,
            },
            // Non-finite objectives make the optimizer quarantine the particle.
            Err(_) => Evaluation {
                objectives: vec![f64::NAN; self.settings.num_objectives],
                fidelity: 0.0,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{
        build_q1, build_q2, build_q3, build_q3_with, propagate_expm_oracle, Q3Params, QuantumState,
    };
    use crate::rng::uniform_in;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn settings(k: usize) -> EvaluationSettings {
        EvaluationSettings {
            num_objectives: k,
            ..EvaluationSettings::default()
        }
    }

    #[test]
    fn zero_position_on_q2_is_free_evolution() {
        let q2 = build_q2();
        let rec = evaluate_quantum(&[0.0; 35], &q2, &settings(3)).unwrap();
        assert!((rec.objectives[0] - SQRT_2).abs() < 1e-15);
        assert_eq!(rec.objectives[1], 0.0);
        assert_eq!(rec.objectives[2], 0.0);
        assert_eq!(rec.fidelity, 0.0);
        assert_eq!(rec.terminal_norm, 1.0);
    }

    #[test]
    fn zero_position_on_q1_matches_analytic_phases() {
        // Free evolution under diag(1.5, 1, 1): the oracle gives e^{-1.5 i} on |g⟩.
        let q1 = build_q1();
        let controls = decode_position(&[0.0; 40], &q1, 30).unwrap();
        let exact = propagate_expm_oracle(&q1, &controls).unwrap();
        let psi = exact.final_state().amplitudes();
        assert!((psi[0] - Complex64::from_polar(1.0, -1.5)).norm() < 1e-12);

        // Hand deviation of e^{-1.5 i}(1,0,0) from (0, 1/√2, 1/√2) is √2.
        let analytic = QuantumState::new(psi.clone());
        let target = QuantumState::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!((deviation_pure(&analytic, &target).unwrap() - SQRT_2).abs() < 1e-12);

        let rec = evaluate_quantum(&[0.0; 40], &q1, &settings(2)).unwrap();
        assert_eq!(rec.objectives[1], 0.0);
        assert!((rec.objectives[0] - SQRT_2).abs() < 1e-12);
        // Euler drift on the diagonal free term alone: (1 + (1.5 dt)^2)^(steps/2).
        let dt = 1.0 / 300.0;
        let drift = (1.0 + (1.5f64 * dt).powi(2)).powf(150.0);
        assert!((rec.terminal_norm - drift).abs() < 1e-12);
    }

    #[test]
    fn q3_vacuum_start_is_unreachable() {
        let q3 = build_q3_with(&Q3Params {
            initial_photons: 0,
            ..Q3Params::default()
        })
        .unwrap();
        // |g g, 0⟩ is the only zero-excitation state and every term conserves
        // excitations: ρ_A stays |g g⟩⟨g g|, orthogonal to the target.
        let mut rng = crate::rng::stream(3, crate::rng::Stream::Aux);
        for _ in 0..5 {
            let x: Vec<f64> = (0..42).map(|_| uniform_in(&mut rng, -5.0, 5.0)).collect();
            let rec = evaluate_quantum(&x, &q3, &settings(2)).unwrap();
            assert!(rec.fidelity.abs() < 1e-9);
            // ‖diag(1,0,0,0) - |t⟩⟨t|‖_F = sqrt(1 + 4 * 0.25) = √2
            assert!((rec.objectives[0] - SQRT_2).abs() < 1e-9);
        }
    }

    #[test]
    fn q3_one_photon_start_couples_to_atoms() {
        let rec = evaluate_quantum(&[0.0; 42], &build_q3(), &settings(3)).unwrap();
        assert_eq!(rec.objectives.len(), 3);
        assert!(rec.fidelity > 1e-6 && rec.fidelity <= 1.0);
        assert!(rec.objectives[0] < SQRT_2);
    }

    #[test]
    fn zero_deviation_means_unit_fidelity() {
        let q1 = build_q1();
        let target = QuantumState::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let tr = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![q1.psi0.clone(), target],
        };
        let (f, d) = score_terminal(&q1, &tr).unwrap();
        assert_eq!(d, 0.0);
        assert!((f - 1.0).abs() < 1e-9);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let q3 = build_q3();
        let pos: Vec<f64> = (0..42)
            .map(|i| ((i * 37 % 11) as f64 - 5.0) * 0.7)
            .collect();
        let a = evaluate_quantum(&pos, &q3, &settings(3)).unwrap();
        let b = evaluate_quantum(&pos, &q3, &settings(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(QuantumObjective::new(build_q1(), settings(4)).is_err());
        assert!(evaluate_quantum(&[0.0; 39], &build_q1(), &settings(2)).is_err());
    }
}
