//! Time propagation on the fine grid.
//!
//! `propagate_euler` is the explicit first-order scheme used during optimization.
//! `propagate_expm_oracle` applies the exact propagator of the same piecewise-constant
//! Hamiltonian and serves as the reference it is checked against.

use num_complex::Complex64;

use super::linalg::{c, hermitian_eigen, CMatrix, CVector};
use super::{ControlProblem, DensityMatrix, FineControls, QuantumState};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `H(t) = Σ_m u_m f_m(t) H_m + Σ_f f_f(t) H_f`.
pub fn assemble_hamiltonian(problem: &ControlProblem, controls: &[f64], t: f64) -> CMatrix {
    let mut h = CMatrix::zeros(problem.dim, problem.dim);
    assemble_into(&mut h, problem, controls, t);
    h
}

fn assemble_into(h: &mut CMatrix, problem: &ControlProblem, controls: &[f64], t: f64) {
    h.fill(c(0.0));
    for term in &problem.terms {
        let amplitude = match term.control {
            Some(m) => controls[m],
            None => 1.0,
        };
        let coeff = amplitude * term.influence.value(t);
        if coeff != 0.0 {
            h.zip_apply(&term.matrix, |acc, x| *acc += x * coeff);
        }
    }
}

/// States on the fine time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
}

impl Trajectory {
    pub fn final_state(&self) -> &QuantumState {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }
}

fn check_grid(problem: &ControlProblem, controls: &FineControls) -> Result<()> {
    if controls.num_points() < 2 {
        return Err(Error::Propagation(
            "fine grid needs at least two points".into(),
        ));
    }
    if controls.values.len() != problem.num_controls
        || controls
            .values
            .iter()
            .any(|u| u.len() != controls.num_points())
    {
        return Err(Error::Propagation(format!(
            "expected {} control rows of {} points",
            problem.num_controls,
            controls.num_points()
        )));
    }
    Ok(())
}

/// `Ψ(t_{k+1}) = Ψ(t_k) - i H(t_k) Ψ(t_k) Δt`, optionally renormalizing after each step.
pub fn propagate_euler(
    problem: &ControlProblem,
    controls: &FineControls,
    renormalize: bool,
) -> Result<Trajectory> {
    check_grid(problem, controls)?;
    let steps = controls.num_points() - 1;
    let dt = problem.total_time / steps as f64;
    let mut h = CMatrix::zeros(problem.dim, problem.dim);
    let mut h_psi = CVector::zeros(problem.dim);
    let mut psi = problem.psi0.amplitudes().clone();
    let mut states = Vec::with_capacity(steps + 1);
    states.push(QuantumState::new(psi.clone()));
    let mut u = vec![0.0; problem.num_controls];

    for k in 0..steps {
        let t = controls.times[k];
        for (m, row) in controls.values.iter().enumerate() {
            u[m] = row[k];
        }
        assemble_into(&mut h, problem, &u, t);
        h_psi.gemv(c(1.0), &h, &psi, c(0.0));
        psi.axpy(-I * dt, &h_psi, c(1.0));
        if renormalize {
            let n = psi.norm();
            if n > 0.0 {
                psi.unscale_mut(n);
            }
        }
        let state = QuantumState::new(psi.clone());
        if !state.is_finite() {
            return Err(Error::Propagation(format!(
                "non-finite amplitudes at step {k} (t = {t})"
            )));
        }
        states.push(state);
    }
    Ok(Trajectory {
        times: controls.times.clone(),
        states,
    })
}

/// `Ψ(t_{k+1}) = exp(-i H(t_k) Δt) Ψ(t_k)` with the exponential taken through the
/// Hermitian eigen-decomposition of `H(t_k)`.
pub fn propagate_expm_oracle(
    problem: &ControlProblem,
    controls: &FineControls,
) -> Result<Trajectory> {
    check_grid(problem, controls)?;
    let steps = controls.num_points() - 1;
    let dt = problem.total_time / steps as f64;
    let mut psi = problem.psi0.amplitudes().clone();
    let mut states = Vec::with_capacity(steps + 1);
    states.push(QuantumState::new(psi.clone()));

    for k in 0..steps {
        let h = assemble_hamiltonian(problem, &controls.at(k), controls.times[k]);
        let (values, vectors) = hermitian_eigen(&h);
        let phases =
            CVector::from_iterator(values.len(), values.iter().map(|l| (-I * (l * dt)).exp()));
        let mut coeffs = vectors.ad_mul(&psi);
        coeffs.component_mul_assign(&phases);
        psi = &vectors * coeffs;
        states.push(QuantumState::new(psi.clone()));
    }
    Ok(Trajectory {
        times: controls.times.clone(),
        states,
    })
}

/// Reduced atomic density matrix of an atom1 ⊗ atom2 ⊗ field state (field dimension 2):
/// `ρ_A[i, j] = Σ_k ψ[i, k] conj(ψ[j, k])`.
pub fn partial_trace_field(psi: &QuantumState) -> Result<DensityMatrix> {
    const FIELD: usize = 2;
    if psi.dim() != 8 {
        return Err(Error::Evaluation(format!(
            "field trace expects an 8-dimensional state, got {}",
            psi.dim()
        )));
    }
    let a = psi.amplitudes();
    let n = psi.dim() / FIELD;
    let rho = CMatrix::from_fn(n, n, |i, j| {
        (0..FIELD)
            .map(|k| a[i * FIELD + k] * a[j * FIELD + k].conj())
            .sum()
    });
    Ok(DensityMatrix::new(rho))
}
