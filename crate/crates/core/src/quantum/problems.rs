//! The three control problems: V-type three-level state preparation (Q1), two coupled
//! superconducting qubits (Q2), and two two-level atoms in a cavity (Q3).

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::linalg::{c, is_hermitian, kron, pauli_x, pauli_y, pauli_z, CMatrix};
use super::{DensityMatrix, QuantumState};
use crate::optimizer::Bounds;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Q1,
    Q2,
    Q3,
}

/// Multiplicative uncertainty factor on a Hamiltonian term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Influence {
    Unit,
    Constant(f64),
    /// `1 - epsilon * theta * cos t`.
    CosineDrift {
        epsilon: f64,
        theta: f64,
    },
}

impl Influence {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Influence::Unit => 1.0,
            Influence::Constant(v) => v,
            Influence::CosineDrift { epsilon, theta } => 1.0 - epsilon * theta * t.cos(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTerm {
    pub matrix: CMatrix,
    /// Index of the control field multiplying this term; `None` for free terms.
    pub control: Option<usize>,
    pub influence: Influence,
}

impl HamiltonianTerm {
    fn controlled(index: usize, matrix: CMatrix, influence: Influence) -> Self {
        Self {
            matrix,
            control: Some(index),
            influence,
        }
    }

    fn free(matrix: CMatrix, influence: Influence) -> Self {
        Self {
            matrix,
            control: None,
            influence,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Pure(QuantumState),
    /// Target on the reduced space left after `Reduction`.
    Mixed(DensityMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    None,
    /// Trace out the trailing two-level field mode.
    TraceOutField,
}

/// Immutable description of one quantum-control task.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlProblem {
    pub kind: ProblemKind,
    pub dim: usize,
    pub num_controls: usize,
    /// Coarse samples per control.
    pub samples: usize,
    pub total_time: f64,
    pub control_lower: Vec<f64>,
    pub control_upper: Vec<f64>,
    pub terms: Vec<HamiltonianTerm>,
    pub psi0: QuantumState,
    pub target: Target,
    pub reduction: Reduction,
}

impl ControlProblem {
    /// Optimizer dimension `M * N`.
    pub fn search_dim(&self) -> usize {
        self.num_controls * self.samples
    }

    /// Box bounds of the control-major search space.
    pub fn search_bounds(&self) -> Bounds {
        let n = self.samples;
        let lower = self
            .control_lower
            .iter()
            .flat_map(|v| std::iter::repeat_n(*v, n))
            .collect();
        let upper = self
            .control_upper
            .iter()
            .flat_map(|v| std::iter::repeat_n(*v, n))
            .collect();
        Bounds::new(lower, upper).expect("control bounds validated at construction")
    }

    /// Operator multiplied by control `m`.
    pub fn control_operator(&self, m: usize) -> &CMatrix {
        &self
            .terms
            .iter()
            .find(|t| t.control == Some(m))
            .expect("every control index has a term")
            .matrix
    }

    fn check(self) -> Result<Self> {
        for (i, term) in self.terms.iter().enumerate() {
            if !is_hermitian(&term.matrix, 1e-12) {
                return Err(Error::Config(format!(
                    "{:?}: Hamiltonian term {i} is not Hermitian",
                    self.kind
                )));
            }
        }
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::Config("total_time must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples per control must be positive".into()));
        }
        Bounds::new(self.control_lower.clone(), self.control_upper.clone())?;
        Ok(self)
    }
}

fn symmetric_bounds(bound: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(Error::Config(format!(
            "control_bound must be positive, got {bound}"
        )));
    }
    Ok((vec![-bound; m], vec![bound; m]))
}

fn real_matrix(n: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_row_slice(n, n, &entries.iter().map(|v| c(*v)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Q1Params {
    pub total_time: f64,
    pub samples: usize,
    pub control_bound: f64,
    /// Inherent drift strength of the free term.
    pub epsilon: f64,
    pub theta0: f64,
}

impl Default for Q1Params {
    fn default() -> Self {
        Self {
            total_time: 1.0,
            samples: 10,
            control_bound: 5.0,
            epsilon: 0.1,
            theta0: 0.0,
        }
    }
}

pub fn build_q1() -> ControlProblem {
    build_q1_with(&Q1Params::default()).expect("default Q1 parameters are valid")
}

pub fn build_q1_with(p: &Q1Params) -> Result<ControlProblem> {
    let i = num_complex::Complex64::new(0.0, 1.0);
    let z = c(0.0);
    let h0 = real_matrix(3, &[1.5, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
    let h1 = real_matrix(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let h2 = CMatrix::from_row_slice(3, 3, &[z, -i, z, i, z, z, z, z, z]);
    let h3 = real_matrix(3, &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    let h4 = CMatrix::from_row_slice(3, 3, &[z, z, -i, z, z, z, i, z, z]);

    let (control_lower, control_upper) = symmetric_bounds(p.control_bound, 4)?;
    ControlProblem {
        kind: ProblemKind::Q1,
        dim: 3,
        num_controls: 4,
        samples: p.samples,
        total_time: p.total_time,
        control_lower,
        control_upper,
        terms: vec![
            HamiltonianTerm::free(
                h0,
                Influence::CosineDrift {
                    epsilon: p.epsilon,
                    theta: p.theta0,
                },
            ),
            HamiltonianTerm::controlled(0, h1, Influence::Unit),
            HamiltonianTerm::controlled(1, h2, Influence::Unit),
            HamiltonianTerm::controlled(2, h3, Influence::Unit),
            HamiltonianTerm::controlled(3, h4, Influence::Unit),
        ],
        psi0: QuantumState::basis(3, 0),
        target: Target::Pure(QuantumState::from_real(&[
            0.0,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
        ])),
        reduction: Reduction::None,
    }
    .check()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Q2Params {
    pub total_time: f64,
    pub samples: usize,
    pub control_bound: f64,
    /// Uncertainty coefficients multiplying the five controlled terms.
    pub theta: [f64; 5],
}

impl Default for Q2Params {
    fn default() -> Self {
        Self {
            total_time: 1.0,
            samples: 7,
            control_bound: 5.0,
            theta: [1.0; 5],
        }
    }
}

pub fn build_q2() -> ControlProblem {
    build_q2_with(&Q2Params::default()).expect("default Q2 parameters are valid")
}

pub fn build_q2_with(p: &Q2Params) -> Result<ControlProblem> {
    let id = CMatrix::identity(2, 2);
    let (sx, sy, sz) = (pauli_x(), pauli_y(), pauli_z());
    let operators = [
        kron(&sz, &id),
        kron(&sz, &sz),
        -kron(&sx, &id),
        -kron(&sx, &sz),
        -kron(&sy, &sy),
    ];
    let terms = operators
        .into_iter()
        .zip(p.theta)
        .enumerate()
        .map(|(m, (op, theta))| HamiltonianTerm::controlled(m, op, Influence::Constant(theta)))
        .collect();
    let (control_lower, control_upper) = symmetric_bounds(p.control_bound, 5)?;
    ControlProblem {
        kind: ProblemKind::Q2,
        dim: 4,
        num_controls: 5,
        samples: p.samples,
        total_time: p.total_time,
        control_lower,
        control_upper,
        terms,
        psi0: QuantumState::basis(4, 0),
        target: Target::Pure(QuantumState::from_real(&[
            0.0,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            0.0,
        ])),
        reduction: Reduction::None,
    }
    .check()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Q3Params {
    pub total_time: f64,
    pub samples: usize,
    pub control_bound: f64,
    pub omega_a1: f64,
    pub omega_a2: f64,
    pub omega_r: f64,
    /// Dipole-dipole couplings; must be equal for the free Hamiltonian to be Hermitian.
    pub coupling_12: f64,
    pub coupling_21: f64,
    pub nu1: f64,
    pub nu2: f64,
    /// Initial cavity photon number (0 or 1); the atoms always start in |g1 g2⟩.
    pub initial_photons: usize,
}

impl Default for Q3Params {
    fn default() -> Self {
        Self {
            total_time: 1.0,
            samples: 6,
            control_bound: 5.0,
            omega_a1: 1.0,
            omega_a2: 1.0,
            omega_r: 1.0,
            coupling_12: 0.1,
            coupling_21: 0.1,
            nu1: 0.1,
            nu2: 0.1,
            initial_photons: 1,
        }
    }
}

pub fn build_q3() -> ControlProblem {
    build_q3_with(&Q3Params::default()).expect("default Q3 parameters are valid")
}

/// Layout is atom1 ⊗ atom2 ⊗ field with atom basis (g, e) and field Fock levels {0, 1}.
pub fn build_q3_with(p: &Q3Params) -> Result<ControlProblem> {
    if p.coupling_12 != p.coupling_21 {
        return Err(Error::Config(format!(
            "physics.coupling_12 ({}) must equal physics.coupling_21 ({}) for a Hermitian exchange term",
            p.coupling_12, p.coupling_21
        )));
    }
    if p.initial_photons > 1 {
        return Err(Error::Config(format!(
            "physics.initial_photons must be 0 or 1 (two-level field), got {}",
            p.initial_photons
        )));
    }
    let id = CMatrix::identity(2, 2);
    // σz = |e⟩⟨e| - |g⟩⟨g|, σ+ = |e⟩⟨g|, σ- = |g⟩⟨e|
    let sz = real_matrix(2, &[-1.0, 0.0, 0.0, 1.0]);
    let sp = real_matrix(2, &[0.0, 0.0, 1.0, 0.0]);
    let sm = sp.transpose();
    let a = real_matrix(2, &[0.0, 1.0, 0.0, 0.0]);
    let ad = a.transpose();
    let num = &ad * &a;
    let k3 = |x: &CMatrix, y: &CMatrix, z: &CMatrix| kron(&kron(x, y), z);

    let sz1 = k3(&sz, &id, &id);
    let sz2 = k3(&id, &sz, &id);
    let field_number = k3(&id, &id, &num);
    let exchange_12 = k3(&sp, &sm, &id);
    let exchange_21 = k3(&sm, &sp, &id);
    let jc1 = k3(&sm, &id, &ad) + k3(&sp, &id, &a);
    let jc2 = k3(&id, &sm, &ad) + k3(&id, &sp, &a);

    let free_energy =
        sz1.scale(0.5 * p.omega_a1) + sz2.scale(0.5 * p.omega_a2) + field_number.scale(p.omega_r);
    let interaction = exchange_12.scale(p.coupling_12)
        + exchange_21.scale(p.coupling_21)
        + jc1.scale(p.nu1)
        + jc2.scale(p.nu2);

    let controls = [
        sz1,
        sz2,
        field_number,
        &exchange_12 + exchange_12.adjoint(),
        &exchange_21 + exchange_21.adjoint(),
        jc1,
        jc2,
    ];
    let mut terms = vec![
        HamiltonianTerm::free(free_energy, Influence::Unit),
        HamiltonianTerm::free(interaction, Influence::Unit),
    ];
    terms.extend(
        controls
            .into_iter()
            .enumerate()
            .map(|(m, op)| HamiltonianTerm::controlled(m, op, Influence::Unit)),
    );

    let (control_lower, control_upper) = symmetric_bounds(p.control_bound, 7)?;
    let target = QuantumState::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
    ControlProblem {
        kind: ProblemKind::Q3,
        dim: 8,
        num_controls: 7,
        samples: p.samples,
        total_time: p.total_time,
        control_lower,
        control_upper,
        terms,
        // Every term conserves excitation number, so the target sector is only reachable
        // when the initial state already carries one excitation.
        psi0: QuantumState::basis(8, p.initial_photons),
        target: Target::Mixed(DensityMatrix::from_state(&target)),
        reduction: Reduction::TraceOutField,
    }
    .check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn q1_matrices() {
        let q1 = build_q1();
        let h2 = q1.control_operator(1);
        assert_eq!(h2[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(h2[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(q1.terms.len(), 5);
        assert!(q1.terms.iter().all(|t| is_hermitian(&t.matrix, 0.0)));
        let Target::Pure(target) = &q1.target else {
            panic!()
        };
        assert_eq!(q1.psi0.inner(target).norm(), 0.0);
    }

    #[test]
    fn search_dimensions() {
        assert_eq!(build_q1().search_dim(), 40);
        assert_eq!(build_q2().search_dim(), 35);
        assert_eq!(build_q3().search_dim(), 42);
    }

    #[test]
    fn q2_terms() {
        let q2 = build_q2();
        assert!(q2.terms.iter().all(|t| t.control.is_some()));
        assert!(q2.terms.iter().all(|t| is_hermitian(&t.matrix, 1e-15)));
        let zz = q2.control_operator(1);
        let diag: Vec<f64> = (0..4).map(|i| zz[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
        // Printed sign on the σy⊗σy term is negative.
        let yy = q2.control_operator(4);
        assert_eq!(yy[(0, 3)], c(1.0));
    }

    #[test]
    fn q3_operators() {
        let q3 = build_q3();
        assert_eq!(q3.terms.len(), 9);
        assert!(q3.terms.iter().all(|t| is_hermitian(&t.matrix, 1e-12)));
        // a†a on the field alone: basis index = 4*a1 + 2*a2 + n.
        let n_op = q3.control_operator(2);
        for idx in 0..8 {
            assert_eq!(n_op[(idx, idx)].re, (idx % 2) as f64);
        }
        // Exchange |g1 e2 0⟩ (index 2) -> |e1 g2 0⟩ (index 4); |g1 g2 0⟩ annihilated.
        let id = CMatrix::identity(2, 2);
        let sp = real_matrix(2, &[0.0, 0.0, 1.0, 0.0]);
        let raw = kron(&kron(&sp, &sp.transpose()), &id);
        let out = &raw * QuantumState::basis(8, 2).amplitudes();
        assert!((out - QuantumState::basis(8, 4).amplitudes()).norm() < 1e-15);
        let out = &raw * QuantumState::basis(8, 0).amplitudes();
        assert_eq!(out.norm(), 0.0);
        // The Hermitian exchange control contains exactly that transition.
        assert_eq!(q3.control_operator(3)[(4, 2)], c(1.0));
    }

    #[test]
    fn q3_rejects_asymmetric_coupling() {
        let p = Q3Params {
            coupling_21: 0.2,
            ..Q3Params::default()
        };
        assert!(build_q3_with(&p).is_err());
    }

    #[test]
    fn q3_initial_photons() {
        let p = Q3Params {
            initial_photons: 2,
            ..Q3Params::default()
        };
        assert!(build_q3_with(&p).is_err());
        // atom1 ⊗ atom2 ⊗ field: |g g, 1⟩ is index 1.
        let q3 = build_q3();
        assert_eq!(q3.psi0.amplitudes()[1].re, 1.0);
    }

    #[test]
    fn influence_values() {
        let f = Influence::CosineDrift {
            epsilon: 0.1,
            theta: 1.0,
        };
        assert!((f.value(0.0) - 0.9).abs() < 1e-15);
        assert_eq!(Influence::Unit.value(3.0), 1.0);
    }
}
