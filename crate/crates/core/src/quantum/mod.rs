//! Quantum states, control problems and time propagation (units with ħ = 1).

pub(crate) mod linalg;
mod problems;
mod propagate;
mod spline;

pub use linalg::{
    hermitian_eigen, is_hermitian, kron, pauli_x, pauli_y, pauli_z, psd_sqrt, CMatrix, CVector,
    DensityMatrix, QuantumState,
};
pub use problems::{
    build_q1, build_q1_with, build_q2, build_q2_with, build_q3, build_q3_with, ControlProblem,
    HamiltonianTerm, Influence, ProblemKind, Q1Params, Q2Params, Q3Params, Reduction, Target,
};
pub use propagate::{
    assemble_hamiltonian, partial_trace_field, propagate_euler, propagate_expm_oracle, Trajectory,
};
pub use spline::{decode_position, fine_grid, spline_upsample, FineControls, NaturalCubicSpline};
