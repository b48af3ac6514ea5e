//! Objective evaluation: state deviation, control energy and pulse smoothness for the
//! quantum problems, plus analytic two-objective benchmarks for validating the optimizer.

mod benchmarks;
mod measures;
mod quantum;

pub use benchmarks::{
    fonseca_front, fonseca_problem, schaffer_front_gap, schaffer_problem, Fonseca, Schaffer,
};
pub use measures::{
    deviation_mixed, deviation_pure, energy, fidelity_mixed, fidelity_pure, operator_norm,
    smoothness, OperatorNorm,
};
pub use quantum::{evaluate_quantum, EvaluationRecord, EvaluationSettings, QuantumObjective};
