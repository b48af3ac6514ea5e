//! Analytic two-objective problems with known Pareto fronts.

/// 1/√3
const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

use crate::optimizer::{Bounds, Evaluation, Problem};

/// `f1 = x²`, `f2 = (x - 2)²` on `[-1000, 1000]`; Pareto set `x ∈ [0, 2]`.
#[derive(Debug, Clone)]
pub struct Schaffer {
    bounds: Bounds,
}

pub fn schaffer_problem() -> Schaffer {
    Schaffer {
        bounds: Bounds::uniform(-1e3, 1e3, 1).expect("static bounds"),
    }
}

impl Problem for Schaffer {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        Evaluation {
            objectives: vec![x[0] * x[0], (x[0] - 2.0).powi(2)],
            fidelity: 1.0,
        }
    }
}

/// `|f2 - (√f1 - 2)²|`, zero on the analytic front.
pub fn schaffer_front_gap(f1: f64, f2: f64) -> f64 {
    (f2 - (f1.sqrt() - 2.0).powi(2)).abs()
}

/// Fonseca-Fleming with three variables on `[-4, 4]³`:
/// `f1 = 1 - exp(-Σ (x_i + 1/√3)²)`, `f2 = 1 - exp(-Σ (x_i - 1/√3)²)`.
/// Pareto set `x1 = x2 = x3 ∈ [-1/√3, 1/√3]`.
#[derive(Debug, Clone)]
pub struct Fonseca {
    bounds: Bounds,
}

pub fn fonseca_problem() -> Fonseca {
    Fonseca {
        bounds: Bounds::uniform(-4.0, 4.0, 3).expect("static bounds"),
    }
}

impl Problem for Fonseca {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        let sq = |shift: f64| x.iter().map(|v| (v + shift).powi(2)).sum::<f64>();
        Evaluation {
            objectives: vec![
                1.0 - (-sq(FRAC_1_SQRT_3)).exp(),
                1.0 - (-sq(-FRAC_1_SQRT_3)).exp(),
            ],
            fidelity: 1.0,
        }
    }
}

/// `samples` points of the analytic Fonseca front, from the diagonal `x1 = x2 = x3 = s`.
pub fn fonseca_front(samples: usize) -> Vec<[f64; 2]> {
    let problem = fonseca_problem();
    (0..samples)
        .map(|i| {
            let s = -FRAC_1_SQRT_3 + 2.0 * FRAC_1_SQRT_3 * i as f64 / (samples - 1) as f64;
            let f = problem.evaluate(&[s, s, s]).objectives;
            [f[0], f[1]]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schaffer_values() {
        let p = schaffer_problem();
        assert_eq!(p.evaluate(&[0.0]).objectives, vec![0.0, 4.0]);
        assert_eq!(p.evaluate(&[2.0]).objectives, vec![4.0, 0.0]);
        let f = p.evaluate(&[1.0]).objectives;
        assert_eq!(f, vec![1.0, 1.0]);
        assert_eq!(schaffer_front_gap(f[0], f[1]), 0.0);
    }

    #[test]
    fn fonseca_values() {
        let p = fonseca_problem();
        let s = FRAC_1_SQRT_3;
        let f = p.evaluate(&[s, s, s]).objectives;
        assert!((f[0] - (1.0 - (-4.0f64).exp())).abs() < 1e-15);
        assert_eq!(f[1], 0.0);
        let f = p.evaluate(&[0.0, 0.0, 0.0]).objectives;
        let want = 1.0 - (-1.0f64).exp();
        assert!((f[0] - want).abs() < 1e-15 && (f[1] - want).abs() < 1e-15);
    }

    #[test]
    fn fonseca_negation_swaps_objectives() {
        let p = fonseca_problem();
        let x = [0.3, -1.2, 2.5];
        let f = p.evaluate(&x).objectives;
        let g = p.evaluate(&[-0.3, 1.2, -2.5]).objectives;
        assert!((f[0] - g[1]).abs() < 1e-15 && (f[1] - g[0]).abs() < 1e-15);
    }

    #[test]
    fn fonseca_front_endpoints() {
        let front = fonseca_front(11);
        assert_eq!(front.len(), 11);
        assert_eq!(front[0][0], 0.0);
        assert_eq!(front[10][1], 0.0);
    }
}
