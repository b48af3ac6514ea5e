use serde::{Deserialize, Serialize};

/// A point in control-parameter space with its evaluated objectives.
///
/// An empty objective vector marks a particle whose evaluation is still pending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Particle {
    pub position: Vec<f64>,
    pub objectives: Vec<f64>,
    /// Auxiliary overlap measure used for screening and reporting; not a dominance axis.
    pub fidelity: f64,
}

impl Particle {
    pub fn pending(position: Vec<f64>) -> Self {
        Self {
            position,
            objectives: Vec::new(),
            fidelity: f64::NAN,
        }
    }

    pub fn evaluated(position: Vec<f64>, objectives: Vec<f64>, fidelity: f64) -> Self {
        Self {
            position,
            objectives,
            fidelity,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.objectives.is_empty()
    }

    /// True when every objective is finite; non-finite particles never enter the repository.
    pub fn is_finite(&self) -> bool {
        self.is_evaluated() && self.objectives.iter().all(|v| v.is_finite())
    }
}
