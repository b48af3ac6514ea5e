//! TOPSIS post-selection over a final repository.
//!
//! Members are first screened by fidelity, the objective matrix is turned into a
//! larger-is-better form by `column max - value`, and each row is scored by its weighted
//! closeness to the column-wise ideal relative to the anti-ideal. Scores are normalized to
//! sum to one and the maximum (lowest index on ties) is selected.

use serde::{Deserialize, Serialize};

use crate::optimizer::{Particle, Repository};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TopsisWeights(Vec<f64>);

impl TopsisWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Config("TOPSIS weights must not be empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::Config(format!("TOPSIS weight {w} is not positive")));
        }
        Ok(Self(weights))
    }

    /// (0.7, 0.3) for deviation/energy, (0.6, 0.2, 0.2) with smoothness added.
    pub fn default_for(num_objectives: usize) -> Result<Self> {
        match num_objectives {
            2 => Self::new(vec![0.7, 0.3]),
            3 => Self::new(vec![0.6, 0.2, 0.2]),
            k => Err(Error::Config(format!(
                "no default TOPSIS weights for {k} objectives"
            ))),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub screened_count: usize,
    pub scores: Vec<f64>,
    /// Index into the screened list.
    pub selected_index: usize,
}

/// Members with `fidelity >= epsilon`; the single best-fidelity member if none qualify.
pub fn screen_by_fidelity(rep: &Repository, epsilon: f64) -> Result<Vec<Particle>> {
    if rep.is_empty() {
        return Err(Error::Decision("cannot screen an empty repository".into()));
    }
    let kept: Vec<Particle> = rep
        .members()
        .iter()
        .filter(|p| p.fidelity >= epsilon)
        .cloned()
        .collect();
    if !kept.is_empty() {
        return Ok(kept);
    }
    let mut best = &rep.members()[0];
    for p in &rep.members()[1..] {
        if p.fidelity > best.fidelity {
            best = p;
        }
    }
    Ok(vec![best.clone()])
}

/// Replaces each column by `column max - value`.
pub fn positivize(matrix: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let Some(first) = matrix.first() else {
        return Vec::new();
    };
    let maxima: Vec<f64> = (0..first.len())
        .map(|j| {
            matrix
                .iter()
                .map(|row| row[j])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    matrix
        .iter()
        .map(|row| row.iter().zip(&maxima).map(|(v, m)| m - v).collect())
        .collect()
}

/// Weighted relative-closeness scores of a positivized matrix, normalized to sum to one.
pub fn topsis_scores(matrix: &[Vec<f64>], weights: &TopsisWeights) -> Result<Vec<f64>> {
    let Some(first) = matrix.first() else {
        return Err(Error::Decision("TOPSIS needs at least one row".into()));
    };
    let k = first.len();
    if weights.len() != k || matrix.iter().any(|r| r.len() != k) {
        return Err(Error::Decision(format!(
            "{} weights for a matrix with {k} columns",
            weights.len()
        )));
    }
    let col = |j: usize| matrix.iter().map(move |row| row[j]);
    let best: Vec<f64> = (0..k)
        .map(|j| col(j).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let worst: Vec<f64> = (0..k)
        .map(|j| col(j).fold(f64::INFINITY, f64::min))
        .collect();
    let w = weights.as_slice();

    let raw: Vec<f64> = matrix
        .iter()
        .map(|row| {
            let dist = |reference: &[f64]| {
                row.iter()
                    .zip(reference)
                    .zip(w)
                    .map(|((f, r), w)| w * (f - r).powi(2))
                    .sum::<f64>()
                    .sqrt()
            };
            let d_plus = dist(&best);
            let d_minus = dist(&worst);
            let total = d_plus + d_minus;
            if total > 0.0 {
                d_minus / total
            } else {
                0.5
            }
        })
        .collect();

    let sum: f64 = raw.iter().sum();
    if sum > 0.0 {
        Ok(raw.iter().map(|s| s / sum).collect())
    } else {
        // Every row sits on the anti-ideal; only possible with identical rows.
        Ok(vec![1.0 / raw.len() as f64; raw.len()])
    }
}

fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate().skip(1) {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

/// Screens, scores and returns the TOPSIS-optimal repository member.
pub fn select_best(
    rep: &Repository,
    weights: &TopsisWeights,
    epsilon: f64,
) -> Result<(Particle, DecisionReport)> {
    let screened = screen_by_fidelity(rep, epsilon)?;
    let matrix: Vec<Vec<f64>> = screened.iter().map(|p| p.objectives.clone()).collect();
    let scores = topsis_scores(&positivize(&matrix), weights)?;
    let selected_index = argmax(&scores);
    let report = DecisionReport {
        screened_count: screened.len(),
        scores,
        selected_index,
    };
    Ok((screened[selected_index].clone(), report))
}
