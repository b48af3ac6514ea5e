//! Benchmark self-checks: the optimizer must recover analytic Pareto fronts.

use std::fmt;
use std::time::Instant;

use crate::objectives::{fonseca_front, fonseca_problem, schaffer_front_gap, schaffer_problem};
use crate::optimizer::{optimize, MomdwaParams};
use crate::rng::RngStreams;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

pub const SCHAFFER_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
pub const SCHAFFER_GAP_TOL: f64 = 0.05;
pub const SCHAFFER_SPAN: (f64, f64) = (0.05, 3.8);
pub const SCHAFFER_SECONDS: f64 = 10.0;
pub const FONSECA_SEED: u64 = 1;
pub const FONSECA_DIST_TOL: f64 = 0.03;
pub const FONSECA_FRACTION: f64 = 0.9;
pub const FONSECA_SECONDS: f64 = 30.0;

/// Schaffer, Np=50, capacity 100, 100 generations: every member within 0.05 of
/// `f2 = (√f1 - 2)²` and the front spanning `f1 ∈ [0.05, 3.8]`.
pub fn schaffer_check(seed: u64) -> Result<CheckOutcome> {
    let params = MomdwaParams {
        population_size: 50,
        max_generations: 100,
        repository_capacity: 100,
        ..MomdwaParams::default()
    };
    let start = Instant::now();
    let result = optimize(
        &schaffer_problem(),
        &params,
        &mut RngStreams::from_seed(seed),
    )?;
    let seconds = start.elapsed().as_secs_f64();
    let members = result.repository.members();
    let max_gap = members
        .iter()
        .map(|m| schaffer_front_gap(m.objectives[0], m.objectives[1]))
        .fold(0.0, f64::max);
    let f1 = members.iter().map(|m| m.objectives[0]);
    let (lo, hi) = f1.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    let passed = max_gap <= SCHAFFER_GAP_TOL
        && lo <= SCHAFFER_SPAN.0
        && hi >= SCHAFFER_SPAN.1
        && seconds < SCHAFFER_SECONDS;
    Ok(CheckOutcome {
        name: format!("schaffer seed {seed}"),
        passed,
        detail: format!(
            "{} members, max gap {max_gap:.2e} (tol {SCHAFFER_GAP_TOL}), f1 span [{lo:.3}, {hi:.3}] (need [{}, {}]), {seconds:.2}s",
            members.len(),
            SCHAFFER_SPAN.0,
            SCHAFFER_SPAN.1
        ),
    })
}

/// Fonseca, Np=100, 200 generations: at least 90% of members within 0.03 of the
/// densely sampled analytic front.
pub fn fonseca_check(seed: u64) -> Result<CheckOutcome> {
    let params = MomdwaParams {
        population_size: 100,
        max_generations: 200,
        ..MomdwaParams::default()
    };
    let start = Instant::now();
    let result = optimize(
        &fonseca_problem(),
        &params,
        &mut RngStreams::from_seed(seed),
    )?;
    let seconds = start.elapsed().as_secs_f64();
    let front = fonseca_front(20_001);
    let members = result.repository.members();
    let close = members
        .iter()
        .filter(|m| {
            let (a, b) = (m.objectives[0], m.objectives[1]);
            front
                .iter()
                .map(|p| ((p[0] - a).powi(2) + (p[1] - b).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
                <= FONSECA_DIST_TOL
        })
        .count();
    let fraction = close as f64 / members.len() as f64;
    Ok(CheckOutcome {
        name: format!("fonseca seed {seed}"),
        passed: fraction >= FONSECA_FRACTION && seconds < FONSECA_SECONDS,
        detail: format!(
            "{close}/{} members within {FONSECA_DIST_TOL} of the front ({:.1}%, need {:.0}%), {seconds:.2}s",
            members.len(),
            100.0 * fraction,
            100.0 * FONSECA_FRACTION
        ),
    })
}

/// All benchmark checks, one outcome per run.
pub fn validate() -> Result<Vec<CheckOutcome>> {
    let mut out = SCHAFFER_SEEDS
        .iter()
        .map(|&s| schaffer_check(s))
        .collect::<Result<Vec<_>>>()?;
    out.push(fonseca_check(FONSECA_SEED)?);
    Ok(out)
}
