//! The generation loop.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moves::{handle_bounds, update_position};
use super::repository::{select_leader, update_repository, Repository};
use super::{Bounds, Particle};
use crate::rng::{uniform_in, RngStreams};
use crate::{Error, Result};

/// Result of evaluating one position.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Minimized objective values.
    pub objectives: Vec<f64>,
    /// Auxiliary overlap measure in [0, 1]; problems without one report 1.
    pub fidelity: f64,
}

/// Anything the optimizer can search over.
///
/// `evaluate` must be a pure function of the position. Non-finite objective values are
/// allowed and quarantine the particle from the repository for that generation.
pub trait Problem: Sync {
    fn bounds(&self) -> &Bounds;
    fn num_objectives(&self) -> usize;
    fn evaluate(&self, position: &[f64]) -> Evaluation;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MomdwaParams {
    pub population_size: usize,
    pub max_generations: usize,
    /// Probability of the damped-wave branch per coordinate, and the boundary-rule switch.
    pub threshold: f64,
    pub bb_low: f64,
    pub bb_high: f64,
    /// Exclusive lower end of the `gg` draw.
    pub gg_low: f64,
    pub gg_high: f64,
    /// Damped-wave amplitude at generation 0; decays linearly to 0 at `max_generations`.
    pub amplitude_a: f64,
    pub decay_base: f64,
    pub repository_capacity: usize,
}

impl Default for MomdwaParams {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 500,
            threshold: 0.02,
            bb_low: -2.0,
            bb_high: 2.0,
            gg_low: 0.0,
            gg_high: 1.0,
            amplitude_a: 1.0,
            decay_base: 0.95,
            repository_capacity: 100,
        }
    }
}

impl MomdwaParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |key: &str, msg: &str| Err(Error::Config(format!("optimizer.{key}: {msg}")));
        if self.population_size == 0 {
            return fail("population_size", "must be positive");
        }
        if self.repository_capacity == 0 {
            return fail("repository_capacity", "must be positive");
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return fail("threshold", "must lie in (0, 1)");
        }
        if !(self.decay_base > 0.0 && self.decay_base < 1.0) {
            return fail("decay_base", "must lie in (0, 1)");
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
        if !(self.bb_low <= self.bb_high) || !self.bb_low.is_finite() || !self.bb_high.is_finite() {
            return fail("bb_low", "requires finite bb_low <= bb_high");
        }
        if !(self.gg_low >= 0.0 && self.gg_low < self.gg_high && self.gg_high.is_finite()) {
            return fail("gg_low", "requires 0 <= gg_low < gg_high");
        }
        if !(self.amplitude_a > 0.0 && self.amplitude_a.is_finite()) {
            return fail("amplitude_a", "must be positive");
        }
        Ok(())
    }

    /// Damped-wave amplitude used by the update at loop index `gen`.
    pub fn amplitude_at(&self, gen: usize) -> f64 {
        if self.max_generations == 0 {
            return self.amplitude_a;
        }
        self.amplitude_a * (1.0 - gen as f64 / self.max_generations as f64).max(0.0)
    }
}

/// One row of the per-generation history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub repository_size: usize,
    pub objective_minima: Vec<f64>,
    pub best_fidelity: f64,
}

impl GenerationStats {
    fn of(generation: usize, rep: &Repository) -> Self {
        Self {
            generation,
            repository_size: rep.len(),
            objective_minima: rep.objective_minima(),
            best_fidelity: rep.best_fidelity(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub repository: Repository,
    /// Row 0 describes the repository seeded from the initial population.
    pub history: Vec<GenerationStats>,
    pub population: Vec<Particle>,
}

/// Uniform random positions inside `bounds`, objectives pending.
pub fn initialize_population<R: Rng + ?Sized>(
    bounds: &Bounds,
    population_size: usize,
    rng: &mut R,
) -> Result<Vec<Particle>> {
    if population_size == 0 {
        return Err(Error::Config("population size must be positive".into()));
    }
    Ok((0..population_size)
        .map(|_| {
            let position = bounds
                .lower()
                .iter()
                .zip(bounds.upper())
                .map(|(&lo, &hi)| uniform_in(rng, lo, hi))
                .collect();
            Particle::pending(position)
        })
        .collect())
}

fn evaluate_all<P: Problem + ?Sized>(problem: &P, positions: Vec<Vec<f64>>) -> Vec<Particle> {
    positions
        .into_par_iter()
        .map(|position| {
            let eval = problem.evaluate(&position);
            let mut objectives = eval.objectives;
            if objectives.iter().any(|v| !v.is_finite()) {
                objectives.iter_mut().for_each(|v| *v = f64::INFINITY);
            }
            Particle::evaluated(position, objectives, eval.fidelity)
        })
        .collect()
}

pub fn optimize<P: Problem + ?Sized>(
    problem: &P,
    params: &MomdwaParams,
    streams: &mut RngStreams,
) -> Result<OptimizationResult> {
    optimize_with(problem, params, streams, |_, _| {})
}

/// Runs the full loop, calling `observer(generation, repository)` after the initial
/// repository is built and after every generation.
pub fn optimize_with<P, F>(
    problem: &P,
    params: &MomdwaParams,
    streams: &mut RngStreams,
    mut observer: F,
) -> Result<OptimizationResult>
where
    P: Problem + ?Sized,
    F: FnMut(usize, &Repository),
{
    params.validate()?;
    let bounds = problem.bounds();

    let initial = initialize_population(bounds, params.population_size, &mut streams.init)?;
    let mut population = evaluate_all(problem, initial.into_iter().map(|p| p.position).collect());
    check_objective_count(problem, &population)?;

    let mut repository = Repository::new(params.repository_capacity);
    update_repository(&mut repository, &population);
    let mut history = vec![GenerationStats::of(0, &repository)];
    observer(0, &repository);

    for gen in 0..params.max_generations {
        if repository.is_empty() {
            return Err(Error::Evaluation(format!(
                "repository empty at generation {gen}: every evaluation was non-finite"
            )));
        }
        // All draws happen here, serially, before evaluation is dispatched.
        let positions: Vec<Vec<f64>> = population
            .iter()
            .map(|particle| {
                let leader = select_leader(&repository, &mut streams.leader);
                let raw = update_position(
                    &particle.position,
                    &leader.position,
                    gen,
                    params,
                    &mut streams.update,
                );
                handle_bounds(&raw, bounds, params.threshold, &mut streams.boundary)
            })
            .collect();

        population = evaluate_all(problem, positions);
        update_repository(&mut repository, &population);
        history.push(GenerationStats::of(gen + 1, &repository));
        observer(gen + 1, &repository);
    }

    Ok(OptimizationResult {
        repository,
        history,
        population,
    })
}

fn check_objective_count<P: Problem + ?Sized>(problem: &P, pop: &[Particle]) -> Result<()> {
    let k = problem.num_objectives();
    match pop.iter().find(|p| p.objectives.len() != k) {
        Some(p) => Err(Error::Evaluation(format!(
            "problem declared {k} objectives but evaluation returned {}",
            p.objectives.len()
        ))),
        None => Ok(()),
    }
}
