//! The damped-wave optimizer: population moves, box-bound handling, Pareto dominance
//! bookkeeping and the bounded non-dominated repository.

mod bounds;
mod engine;
mod moves;
mod pareto;
mod particle;
mod repository;

pub use bounds::Bounds;
pub use engine::{
    initialize_population, optimize, optimize_with, Evaluation, GenerationStats, MomdwaParams,
    OptimizationResult, Problem,
};
pub use moves::{damped_wave_move, guided_move, handle_bounds, update_position, SINGULAR_EPS};
pub use pareto::{crowding_distance, dominates, non_dominated_sort};
pub use particle::Particle;
pub use repository::{select_leader, update_repository, Repository};
