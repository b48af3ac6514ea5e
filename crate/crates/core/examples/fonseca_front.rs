//! Nonconvex Fonseca-Fleming front in three variables.
//!
//! cargo run --release --example fonseca_front [seed]

use momdwa::objectives::{fonseca_front, fonseca_problem};
use momdwa::optimizer::{optimize, MomdwaParams};
use momdwa::rng::RngStreams;

fn main() -> momdwa::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let params = MomdwaParams {
        population_size: 100,
        max_generations: 200,
        ..MomdwaParams::default()
    };
    let result = optimize(
        &fonseca_problem(),
        &params,
        &mut RngStreams::from_seed(seed),
    )?;

    let front = fonseca_front(10_001);
    let distance = |f: &[f64]| {
        front
            .iter()
            .map(|p| (p[0] - f[0]).hypot(p[1] - f[1]))
            .fold(f64::INFINITY, f64::min)
    };
    let members = result.repository.members();
    let distances: Vec<f64> = members.iter().map(|m| distance(&m.objectives)).collect();
    let within = distances.iter().filter(|d| **d <= 0.03).count();
    println!("repository: {} members", members.len());
    println!("within 0.03 of the front: {within}");
    println!(
        "largest distance: {:.2e}",
        distances.iter().cloned().fold(0.0, f64::max)
    );
    Ok(())
}
