//! Recover the Schaffer front `f2 = (√f1 - 2)²` with a small swarm.
//!
//! cargo run --release --example schaffer_front [seed]

use momdwa::objectives::{schaffer_front_gap, schaffer_problem};
use momdwa::optimizer::{optimize, MomdwaParams};
use momdwa::rng::RngStreams;

fn main() -> momdwa::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let params = MomdwaParams {
        population_size: 50,
        max_generations: 100,
        ..MomdwaParams::default()
    };
    let result = optimize(
        &schaffer_problem(),
        &params,
        &mut RngStreams::from_seed(seed),
    )?;

    let mut members = result.repository.into_members();
    members.sort_by(|a, b| a.objectives[0].total_cmp(&b.objectives[0]));
    println!("{:>10} {:>10} {:>10} {:>10}", "x", "f1", "f2", "gap");
    for m in members.iter().step_by(10) {
        let (f1, f2) = (m.objectives[0], m.objectives[1]);
        println!(
            "{:>10.5} {f1:>10.5} {f2:>10.5} {:>10.2e}",
            m.position[0],
            schaffer_front_gap(f1, f2)
        );
    }
    let worst = members
        .iter()
        .map(|m| schaffer_front_gap(m.objectives[0], m.objectives[1]))
        .fold(0.0, f64::max);
    println!(
        "{} members, worst gap to the analytic front {worst:.2e}",
        members.len()
    );
    Ok(())
}
