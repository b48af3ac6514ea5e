//! Three-level state preparation: drive (1,0,0) to (0,1,1)/√2 while minimizing control
//! energy, then pick a compromise with TOPSIS.
//!
//! cargo run --release --example q1_state_preparation [seed] [generations]

use momdwa::decision::{select_best, TopsisWeights};
use momdwa::objectives::{EvaluationSettings, QuantumObjective};
use momdwa::optimizer::{optimize_with, MomdwaParams};
use momdwa::quantum::build_q1;
use momdwa::rng::RngStreams;

fn main() -> momdwa::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let seed = args.next().flatten().unwrap_or(1);
    let generations = args.next().flatten().unwrap_or(500) as usize;

    let objective = QuantumObjective::new(build_q1(), EvaluationSettings::default())?;
    let params = MomdwaParams {
        max_generations: generations,
        ..MomdwaParams::default()
    };
    let result = optimize_with(
        &objective,
        &params,
        &mut RngStreams::from_seed(seed),
        |gen, rep| {
            if gen % 100 == 0 {
                println!(
                    "generation {gen:>4}: {} members, best fidelity {:.6}",
                    rep.len(),
                    rep.best_fidelity()
                );
            }
        },
    )?;

    let (best, report) = select_best(&result.repository, &TopsisWeights::default_for(2)?, 0.995)?;
    let record = objective.record(&best.position)?;
    println!("{} members pass fidelity >= 0.995", report.screened_count);
    println!("selected fidelity   {:.6}", record.fidelity);
    println!("selected deviation  {:.6}", record.objectives[0]);
    println!("selected energy     {:.6}", record.objectives[1]);
    println!("Euler terminal norm {:.6}", record.terminal_norm);
    Ok(())
}
