//! Two atoms in a single-mode cavity: steer the reduced atomic state to the Bell state
//! (|g e⟩ + |e g⟩)/√2 after tracing out the field.
//!
//! cargo run --release --example q3_cavity_entanglement [seed] [generations]

use momdwa::decision::{select_best, TopsisWeights};
use momdwa::objectives::{EvaluationSettings, QuantumObjective};
use momdwa::optimizer::{optimize, MomdwaParams};
use momdwa::quantum::{build_q3, decode_position, partial_trace_field, propagate_expm_oracle};
use momdwa::rng::RngStreams;

fn main() -> momdwa::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let seed = args.next().flatten().unwrap_or(1);
    let generations = args.next().flatten().unwrap_or(300) as usize;

    let settings = EvaluationSettings {
        num_objectives: 3,
        ..EvaluationSettings::default()
    };
    let objective = QuantumObjective::new(build_q3(), settings)?;
    let params = MomdwaParams {
        max_generations: generations,
        ..MomdwaParams::default()
    };
    let result = optimize(&objective, &params, &mut RngStreams::from_seed(seed))?;
    let (best, report) = select_best(&result.repository, &TopsisWeights::default_for(3)?, 0.995)?;
    println!(
        "{} of {} members pass screening",
        report.screened_count,
        result.repository.len()
    );
    println!(
        "fidelity {:.6} | deviation {:.4e} | energy {:.4} | smoothness {:.4}",
        best.fidelity, best.objectives[0], best.objectives[1], best.objectives[2]
    );

    // Reduced atomic state of the exact evolution under the selected controls.
    let problem = objective.problem();
    let controls = decode_position(&best.position, problem, objective.settings().alpha)?;
    let psi = propagate_expm_oracle(problem, &controls)?
        .final_state()
        .clone();
    let rho = partial_trace_field(&psi)?;
    println!("atomic density matrix (|gg⟩, |ge⟩, |eg⟩, |ee⟩), magnitudes:");
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:.3}", rho.entries()[(i, j)].norm()))
            .collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
