//! Two coupled qubits: prepare (|01⟩ + |10⟩)/√2 from |00⟩ with three objectives
//! (deviation, energy, smoothness) and report the TOPSIS pick.
//!
//! cargo run --release --example q2_entangling_qubits [seed] [generations]

use momdwa::decision::{select_best, TopsisWeights};
use momdwa::objectives::{EvaluationSettings, QuantumObjective};
use momdwa::optimizer::{optimize, MomdwaParams};
use momdwa::quantum::build_q2;
use momdwa::rng::RngStreams;

fn main() -> momdwa::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let seed = args.next().flatten().unwrap_or(1);
    let generations = args.next().flatten().unwrap_or(300) as usize;

    let settings = EvaluationSettings {
        num_objectives: 3,
        ..EvaluationSettings::default()
    };
    let objective = QuantumObjective::new(build_q2(), settings)?;
    let params = MomdwaParams {
        max_generations: generations,
        ..MomdwaParams::default()
    };
    let result = optimize(&objective, &params, &mut RngStreams::from_seed(seed))?;
    let (best, report) = select_best(&result.repository, &TopsisWeights::default_for(3)?, 0.995)?;

    println!(
        "repository {} members, {} pass screening",
        result.repository.len(),
        report.screened_count
    );
    println!(
        "fidelity {:.6} | deviation {:.4e} | energy {:.4} | smoothness {:.4}",
        best.fidelity, best.objectives[0], best.objectives[1], best.objectives[2]
    );
    // Coarse samples u_m(jT/N) of the chosen solution; the spline interpolates these.
    let samples = objective.problem().samples;
    for (m, u) in best.position.chunks(samples).enumerate() {
        let samples: Vec<String> = u.iter().map(|v| format!("{v:+.3}")).collect();
        println!("u{} at t_j: {}", m + 1, samples.join(" "));
    }
    Ok(())
}
