//! Pick one compromise from a hand-made front with fidelity screening and TOPSIS.
//!
//! cargo run --example topsis_selection

use momdwa::decision::{positivize, select_best, topsis_scores, TopsisWeights};
use momdwa::optimizer::{update_repository, Particle, Repository};

fn main() -> momdwa::Result<()> {
    // (deviation, energy) with the fidelity each solution reached.
    let candidates = [
        ([0.002, 9.0], 0.9999),
        ([0.010, 5.5], 0.9990),
        ([0.040, 3.1], 0.9960),
        ([0.080, 2.2], 0.9930),
        ([0.300, 0.8], 0.9500),
    ];
    let particles: Vec<Particle> = candidates
        .iter()
        .enumerate()
        .map(|(i, (f, fid))| Particle::evaluated(vec![i as f64], f.to_vec(), *fid))
        .collect();
    let mut rep = Repository::new(10);
    update_repository(&mut rep, &particles);

    let weights = TopsisWeights::default_for(2)?;
    let (best, report) = select_best(&rep, &weights, 0.995)?;
    println!(
        "{} of {} members pass fidelity >= 0.995",
        report.screened_count,
        rep.len()
    );
    for (i, s) in report.scores.iter().enumerate() {
        println!("  candidate {i}: score {s:.4}");
    }
    println!(
        "selected: deviation {} energy {} fidelity {}",
        best.objectives[0], best.objectives[1], best.fidelity
    );

    // Heavier energy weight moves the choice toward cheaper controls.
    let matrix: Vec<Vec<f64>> = candidates.iter().map(|(f, _)| f.to_vec()).collect();
    let cheap = topsis_scores(&positivize(&matrix), &TopsisWeights::new(vec![0.2, 0.8])?)?;
    println!("scores with weights (0.2, 0.8), unscreened: {cheap:.3?}");
    Ok(())
}
