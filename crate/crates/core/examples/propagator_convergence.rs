//! First-order convergence of the Euler propagator against the exact piecewise-constant
//! propagator, on random in-bounds controls.
//!
//! cargo run --release --example propagator_convergence

use momdwa::quantum::{
    build_q1, build_q2, build_q3, decode_position, propagate_euler, propagate_expm_oracle,
};
use momdwa::rng::{stream, uniform_in, Stream};

fn main() -> momdwa::Result<()> {
    for (name, problem) in [("q1", build_q1()), ("q2", build_q2()), ("q3", build_q3())] {
        let mut rng = stream(3, Stream::Aux);
        let b = problem.search_bounds();
        let x: Vec<f64> = b
            .lower()
            .iter()
            .zip(b.upper())
            .map(|(&lo, &hi)| uniform_in(&mut rng, lo, hi))
            .collect();
        println!(
            "{name} (dim {}, {} controls)",
            problem.dim, problem.num_controls
        );
        println!(
            "  {:>5} {:>12} {:>10} {:>12}",
            "alpha", "error", "ratio", "euler norm"
        );
        let mut previous: Option<f64> = None;
        for alpha in [15, 30, 60, 120, 240] {
            let controls = decode_position(&x, &problem, alpha)?;
            let euler = propagate_euler(&problem, &controls, false)?;
            let exact = propagate_expm_oracle(&problem, &controls)?;
            let err = (euler.final_state().amplitudes() - exact.final_state().amplitudes()).norm();
            let ratio = previous.map_or(String::from("-"), |p| format!("{:.3}", p / err));
            println!(
                "  {alpha:>5} {err:>12.4e} {ratio:>10} {:>12.6}",
                euler.final_state().norm()
            );
            previous = Some(err);
        }
    }
    Ok(())
}
