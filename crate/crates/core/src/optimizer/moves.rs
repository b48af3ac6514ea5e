//! Per-coordinate position updates and box-bound repair.

use std::f64::consts::PI;

use rand::Rng;

use super::{Bounds, MomdwaParams};
use crate::rng::uniform_in;

/// Denominators `|bb + pos|` below this are treated as singular.
pub const SINGULAR_EPS: f64 = 1e-12;

/// Number of `bb` re-draws attempted before falling back to the guided move.
const MAX_BB_REDRAWS: usize = 8;

/// Damped-wave mutation of a single coordinate:
/// `(a / (bb + pos)) * sin((2π / gg) * pos) + r * best`.
pub fn damped_wave_move(pos: f64, best: f64, a: f64, bb: f64, gg: f64, r: f64) -> f64 {
    debug_assert!(gg > 0.0, "gg must be strictly positive");
    (a / (bb + pos)) * ((2.0 * PI / gg) * pos).sin() + r * best
}

/// Leader-guided move with a geometrically decaying perturbation: `best + r * base^gen`.
pub fn guided_move(best: f64, gen: usize, decay_base: f64, r: f64) -> f64 {
    best + r * decay_base.powi(gen as i32)
}

/// Which update rule produced a coordinate; exposed for tracing in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Branch {
    DampedWave,
    Guided,
    /// Damped-wave branch selected but `bb` stayed singular after all re-draws.
    GuidedFallback,
}

/// Computes the raw (pre-bounds) new position of a particle.
///
/// For each coordinate one selector draw decides the rule: below `threshold` the
/// damped-wave move with freshly drawn `bb` and `gg`, otherwise the guided move.
pub fn update_position<R: Rng + ?Sized>(
    position: &[f64],
    leader: &[f64],
    gen: usize,
    params: &MomdwaParams,
    rng: &mut R,
) -> Vec<f64> {
    update_position_traced(position, leader, gen, params, rng).0
}

pub(crate) fn update_position_traced<R: Rng + ?Sized>(
    position: &[f64],
    leader: &[f64],
    gen: usize,
    params: &MomdwaParams,
    rng: &mut R,
) -> (Vec<f64>, Vec<Branch>) {
    debug_assert_eq!(position.len(), leader.len());
    let a = params.amplitude_at(gen);
    let mut out = Vec::with_capacity(position.len());
    let mut branches = Vec::with_capacity(position.len());
    for (&pos, &best) in position.iter().zip(leader) {
        let r_sel: f64 = rng.random();
        if r_sel < params.threshold {
            let mut bb = uniform_in(rng, params.bb_low, params.bb_high);
            // (0, 1] scaled into (gg_low, gg_high]
            let gg = params.gg_low + (params.gg_high - params.gg_low) * (1.0 - rng.random::<f64>());
            let mut redraws = 0;
            while (bb + pos).abs() < SINGULAR_EPS && redraws < MAX_BB_REDRAWS {
                bb = uniform_in(rng, params.bb_low, params.bb_high);
                redraws += 1;
            }
            let r: f64 = rng.random();
            if (bb + pos).abs() < SINGULAR_EPS {
                out.push(guided_move(best, gen, params.decay_base, r));
                branches.push(Branch::GuidedFallback);
            } else {
                out.push(damped_wave_move(pos, best, a, bb, gg, r));
                branches.push(Branch::DampedWave);
            }
        } else {
            let r: f64 = rng.random();
            out.push(guided_move(best, gen, params.decay_base, r));
            branches.push(Branch::Guided);
        }
    }
    (out, branches)
}

/// Repairs out-of-bounds coordinates.
///
/// One draw per coordinate: above `threshold` the coordinate is clamped onto the
/// violated bound; otherwise an out-of-bounds coordinate is replaced by a fresh
/// uniform draw inside the box. In-bounds coordinates are never changed.
pub fn handle_bounds<R: Rng + ?Sized>(
    position: &[f64],
    bounds: &Bounds,
    threshold: f64,
    rng: &mut R,
) -> Vec<f64> {
    debug_assert_eq!(position.len(), bounds.dim());
    position
        .iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(&pos, (&lower, &upper))| {
            let r_b: f64 = rng.random();
            // NaN positions count as out of bounds on both sides.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            let (above, below) = (!(pos <= upper), !(pos >= lower));
            if r_b > threshold {
                match (above, below) {
                    (true, false) => upper,
                    (false, true) => lower,
                    (false, false) => pos,
                    // Above the upper bound and below the lower bound at once is impossible
                    // for a valid box; only NaN lands here.
                    (true, true) => {
                        debug_assert!(pos.is_nan(), "coordinate outside an empty box");
                        uniform_in(rng, lower, upper)
                    }
                }
            } else if !above && !below {
                pos
            } else {
                uniform_in(rng, lower, upper)
            }
        })
        .collect()
}
