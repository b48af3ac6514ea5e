use rand::Rng;
use serde::{Deserialize, Serialize};

use super::pareto::{crowding_distance, non_dominated_sort};
use super::Particle;

/// Bounded archive of mutually non-dominated particles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repository {
    members: Vec<Particle>,
    capacity: usize,
}

impl Repository {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "repository capacity must be positive");
        Self {
            members: Vec::new(),
            capacity,
        }
    }

    pub fn members(&self) -> &[Particle] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Particle> {
        self.members
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Minimum of each objective over the members.
    pub fn objective_minima(&self) -> Vec<f64> {
        let k = self.members.first().map_or(0, |p| p.objectives.len());
        (0..k)
            .map(|j| {
                self.members
                    .iter()
                    .map(|p| p.objectives[j])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    pub fn best_fidelity(&self) -> f64 {
        self.members
            .iter()
            .map(|p| p.fidelity)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Uniformly random repository member.
///
/// # Panics
/// On an empty repository; the engine seeds the repository before the first move.
pub fn select_leader<'a, R: Rng + ?Sized>(rep: &'a Repository, rng: &mut R) -> &'a Particle {
    assert!(!rep.is_empty(), "leader requested from an empty repository");
    &rep.members[rng.random_range(0..rep.members.len())]
}

/// Merges `candidates` into the repository.
///
/// The union is reduced to its non-dominated subset; candidates with non-finite
/// objectives are skipped. While over capacity, the member with the smallest crowding
/// distance (lowest index on ties) is removed and distances are recomputed.
pub fn update_repository(rep: &mut Repository, candidates: &[Particle]) {
    let mut pool: Vec<Particle> = std::mem::take(&mut rep.members);
    pool.extend(candidates.iter().filter(|p| p.is_finite()).cloned());

    let ranks = {
        let objs: Vec<&[f64]> = pool.iter().map(|p| p.objectives.as_slice()).collect();
        non_dominated_sort(&objs)
    };
    let mut members: Vec<Particle> = pool
        .into_iter()
        .zip(ranks)
        .filter_map(|(p, r)| (r == 1).then_some(p))
        .collect();

    while members.len() > rep.capacity {
        let objs: Vec<&[f64]> = members.iter().map(|p| p.objectives.as_slice()).collect();
        let dist = crowding_distance(&objs);
        let mut victim = 0;
        for (i, d) in dist.iter().enumerate().skip(1) {
            if *d < dist[victim] {
                victim = i;
            }
        }
        members.remove(victim);
    }
    rep.members = members;
}
