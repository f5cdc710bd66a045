use std::time::Duration;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diversity::{mean_pairwise, pairwise_distances, DiversityError};
use crate::instance::LopInstance;
use crate::search::{local_search, Individual, Permutation};

use super::SolverConfig;

/// The working pool together with its cached pairwise LCS distances.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<Individual>,
    distances: Vec<usize>,
    pub generation: u64,
    pub stagnation_count: u32,
}

impl Population {
    pub fn from_members(members: Vec<Individual>) -> Result<Self, DiversityError> {
        if members.len() < 2 {
            return Err(DiversityError::PoolTooSmall {
                needed: 2,
                found: members.len(),
            });
        }
        let n = members[0].perm.len();
        if let Some(bad) = members.iter().find(|i| i.perm.len() != n) {
            return Err(DiversityError::LengthMismatch(n, bad.perm.len()));
        }
        let perms: Vec<&Permutation> = members.iter().map(|m| &m.perm).collect();
        let distances = pairwise_distances(&perms);
        Ok(Population {
            members,
            distances,
            generation: 0,
            stagnation_count: 0,
        })
    }

    pub(crate) fn from_parts(members: Vec<Individual>, distances: Vec<usize>) -> Self {
        debug_assert_eq!(distances.len(), members.len() * members.len());
        Population {
            members,
            distances,
            generation: 0,
            stagnation_count: 0,
        }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.distances[x * self.members.len() + y]
    }

    pub(crate) fn distance_matrix(&self) -> &[usize] {
        &self.distances
    }

    /// Mean pairwise LCS distance.
    pub fn diversity(&self) -> f64 {
        mean_pairwise(&self.distances, self.members.len())
    }

    /// Exact sum of member objectives; with a fixed pool size this stands in
    /// for the average.
    pub fn objective_sum(&self) -> i128 {
        self.members.iter().map(|m| m.objective as i128).sum()
    }

    pub fn average_objective(&self) -> f64 {
        self.objective_sum() as f64 / self.members.len() as f64
    }

    pub fn best_member(&self) -> &Individual {
        self.members
            .iter()
            .reduce(|a, b| if b.objective > a.objective { b } else { a })
            .expect("population is never empty")
    }
}

/// Incumbent best solution of a run.
#[derive(Debug, Clone)]
pub struct BestTracker {
    pub best: Individual,
    pub time_to_best: Duration,
    pub generation_of_best: u64,
}

impl BestTracker {
    pub fn new(best: Individual, elapsed: Duration, generation: u64) -> Self {
        BestTracker {
            best,
            time_to_best: elapsed,
            generation_of_best: generation,
        }
    }

    /// Replaces the incumbent if `candidate` is strictly better.
    pub fn offer(&mut self, candidate: &Individual, elapsed: Duration, generation: u64) -> bool {
        if candidate.objective > self.best.objective {
            self.best = candidate.clone();
            self.time_to_best = elapsed;
            self.generation_of_best = generation;
            true
        } else {
            false
        }
    }
}

/// `count` random permutations, each driven to a local optimum. Every
/// individual gets its own stream seeded from `rng`, so the result is the same
/// with or without `parallel`.
pub fn fresh_individuals<R: RngCore + ?Sized>(
    inst: &LopInstance,
    count: usize,
    birth_generation: u64,
    rng: &mut R,
    parallel: bool,
) -> Vec<Individual> {
    let seeds: Vec<u64> = (0..count).map(|_| rng.next_u64()).collect();
    let make = |&seed: &u64| {
        let mut local = ChaCha8Rng::seed_from_u64(seed);
        let start = Permutation::random(inst.n(), &mut local);
        local_search(inst, start, None, birth_generation)
            .expect("dimensions match by construction")
            .individual
    };
    if parallel {
        seeds.par_iter().map(make).collect()
    } else {
        seeds.iter().map(make).collect()
    }
}

/// `p` locally optimal random solutions.
pub fn init_population<R: RngCore + ?Sized>(inst: &LopInstance, cfg: &SolverConfig, rng: &mut R) -> Population {
    let members = fresh_individuals(inst, cfg.population_size, 0, rng, cfg.parallel);
    Population::from_members(members).expect("validated config has p >= 2")
}
