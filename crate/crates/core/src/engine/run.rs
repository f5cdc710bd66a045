use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diversity::ScoreWeights;
use crate::instance::LopInstance;
use crate::search::{local_search, Individual, Permutation};

use super::population::fresh_individuals;
use super::{
    init_population, recombine_mpc, select_parents, update_pool, BestTracker, ConfigError, GenerationRecord,
    Population, RunTrace, SolverConfig,
};

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub best: BestTracker,
    pub trace: RunTrace,
    pub generations: u64,
    pub restarts: u64,
    pub selection_fallbacks: u64,
    pub final_population: Population,
}

/// One offspring: parents drawn from `pool`, recombined, then locally optimized.
struct Offspring {
    individual: Individual,
    fallback: bool,
}

fn breed(inst: &LopInstance, pool: &Population, cfg: &SolverConfig, seed: u64, generation: u64) -> Offspring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = cfg.beta.sample(&mut rng);
    let selection = select_parents(pool, cfg.parent_count, beta, &mut rng, cfg.selection_retry_cap);
    let parents: Vec<&Permutation> = selection.indices.iter().map(|&k| &pool.members()[k].perm).collect();
    let child = recombine_mpc(&parents, &mut rng).expect("pool members share one length");
    let individual = local_search(inst, child, None, generation)
        .expect("dimensions match by construction")
        .individual;
    Offspring {
        individual,
        fallback: selection.fallback,
    }
}

fn should_stop(cfg: &SolverConfig, generation: u64, elapsed: Duration) -> bool {
    cfg.stop.max_generations.is_some_and(|max| generation >= max) || cfg.stop.time_limit.is_some_and(|t| elapsed >= t)
}

/// Runs the memetic search until the stop condition fires.
///
/// Every random decision derives from `cfg.seed`; the outcome is a pure
/// function of `(inst, cfg)` apart from the wall-clock fields.
pub fn run(inst: &LopInstance, cfg: &SolverConfig) -> Result<RunOutcome, ConfigError> {
    cfg.validate()?;
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut population = init_population(inst, cfg, &mut rng);
    let mut tracker = BestTracker::new(population.best_member().clone(), clock.elapsed(), 0);
    let mut last_sum = population.objective_sum();
    let mut restarts = 0u64;
    let mut total_fallbacks = 0u64;
    let mut trace = RunTrace::default();
    trace
        .records
        .push(snapshot(&population, &tracker, restarts, 0, clock.elapsed()));

    while !should_stop(cfg, population.generation, clock.elapsed()) {
        let generation = population.generation + 1;
        let seeds: Vec<u64> = (0..cfg.offspring_count).map(|_| rng.next_u64()).collect();
        let offspring: Vec<Offspring> = if cfg.parallel {
            seeds
                .par_iter()
                .map(|&s| breed(inst, &population, cfg, s, generation))
                .collect()
        } else {
            seeds
                .iter()
                .map(|&s| breed(inst, &population, cfg, s, generation))
                .collect()
        };

        let mut fallbacks = 0u64;
        let mut children = Vec::with_capacity(offspring.len());
        for o in offspring {
            fallbacks += o.fallback as u64;
            tracker.offer(&o.individual, clock.elapsed(), generation);
            children.push(o.individual);
        }
        total_fallbacks += fallbacks;

        let alpha = cfg.alpha.sample(&mut rng);
        let weights = ScoreWeights::new(alpha).expect("alpha interval validated");
        population = update_pool(&population, children, weights, cfg.pool_strategy);
        population.generation = generation;

        let sum = population.objective_sum();
        if sum == last_sum {
            population.stagnation_count += 1;
        } else {
            population.stagnation_count = 0;
        }
        last_sum = sum;

        if population.stagnation_count >= cfg.stagnation_limit {
            population = restart(inst, cfg, &tracker, generation, &mut rng);
            for member in &population.members()[1..] {
                tracker.offer(member, clock.elapsed(), generation);
            }
            last_sum = population.objective_sum();
            restarts += 1;
        }

        trace
            .records
            .push(snapshot(&population, &tracker, restarts, fallbacks, clock.elapsed()));
    }

    Ok(RunOutcome {
        best: tracker,
        generations: population.generation,
        trace,
        restarts,
        selection_fallbacks: total_fallbacks,
        final_population: population,
    })
}

/// Fresh population around the incumbent: `{s*}` plus `p - 1` new local optima.
fn restart(
    inst: &LopInstance,
    cfg: &SolverConfig,
    tracker: &BestTracker,
    generation: u64,
    rng: &mut ChaCha8Rng,
) -> Population {
    let mut members = Vec::with_capacity(cfg.population_size);
    members.push(tracker.best.clone());
    members.extend(fresh_individuals(
        inst,
        cfg.population_size - 1,
        generation,
        rng,
        cfg.parallel,
    ));
    let mut population = Population::from_members(members).expect("p >= 2");
    population.generation = generation;
    population.stagnation_count = 0;
    population
}

fn snapshot(
    population: &Population,
    tracker: &BestTracker,
    restarts: u64,
    fallbacks: u64,
    elapsed: Duration,
) -> GenerationRecord {
    GenerationRecord {
        generation: population.generation,
        best_objective: tracker.best.objective,
        average_objective: population.average_objective(),
        diversity: population.diversity(),
        stagnation: population.stagnation_count,
        restarts,
        selection_fallbacks: fallbacks,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
    }
}
