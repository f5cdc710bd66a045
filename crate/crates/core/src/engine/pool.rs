use std::cmp::Ordering;

use crate::diversity::{lcs_distance_with_inverse, nearest_distances, scores_from_parts, ScoreWeights};
use crate::search::Individual;

use super::{PoolStrategy, Population};

/// Merges `offspring` into the pool and keeps the best `p` of the union.
///
/// Score-based ranking uses each member's distance to its nearest neighbour
/// in the union. Ties fall back to higher objective, then earlier birth
/// generation, then position in the union (incumbents before offspring).
pub fn update_pool(
    pool: &Population,
    offspring: Vec<Individual>,
    weights: ScoreWeights,
    strategy: PoolStrategy,
) -> Population {
    let p = pool.len();
    let total = p + offspring.len();
    let mut union: Vec<Individual> = pool.members().to_vec();
    union.extend(offspring);

    let matrix = extend_distances(pool.distance_matrix(), p, &union);
    let order = rank_union(&union, &matrix, weights, strategy);

    let keep = &order[..p];
    let mut distances = vec![0usize; p * p];
    for (x, &ux) in keep.iter().enumerate() {
        for (y, &uy) in keep.iter().enumerate() {
            distances[x * p + y] = matrix[ux * total + uy];
        }
    }
    let members = keep.iter().map(|&u| union[u].clone()).collect();
    let mut next = Population::from_parts(members, distances);
    next.generation = pool.generation;
    next.stagnation_count = pool.stagnation_count;
    next
}

/// Ordering of the union, best first.
pub fn rank_union(union: &[Individual], matrix: &[usize], weights: ScoreWeights, strategy: PoolStrategy) -> Vec<usize> {
    let total = union.len();
    let tie_break = |a: usize, b: usize| -> Ordering {
        union[b]
            .objective
            .cmp(&union[a].objective)
            .then(union[a].birth_generation.cmp(&union[b].birth_generation))
            .then(a.cmp(&b))
    };
    let mut order: Vec<usize> = (0..total).collect();
    match strategy {
        PoolStrategy::Ovbs => order.sort_by(|&a, &b| tie_break(a, b)),
        PoolStrategy::ScoreBased => {
            let nearest = nearest_distances(matrix, total);
            let objectives: Vec<i64> = union.iter().map(|i| i.objective).collect();
            let scores = scores_from_parts(&objectives, &nearest, weights);
            order.sort_by(|&a, &b| {
                scores[b]
                    .partial_cmp(&scores[a])
                    .expect("scores are finite")
                    .then_with(|| tie_break(a, b))
            });
        }
    }
    order
}

/// Distance matrix of `union`, whose first `p` members have distances `known`.
fn extend_distances(known: &[usize], p: usize, union: &[Individual]) -> Vec<usize> {
    let total = union.len();
    let mut out = vec![0usize; total * total];
    for x in 0..p {
        out[x * total..x * total + p].copy_from_slice(&known[x * p..(x + 1) * p]);
    }
    let mut tails = Vec::new();
    for x in p..total {
        let inv = union[x].perm.inverse();
        for y in 0..x {
            let d = lcs_distance_with_inverse(&inv, union[y].perm.as_slice(), &mut tails);
            out[x * total + y] = d;
            out[y * total + x] = d;
        }
    }
    out
}
