//! Distances between permutations and the quality-and-distance score used
//! for pool updating.

use thiserror::Error;

use crate::search::{Individual, Permutation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiversityError {
    #[error("permutations have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("pool needs at least {needed} members, has {found}")]
    PoolTooSmall { needed: usize, found: usize },
    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
}

/// Weight of the quality term in the score; `1 - alpha` goes to distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreWeights {
    alpha: f64,
}

impl ScoreWeights {
    pub fn new(alpha: f64) -> Result<Self, DiversityError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(DiversityError::InvalidAlpha(alpha));
        }
        Ok(ScoreWeights { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `n - LCS(a, b)`.
///
/// Relabelling `b` by positions in `a` turns common subsequences into
/// increasing subsequences, so this runs in `O(n log n)` by patience sorting.
pub fn lcs_distance(a: &Permutation, b: &Permutation) -> Result<usize, DiversityError> {
    if a.len() != b.len() {
        return Err(DiversityError::LengthMismatch(a.len(), b.len()));
    }
    let pos_in_a = a.inverse();
    Ok(a.len() - lis_length(b.as_slice().iter().map(|&e| pos_in_a[e])))
}

pub(crate) fn lcs_distance_with_inverse(pos_in_a: &[usize], b: &[usize], tails: &mut Vec<usize>) -> usize {
    b.len() - lis_length_with(b.iter().map(|&e| pos_in_a[e]), tails)
}

fn lis_length<I: Iterator<Item = usize>>(seq: I) -> usize {
    lis_length_with(seq, &mut Vec::new())
}

fn lis_length_with<I: Iterator<Item = usize>>(seq: I, tails: &mut Vec<usize>) -> usize {
    tails.clear();
    for x in seq {
        let k = tails.partition_point(|&t| t < x);
        if k == tails.len() {
            tails.push(x);
        } else {
            tails[k] = x;
        }
    }
    tails.len()
}

/// Symmetric matrix of pairwise LCS distances, row-major `len x len`.
pub fn pairwise_distances(perms: &[&Permutation]) -> Vec<usize> {
    let p = perms.len();
    let mut out = vec![0usize; p * p];
    let mut tails = Vec::new();
    for x in 0..p {
        let inv = perms[x].inverse();
        for y in x + 1..p {
            let d = lcs_distance_with_inverse(&inv, perms[y].as_slice(), &mut tails);
            out[x * p + y] = d;
            out[y * p + x] = d;
        }
    }
    out
}

/// Minimum distance from `s` to the pool members, skipping the member at
/// `self_index`. Copies of `s` at other indices count as distance 0.
pub fn distance_to_population(
    s: &Permutation,
    pool: &[Individual],
    self_index: Option<usize>,
) -> Result<usize, DiversityError> {
    let mut best: Option<usize> = None;
    let inv = s.inverse();
    let mut tails = Vec::new();
    for (k, member) in pool.iter().enumerate() {
        if Some(k) == self_index {
            continue;
        }
        if member.perm.len() != s.len() {
            return Err(DiversityError::LengthMismatch(s.len(), member.perm.len()));
        }
        let d = lcs_distance_with_inverse(&inv, member.perm.as_slice(), &mut tails);
        best = Some(best.map_or(d, |b| b.min(d)));
    }
    best.ok_or(DiversityError::PoolTooSmall {
        needed: 2,
        found: pool.len(),
    })
}

/// Mean pairwise distance over all `p (p - 1) / 2` pairs.
pub fn population_diversity(pool: &[Individual]) -> Result<f64, DiversityError> {
    check_pool(pool)?;
    let perms: Vec<&Permutation> = pool.iter().map(|i| &i.perm).collect();
    Ok(mean_pairwise(&pairwise_distances(&perms), pool.len()))
}

pub(crate) fn mean_pairwise(matrix: &[usize], p: usize) -> f64 {
    let mut sum = 0u64;
    for x in 0..p {
        for y in x + 1..p {
            sum += matrix[x * p + y] as u64;
        }
    }
    let pairs = (p * (p - 1) / 2) as f64;
    sum as f64 / pairs
}

/// Per-row minimum of a distance matrix, ignoring the diagonal.
pub(crate) fn nearest_distances(matrix: &[usize], p: usize) -> Vec<usize> {
    (0..p)
        .map(|x| (0..p).filter(|&y| y != x).map(|y| matrix[x * p + y]).min().unwrap_or(0))
        .collect()
}

fn check_pool(pool: &[Individual]) -> Result<(), DiversityError> {
    if pool.len() < 2 {
        return Err(DiversityError::PoolTooSmall {
            needed: 2,
            found: pool.len(),
        });
    }
    let n = pool[0].perm.len();
    if let Some(bad) = pool.iter().find(|i| i.perm.len() != n) {
        return Err(DiversityError::LengthMismatch(n, bad.perm.len()));
    }
    Ok(())
}

/// Maps `values` to `(y - min) / (max - min + 1)`, which lies in `[0, 1)`.
pub fn normalize(values: &[i64]) -> Vec<f64> {
    let (Some(&lo), Some(&hi)) = (values.iter().min(), values.iter().max()) else {
        return Vec::new();
    };
    let denom = (hi as i128 - lo as i128 + 1) as f64;
    values
        .iter()
        .map(|&y| (y as i128 - lo as i128) as f64 / denom)
        .collect()
}

/// `alpha * norm(objective) + (1 - alpha) * norm(distance)` per member.
pub fn scores_from_parts(objectives: &[i64], distances: &[usize], weights: ScoreWeights) -> Vec<f64> {
    debug_assert_eq!(objectives.len(), distances.len());
    let quality = normalize(objectives);
    let dist: Vec<i64> = distances.iter().map(|&d| d as i64).collect();
    let spread = normalize(&dist);
    let alpha = weights.alpha;
    quality
        .iter()
        .zip(&spread)
        .map(|(q, d)| alpha * q + (1.0 - alpha) * d)
        .collect()
}

/// Score of every pool member against the rest of the pool.
pub fn score_population(pool: &[Individual], weights: ScoreWeights) -> Result<Vec<f64>, DiversityError> {
    check_pool(pool)?;
    let perms: Vec<&Permutation> = pool.iter().map(|i| &i.perm).collect();
    let matrix = pairwise_distances(&perms);
    let nearest = nearest_distances(&matrix, pool.len());
    let objectives: Vec<i64> = pool.iter().map(|i| i.objective).collect();
    Ok(scores_from_parts(&objectives, &nearest, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(order: &[usize], objective: i64) -> Individual {
        Individual {
            perm: Permutation::from_one_based(order).unwrap(),
            objective,
            birth_generation: 0,
        }
    }

    #[test]
    fn distance_basics() {
        let a = Permutation::from_one_based(&[1, 2, 3, 4]).unwrap();
        assert_eq!(lcs_distance(&a, &a).unwrap(), 0);
        assert_eq!(lcs_distance(&a, &a.reversed()).unwrap(), 3);
        let b = Permutation::from_one_based(&[2, 1, 3, 4]).unwrap();
        assert_eq!(lcs_distance(&a, &b).unwrap(), 1);
        assert!(lcs_distance(&a, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn clone_elsewhere_gives_zero() {
        let pool = vec![ind(&[1, 2, 3], 0), ind(&[3, 2, 1], 0), ind(&[1, 2, 3], 0)];
        assert_eq!(distance_to_population(&pool[0].perm, &pool, Some(0)).unwrap(), 0);
        assert_eq!(distance_to_population(&pool[1].perm, &pool, Some(1)).unwrap(), 2);
    }

    #[test]
    fn reverse_pair_distance() {
        let s = Permutation::identity(10);
        let pool = vec![
            Individual {
                perm: s.clone(),
                objective: 0,
                birth_generation: 0,
            },
            Individual {
                perm: s.reversed(),
                objective: 0,
                birth_generation: 0,
            },
        ];
        assert_eq!(distance_to_population(&s, &pool, Some(0)).unwrap(), 9);
        assert_eq!(population_diversity(&pool).unwrap(), 9.0);
    }

    #[test]
    fn lone_member_has_no_neighbour() {
        let pool = vec![ind(&[1, 2], 0)];
        assert!(distance_to_population(&pool[0].perm, &pool, Some(0)).is_err());
        assert!(population_diversity(&pool).is_err());
        assert!(score_population(&pool, ScoreWeights::new(0.5).unwrap()).is_err());
    }

    #[test]
    fn identical_pool_has_zero_diversity_and_scores() {
        let pool = vec![ind(&[2, 1, 3], 5); 4];
        assert_eq!(population_diversity(&pool).unwrap(), 0.0);
        let scores = score_population(&pool, ScoreWeights::new(0.3).unwrap()).unwrap();
        assert!(scores.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn normalization_bounds() {
        let v = normalize(&[3, 7, 5]);
        assert_eq!(v, vec![0.0, 4.0 / 5.0, 2.0 / 5.0]);
        assert_eq!(normalize(&[-4, -4]), vec![0.0, 0.0]);
        assert!(normalize(&[]).is_empty());
    }

    #[test]
    fn alpha_is_validated() {
        assert!(ScoreWeights::new(-0.1).is_err());
        assert!(ScoreWeights::new(1.1).is_err());
        assert!(ScoreWeights::new(f64::NAN).is_err());
        assert_eq!(ScoreWeights::new(1.0).unwrap().alpha(), 1.0);
    }
}
