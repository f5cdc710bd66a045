//! Multi-parent order-preserving recombination.
//!
//! The offspring starts as a copy of the first parent. For every further
//! parent, a fresh set of `n / m` positions is drawn and the elements sitting
//! there are rearranged to follow their relative order in that parent. With
//! two parents this is order-based crossover on `n / 2` positions.

use rand::Rng;
use thiserror::Error;

use crate::search::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecombinationError {
    #[error("recombination needs at least two parents, got {0}")]
    TooFewParents(usize),
    #[error("parents have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("expected {expected} position sets, got {found}")]
    PositionSetCount { expected: usize, found: usize },
    #[error("position {0} is out of range or used twice")]
    BadPosition(usize),
}

/// Positions reordered per non-copy parent.
pub fn positions_per_parent(n: usize, m: usize) -> usize {
    n / m
}

fn check_parents(parents: &[&Permutation]) -> Result<usize, RecombinationError> {
    if parents.len() < 2 {
        return Err(RecombinationError::TooFewParents(parents.len()));
    }
    let n = parents[0].len();
    if let Some(bad) = parents.iter().find(|p| p.len() != n) {
        return Err(RecombinationError::LengthMismatch(n, bad.len()));
    }
    Ok(n)
}

/// Reorders the elements at `positions` (sorted ascending) to follow their
/// order in the permutation whose inverse is `rank`.
fn reorder(order: &mut [usize], positions: &mut [usize], rank: &[usize], scratch: &mut Vec<usize>) {
    positions.sort_unstable();
    scratch.clear();
    scratch.extend(positions.iter().map(|&k| order[k]));
    scratch.sort_unstable_by_key(|&e| rank[e]);
    for (&k, &e) in positions.iter().zip(scratch.iter()) {
        order[k] = e;
    }
}

/// Recombines `parents` with random disjoint position sets.
pub fn recombine_mpc<R: Rng + ?Sized>(
    parents: &[&Permutation],
    rng: &mut R,
) -> Result<Permutation, RecombinationError> {
    recombine_mpc_traced(parents, rng).map(|(child, _)| child)
}

/// [`recombine_mpc`], also returning the sorted position set used for each
/// non-copy parent.
pub fn recombine_mpc_traced<R: Rng + ?Sized>(
    parents: &[&Permutation],
    rng: &mut R,
) -> Result<(Permutation, Vec<Vec<usize>>), RecombinationError> {
    let n = check_parents(parents)?;
    let k = positions_per_parent(n, parents.len());
    let mut free: Vec<usize> = (0..n).collect();
    let mut sets = Vec::with_capacity(parents.len() - 1);
    for _ in 1..parents.len() {
        // partial Fisher-Yates: the first k slots become a uniform k-subset
        for t in 0..k {
            let r = rng.gen_range(t..free.len());
            free.swap(t, r);
        }
        sets.push(free.drain(..k).collect::<Vec<_>>());
    }
    let child = apply_position_sets(parents, &mut sets);
    Ok((child, sets))
}

/// Recombination with caller-chosen position sets, one per non-copy parent.
/// Sets must be pairwise disjoint and in range.
pub fn recombine_with_positions(
    parents: &[&Permutation],
    positions: &[Vec<usize>],
) -> Result<Permutation, RecombinationError> {
    let n = check_parents(parents)?;
    if positions.len() != parents.len() - 1 {
        return Err(RecombinationError::PositionSetCount {
            expected: parents.len() - 1,
            found: positions.len(),
        });
    }
    let mut used = vec![false; n];
    for &k in positions.iter().flatten() {
        if k >= n || used[k] {
            return Err(RecombinationError::BadPosition(k));
        }
        used[k] = true;
    }
    let mut sets = positions.to_vec();
    Ok(apply_position_sets(parents, &mut sets))
}

fn apply_position_sets(parents: &[&Permutation], sets: &mut [Vec<usize>]) -> Permutation {
    let mut order = parents[0].as_slice().to_vec();
    let mut scratch = Vec::new();
    for (parent, set) in parents[1..].iter().zip(sets.iter_mut()) {
        let rank = parent.inverse();
        reorder(&mut order, set, &rank, &mut scratch);
    }
    Permutation::from_vec_unchecked(order)
}
