//! Permutations, the LOP objective, and the insert neighborhood.

mod local_search;
mod permutation;

pub use local_search::{local_search, local_search_observed, LocalSearchOutcome};
pub use permutation::Permutation;

use thiserror::Error;

use crate::instance::LopInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("permutation length {perm} does not match instance dimension {instance}")]
    DimensionMismatch { instance: usize, perm: usize },
    #[error("position {position} out of range for length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("insert move needs two distinct positions, got {0} twice")]
    SamePosition(usize),
    #[error("sequence is not a permutation of 0..n")]
    NotAPermutation,
}

/// A solution together with its cached objective value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub perm: Permutation,
    pub objective: i64,
    /// Generation in which the individual entered the population.
    pub birth_generation: u64,
}

impl Individual {
    pub fn new(inst: &LopInstance, perm: Permutation, birth_generation: u64) -> Result<Self, SearchError> {
        let objective = evaluate(inst, &perm)?;
        Ok(Individual {
            perm,
            objective,
            birth_generation,
        })
    }
}

/// An insert move: take the element at position `from` and reinsert it at `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertMove {
    pub from: usize,
    pub to: usize,
    pub delta: i64,
}

fn check_dims(inst: &LopInstance, perm: &Permutation) -> Result<(), SearchError> {
    if inst.n() != perm.len() {
        return Err(SearchError::DimensionMismatch {
            instance: inst.n(),
            perm: perm.len(),
        });
    }
    Ok(())
}

fn check_move(len: usize, i: usize, j: usize) -> Result<(), SearchError> {
    for position in [i, j] {
        if position >= len {
            return Err(SearchError::PositionOutOfRange { position, len });
        }
    }
    if i == j {
        return Err(SearchError::SamePosition(i));
    }
    Ok(())
}

/// Sum of `C[π_a][π_b]` over all position pairs `a < b`.
pub fn evaluate(inst: &LopInstance, perm: &Permutation) -> Result<i64, SearchError> {
    check_dims(inst, perm)?;
    Ok(evaluate_unchecked(inst, perm.as_slice()))
}

pub(crate) fn evaluate_unchecked(inst: &LopInstance, order: &[usize]) -> i64 {
    let mut total = 0i64;
    for (k, &a) in order.iter().enumerate() {
        let row = inst.row(a);
        for &b in &order[k + 1..] {
            total += row[b];
        }
    }
    total
}

/// Moves the element at position `i` to position `j`, shifting the elements
/// in between by one.
pub fn apply_insert(perm: &Permutation, i: usize, j: usize) -> Result<Permutation, SearchError> {
    check_move(perm.len(), i, j)?;
    let mut out = perm.clone();
    out.insert_in_place(i, j);
    Ok(out)
}

/// Objective change of `apply_insert(perm, i, j)`, in `O(|i - j|)`.
pub fn delta(inst: &LopInstance, perm: &Permutation, i: usize, j: usize) -> Result<i64, SearchError> {
    check_dims(inst, perm)?;
    check_move(perm.len(), i, j)?;
    let order = perm.as_slice();
    let moved = order[i];
    let mut d = 0i64;
    if i < j {
        // `moved` now follows every element in (i, j].
        for &h in &order[i + 1..=j] {
            d += inst.weight(h, moved) - inst.weight(moved, h);
        }
    } else {
        // `moved` now precedes every element in [j, i).
        for &h in &order[j..i] {
            d += inst.weight(moved, h) - inst.weight(h, moved);
        }
    }
    Ok(d)
}

/// Best insert move, or `None` if no move improves the objective.
///
/// Every ordered pair `(i, j)`, `i != j`, is evaluated once by accumulating
/// the gain outward from `i`, so the whole scan is `O(n^2)`. Ties on the
/// gain go to the lexicographically smallest `(i, j)`.
pub fn scan_best_move(inst: &LopInstance, perm: &Permutation) -> Result<Option<InsertMove>, SearchError> {
    check_dims(inst, perm)?;
    Ok(scan_order(inst, perm.as_slice(), &mut 0))
}

/// Like [`scan_best_move`], also reporting how many moves were evaluated.
pub fn scan_best_move_counted(
    inst: &LopInstance,
    perm: &Permutation,
) -> Result<(Option<InsertMove>, u64), SearchError> {
    check_dims(inst, perm)?;
    let mut evaluated = 0;
    let best = scan_order(inst, perm.as_slice(), &mut evaluated);
    Ok((best, evaluated))
}

pub(crate) fn scan_order(inst: &LopInstance, order: &[usize], evaluated: &mut u64) -> Option<InsertMove> {
    let n = order.len();
    let mut best: Option<InsertMove> = None;
    let mut consider = |from: usize, to: usize, d: i64| {
        if d <= 0 {
            return;
        }
        let better = match best {
            None => true,
            Some(b) => d > b.delta || (d == b.delta && (from, to) < (b.from, b.to)),
        };
        if better {
            best = Some(InsertMove { from, to, delta: d });
        }
    };
    for i in 0..n {
        let skew = inst.skew_row(order[i]);
        let mut d = 0i64;
        for j in (0..i).rev() {
            d += skew[order[j]];
            consider(i, j, d);
        }
        d = 0;
        for j in i + 1..n {
            d -= skew[order[j]];
            consider(i, j, d);
        }
        *evaluated += (n - 1) as u64;
    }
    best
}
