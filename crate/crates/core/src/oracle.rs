//! Brute-force references for checking the fast paths.
//!
//! Nothing here shares code with the incremental evaluators in
//! [`crate::search`] or the LIS-based distance in [`crate::diversity`]
//! beyond the plain objective.

use thiserror::Error;

use crate::instance::LopInstance;
use crate::search::{apply_insert, evaluate, InsertMove, Permutation, SearchError};

/// Largest dimension [`exact_solve`] accepts.
pub const EXACT_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive search is limited to n <= {EXACT_MAX_N}, got n = {0}")]
    TooLarge(usize),
}

/// Rearranges `v` into the next permutation in lexicographic order. Returns
/// false (leaving `v` sorted ascending) after the last one.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Maximum objective over all `n!` orderings and the lexicographically
/// smallest ordering that attains it.
pub fn exact_solve(inst: &LopInstance) -> Result<(i64, Permutation), OracleError> {
    let n = inst.n();
    if n > EXACT_MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best_value = i64::MIN;
    let mut best_order = order.clone();
    loop {
        let mut value = 0i64;
        for a in 0..n {
            for b in a + 1..n {
                value += inst.weight(order[a], order[b]);
            }
        }
        if value > best_value {
            best_value = value;
            best_order.copy_from_slice(&order);
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    let witness = Permutation::from_vec(best_order).expect("enumeration yields permutations");
    Ok((best_value, witness))
}

/// `f(insert(π, i, j)) - f(π)` by two full evaluations.
pub fn naive_delta(inst: &LopInstance, perm: &Permutation, i: usize, j: usize) -> Result<i64, SearchError> {
    let moved = apply_insert(perm, i, j)?;
    Ok(evaluate(inst, &moved)? - evaluate(inst, perm)?)
}

/// Best improving insert move by evaluating every neighbour from scratch.
/// Ties go to the smallest `(i, j)`.
pub fn naive_best_move(inst: &LopInstance, perm: &Permutation) -> Result<Option<InsertMove>, SearchError> {
    let n = perm.len();
    let mut best: Option<InsertMove> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = naive_delta(inst, perm, i, j)?;
            if d > 0 && best.is_none_or(|b| d > b.delta) {
                best = Some(InsertMove {
                    from: i,
                    to: j,
                    delta: d,
                });
            }
        }
    }
    Ok(best)
}

/// Textbook `O(n^2)` longest-common-subsequence table.
pub fn lcs_length_dp(a: &[usize], b: &[usize]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (k, &y) in b.iter().enumerate() {
            cur[k + 1] = if x == y { prev[k] + 1 } else { cur[k].max(prev[k + 1]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `n - LCS` through the DP table.
pub fn lcs_distance_dp(a: &Permutation, b: &Permutation) -> usize {
    a.len() - lcs_length_dp(a.as_slice(), b.as_slice())
}
