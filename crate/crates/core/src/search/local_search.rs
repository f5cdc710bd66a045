use super::{check_dims, evaluate_unchecked, scan_order, Individual, InsertMove, Permutation, SearchError};
use crate::instance::LopInstance;

#[derive(Debug, Clone)]
pub struct LocalSearchOutcome {
    pub individual: Individual,
    pub moves: usize,
    /// True when the move cap stopped the descent before a local optimum.
    pub budget_exhausted: bool,
}

/// Steepest-ascent local search in the insert neighborhood.
///
/// Applies the best improving move until none is left, or until `budget`
/// moves have been made.
pub fn local_search(
    inst: &LopInstance,
    start: Permutation,
    budget: Option<usize>,
    birth_generation: u64,
) -> Result<LocalSearchOutcome, SearchError> {
    local_search_observed(inst, start, budget, birth_generation, |_, _| {})
}

/// [`local_search`] with a callback invoked after every applied move with the
/// move and the new objective value.
pub fn local_search_observed<F>(
    inst: &LopInstance,
    start: Permutation,
    budget: Option<usize>,
    birth_generation: u64,
    mut observe: F,
) -> Result<LocalSearchOutcome, SearchError>
where
    F: FnMut(&InsertMove, i64),
{
    check_dims(inst, &start)?;
    let mut perm = start;
    let mut objective = evaluate_unchecked(inst, perm.as_slice());
    let mut moves = 0usize;
    let mut evaluated = 0u64;
    let mut budget_exhausted = false;
    loop {
        if budget.is_some_and(|cap| moves >= cap) {
            budget_exhausted = scan_order(inst, perm.as_slice(), &mut evaluated).is_some();
            break;
        }
        let Some(mv) = scan_order(inst, perm.as_slice(), &mut evaluated) else {
            break;
        };
        perm.insert_in_place(mv.from, mv.to);
        objective += mv.delta;
        moves += 1;
        observe(&mv, objective);
    }
    debug_assert_eq!(objective, evaluate_unchecked(inst, perm.as_slice()));
    Ok(LocalSearchOutcome {
        individual: Individual {
            perm,
            objective,
            birth_generation,
        },
        moves,
        budget_exhausted,
    })
}
