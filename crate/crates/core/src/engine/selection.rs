use rand::seq::index::sample;
use rand::Rng;

use super::Population;

/// Result of one parent-selection event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentSelection {
    /// Pool indices in draw order; the first is the copy parent.
    pub indices: Vec<usize>,
    /// True when no admissible set was built within the retry cap and the
    /// parents were drawn without the distance constraint.
    pub fallback: bool,
    /// Number of times the partial set was discarded and rebuilt.
    pub reconstructions: usize,
}

/// Draws `m` distinct members whose pairwise LCS distances are all at least
/// `beta * diversity(pool)`.
///
/// A set is grown by random admissible draws. When no remaining member is
/// admissible the set is discarded and rebuilt; after `retry_cap` rebuilds the
/// constraint is dropped.
pub fn select_parents<R: Rng + ?Sized>(
    pool: &Population,
    m: usize,
    beta: f64,
    rng: &mut R,
    retry_cap: usize,
) -> ParentSelection {
    let p = pool.len();
    assert!(m >= 2 && m <= p, "parent count {m} outside [2, {p}]");
    let threshold = beta * pool.diversity();

    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    let mut admissible: Vec<usize> = Vec::with_capacity(p);
    for reconstructions in 0..retry_cap {
        chosen.clear();
        chosen.push(rng.gen_range(0..p));
        while chosen.len() < m {
            admissible.clear();
            admissible.extend(
                (0..p).filter(|&x| {
                    !chosen.contains(&x) && chosen.iter().all(|&y| pool.distance(x, y) as f64 >= threshold)
                }),
            );
            if admissible.is_empty() {
                break;
            }
            chosen.push(admissible[rng.gen_range(0..admissible.len())]);
        }
        if chosen.len() == m {
            return ParentSelection {
                indices: chosen,
                fallback: false,
                reconstructions,
            };
        }
    }
    ParentSelection {
        indices: sample(rng, p, m).into_vec(),
        fallback: true,
        reconstructions: retry_cap,
    }
}
