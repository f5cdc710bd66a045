use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::SearchError;

/// An ordering of the elements `0..n`. Position `k` holds the element placed
/// `k`-th. Labels and positions are 0-based in the API; [`fmt::Display`] and
/// [`Permutation::to_one_based`] produce the conventional 1-based form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Permutation(order)
    }

    /// Validates that `order` is a bijection on `0..order.len()`.
    pub fn from_vec(order: Vec<usize>) -> Result<Self, SearchError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &e in &order {
            if e >= n || seen[e] {
                return Err(SearchError::NotAPermutation);
            }
            seen[e] = true;
        }
        Ok(Permutation(order))
    }

    pub fn from_one_based(order: &[usize]) -> Result<Self, SearchError> {
        if order.contains(&0) {
            return Err(SearchError::NotAPermutation);
        }
        Self::from_vec(order.iter().map(|&e| e - 1).collect())
    }

    /// Caller guarantees `order` is a bijection.
    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Self::from_vec(order.clone()).is_ok());
        Permutation(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|e| e + 1).collect()
    }

    /// `inverse()[e]` is the position of element `e`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (k, &e) in self.0.iter().enumerate() {
            pos[e] = k;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub(crate) fn insert_in_place(&mut self, from: usize, to: usize) {
        if from < to {
            self.0[from..=to].rotate_left(1);
        } else {
            self.0[to..=from].rotate_right(1);
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", e + 1)?;
        }
        Ok(())
    }
}
