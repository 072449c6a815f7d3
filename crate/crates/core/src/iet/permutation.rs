use serde::Serialize;

use crate::{Error, Result};

/// A permutation of `{1..n}` in one-line image notation: `image[i-1] = tau(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

/// Combinatorial conditions on a permutation.
///
/// `fully_split` is stored as the conjunction of `split` and the two extra
/// endpoint conditions, so `fully_split` implies `split` here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationClass {
    pub irreducible: bool,
    pub split: bool,
    pub fully_split: bool,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n < 2 {
            return Err(Error::Invalid(format!("permutation needs n >= 2 entries, got {n}")));
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::Invalid(format!("permutation entry {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Invalid(format!("permutation entry {v} repeated")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `tau(i)` for one-indexed `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    pub fn classify(&self) -> PermutationClass {
        let n = self.len();
        let tau = |i: usize| self.apply(i);
        let inv = self.inverse();
        // tau({1..j}) == {1..j} iff max(tau(1..=j)) == j
        let mut running_max = 0;
        let irreducible = (1..n).all(|j| {
            running_max = running_max.max(tau(j));
            running_max != j
        });
        let split = (1..n).all(|j| tau(j + 1) != tau(j) + 1);
        let fully_split = split && tau(1) != tau(n) + 1 && inv.apply(1) != inv.apply(n) + 1;
        PermutationClass { irreducible, split, fully_split }
    }
}
