//! Signed permutations for antisymmetrization sums.

use itertools::Itertools;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPermutation {
    /// `images[i] = s(i)`.
    pub images: Vec<usize>,
    /// `ε(s) ∈ {+1, -1}`.
    pub sign: i8,
}

impl SignedPermutation {
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }
}

/// Sign from the inversion count.
pub fn sign_of(images: &[usize]) -> i8 {
    let inversions = images
        .iter()
        .tuple_combinations()
        .filter(|(a, b)| a > b)
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `n!` permutations of `0..n` in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
    (0..n)
        .permutations(n)
        .map(|images| SignedPermutation {
            sign: sign_of(&images),
            images,
        })
        .collect()
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_sum_to_zero() {
        for n in 2..=5 {
            let perms = signed_permutations(n);
            assert_eq!(perms.len() as i64, factorial(n));
            assert_eq!(perms.iter().map(|p| p.sign as i64).sum::<i64>(), 0);
        }
        assert_eq!(signed_permutations(0).len(), 1);
    }

    #[test]
    fn transposition_is_odd() {
        assert_eq!(sign_of(&[1, 0, 2]), -1);
        assert_eq!(sign_of(&[1, 2, 0]), 1);
    }
}
