//! Piecewise profiles along one generalized diagonal.
//!
//! A profile assigns a `d × d` block to every lattice index `k`. It agrees with
//! one polynomial for `k ≤ left_bound`, with another for `k ≥ right_bound`, and
//! is given by an explicit finite window in between (absent keys are zero).
//!
//! The canonical form makes structural equality coincide with equality of the
//! profiles as functions on ℤ:
//! - `left_bound = a - 1` where `a` is the first index deviating from the left polynomial,
//! - `right_bound = b + 1` where `b` is the last index deviating from the right polynomial,
//! - the window holds exactly the nonzero entries strictly between the bounds,
//! - a profile equal to one polynomial everywhere uses bounds `(0, 1)`.
//!
//! The bounds may cross (`left_bound ≥ right_bound`) when both polynomials agree on
//! an overlap; evaluation then prefers the left polynomial, which is the same value.

use std::collections::BTreeMap;

use super::matrix::MatrixCoeff;
use super::poly::ModePoly;
use super::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalProfile {
    left: ModePoly,
    right: ModePoly,
    window: BTreeMap<i64, MatrixCoeff>,
    left_bound: i64,
    right_bound: i64,
}

impl DiagonalProfile {
    /// Raw constructor; returns the canonical form or `None` for the zero profile.
    pub fn new(
        left: ModePoly,
        right: ModePoly,
        window: BTreeMap<i64, MatrixCoeff>,
        left_bound: i64,
        right_bound: i64,
        dim: usize,
    ) -> Option<Self> {
        assert!(
            window.keys().all(|&k| left_bound < k && k < right_bound),
            "window keys must lie strictly between the bounds"
        );
        Self {
            left,
            right,
            window,
            left_bound,
            right_bound,
        }
        .canonical(dim)
    }

    pub fn polynomial(p: ModePoly, dim: usize) -> Option<Self> {
        Self::new(p.clone(), p, BTreeMap::new(), 0, 1, dim)
    }

    pub fn constant(c: MatrixCoeff) -> Option<Self> {
        let dim = c.dim();
        Self::polynomial(ModePoly::constant(c), dim)
    }

    /// Profile supported on finitely many indices.
    pub fn finite(entries: BTreeMap<i64, MatrixCoeff>, dim: usize) -> Option<Self> {
        let lo = entries.keys().next().copied().unwrap_or(0) - 1;
        let hi = entries.keys().next_back().copied().unwrap_or(0) + 1;
        Self::new(ModePoly::zero(), ModePoly::zero(), entries, lo, hi, dim)
    }

    pub fn left(&self) -> &ModePoly {
        &self.left
    }

    pub fn right(&self) -> &ModePoly {
        &self.right
    }

    pub fn window(&self) -> &BTreeMap<i64, MatrixCoeff> {
        &self.window
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.left_bound, self.right_bound)
    }

    /// True when both polynomial tails vanish, i.e. the profile has finite support.
    pub fn is_finite(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn entry(&self, k: i64, dim: usize) -> MatrixCoeff {
        if k <= self.left_bound {
            self.left.eval(k, dim)
        } else if k >= self.right_bound {
            self.right.eval(k, dim)
        } else {
            self.window
                .get(&k)
                .cloned()
                .unwrap_or_else(|| MatrixCoeff::zero(dim))
        }
    }

    fn max_span(&self) -> i64 {
        let deg = self
            .left
            .degree()
            .max(self.right.degree())
            .map_or(0, |d| d as i64);
        deg + 1
    }

    fn canonical(self, dim: usize) -> Option<Self> {
        let span = self.max_span();
        let (lb, rb) = (self.left_bound, self.right_bound);

        // If the two polynomials differ they differ somewhere among any `span`
        // consecutive indices, so these scans are exhaustive.
        let first_off_left = ((lb + 1)..=(rb.max(lb + 1) + span - 1))
            .find(|&k| self.entry(k, dim) != self.left.eval(k, dim));
        let last_off_right = ((lb.min(rb - 1) - span + 1)..=(rb - 1))
            .rev()
            .find(|&k| self.entry(k, dim) != self.right.eval(k, dim));

        match (first_off_left, last_off_right) {
            (None, None) => {
                debug_assert_eq!(self.left, self.right);
                if self.left.is_zero() {
                    None
                } else {
                    Some(Self {
                        right: self.left.clone(),
                        left: self.left,
                        window: BTreeMap::new(),
                        left_bound: 0,
                        right_bound: 1,
                    })
                }
            }
            (Some(a), Some(b)) => {
                let (left_bound, right_bound) = (a - 1, b + 1);
                let window = ((left_bound + 1)..right_bound)
                    .filter_map(|k| {
                        let e = self.entry(k, dim);
                        (!e.is_zero()).then_some((k, e))
                    })
                    .collect();
                Some(Self {
                    left: self.left,
                    right: self.right,
                    window,
                    left_bound,
                    right_bound,
                })
            }
            _ => unreachable!("a profile deviating from one tail polynomial deviates from both"),
        }
    }

    /// The profile `k ↦ P(k + s)`.
    pub fn shift(&self, s: i64, dim: usize) -> Self {
        if s == 0 {
            return self.clone();
        }
        Self {
            left: self.left.shift(s),
            right: self.right.shift(s),
            window: self
                .window
                .iter()
                .map(|(k, m)| (k - s, m.clone()))
                .collect(),
            left_bound: self.left_bound - s,
            right_bound: self.right_bound - s,
        }
        .canonical(dim)
        .expect("shifting preserves nonzero profiles")
    }

    /// Pointwise combination of two profiles, `f` applied to tails and entries alike.
    fn combine(
        a: &Self,
        b: &Self,
        dim: usize,
        poly_op: impl Fn(&ModePoly, &ModePoly) -> ModePoly,
        entry_op: impl Fn(&MatrixCoeff, &MatrixCoeff) -> MatrixCoeff,
    ) -> Option<Self> {
        let lb = a.left_bound.min(b.left_bound);
        let rb = a.right_bound.max(b.right_bound);
        let left = poly_op(&a.left, &b.left);
        let right = poly_op(&a.right, &b.right);
        let (left_bound, right_bound) = if lb < rb { (lb, rb) } else { (lb, lb + 1) };
        let window = ((left_bound + 1)..right_bound)
            .filter_map(|k| {
                let e = entry_op(&a.entry(k, dim), &b.entry(k, dim));
                (!e.is_zero()).then_some((k, e))
            })
            .collect();
        // k ≤ lb lies in both left regions and k ≥ rb in both right regions.
        let raw = Self {
            left,
            right,
            window,
            left_bound,
            right_bound,
        };
        raw.canonical(dim)
    }

    pub fn add(a: &Self, b: &Self, dim: usize) -> Option<Self> {
        Self::combine(a, b, dim, ModePoly::add, MatrixCoeff::add)
    }

    pub fn mul(a: &Self, b: &Self, dim: usize) -> Option<Self> {
        Self::combine(a, b, dim, ModePoly::mul, MatrixCoeff::mul)
    }

    pub fn scale(&self, c: &GaussianRational, dim: usize) -> Option<Self> {
        Self {
            left: self.left.scale(c),
            right: self.right.scale(c),
            window: self.window.iter().map(|(k, m)| (*k, m.scale(c))).collect(),
            left_bound: self.left_bound,
            right_bound: self.right_bound,
        }
        .canonical(dim)
    }

    pub fn map_blocks(&self, f: impl Fn(&MatrixCoeff) -> MatrixCoeff, dim: usize) -> Option<Self> {
        Self {
            left: self.left.map(&f),
            right: self.right.map(&f),
            window: self.window.iter().map(|(k, m)| (*k, f(m))).collect(),
            left_bound: self.left_bound,
            right_bound: self.right_bound,
        }
        .canonical(dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> MatrixCoeff {
        MatrixCoeff::scalar(1, n.into())
    }

    fn abs_k() -> DiagonalProfile {
        DiagonalProfile::new(
            ModePoly::linear(s(-1)),
            ModePoly::linear(s(1)),
            BTreeMap::new(),
            0,
            1,
            1,
        )
        .unwrap()
    }

    #[test]
    fn abs_profile_evaluates_to_abs() {
        let p = abs_k();
        for k in -5..=5 {
            assert_eq!(p.entry(k, 1), s(k.abs()));
        }
        assert_eq!(p.bounds(), (0, 0));
    }

    #[test]
    fn canonical_form_is_representation_independent() {
        let mut w = BTreeMap::new();
        w.insert(0, s(0));
        w.insert(1, s(1));
        w.insert(2, s(2));
        let a = DiagonalProfile::new(
            ModePoly::linear(s(-1)),
            ModePoly::linear(s(1)),
            BTreeMap::new(),
            0,
            1,
            1,
        );
        let w: BTreeMap<_, _> = w.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let b = DiagonalProfile::new(ModePoly::linear(s(-1)), ModePoly::linear(s(1)), w, -1, 3, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn indicator_has_empty_window() {
        let p = DiagonalProfile::new(
            ModePoly::zero(),
            ModePoly::constant(s(1)),
            BTreeMap::new(),
            0,
            1,
            1,
        )
        .unwrap();
        assert!(p.window().is_empty());
        assert_eq!(p.bounds(), (0, 1));
        let q = p.shift(-2, 1);
        assert_eq!(q.bounds(), (2, 3));
        assert_eq!(q.entry(3, 1), s(1));
        assert_eq!(q.entry(2, 1), s(0));
    }

    #[test]
    fn products_and_sums_agree_pointwise() {
        let a = abs_k();
        let ind = DiagonalProfile::new(
            ModePoly::zero(),
            ModePoly::constant(s(1)),
            BTreeMap::new(),
            0,
            1,
            1,
        )
        .unwrap();
        let prod = DiagonalProfile::mul(&a, &ind, 1).unwrap();
        let sum = DiagonalProfile::add(&a, &ind.scale(&(-3).into(), 1).unwrap(), 1).unwrap();
        for k in -6..=6 {
            assert_eq!(prod.entry(k, 1), s(if k >= 1 { k } else { 0 }));
            assert_eq!(sum.entry(k, 1), s(k.abs() - if k >= 1 { 3 } else { 0 }));
        }
        let neg = a.scale(&(-1).into(), 1).unwrap();
        assert!(DiagonalProfile::add(&a, &neg, 1).is_none());
    }

    #[test]
    fn constant_polynomial_is_not_finite() {
        assert!(!DiagonalProfile::constant(s(2)).unwrap().is_finite());
        assert!(DiagonalProfile::constant(s(0)).is_none());
        let mut w = BTreeMap::new();
        w.insert(4, s(7));
        let f = DiagonalProfile::finite(w, 1).unwrap();
        assert!(f.is_finite());
        assert_eq!(f.bounds(), (3, 5));
    }
}
