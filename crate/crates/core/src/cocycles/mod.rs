//! The connection `θ`, its curvature `Ω`, the form calculus around them, and the
//! Chern-Weil cochains `tr(Ωᵏ)` together with the coboundaries used to test them.
//!
//! Conventions (the ones under which `dθ + θ∧θ = Ω` and `dΩ + [θ, Ω] = 0` hold):
//! - `(α∧β)(a₁..a_{p+q}) = 1/(p!q!) Σ_s ε(s) α(a_{s(1..p)}) ∘ β(a_{s(p+1..)})`
//! - `[α, β] = α∧β - (-1)^{pq} β∧α`
//! - `(dα)(a₀..a_p) = Σ_{i<j} (-1)^{i+j} α([a_i, a_j], …)` (trivial coefficients)

mod cochain;
mod forms;

pub use cochain::{
    ce_coboundary, chern_cocycle, chern_terms, hochschild_coboundary, ChernTerm, ScalarCochain,
};
pub use forms::{FormKind, OperatorForm};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{GaussianRational, LatticeOperator};

/// `θ_a = a ∘ p₊`.
pub fn theta(a: &LatticeOperator) -> LatticeOperator {
    a.compose(&LatticeOperator::projection_plus(a.dim()))
}

/// `Ω(a, b) = θ_a θ_b - θ_b θ_a - θ_{[a,b]}`.
pub fn curvature(a: &LatticeOperator, b: &LatticeOperator) -> LatticeOperator {
    let (ta, tb) = (theta(a), theta(b));
    ta.compose(&tb)
        .sub(&tb.compose(&ta))
        .sub(&theta(&a.commutator(b)))
}

/// `s(a, b) = a [p₊, b] p₊ - b [p₊, a] p₊`, the finite-rank operator equal to `Ω(a, b)`.
pub fn smoothing_part(a: &LatticeOperator, b: &LatticeOperator) -> LatticeOperator {
    let p = LatticeOperator::projection_plus(a.dim());
    let half = |x: &LatticeOperator, y: &LatticeOperator| x.compose(&p.commutator(y)).compose(&p);
    half(a, b).sub(&half(b, a))
}

/// Off-diagonal blocks of `a` with respect to `p₊` and `q = 1 - p₊` (so `E₀` sits in the
/// minus block): `(a₊₋, a₋₊) = (p₊ a q, q a p₊)`.
pub fn off_diagonal_blocks(a: &LatticeOperator) -> (LatticeOperator, LatticeOperator) {
    let p = LatticeOperator::projection_plus(a.dim());
    let q = LatticeOperator::identity(a.dim()).sub(&p);
    (p.compose(a).compose(&q), q.compose(a).compose(&p))
}

/// Schwinger cocycle in block form, `tr(a₊₋ b₋₊ - b₊₋ a₋₊)`.
pub fn schwinger_cocycle(a: &LatticeOperator, b: &LatticeOperator) -> Result<GaussianRational> {
    let (a_pm, a_mp) = off_diagonal_blocks(a);
    let (b_pm, b_mp) = off_diagonal_blocks(b);
    a_pm.compose(&b_mp)
        .sub(&b_pm.compose(&a_mp))
        .trace()
        .map_err(|e| Error::BlockNotTraceComputable(e.to_string()))
}

/// Searches the family for an argument tuple on which `c` does not vanish.
///
/// The family must commute pairwise; a hit then certifies that `c` is not a
/// coboundary on any Lie algebra containing the family, since every
/// coboundary vanishes on abelian subalgebras. Skew cochains are searched over
/// increasing index combinations, others over all ordered tuples of distinct
/// members. Returns family indices.
pub fn nonvanishing_witness(
    c: &ScalarCochain,
    family: &[LatticeOperator],
) -> Result<Option<Vec<usize>>> {
    for (i, j) in (0..family.len()).tuple_combinations() {
        if !family[i].commutator(&family[j]).is_zero() {
            return Err(Error::NotCommuting(i, j));
        }
    }
    let k = c.arity();
    let candidates: Box<dyn Iterator<Item = Vec<usize>>> = if c.is_skew() {
        Box::new((0..family.len()).combinations(k))
    } else {
        Box::new((0..family.len()).permutations(k))
    };
    for idx in candidates {
        let args: Vec<LatticeOperator> = idx.iter().map(|&i| family[i].clone()).collect();
        if !c.eval(&args).is_zero() {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{LaurentPoly, MatrixCoeff};

    fn z(m: i64) -> LatticeOperator {
        LatticeOperator::from_laurent(&LaurentPoly::z(m, 1))
    }

    fn projection_onto(modes: std::ops::RangeInclusive<i64>) -> LatticeOperator {
        modes.fold(LatticeOperator::zero(1), |acc, k| {
            acc.add(
                &z(k)
                    .compose(&LatticeOperator::projection_zero(1))
                    .compose(&z(-k)),
            )
        })
    }

    #[test]
    fn theta_examples() {
        let p = LatticeOperator::projection_plus(1);
        assert_eq!(theta(&p), p);
        assert!(theta(&LatticeOperator::zero(1)).is_zero());
        let t = theta(&z(1));
        for k in -3..=3 {
            let image = t.apply(k, &[GaussianRational::one()]);
            assert_eq!(
                image.keys().copied().collect::<Vec<_>>(),
                if k >= 1 { vec![k + 1] } else { vec![] }
            );
        }
    }

    #[test]
    fn curvature_of_opposite_shifts_is_a_projection() {
        assert_eq!(curvature(&z(-3), &z(3)), projection_onto(1..=3));
        assert_eq!(
            curvature(&z(-2), &z(2))
                .apply(1, &[GaussianRational::one()])
                .len(),
            1
        );
        assert!(curvature(&z(2), &z(2)).is_zero());
        assert_eq!(smoothing_part(&z(-3), &z(3)), curvature(&z(-3), &z(3)));
    }

    #[test]
    fn smoothing_part_with_derivative() {
        let d = LatticeOperator::derivative(1);
        for m in -3i64..=3 {
            let s = smoothing_part(&d, &z(m));
            assert_eq!(s, curvature(&d, &z(m)));
            let support = s.finite_rank_support().unwrap();
            if let Some((lo, hi)) = support.source {
                assert!(
                    lo >= 1 - m.abs() && hi <= m.abs(),
                    "m={m} support {support:?}"
                );
            }
        }
        // Only shifts towards the negative modes leave E₊.
        assert!(smoothing_part(&d, &z(2)).is_zero());
        assert!(!smoothing_part(&d, &z(-2)).is_zero());
    }

    #[test]
    fn chern_values_on_shifts() {
        assert_eq!(chern_cocycle(1, &[z(-1), z(1)]), 1.into());
        assert_eq!(chern_cocycle(1, &[z(1), z(2)]), 0.into());
        assert_eq!(chern_cocycle(1, &[z(3), z(3)]), 0.into());
        assert_eq!(chern_cocycle(1, &[z(1), z(-1)]), (-1).into());
    }

    #[test]
    fn chern_with_matrix_coefficients() {
        // chern(1, z^-m ⊗ A, z^m ⊗ B) = m tr(AB)
        let a = MatrixCoeff::unit(2, 0, 1).add(&MatrixCoeff::unit(2, 1, 1));
        let b = MatrixCoeff::unit(2, 1, 0).add(&MatrixCoeff::scalar(2, 3.into()));
        let expected = a.mul(&b).trace();
        for m in 1..=3 {
            let x = LatticeOperator::from_laurent(&LaurentPoly::monomial(-m, a.clone()));
            let y = LatticeOperator::from_laurent(&LaurentPoly::monomial(m, b.clone()));
            assert_eq!(
                chern_cocycle(1, &[x, y]),
                expected.clone() * GaussianRational::from_int(m)
            );
        }
    }

    #[test]
    fn schwinger_examples() {
        assert_eq!(schwinger_cocycle(&z(-1), &z(1)).unwrap(), (-1).into());
        assert_eq!(schwinger_cocycle(&z(2), &z(2)).unwrap(), 0.into());
        assert_eq!(schwinger_cocycle(&z(2), &z(1)).unwrap(), 0.into());
    }

    #[test]
    fn witness_requires_commuting_family() {
        let d = LatticeOperator::derivative(1);
        let err = nonvanishing_witness(&ScalarCochain::chern(1), &[z(1), d]).unwrap_err();
        assert_eq!(err, Error::NotCommuting(0, 1));
        let fam: Vec<_> = (-3..=3).map(z).collect();
        assert_eq!(
            nonvanishing_witness(&ScalarCochain::zero(2), &fam).unwrap(),
            None
        );
        assert_eq!(
            nonvanishing_witness(&ScalarCochain::chern(1), &[z(-1), z(1)]).unwrap(),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn hochschild_of_zero_cochain_vanishes() {
        let c = ScalarCochain::new(0, true, |_| GaussianRational::from_int(5));
        assert!(hochschild_coboundary(&c, &[z(1)]).is_zero());
    }
}
