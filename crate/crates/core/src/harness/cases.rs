use serde::Serialize;

use super::dense;
use crate::cocycles::{chern_cocycle, curvature, theta};
use crate::error::{Error, Result};
use crate::lattice::{GaussianRational, LatticeOperator, LaurentPoly};
use crate::perm::{factorial, signed_permutations};

/// Effect of `Ω(zᵐ, zⁿ)` on the basis vector `e_k`: `sign · e_mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub sign: i8,
    pub mode: Option<i64>,
}

impl CaseVerdict {
    pub const ZERO: Self = Self {
        sign: 0,
        mode: None,
    };

    fn signed(sign: i8, mode: i64) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign,
                mode: Some(mode),
            }
        }
    }
}

/// Case table for `Ω(zᵐ, zⁿ) e_k = (zᵐ p₊ zⁿ - zⁿ p₊ zᵐ) p₊ e_k`.
///
/// The listed cases are `k ≤ 0`, both shifts staying positive (cancellation),
/// and exactly one of them leaving the positive modes. The remaining case
/// `k > 0, m+k ≤ 0, n+k ≤ 0` is also zero: both compositions are killed by the
/// inner `p₊`.
pub fn omega_case_classifier(m: i64, n: i64, k: i64) -> CaseVerdict {
    if k <= 0 {
        return CaseVerdict::ZERO;
    }
    match (m + k > 0, n + k > 0) {
        (false, true) => CaseVerdict::signed(1, k + m + n),
        (true, false) => CaseVerdict::signed(-1, k + m + n),
        _ => CaseVerdict::ZERO,
    }
}

fn shift(m: i64, dim: usize) -> LatticeOperator {
    LatticeOperator::from_laurent(&LaurentPoly::z(m, dim))
}

fn verdict_from_image(image: &[(i64, GaussianRational)]) -> Option<CaseVerdict> {
    match image {
        [] => Some(CaseVerdict::ZERO),
        [(mode, c)] if *c == GaussianRational::one() => Some(CaseVerdict::signed(1, *mode)),
        [(mode, c)] if *c == -GaussianRational::one() => Some(CaseVerdict::signed(-1, *mode)),
        _ => None,
    }
}

/// Reads the verdict off the structural curvature operator; `None` if the image
/// of `e_k` is not `±` a single basis vector.
pub fn classify_by_operator(m: i64, n: i64, k: i64) -> Option<CaseVerdict> {
    let image = curvature(&shift(m, 1), &shift(n, 1)).apply(k, &[GaussianRational::one()]);
    let image: Vec<(i64, GaussianRational)> =
        image.into_iter().map(|(t, v)| (t, v[0].clone())).collect();
    verdict_from_image(&image)
}

/// Same verdict from dense matrices of `zᵐ`, `zⁿ` and `p₊` on a window that
/// contains every intermediate mode.
pub fn classify_by_dense_window(m: i64, n: i64, k: i64) -> Option<CaseVerdict> {
    let radius = m.abs() + n.abs() + k.abs() + 1;
    let (zm, zn) = (
        shift(m, 1).dense_window(radius),
        shift(n, 1).dense_window(radius),
    );
    let p = LatticeOperator::projection_plus(1).dense_window(radius);
    let mut e = vec![GaussianRational::zero(); (2 * radius + 1) as usize];
    e[(k + radius) as usize] = GaussianRational::one();
    let chain = |outer: &[Vec<GaussianRational>], inner: &[Vec<GaussianRational>]| {
        dense::mat_vec(
            outer,
            &dense::mat_vec(&p, &dense::mat_vec(inner, &dense::mat_vec(&p, &e))),
        )
    };
    let out = dense::sub_vec(&chain(&zm, &zn), &chain(&zn, &zm));
    let image: Vec<(i64, GaussianRational)> = out
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| (idx as i64 - radius, c))
        .collect();
    verdict_from_image(&image)
}

/// One disagreement in the case table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseMismatch {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub predicate: CaseVerdict,
    pub operator: Option<CaseVerdict>,
    pub dense_window: Option<CaseVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseTableReport {
    pub radius: i64,
    pub checked: usize,
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
    pub mismatches: Vec<CaseMismatch>,
    pub all_agree: bool,
}

/// Three-way comparison of the case predicates over `[-radius, radius]³`.
pub fn case_table(radius: i64) -> CaseTableReport {
    let mut report = CaseTableReport {
        radius,
        checked: 0,
        plus: 0,
        minus: 0,
        zero: 0,
        mismatches: Vec::new(),
        all_agree: true,
    };
    for m in -radius..=radius {
        for n in -radius..=radius {
            let omega = curvature(&shift(m, 1), &shift(n, 1));
            for k in -radius..=radius {
                let predicate = omega_case_classifier(m, n, k);
                let image: Vec<_> = omega
                    .apply(k, &[GaussianRational::one()])
                    .into_iter()
                    .map(|(t, v)| (t, v[0].clone()))
                    .collect();
                let operator = verdict_from_image(&image);
                let dense_window = classify_by_dense_window(m, n, k);
                report.checked += 1;
                match predicate.sign {
                    1 => report.plus += 1,
                    -1 => report.minus += 1,
                    _ => report.zero += 1,
                }
                if operator != Some(predicate) || dense_window != Some(predicate) {
                    report.mismatches.push(CaseMismatch {
                        m,
                        n,
                        k,
                        predicate,
                        operator,
                        dense_window,
                    });
                }
            }
        }
    }
    report.all_agree = report.mismatches.is_empty();
    report
}

/// The two sign predicates for `Ω(zᵐ,zⁿ) Ω(zᵖ,z^q) e_k`, evaluated literally.
fn predicate_plus(m: i64, n: i64, p: i64, q: i64, k: i64) -> bool {
    let s = k + p + q;
    k > 0
        && s > 0
        && ((p + k <= 0 && q + k > 0 && m + s <= 0 && n + s > 0)
            || (p + k > 0 && q + k <= 0 && m + s > 0 && n + s <= 0))
}

fn predicate_minus(m: i64, n: i64, p: i64, q: i64, k: i64) -> bool {
    let s = k + p + q;
    k > 0
        && s > 0
        && ((p + k <= 0 && q + k > 0 && m + s > 0 && n + s <= 0)
            || (p + k > 0 && q + k <= 0 && m + s <= 0 && n + s > 0))
}

/// Integers `k` with `lo ≤ k ≤ hi`, intersected over all constraints.
#[derive(Clone, Copy)]
struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    /// `k > a` and `k ≤ b` style constraints, all finite here.
    fn new(lower_exclusive: &[i64], upper_inclusive: &[i64]) -> Self {
        let lo = lower_exclusive
            .iter()
            .map(|a| a + 1)
            .max()
            .expect("at least one lower bound");
        let hi = *upper_inclusive
            .iter()
            .min()
            .expect("at least one upper bound");
        Self { lo, hi }
    }

    fn count(self) -> u64 {
        (self.hi - self.lo + 1).max(0) as u64
    }
}

fn closed_form_counts(m: i64, n: i64, p: i64, q: i64) -> (u64, u64) {
    let pq = p + q;
    // Each disjunct is an intersection of half-lines in k; the two disjuncts of
    // a predicate are disjoint (p+k ≤ 0 versus p+k > 0).
    let first = |m_pos: bool, n_pos: bool| {
        // p+k ≤ 0, q+k > 0
        let mut lower = vec![0, -pq, -q];
        let mut upper = vec![-p];
        if m_pos {
            lower.push(-m - pq)
        } else {
            upper.push(-m - pq)
        }
        if n_pos {
            lower.push(-n - pq)
        } else {
            upper.push(-n - pq)
        }
        Interval::new(&lower, &upper).count()
    };
    let second = |m_pos: bool, n_pos: bool| {
        // p+k > 0, q+k ≤ 0
        let mut lower = vec![0, -pq, -p];
        let mut upper = vec![-q];
        if m_pos {
            lower.push(-m - pq)
        } else {
            upper.push(-m - pq)
        }
        if n_pos {
            lower.push(-n - pq)
        } else {
            upper.push(-n - pq)
        }
        Interval::new(&lower, &upper).count()
    };
    (
        first(false, true) + second(true, false),
        first(true, false) + second(false, true),
    )
}

/// Window that contains every `k` satisfying either predicate: all bounds are
/// sums of at most three of `±m, ±n, ±p, ±q` shifted by one.
pub fn enumeration_bound(m: i64, n: i64, p: i64, q: i64) -> i64 {
    2 * (m.abs() + n.abs() + p.abs() + q.abs()) + 1
}

/// `(n₁, n₋₁)`: how many `k` give `+e_{k+m+n+p+q}` and `-e_{k+m+n+p+q}`.
/// Computed by interval arithmetic and by enumeration; they must agree.
pub fn count_signs(m: i64, n: i64, p: i64, q: i64) -> Result<(u64, u64)> {
    let closed = closed_form_counts(m, n, p, q);
    let bound = enumeration_bound(m, n, p, q);
    let brute = (-bound..=bound).fold((0, 0), |(a, b), k| {
        (
            a + predicate_plus(m, n, p, q, k) as u64,
            b + predicate_minus(m, n, p, q, k) as u64,
        )
    });
    if closed != brute {
        return Err(Error::InternalMismatch(format!(
            "sign counts at ({m},{n},{p},{q}): interval {closed:?}, enumeration {brute:?}"
        )));
    }
    Ok(closed)
}

/// One row `s` of the antisymmetrized sum for `tr(Ω²)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub permutation: Vec<usize>,
    pub arguments: [i64; 4],
    pub sign: i8,
    pub n1: u64,
    pub n_minus1: u64,
    /// `tr(Ω(z^a, z^b) Ω(z^c, z^e))` computed on the operators.
    pub trace: GaussianRational,
    /// `d (n₁ - n₋₁)` when the degrees sum to zero, else `0`.
    pub predicted: GaussianRational,
}

/// The structural claims made about a permutation table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableClaims {
    pub counts_in_zero_two: bool,
    pub even_rows_have_no_negative_count: bool,
    pub odd_rows_have_no_positive_count: bool,
    /// Trace of the identity row.
    pub base_trace: GaussianRational,
    pub total_positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourCocycleTable {
    pub degrees: [i64; 4],
    pub dim: usize,
    pub rows: Vec<PermutationReport>,
    /// `(1/24) Σ ε(s) trace(s)`.
    pub total: GaussianRational,
    pub rows_match_counts: bool,
    pub claims: TableClaims,
}

pub fn four_cocycle_table(degrees: [i64; 4], dim: usize) -> Result<FourCocycleTable> {
    let ops: Vec<LatticeOperator> = degrees.iter().map(|&m| shift(m, dim)).collect();
    let d = GaussianRational::from_int(dim as i64);
    let mut rows = Vec::with_capacity(24);
    for s in signed_permutations(4) {
        let a = s.apply(&degrees);
        let args = s.apply(&ops);
        let (n1, n_minus1) = count_signs(a[0], a[1], a[2], a[3])?;
        let trace =
            curvature(&args[0], &args[1]).trace_of_product(&curvature(&args[2], &args[3]))?;
        let predicted = if a.iter().sum::<i64>() == 0 {
            &d * &GaussianRational::from_int(n1 as i64 - n_minus1 as i64)
        } else {
            GaussianRational::zero()
        };
        rows.push(PermutationReport {
            permutation: s.images,
            arguments: [a[0], a[1], a[2], a[3]],
            sign: s.sign,
            n1,
            n_minus1,
            trace,
            predicted,
        });
    }
    let total: GaussianRational = rows
        .iter()
        .map(|r| {
            if r.sign < 0 {
                -r.trace.clone()
            } else {
                r.trace.clone()
            }
        })
        .sum::<GaussianRational>()
        * GaussianRational::ratio(1, factorial(4));
    let claims = TableClaims {
        counts_in_zero_two: rows
            .iter()
            .all(|r| matches!(r.n1, 0 | 2) && matches!(r.n_minus1, 0 | 2)),
        even_rows_have_no_negative_count: rows
            .iter()
            .filter(|r| r.sign > 0)
            .all(|r| r.n_minus1 == 0),
        odd_rows_have_no_positive_count: rows.iter().filter(|r| r.sign < 0).all(|r| r.n1 == 0),
        base_trace: rows[0].trace.clone(),
        total_positive: total.real_sign() == Some(1),
    };
    Ok(FourCocycleTable {
        degrees,
        dim,
        rows_match_counts: rows.iter().all(|r| r.trace == r.predicted),
        rows,
        total,
        claims,
    })
}

/// `chern_cocycle(2, ·)` on the shifts, for cross-checking a table total.
pub fn four_cocycle_on_shifts(degrees: [i64; 4], dim: usize) -> GaussianRational {
    let ops: Vec<LatticeOperator> = degrees.iter().map(|&m| shift(m, dim)).collect();
    chern_cocycle(2, &ops)
}

/// `tr[θ_{z^{-m}}, θ_{z^m}]`, the lattice-side reference for the residue formula.
pub fn theta_bracket_trace(m: i64, dim: usize) -> Result<GaussianRational> {
    let (a, b) = (theta(&shift(-m, dim)), theta(&shift(m, dim)));
    a.compose(&b).sub(&b.compose(&a)).trace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_examples() {
        assert_eq!(
            omega_case_classifier(-2, 2, 1),
            CaseVerdict {
                sign: 1,
                mode: Some(1)
            }
        );
        assert_eq!(
            omega_case_classifier(2, -2, 1),
            CaseVerdict {
                sign: -1,
                mode: Some(1)
            }
        );
        for m in -3..=3 {
            assert_eq!(omega_case_classifier(m, 1, 0), CaseVerdict::ZERO);
        }
        // k > 0 with both shifts leaving the positive modes.
        assert_eq!(omega_case_classifier(-5, -4, 2), CaseVerdict::ZERO);
        assert_eq!(classify_by_operator(-5, -4, 2), Some(CaseVerdict::ZERO));
        assert_eq!(
            classify_by_dense_window(2, -2, 1),
            Some(CaseVerdict {
                sign: -1,
                mode: Some(1)
            })
        );
    }

    #[test]
    fn small_case_table_agrees() {
        let r = case_table(3);
        assert!(r.all_agree, "{:?}", r.mismatches);
        assert_eq!(r.checked, 343);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_signs(-2, 2, -3, 3).unwrap(), (2, 0));
        assert_eq!(count_signs(0, 0, 0, 0).unwrap(), (0, 0));
        assert!(count_signs(1, 2, 3, -1).is_ok());
    }

    #[test]
    fn count_closed_form_matches_enumeration() {
        for m in -4..=4 {
            for n in -4..=4 {
                for p in -4..=4 {
                    for q in -4..=4 {
                        count_signs(m, n, p, q).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn table_total_matches_cocycle() {
        for degrees in [[-2, 2, -3, 3], [1, -1, 2, -3], [-1, 1, -2, 2]] {
            let t = four_cocycle_table(degrees, 1).unwrap();
            assert_eq!(t.rows.len(), 24);
            assert!(t.rows_match_counts);
            assert_eq!(t.total, four_cocycle_on_shifts(degrees, 1));
        }
        let t = four_cocycle_table([-2, 2, -3, 3], 2).unwrap();
        assert_eq!(t.claims.base_trace, 4.into());
        assert!(t.claims.counts_in_zero_two);
    }

    #[test]
    fn theta_bracket_is_linear() {
        for m in 1..=4 {
            assert_eq!(theta_bracket_trace(m, 1).unwrap(), m.into());
        }
    }
}
