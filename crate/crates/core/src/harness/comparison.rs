use serde::Serialize;

use super::cases::theta_bracket_trace;
use crate::cocycles::{chern_cocycle, schwinger_cocycle};
use crate::error::{Error, Result};
use crate::lattice::{GaussianRational, LatticeOperator, LaurentPoly};
use crate::symbols::{radul_cocycle, radul_residue, symbol_of_multiplication, DEFAULT_DEPTH};

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub m: i64,
    pub chern: GaussianRational,
    pub schwinger: GaussianRational,
    pub radul: GaussianRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchwingerComparison {
    pub dim: usize,
    pub rows: Vec<ComparisonRow>,
    /// `schwinger / chern`, when the same for every row.
    pub schwinger_over_chern: Option<GaussianRational>,
    /// `radul / chern`, when the same for every row.
    pub radul_over_chern: Option<GaussianRational>,
    pub chern_nonzero: bool,
    /// `chern(m) = m · chern(1)` on every row.
    pub chern_linear: bool,
    pub proportional: bool,
}

fn common_ratio(
    rows: &[ComparisonRow],
    pick: impl Fn(&ComparisonRow) -> &GaussianRational,
) -> Option<GaussianRational> {
    let mut ratios = rows.iter().map(|r| r.chern.inv().map(|c| pick(r) * &c));
    let first = ratios.next()??;
    ratios.all(|r| r.as_ref() == Some(&first)).then_some(first)
}

/// `chern_cocycle(1)`, `schwinger_cocycle` and `radul_cocycle` on `(z^{-m}, z^m)`.
pub fn schwinger_comparison(
    ms: impl IntoIterator<Item = i64>,
    dim: usize,
) -> Result<SchwingerComparison> {
    let mut rows = Vec::new();
    for m in ms {
        let (lo, hi) = (LaurentPoly::z(-m, dim), LaurentPoly::z(m, dim));
        let (a, b) = (
            LatticeOperator::from_laurent(&lo),
            LatticeOperator::from_laurent(&hi),
        );
        let radul = radul_cocycle(
            &symbol_of_multiplication(&lo, DEFAULT_DEPTH),
            &symbol_of_multiplication(&hi, DEFAULT_DEPTH),
        )?;
        rows.push(ComparisonRow {
            m,
            chern: chern_cocycle(1, &[a.clone(), b.clone()]),
            schwinger: schwinger_cocycle(&a, &b)?,
            radul,
        });
    }
    let schwinger_over_chern = common_ratio(&rows, |r| &r.schwinger);
    let radul_over_chern = common_ratio(&rows, |r| &r.radul);
    let chern_nonzero = rows.iter().all(|r| !r.chern.is_zero());
    let unit = rows.iter().find_map(|r| {
        r.chern
            .inv()
            .map(|c| (&r.chern * &GaussianRational::ratio(1, r.m), c))
    });
    let chern_linear = match unit {
        Some((c1, _)) => rows
            .iter()
            .all(|r| r.chern == &c1 * &GaussianRational::from_int(r.m)),
        None => false,
    };
    Ok(SchwingerComparison {
        dim,
        proportional: chern_nonzero && schwinger_over_chern.is_some() && radul_over_chern.is_some(),
        rows,
        schwinger_over_chern,
        radul_over_chern,
        chern_nonzero,
        chern_linear,
    })
}

/// Measures `κ` with `κ · res(σ₊(z^{-m}) [σ₊(z^m), log Δ]) = tr[θ_{z^{-m}}, θ_{z^m}]`,
/// requiring the same value for every `m`.
pub fn calibrate_radul_normalization(
    ms: impl IntoIterator<Item = i64>,
) -> Result<GaussianRational> {
    let mut kappa: Option<GaussianRational> = None;
    for m in ms {
        let residue = radul_residue(
            &symbol_of_multiplication(&LaurentPoly::z(-m, 1), DEFAULT_DEPTH),
            &symbol_of_multiplication(&LaurentPoly::z(m, 1), DEFAULT_DEPTH),
        )?;
        let inv = residue
            .inv()
            .ok_or_else(|| Error::InternalMismatch(format!("zero residue at m = {m}")))?;
        let value = theta_bracket_trace(m, 1)? * inv;
        match &kappa {
            Some(k) if *k != value => {
                return Err(Error::InternalMismatch(format!(
                    "normalization {value} at m = {m}, {k} before"
                )))
            }
            _ => kappa = Some(value),
        }
    }
    kappa.ok_or_else(|| Error::InternalMismatch("no calibration points".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::radul_normalization;

    #[test]
    fn constants_on_shifts() {
        let c = schwinger_comparison(1..=5, 1).unwrap();
        assert!(c.proportional && c.chern_linear && c.chern_nonzero);
        assert_eq!(c.rows[0].chern, 1.into());
        assert_eq!(c.rows[0].schwinger, (-1).into());
        assert_eq!(c.schwinger_over_chern, Some((-1).into()));
        assert_eq!(c.radul_over_chern, Some(1.into()));
    }

    #[test]
    fn calibration_matches_the_built_in_constant() {
        assert_eq!(
            calibrate_radul_normalization(1..=5).unwrap(),
            radul_normalization()
        );
    }
}
