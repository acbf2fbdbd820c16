//! Formal classical symbols on the circle.
//!
//! A homogeneous partial symbol of degree `j` is stored through its values at
//! `ξ = ±1`: `σ(x, ξ) = plus(x) ξʲ` for `ξ > 0` and `minus(x) (-ξ)ʲ` for `ξ < 0`.
//! A [`FormalSymbol`] keeps the parts of degrees `order, order-1, …` down to a
//! truncation floor; every stored degree is exact.
//!
//! Composition uses `σ(A∘B) ~ Σ_α (-i)^α/α! ∂_ξ^α σ(A) ∂_x^α σ(B)`, with `∂_x z^m = i m z^m`.
//! Under this convention `[σ(D), σ(z)] = σ(z)`, matching `[D, M_z] = M_z` on the lattice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GaussianRational, LaurentPoly, MatrixCoeff};

/// Truncation depth used when none is given.
pub const DEFAULT_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSymbol {
    pub degree: i64,
    #[serde(serialize_with = "serialize_laurent")]
    pub plus: LaurentPoly,
    #[serde(serialize_with = "serialize_laurent")]
    pub minus: LaurentPoly,
}

fn serialize_laurent<S: serde::Serializer>(
    p: &LaurentPoly,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.coeffs().len()))?;
    for (m, c) in p.coeffs() {
        let rows: Vec<Vec<[String; 2]>> = c
            .rows()
            .map(|r| r.iter().map(GaussianRational::to_pair).collect())
            .collect();
        seq.serialize_element(&serde_json::json!({ "m": m, "matrix": rows }))?;
    }
    seq.end()
}

/// Falling factorial `j (j-1) … (j-α+1)`.
fn falling_factorial(j: i64, alpha: u32) -> GaussianRational {
    (0..alpha as i64)
        .map(|t| GaussianRational::from_int(j - t))
        .fold(GaussianRational::one(), |a, b| a * b)
}

fn factorial(n: u32) -> GaussianRational {
    GaussianRational::from_int((1..=n as i64).product())
}

impl PartialSymbol {
    pub fn zero(degree: i64, dim: usize) -> Self {
        Self {
            degree,
            plus: LaurentPoly::zero(dim),
            minus: LaurentPoly::zero(dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    /// `∂_ξ^α`: `(plus, minus)_j ↦ (j⋯(j-α+1) plus, (-1)^α j⋯(j-α+1) minus)_{j-α}`.
    pub fn derivative_xi(&self, alpha: u32) -> Self {
        let ff = falling_factorial(self.degree, alpha);
        let sign = if alpha % 2 == 0 {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        };
        Self {
            degree: self.degree - alpha as i64,
            plus: self.plus.scale(&ff),
            minus: self.minus.scale(&(ff * sign)),
        }
    }

    pub fn derivative_x(&self, alpha: u32) -> Self {
        Self {
            degree: self.degree,
            plus: self.plus.derivative(alpha),
            minus: self.minus.derivative(alpha),
        }
    }

    /// Pointwise product on each half-line; degrees add.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            degree: self.degree + rhs.degree,
            plus: self.plus.mul(&rhs.plus),
            minus: self.minus.mul(&rhs.minus),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            degree: self.degree,
            plus: self.plus.scale(c),
            minus: self.minus.scale(c),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        debug_assert_eq!(self.degree, rhs.degree);
        self.plus = self.plus.add(&rhs.plus);
        self.minus = self.minus.add(&rhs.minus);
    }
}

/// A classical symbol known exactly in degrees `order` down to `order - depth + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalSymbol {
    dim: usize,
    order: i64,
    parts: Vec<PartialSymbol>,
}

impl FormalSymbol {
    pub fn zero(dim: usize, order: i64, depth: usize) -> Self {
        assert!(depth >= 1, "symbol depth must be at least 1");
        Self {
            dim,
            order,
            parts: (0..depth as i64)
                .map(|t| PartialSymbol::zero(order - t, dim))
                .collect(),
        }
    }

    /// Builds a symbol of the given order and depth from arbitrary parts; parts
    /// outside the degree range are rejected, repeated degrees are summed.
    pub fn from_parts(
        dim: usize,
        order: i64,
        depth: usize,
        parts: impl IntoIterator<Item = PartialSymbol>,
    ) -> Result<Self> {
        let mut out = Self::zero(dim, order, depth);
        let floor = out.floor();
        for p in parts {
            if p.plus.dim() != dim || p.minus.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.plus.dim().max(p.minus.dim()),
                });
            }
            let slot = out.slot_mut(p.degree).ok_or_else(|| {
                Error::Document(format!(
                    "part of degree {} outside the range {}..={}",
                    p.degree, floor, order
                ))
            })?;
            slot.add_assign(&p);
        }
        Ok(out)
    }

    fn slot_mut(&mut self, degree: i64) -> Option<&mut PartialSymbol> {
        let idx = usize::try_from(self.order - degree).ok()?;
        self.parts.get_mut(idx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// Lowest stored degree.
    pub fn floor(&self) -> i64 {
        self.order - self.parts.len() as i64 + 1
    }

    pub fn parts(&self) -> &[PartialSymbol] {
        &self.parts
    }

    /// The part of the given degree: zero above the order, `None` below the floor.
    pub fn part(&self, degree: i64) -> Option<PartialSymbol> {
        if degree > self.order {
            return Some(PartialSymbol::zero(degree, self.dim));
        }
        let idx = usize::try_from(self.order - degree).ok()?;
        self.parts.get(idx).cloned()
    }

    pub fn truncate(&self, depth: usize) -> Self {
        assert!(depth >= 1, "symbol depth must be at least 1");
        Self {
            dim: self.dim,
            order: self.order,
            parts: self.parts.iter().take(depth).cloned().collect(),
        }
    }

    /// Re-expresses the symbol with the given order and floor, padding with zeros above.
    /// `None` if that would need degrees below the known floor or drop a nonzero part.
    pub fn reshape(&self, order: i64, floor: i64) -> Option<Self> {
        if floor < self.floor() || order < floor {
            return None;
        }
        if self.parts.iter().any(|p| p.degree > order && !p.is_zero()) {
            return None;
        }
        let parts = (floor..=order)
            .rev()
            .map(|d| self.part(d))
            .collect::<Option<Vec<_>>>()?;
        Some(Self {
            dim: self.dim,
            order,
            parts,
        })
    }

    /// Equality on the degrees both symbols know, treating degrees above an order as zero.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let floor = self.floor().max(other.floor());
        let top = self.order.max(other.order);
        (floor..=top).all(|d| self.part(d) == other.part(d))
    }

    fn combine(&self, rhs: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Self {
        assert_eq!(self.dim, rhs.dim, "symbol dimension mismatch");
        let order = self.order.max(rhs.order);
        let floor = self.floor().max(rhs.floor());
        let parts = (floor..=order)
            .rev()
            .map(|d| {
                let (a, b) = (
                    self.part(d).expect("within range"),
                    rhs.part(d).expect("within range"),
                );
                PartialSymbol {
                    degree: d,
                    plus: f(&a.plus, &b.plus),
                    minus: f(&a.minus, &b.minus),
                }
            })
            .collect();
        Self {
            dim: self.dim,
            order,
            parts,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, LaurentPoly::add)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, LaurentPoly::sub)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            order: self.order,
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(PartialSymbol::is_zero)
    }

    fn map_sides(&self, plus: bool, minus: bool) -> Self {
        Self {
            dim: self.dim,
            order: self.order,
            parts: self
                .parts
                .iter()
                .map(|p| PartialSymbol {
                    degree: p.degree,
                    plus: if plus {
                        p.plus.clone()
                    } else {
                        LaurentPoly::zero(self.dim)
                    },
                    minus: if minus {
                        p.minus.clone()
                    } else {
                        LaurentPoly::zero(self.dim)
                    },
                })
                .collect(),
        }
    }
}

/// `σ(A∘B)` truncated to `depth` (and to what the factors determine exactly).
pub fn star_product(a: &FormalSymbol, b: &FormalSymbol, depth: usize) -> FormalSymbol {
    assert_eq!(a.dim, b.dim, "symbol dimension mismatch");
    assert!(depth >= 1, "symbol depth must be at least 1");
    let order = a.order + b.order;
    let depth = depth.min(a.depth()).min(b.depth());
    let mut out = FormalSymbol::zero(a.dim, order, depth);
    for slot in &mut out.parts {
        let l = slot.degree;
        for pa in &a.parts {
            for pb in &b.parts {
                let Ok(alpha) = u32::try_from(pa.degree + pb.degree - l) else {
                    continue;
                };
                // (-i)^α = i^{-α}
                let coeff = GaussianRational::i_pow(-(alpha as i64))
                    * factorial(alpha).inv().expect("nonzero");
                let term = pa
                    .derivative_xi(alpha)
                    .mul(&pb.derivative_x(alpha))
                    .scale(&coeff);
                slot.add_assign(&term);
            }
        }
    }
    out
}

/// `σ(p₊) ⋆ A`: keeps the `ξ > 0` half.
pub fn symbol_p_plus(a: &FormalSymbol) -> FormalSymbol {
    a.map_sides(true, false)
}

/// `σ(p₋) ⋆ A`: keeps the `ξ < 0` half.
pub fn symbol_p_minus(a: &FormalSymbol) -> FormalSymbol {
    a.map_sides(false, true)
}

/// `res_W A = Σ_{ξ=±1} tr ĉ₀(σ₋₁(·, ξ))`: the `1/2π` of the local formula cancels
/// against the length of the circle on the zero Fourier mode.
pub fn wodzicki_residue(a: &FormalSymbol) -> Result<GaussianRational> {
    let part = a.part(-1).ok_or(Error::DepthInsufficient {
        needed: -1,
        floor: a.floor(),
    })?;
    Ok(part.plus.coeff(0).trace() + part.minus.coeff(0).trace())
}

/// `σ([A, log Δ])` with `σ(log Δ) = 2 log|ξ|`:
/// `-Σ_{α≥1} (-i)^α/α! ∂_ξ^α(2 log|ξ|) ∂_x^α σ(A)`, where
/// `∂_ξ^α (2 log|ξ|) = 2 (-1)^{α-1} (α-1)! ξ^{-α}`. The result is classical of order `ord A - 1`.
pub fn log_laplacian_bracket(a: &FormalSymbol, depth: usize) -> FormalSymbol {
    assert!(depth >= 1, "symbol depth must be at least 1");
    let depth = depth.min(a.depth());
    let mut out = FormalSymbol::zero(a.dim, a.order - 1, depth);
    for slot in &mut out.parts {
        for pa in &a.parts {
            let Ok(alpha) = u32::try_from(pa.degree - slot.degree) else {
                continue;
            };
            if alpha == 0 {
                continue;
            }
            // -(−i)^α/α! · 2(−1)^{α−1}(α−1)! = -2 (−i)^α (−1)^{α−1} / α = 2 i^α / α
            let c =
                GaussianRational::i_pow(alpha as i64) * GaussianRational::ratio(2, alpha as i64);
            // ξ^{-α} is 1 at ξ = 1 and (−1)^α at ξ = −1 in the (−ξ)^j parametrization.
            let minus_sign = if alpha % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            let dx = pa.derivative_x(alpha);
            let term = PartialSymbol {
                degree: slot.degree,
                plus: dx.plus.scale(&c),
                minus: dx.minus.scale(&minus_sign),
            };
            slot.add_assign(&term);
        }
    }
    out
}

fn residue_of_product_with_bracket(a: &FormalSymbol, b: &FormalSymbol) -> Result<GaussianRational> {
    let bracket = log_laplacian_bracket(b, b.depth());
    let reach = (a.order + bracket.order + 2).max(1) as usize;
    wodzicki_residue(&star_product(a, &bracket, reach))
}

/// `tr^Δ[A, B] = -(1/q) res(A [B, log Δ])` with `q = ord Δ = 2`.
pub fn renormalized_bracket_trace(a: &FormalSymbol, b: &FormalSymbol) -> Result<GaussianRational> {
    Ok(residue_of_product_with_bracket(a, b)? * GaussianRational::ratio(-1, 2))
}

/// The normalization `κ` in [`radul_cocycle`].
///
/// Measured against the lattice value `tr[θ_{z^{-m}}, θ_{z^m}] = m` on the shifts
/// (see `harness::calibrate_radul_normalization`), it equals `-1/q = -1/2`, the
/// prefactor of the renormalized-trace bracket formula.
pub fn radul_normalization() -> GaussianRational {
    GaussianRational::ratio(-1, 2)
}

/// `res(σ₊(X) [σ₊(Y), log Δ])` without normalization.
pub fn radul_residue(x: &FormalSymbol, y: &FormalSymbol) -> Result<GaussianRational> {
    residue_of_product_with_bracket(&symbol_p_plus(x), &symbol_p_plus(y))
}

/// `κ · res(σ₊(X) [σ₊(Y), log Δ])`.
pub fn radul_cocycle(x: &FormalSymbol, y: &FormalSymbol) -> Result<GaussianRational> {
    Ok(radul_residue(x, y)? * radul_normalization())
}

/// Degree-0 symbol of a multiplication operator, with zero lower parts down to `depth`.
pub fn symbol_of_multiplication(p: &LaurentPoly, depth: usize) -> FormalSymbol {
    let mut s = FormalSymbol::zero(p.dim(), 0, depth);
    s.parts[0].plus = p.clone();
    s.parts[0].minus = p.clone();
    s
}

/// Symbols of the named built-ins: `P_PLUS`, `P_MINUS`, `D`, `ABS_D`, `DELTA`, plus
/// `ID` and `P_ZERO` (smoothing, hence the zero symbol).
pub fn symbol_of_builtin(name: &str, dim: usize, depth: usize) -> Result<FormalSymbol> {
    let id = LaurentPoly::constant(MatrixCoeff::identity(dim));
    let zero = LaurentPoly::zero(dim);
    let (order, plus, minus) = match name {
        "P_PLUS" => (0, id, zero),
        "P_MINUS" => (0, zero, id),
        "P_ZERO" => (0, zero.clone(), zero),
        "ID" => (0, id.clone(), id),
        "D" => (1, id.clone(), id.neg()),
        "ABS_D" => (1, id.clone(), id),
        "DELTA" => (2, id.clone(), id),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    let mut s = FormalSymbol::zero(dim, order, depth);
    s.parts[0].plus = plus;
    s.parts[0].minus = minus;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mult(m: i64) -> FormalSymbol {
        symbol_of_multiplication(&LaurentPoly::z(m, 1), DEFAULT_DEPTH)
    }

    fn builtin(name: &str) -> FormalSymbol {
        symbol_of_builtin(name, 1, DEFAULT_DEPTH).unwrap()
    }

    #[test]
    fn canonical_commutation() {
        let d = builtin("D");
        let comm = star_product(&d, &mult(1), 6).sub(&star_product(&mult(1), &d, 6));
        assert!(comm.agrees_with(&mult(1)), "{comm:?}");
    }

    #[test]
    fn projections_are_idempotent() {
        let p = builtin("P_PLUS");
        assert!(star_product(&p, &p, 6).agrees_with(&p));
        assert!(symbol_p_plus(&builtin("P_MINUS")).is_zero());
        let a = mult(2).add(&builtin("D"));
        assert!(symbol_p_plus(&a).add(&symbol_p_minus(&a)).agrees_with(&a));
    }

    #[test]
    fn d_squared_is_laplacian() {
        let d = builtin("D");
        assert!(star_product(&d, &d, 6).agrees_with(&builtin("DELTA")));
        let a = builtin("ABS_D");
        assert!(star_product(&a, &a, 6).agrees_with(&builtin("DELTA")));
    }

    #[test]
    fn residue_examples() {
        let one = LaurentPoly::z(0, 1);
        let s = FormalSymbol::from_parts(
            1,
            0,
            3,
            [PartialSymbol {
                degree: -1,
                plus: one.clone(),
                minus: one,
            }],
        )
        .unwrap();
        assert_eq!(wodzicki_residue(&s).unwrap(), 2.into());
        let s = FormalSymbol::from_parts(
            1,
            0,
            3,
            [PartialSymbol {
                degree: -1,
                plus: LaurentPoly::z(3, 1),
                minus: LaurentPoly::zero(1),
            }],
        )
        .unwrap();
        assert_eq!(wodzicki_residue(&s).unwrap(), 0.into());
        assert_eq!(
            wodzicki_residue(&mult(1).truncate(1)),
            Err(Error::DepthInsufficient {
                needed: -1,
                floor: 0
            })
        );
        // Degree -1 above the order is exactly zero.
        let low = FormalSymbol::zero(1, -3, 1);
        assert_eq!(wodzicki_residue(&low).unwrap(), 0.into());
    }

    #[test]
    fn bracket_with_log_laplacian() {
        let constant =
            symbol_of_multiplication(&LaurentPoly::constant(MatrixCoeff::scalar(1, 5.into())), 6);
        assert!(log_laplacian_bracket(&constant, 6).is_zero());
        let b = log_laplacian_bracket(&builtin("D").add(&mult(2)), 6);
        assert_eq!(b.order(), 0);
        // [z^m, log Δ] has leading part -2m z^m ξ^{-1}.
        let lead = log_laplacian_bracket(&mult(3), 6).part(-1).unwrap();
        assert_eq!(lead.plus, LaurentPoly::z(3, 1).scale(&(-6).into()));
        assert_eq!(lead.minus, LaurentPoly::z(3, 1).scale(&6.into()));
    }

    #[test]
    fn renormalized_trace_examples() {
        assert_eq!(
            renormalized_bracket_trace(&builtin("D"), &builtin("ABS_D")).unwrap(),
            0.into()
        );
        assert_eq!(
            renormalized_bracket_trace(&mult(2), &mult(2)).unwrap(),
            0.into()
        );
        let (x, y) = (symbol_p_plus(&mult(-1)), symbol_p_plus(&mult(1)));
        assert_eq!(renormalized_bracket_trace(&x, &y).unwrap(), 1.into());
    }

    #[test]
    fn radul_examples() {
        assert_eq!(radul_cocycle(&mult(2), &mult(2)).unwrap(), 0.into());
        assert_eq!(radul_cocycle(&mult(1), &mult(2)).unwrap(), 0.into());
        for m in 1..=5 {
            assert_eq!(radul_cocycle(&mult(-m), &mult(m)).unwrap(), m.into());
        }
    }

    #[test]
    fn unknown_builtin() {
        assert_eq!(
            symbol_of_builtin("LOG", 1, 2),
            Err(Error::UnknownBuiltin("LOG".into()))
        );
        let p = builtin("P_PLUS");
        assert_eq!(p.parts()[0].plus, LaurentPoly::z(0, 1));
        assert!(p.parts()[0].minus.is_zero());
        assert!(symbol_of_multiplication(&LaurentPoly::z(0, 1), 4).agrees_with(&builtin("ID")));
    }
}
