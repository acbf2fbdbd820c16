use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::laurent::LaurentPoly;
use super::matrix::{self, MatrixCoeff};
use super::poly::ModePoly;
use super::profile::DiagonalProfile;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// A quasi-banded operator on `ℓ²(ℤ) ⊗ ℂᵈ`.
///
/// Diagonal `j` holds the blocks mapping mode `k` to mode `k + j`, as a profile
/// in the source index `k`: `A (e_k ⊗ v) = Σ_j e_{k+j} ⊗ A_j(k) v`.
/// Absent diagonals are zero and zero profiles are never stored, so the derived
/// equality is equality of operators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeOperator {
    dim: usize,
    diagonals: BTreeMap<i64, DiagonalProfile>,
}

/// Mode intervals and rank data of a finite-rank operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupport {
    /// Smallest interval of source modes outside of which the operator vanishes.
    pub source: Option<(i64, i64)>,
    /// Smallest interval of target modes containing the range.
    pub target: Option<(i64, i64)>,
    /// `d · min(|source|, |target|)`.
    pub rank_bound: usize,
}

impl LatticeOperator {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            dim,
            diagonals: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(
            0,
            DiagonalProfile::constant(MatrixCoeff::identity(dim)),
            dim,
        )
    }

    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        Self::identity(dim).scale(&c)
    }

    fn from_diagonal(j: i64, profile: Option<DiagonalProfile>, dim: usize) -> Self {
        let mut op = Self::zero(dim);
        if let Some(p) = profile {
            op.diagonals.insert(j, p);
        }
        op
    }

    /// Builds an operator from raw diagonals, canonicalizing as it goes.
    pub fn from_diagonals(
        dim: usize,
        diagonals: impl IntoIterator<Item = (i64, DiagonalProfile)>,
    ) -> Self {
        let mut op = Self::zero(dim);
        for (j, p) in diagonals {
            op.accumulate(j, p);
        }
        op
    }

    /// Multiplication by a matrix-valued Laurent polynomial.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let dim = p.dim();
        Self::from_diagonals(
            dim,
            p.coeffs()
                .iter()
                .filter_map(|(m, c)| DiagonalProfile::constant(c.clone()).map(|prof| (*m, prof))),
        )
    }

    /// Diagonal operator with the given profile on the main diagonal.
    pub fn diagonal(profile: Option<DiagonalProfile>, dim: usize) -> Self {
        Self::from_diagonal(0, profile, dim)
    }

    /// Projection onto `E₊ = span{e_k : k ≥ 1}`.
    pub fn projection_plus(dim: usize) -> Self {
        let id = MatrixCoeff::identity(dim);
        Self::diagonal(
            DiagonalProfile::new(
                ModePoly::zero(),
                ModePoly::constant(id),
                BTreeMap::new(),
                0,
                1,
                dim,
            ),
            dim,
        )
    }

    /// Projection onto `E₋ = span{e_k : k ≤ -1}`.
    pub fn projection_minus(dim: usize) -> Self {
        let id = MatrixCoeff::identity(dim);
        Self::diagonal(
            DiagonalProfile::new(
                ModePoly::constant(id),
                ModePoly::zero(),
                BTreeMap::new(),
                -1,
                0,
                dim,
            ),
            dim,
        )
    }

    /// Projection onto the constants `E₀ = span{e_0}`.
    pub fn projection_zero(dim: usize) -> Self {
        let mut w = BTreeMap::new();
        w.insert(0, MatrixCoeff::identity(dim));
        Self::diagonal(DiagonalProfile::finite(w, dim), dim)
    }

    /// `D = -i d/dx`, acting as `k` on mode `k`.
    pub fn derivative(dim: usize) -> Self {
        Self::diagonal(
            DiagonalProfile::polynomial(ModePoly::linear(MatrixCoeff::identity(dim)), dim),
            dim,
        )
    }

    /// `|D|`, acting as `|k|` on mode `k`.
    pub fn abs_derivative(dim: usize) -> Self {
        let id = MatrixCoeff::identity(dim);
        Self::diagonal(
            DiagonalProfile::new(
                ModePoly::linear(id.neg()),
                ModePoly::linear(id),
                BTreeMap::new(),
                0,
                1,
                dim,
            ),
            dim,
        )
    }

    /// `Δ = D²`.
    pub fn laplacian(dim: usize) -> Self {
        let d = Self::derivative(dim);
        d.compose(&d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonals(&self) -> &BTreeMap<i64, DiagonalProfile> {
        &self.diagonals
    }

    pub fn is_zero(&self) -> bool {
        self.diagonals.is_empty()
    }

    /// Block `⟨e_target, A e_source⟩`.
    pub fn entry(&self, target: i64, source: i64) -> MatrixCoeff {
        match self.diagonals.get(&(target - source)) {
            Some(p) => p.entry(source, self.dim),
            None => MatrixCoeff::zero(self.dim),
        }
    }

    fn accumulate(&mut self, j: i64, p: DiagonalProfile) {
        let merged = match self.diagonals.remove(&j) {
            Some(old) => DiagonalProfile::add(&old, &p, self.dim),
            None => Some(p),
        };
        if let Some(m) = merged {
            self.diagonals.insert(j, m);
        }
    }

    fn check_dim(&self, rhs: &Self) {
        assert_eq!(
            self.dim, rhs.dim,
            "lattice operators of different dimension"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_dim(rhs);
        let mut out = self.clone();
        for (j, p) in &rhs.diagonals {
            out.accumulate(*j, p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            diagonals: self
                .diagonals
                .iter()
                .filter_map(|(j, p)| p.scale(c, self.dim).map(|q| (*j, q)))
                .collect(),
        }
    }

    /// Left multiplication of every block by a constant matrix, `(M ⊗ 1) ∘ A`.
    pub fn left_mul_matrix(&self, m: &MatrixCoeff) -> Self {
        Self {
            dim: self.dim,
            diagonals: self
                .diagonals
                .iter()
                .filter_map(|(j, p)| p.map_blocks(|b| m.mul(b), self.dim).map(|q| (*j, q)))
                .collect(),
        }
    }

    /// `self ∘ rhs`. Diagonal `j` of the product is `Σ_{j₁+j₂=j} A_{j₁}(k + j₂) B_{j₂}(k)`.
    pub fn compose(&self, rhs: &Self) -> Self {
        self.check_dim(rhs);
        let mut out = Self::zero(self.dim);
        for (j1, a) in &self.diagonals {
            for (j2, b) in &rhs.diagonals {
                let shifted = a.shift(*j2, self.dim);
                if let Some(p) = DiagonalProfile::mul(&shifted, b, self.dim) {
                    out.accumulate(j1 + j2, p);
                }
            }
        }
        out
    }

    /// `[self, rhs] = self ∘ rhs - rhs ∘ self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// `true` when every diagonal has vanishing polynomial tails.
    pub fn is_finite_rank(&self) -> bool {
        self.diagonals.values().all(DiagonalProfile::is_finite)
    }

    /// Support data when the operator has finite rank, `None` otherwise.
    pub fn finite_rank_support(&self) -> Option<FiniteSupport> {
        if !self.is_finite_rank() {
            return None;
        }
        let mut sources = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for (j, p) in &self.diagonals {
            for k in p.window().keys() {
                sources.insert(*k);
                targets.insert(k + j);
            }
        }
        let span = |s: &BTreeSet<i64>| Some((*s.first()?, *s.last()?));
        let len = |iv: Option<(i64, i64)>| iv.map_or(0, |(a, b)| (b - a + 1) as usize);
        let (source, target) = (span(&sources), span(&targets));
        Some(FiniteSupport {
            source,
            target,
            rank_bound: self.dim * len(source).min(len(target)),
        })
    }

    /// Nonzero blocks `(target, source, block)` of a finite-rank operator, sorted.
    pub fn finite_entries(&self) -> Option<Vec<(i64, i64, MatrixCoeff)>> {
        if !self.is_finite_rank() {
            return None;
        }
        let mut out: Vec<_> = self
            .diagonals
            .iter()
            .flat_map(|(j, p)| p.window().iter().map(move |(k, m)| (k + j, *k, m.clone())))
            .collect();
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Some(out)
    }

    /// Exact rank of a finite-rank operator.
    pub fn rank(&self) -> Option<usize> {
        let support = self.finite_rank_support()?;
        let (Some((s0, s1)), Some((t0, t1))) = (support.source, support.target) else {
            return Some(0);
        };
        let d = self.dim;
        let rows: Vec<Vec<GaussianRational>> = (t0..=t1)
            .flat_map(|t| {
                let blocks: Vec<MatrixCoeff> = (s0..=s1).map(|s| self.entry(t, s)).collect();
                (0..d).map(move |r| {
                    blocks
                        .iter()
                        .flat_map(|b| (0..d).map(|c| b.get(r, c).clone()).collect::<Vec<_>>())
                        .collect()
                })
            })
            .collect();
        Some(matrix::rank(&rows))
    }

    /// Exact trace `Σ_k tr A_0(k)`.
    ///
    /// Requires the per-mode scalar trace of the main diagonal to vanish outside a
    /// finite window, i.e. both tail polynomials pointwise traceless.
    pub fn trace(&self) -> Result<GaussianRational> {
        let Some(p) = self.diagonals.get(&0) else {
            return Ok(GaussianRational::zero());
        };
        if !p.left().is_pointwise_traceless() || !p.right().is_pointwise_traceless() {
            return Err(Error::NotTraceComputable(
                "per-mode trace of the main diagonal is not eventually zero".into(),
            ));
        }
        Ok(p.window().values().map(MatrixCoeff::trace).sum())
    }

    /// `tr(self ∘ rhs)` without forming the product when either factor has finite rank.
    pub fn trace_of_product(&self, rhs: &Self) -> Result<GaussianRational> {
        self.check_dim(rhs);
        // tr(AB) = Σ tr(A(k, l) B(l, k)) over the nonzero blocks of the finite factor.
        if let Some(blocks) = rhs.finite_entries() {
            return Ok(blocks
                .iter()
                .map(|(l, k, b)| self.entry(*k, *l).mul(b).trace())
                .sum());
        }
        if let Some(blocks) = self.finite_entries() {
            return Ok(blocks
                .iter()
                .map(|(k, l, a)| a.mul(&rhs.entry(*l, *k)).trace())
                .sum());
        }
        self.compose(rhs).trace()
    }

    /// `A (e_k ⊗ v)` as a finitely supported map from modes to vectors.
    pub fn apply(&self, k: i64, v: &[GaussianRational]) -> BTreeMap<i64, Vec<GaussianRational>> {
        self.diagonals
            .iter()
            .filter_map(|(j, p)| {
                let w = p.entry(k, self.dim).apply(v);
                w.iter().any(|x| !x.is_zero()).then_some((k + j, w))
            })
            .collect()
    }

    /// Restriction to modes `-n..=n`, a `(2n+1)d` square matrix. Row/column index
    /// `(mode + n) * d + component`.
    pub fn dense_window(&self, n: i64) -> Vec<Vec<GaussianRational>> {
        assert!(n >= 0, "window radius must be non-negative");
        let d = self.dim;
        let size = (2 * n + 1) as usize * d;
        let mut out = vec![vec![GaussianRational::zero(); size]; size];
        for src in -n..=n {
            for (j, p) in &self.diagonals {
                let tgt = src + j;
                if tgt.abs() > n {
                    continue;
                }
                let block = p.entry(src, d);
                for r in 0..d {
                    for c in 0..d {
                        out[(tgt + n) as usize * d + r][(src + n) as usize * d + c] =
                            block.get(r, c).clone();
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for LatticeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeOperator")
            .field("dim", &self.dim)
            .field("diagonals", &self.diagonals)
            .finish()
    }
}
