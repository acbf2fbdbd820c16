use num_bigint::BigInt;

use super::matrix::MatrixCoeff;
use super::scalar::GaussianRational;

/// Polynomial `Σ cᵢ kⁱ` in the lattice index `k` with matrix coefficients.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty coefficient list and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModePoly {
    coeffs: Vec<MatrixCoeff>,
}

impl ModePoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: MatrixCoeff) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · k`.
    pub fn linear(c: MatrixCoeff) -> Self {
        let d = c.dim();
        Self::from_coeffs(vec![MatrixCoeff::zero(d), c])
    }

    pub fn from_coeffs(mut coeffs: Vec<MatrixCoeff>) -> Self {
        while coeffs.last().is_some_and(MatrixCoeff::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[MatrixCoeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, k: i64, dim: usize) -> MatrixCoeff {
        let k = GaussianRational::from_int(k);
        let mut acc = MatrixCoeff::zero(dim);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(&k).add(c);
        }
        acc
    }

    /// True when every coefficient is traceless, i.e. `k ↦ tr p(k)` is identically zero.
    pub fn is_pointwise_traceless(&self) -> bool {
        self.coeffs.iter().all(|c| c.trace().is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, MatrixCoeff::add)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, MatrixCoeff::sub)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&MatrixCoeff, &MatrixCoeff) -> MatrixCoeff) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f(a, b),
                (Some(a), None) => f(a, &MatrixCoeff::zero(a.dim())),
                (None, Some(b)) => f(&MatrixCoeff::zero(b.dim()), b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    /// Product with the coefficient order preserved (`self` on the left).
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let dim = self.coeffs[0].dim();
        let mut out = vec![MatrixCoeff::zero(dim); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    /// The polynomial `k ↦ p(k + s)`.
    pub fn shift(&self, s: i64) -> Self {
        if s == 0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let dim = self.coeffs[0].dim();
        let n = self.coeffs.len();
        let s = BigInt::from(s);
        let mut out = vec![MatrixCoeff::zero(dim); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            // (k + s)^i = Σ_t C(i, t) s^(i-t) k^t
            let mut binom = BigInt::from(1);
            for t in (0..=i).rev() {
                let weight = &binom * s.pow((i - t) as u32);
                out[t] = out[t].add(&c.scale(&GaussianRational::from_bigint(weight)));
                // C(i, t-1) = C(i, t) * t / (i - t + 1)
                if t > 0 {
                    binom = binom * BigInt::from(t) / BigInt::from(i - t + 1);
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn map(&self, f: impl Fn(&MatrixCoeff) -> MatrixCoeff) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}
