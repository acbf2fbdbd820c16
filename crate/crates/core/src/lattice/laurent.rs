use std::collections::BTreeMap;
use std::fmt;

use super::matrix::MatrixCoeff;
use super::scalar::GaussianRational;

/// A matrix-valued trigonometric polynomial `Σ_m P_m z^m` on the circle, `z = e^{ix}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    coeffs: BTreeMap<i64, MatrixCoeff>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// `z^m ⊗ c`.
    pub fn monomial(m: i64, c: MatrixCoeff) -> Self {
        let mut p = Self::zero(c.dim());
        p.insert(m, c);
        p
    }

    /// `z^m ⊗ Id_d`.
    pub fn z(m: i64, dim: usize) -> Self {
        Self::monomial(m, MatrixCoeff::identity(dim))
    }

    pub fn constant(c: MatrixCoeff) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (i64, MatrixCoeff)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.insert(m, c);
        }
        p
    }

    fn insert(&mut self, m: i64, c: MatrixCoeff) {
        assert_eq!(c.dim(), self.dim, "coefficient dimension mismatch");
        let sum = match self.coeffs.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(m, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, MatrixCoeff> {
        &self.coeffs
    }

    pub fn coeff(&self, m: i64) -> MatrixCoeff {
        self.coeffs
            .get(&m)
            .cloned()
            .unwrap_or_else(|| MatrixCoeff::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |m|` over the support, 0 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.dim, self.coeffs.iter().map(|(m, p)| (*m, p.scale(c))))
    }

    /// Pointwise product on the circle (Fourier convolution, matrix order kept).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (m, a) in &self.coeffs {
            for (n, b) in &rhs.coeffs {
                out.insert(m + n, a.mul(b));
            }
        }
        out
    }

    /// `∂_x^order` with `z^m ↦ (i m)^order z^m`.
    pub fn derivative(&self, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        Self::from_terms(
            self.dim,
            self.coeffs.iter().map(|(m, c)| {
                let factor = GaussianRational::i_pow(order as i64)
                    * GaussianRational::from_int(*m).pow(order);
                (*m, c.scale(&factor))
            }),
        )
    }

    pub fn map(&self, f: impl Fn(&MatrixCoeff) -> MatrixCoeff) -> Self {
        Self::from_terms(self.dim, self.coeffs.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·z^{m}")?;
        }
        Ok(())
    }
}
