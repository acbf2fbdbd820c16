use std::fmt;

use serde::Serialize;

use super::scalar::GaussianRational;

/// A `d × d` matrix of Gaussian rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MatrixCoeff {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl MatrixCoeff {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            entries: vec![GaussianRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, GaussianRational::one())
    }

    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        assert!(i < dim && j < dim, "matrix unit index out of range");
        let mut m = Self::zero(dim);
        m.entries[i * dim + j] = GaussianRational::one();
        m
    }

    /// Builds a matrix from rows; `None` if the rows are not square or empty.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.entries.chunks(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must equal matrix dimension"
        );
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl fmt::Debug for MatrixCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for MatrixCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            return write!(f, "{}", self.get(0, 0));
        }
        write!(f, "[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Exact rank by Gaussian elimination over the Gaussian rationals.
pub fn rank(rows: &[Vec<GaussianRational>]) -> usize {
    let mut m: Vec<Vec<GaussianRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..ncols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= &delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn units_multiply_like_units() {
        let e01 = MatrixCoeff::unit(2, 0, 1);
        let e10 = MatrixCoeff::unit(2, 1, 0);
        assert_eq!(e01.mul(&e10), MatrixCoeff::unit(2, 0, 0));
        assert!(e01.mul(&e01).is_zero());
        assert_eq!(e01.mul(&e10).trace(), g(1));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        assert!(MatrixCoeff::from_rows(vec![vec![g(1), g(2)], vec![g(3)]]).is_none());
        assert!(MatrixCoeff::from_rows(vec![]).is_none());
    }

    #[test]
    fn rank_of_small_blocks() {
        assert_eq!(rank(&[vec![g(1), g(2)], vec![g(2), g(4)]]), 1);
        assert_eq!(rank(&[vec![g(1), g(0)], vec![g(0), g(1)]]), 2);
        assert_eq!(rank(&[vec![g(0), g(0)]]), 0);
        assert_eq!(rank(&[]), 0);
    }
}
