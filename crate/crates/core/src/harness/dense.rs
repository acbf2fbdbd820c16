//! Plain dense matrices over the Gaussian rationals, used as an independent oracle.

use crate::lattice::GaussianRational;

pub type Dense = Vec<Vec<GaussianRational>>;

pub fn mat_vec(a: &[Vec<GaussianRational>], v: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn sub_vec(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mat_mul(a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> Dense {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![GaussianRational::zero(); cols];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o += &(x * y);
                    }
                }
            }
            out
        })
        .collect()
}

/// The square block with rows and columns in `offset..offset+len`.
pub fn sub_block(a: &[Vec<GaussianRational>], offset: usize, len: usize) -> Dense {
    a[offset..offset + len]
        .iter()
        .map(|row| row[offset..offset + len].to_vec())
        .collect()
}

pub fn trace(a: &[Vec<GaussianRational>]) -> GaussianRational {
    a.iter().enumerate().map(|(i, row)| row[i].clone()).sum()
}
