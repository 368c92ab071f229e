//! Real-vector helpers and the closed-form Moore-Penrose pseudoinverse of a
//! single row.
//!
//! For a nonzero 1×m matrix `A` the pseudoinverse is the m×1 column
//! `Aᵀ / (A·Aᵀ)`. That is the only inverse the pseudoinverse trainer ever
//! needs (it inverts `[c 1]` for every weight–bias block), so no general
//! SVD-based routine is provided.

use crate::{Error, Result};

/// Pseudoinverse of `row` viewed as a 1×m matrix, returned as the m entries
/// of the m×1 result.
pub fn row_pseudoinverse(row: &[f64]) -> Result<Vec<f64>> {
    let mut out = vec![0.0; row.len()];
    row_pseudoinverse_into(row, &mut out)?;
    Ok(out)
}

/// Allocation-free form of [`row_pseudoinverse`].
pub fn row_pseudoinverse_into(row: &[f64], out: &mut [f64]) -> Result<()> {
    if row.len() != out.len() {
        return Err(Error::LengthMismatch {
            left: row.len(),
            right: out.len(),
        });
    }
    let gram = dot_unchecked(row, row);
    if gram == 0.0 {
        return Err(Error::ZeroRow);
    }
    for (o, &a) in out.iter_mut().zip(row) {
        *o = a / gram;
    }
    Ok(())
}

pub fn dot(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(dot_unchecked(a, b))
}

#[inline]
fn dot_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a - s·b`, elementwise.
pub fn scale_sub(a: &[f64], b: &[f64], s: f64) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x - s * y).collect())
}
