use super::dense::DenseMatrix;
use crate::error::{HratpError, Result};
use crate::scalar::Scalar;

/// Snapshots and outputs of a Neville elimination.
#[derive(Clone)]
pub struct NevilleTrace<T> {
    /// `steps[k]` is the matrix before column `k` is eliminated; the last entry is upper triangular.
    pub steps: Vec<DenseMatrix<T>>,
    /// `multipliers[(i, j)]` for `i > j`; zero elsewhere.
    pub multipliers: DenseMatrix<T>,
    pub pivots: Vec<T>,
}

impl<T: std::fmt::Display + std::fmt::Debug> std::fmt::Debug for NevilleTrace<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NevilleTrace")
            .field("steps", &self.steps.len())
            .field("multipliers", &self.multipliers)
            .field("pivots", &self.pivots)
            .finish()
    }
}

/// Neville elimination without row exchanges.
///
/// Each row below the diagonal is reduced with the row immediately above it. A row whose
/// predecessor has an exact zero in the current column is left unchanged with multiplier 0;
/// if the row itself is nonzero there, the method fails. Zero tests are exact.
pub fn neville_eliminate<T: Scalar>(a: &DenseMatrix<T>) -> Result<NevilleTrace<T>> {
    if !a.is_square() {
        return Err(HratpError::Domain("Neville elimination needs a square matrix".into()));
    }
    let n = a.rows();
    let mut steps = Vec::with_capacity(n);
    let mut multipliers = DenseMatrix::zeros(n, n);
    steps.push(a.clone());
    for k in 0..n.saturating_sub(1) {
        let cur = steps.last().expect("non-empty");
        let mut next = cur.clone();
        for i in (k + 1)..n {
            let above = &cur[(i - 1, k)];
            let here = &cur[(i, k)];
            if above.is_zero() {
                if !here.is_zero() {
                    return Err(HratpError::RowExchangeRequired { step: k + 1, row: i + 1 });
                }
                continue;
            }
            let m = here.clone() / above.clone();
            next[(i, k)] = T::zero();
            for j in (k + 1)..n {
                next[(i, j)] = cur[(i, j)].clone() - m.clone() * cur[(i - 1, j)].clone();
            }
            multipliers[(i, k)] = m;
        }
        steps.push(next);
    }
    let last = steps.last().expect("non-empty");
    let pivots: Vec<T> = (0..n).map(|i| last[(i, i)].clone()).collect();
    if pivots.iter().any(Scalar::is_zero) {
        return Err(HratpError::Singular);
    }
    Ok(NevilleTrace {
        steps,
        multipliers,
        pivots,
    })
}
