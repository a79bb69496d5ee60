//! Conventional double-precision routines used as the comparison column: pivoted LU for
//! systems and inverses, Hessenberg QR for eigenvalues, Householder bidiagonalization for
//! singular values.

use super::eig;
use crate::bd_core::DenseMatrix;
use crate::error::{HratpError, Result};
use crate::tn_algorithms::dqd_eigenvalues;

struct Lu {
    n: usize,
    a: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

fn lu(m: &DenseMatrix<f64>) -> Result<Lu> {
    if !m.is_square() {
        return Err(HratpError::Domain("LU needs a square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty range");
        if a[p][k] == 0.0 {
            return Err(HratpError::Singular);
        }
        a.swap(k, p);
        perm.swap(k, p);
        for i in (k + 1)..n {
            let f = a[i][k] / a[k][k];
            a[i][k] = f;
            for j in (k + 1)..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    Ok(Lu { n, a, perm })
}

impl Lu {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.a[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.a[i][j] * x[j];
            }
            x[i] /= self.a[i][i];
        }
        x
    }
}

pub fn solve(m: &DenseMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != m.rows() {
        return Err(HratpError::OrderMismatch {
            left: m.rows(),
            right: b.len(),
        });
    }
    Ok(lu(m)?.solve(b))
}

pub fn inverse(m: &DenseMatrix<f64>) -> Result<DenseMatrix<f64>> {
    let f = lu(m)?;
    let n = f.n;
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let e: Vec<f64> = (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect();
            f.solve(&e)
        })
        .collect();
    Ok(DenseMatrix::from_fn(n, n, |i, j| cols[j][i]))
}

/// Eigenvalues as `(re, im)` pairs, unordered.
pub fn eigenvalues(m: &DenseMatrix<f64>) -> Result<Vec<(f64, f64)>> {
    if !m.is_square() {
        return Err(HratpError::Domain("eigenvalues need a square matrix".into()));
    }
    eig::eigenvalues(&m.to_rows())
}

/// Singular values, descending, of a square matrix.
pub fn singular_values(m: &DenseMatrix<f64>) -> Vec<f64> {
    let n = m.rows().min(m.cols());
    let mut a = m.to_rows();
    let rows = a.len();
    let cols = a[0].len();
    let mut d = vec![0.0; n];
    let mut f = vec![0.0; n.saturating_sub(1)];
    for k in 0..n {
        // column reflector zeroing a[k+1.., k]
        d[k] = householder(&mut a, k, k, rows, cols, true);
        if k + 1 < n {
            f[k] = householder(&mut a, k, k + 1, rows, cols, false);
        }
    }
    let q: Vec<f64> = d.iter().map(|v| v * v).collect();
    let e: Vec<f64> = f.iter().map(|v| v * v).collect();
    dqd_eigenvalues(&q, &e).into_iter().map(f64::sqrt).collect()
}

/// Applies a Householder reflector that zeros either the column below `(r, c)` or the row
/// right of `(r, c)`, returning the new pivot entry.
fn householder(a: &mut [Vec<f64>], r: usize, c: usize, rows: usize, cols: usize, column: bool) -> f64 {
    let v: Vec<f64> = if column {
        (r..rows).map(|i| a[i][c]).collect()
    } else {
        (c..cols).map(|j| a[r][j]).collect()
    };
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    let alpha = if v[0] > 0.0 { -norm } else { norm };
    let mut u = v;
    u[0] -= alpha;
    let un = u.iter().map(|x| x * x).sum::<f64>();
    if un == 0.0 {
        return alpha;
    }
    if column {
        for j in c..cols {
            let s: f64 = (r..rows).map(|i| u[i - r] * a[i][j]).sum();
            let s = 2.0 * s / un;
            for i in r..rows {
                a[i][j] -= s * u[i - r];
            }
        }
    } else {
        for row in a.iter_mut().take(rows).skip(r) {
            let s: f64 = (c..cols).map(|j| u[j - c] * row[j]).sum();
            let s = 2.0 * s / un;
            for j in c..cols {
                row[j] -= s * u[j - c];
            }
        }
    }
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solve_and_inverse() {
        let m = DenseMatrix::from_rows(vec![vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(solve(&m, &[2.0, 3.0]).unwrap(), vec![2.0, 1.0]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![-0.5, 1.0], vec![0.5, 0.0]]);
        let sing = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(solve(&sing, &[1.0, 1.0]), Err(HratpError::Singular)));
    }

    #[test]
    fn bidiagonal_svd() {
        let m = DenseMatrix::from_rows(vec![
            vec![1.0, 2.0, 0.0],
            vec![0.0, 2.0, 1.0],
            vec![1.0, 0.0, 3.0],
        ])
        .unwrap();
        let sv = singular_values(&m);
        let jac = eig::singular_values(&m.to_rows());
        for (a, b) in sv.iter().zip(&jac) {
            assert!((a - b).abs() < 1e-13 * b);
        }
    }
}
