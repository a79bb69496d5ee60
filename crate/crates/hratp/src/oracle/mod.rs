//! Reference values: exact rational constructions, solves and inverses, and multiprecision
//! spectra, norms and condition numbers. Also hosts the conventional double-precision
//! [`baseline`] routines.

pub mod baseline;
mod eig;
mod real;

pub use eig::{eigenvalues as dense_eigenvalues, singular_values as dense_singular_values};
pub use real::{bits_for_digits, to_float, Real};

use rug::{Float, Rational};

use crate::bd_core::DenseMatrix;
use crate::error::{HratpError, Result};
use crate::qcalc::{q_abel_eval, q_integer, QAbelParams};
use crate::scalar::Scalar;

pub const DEFAULT_DIGITS: u32 = 200;

/// Coefficients (constant term first) of `A_m(x) = x prod_{j=1}^{m-1} (x q^j - alpha [m])`,
/// multiplied out factor by factor.
pub fn qabel_polynomial(params: &QAbelParams<Rational>, m: usize) -> Vec<Rational> {
    if m == 0 {
        return vec![Rational::from(1)];
    }
    let shift = params.alpha.clone() * q_integer(m, &params.q);
    let mut poly = vec![Rational::new(), Rational::from(1)];
    for j in 1..m {
        let lead = params.q.powi(j as u32);
        let mut next = vec![Rational::new(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += lead.clone() * c;
            next[k] -= shift.clone() * c;
        }
        poly = next;
    }
    poly
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| Rational::from(k) * c)
        .collect()
}

fn horner(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::new(), |acc, c| acc * x + c)
}

/// `(A_j(t_i))` evaluated exactly.
pub fn exact_collocation(params: &QAbelParams<Rational>, nodes: &[Rational]) -> Result<DenseMatrix<Rational>> {
    if nodes.len() != params.order() {
        return Err(HratpError::OrderMismatch {
            left: params.order(),
            right: nodes.len(),
        });
    }
    let n = nodes.len();
    let mut cells = Vec::with_capacity(n * n);
    for t in nodes {
        for j in 0..n {
            cells.push(q_abel_eval(params, j, t)?);
        }
    }
    DenseMatrix::from_vec(n, n, cells)
}

/// `(A_j^{(i)}(x))` by exact differentiation of the expanded polynomials.
pub fn exact_wronskian(params: &QAbelParams<Rational>, x: &Rational) -> DenseMatrix<Rational> {
    let n = params.order();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = qabel_polynomial(params, j);
        let mut col = Vec::with_capacity(n);
        for _ in 0..n {
            col.push(horner(&p, x));
            p = derivative(&p);
        }
        cols.push(col);
    }
    DenseMatrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

/// `(integral_0^1 A_i A_j)` by exact monomial integration.
pub fn exact_gramian(params: &QAbelParams<Rational>) -> DenseMatrix<Rational> {
    let n = params.order();
    let polys: Vec<Vec<Rational>> = (0..n).map(|m| qabel_polynomial(params, m)).collect();
    let inner = |a: &[Rational], b: &[Rational]| {
        let mut acc = Rational::new();
        for (i, ca) in a.iter().enumerate() {
            for (j, cb) in b.iter().enumerate() {
                acc += Rational::from(ca * cb) / Rational::from(i + j + 1);
            }
        }
        acc
    };
    DenseMatrix::from_fn(n, n, |i, j| inner(&polys[i], &polys[j]))
}

/// Solves `a x = b` for every right-hand side by exact Gaussian elimination.
pub fn reference_solve(a: &DenseMatrix<Rational>, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if !a.is_square() {
        return Err(HratpError::Domain("reference solve needs a square matrix".into()));
    }
    let n = a.rows();
    if let Some(b) = rhs.iter().find(|b| b.len() != n) {
        return Err(HratpError::OrderMismatch {
            left: n,
            right: b.len(),
        });
    }
    let k = rhs.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c] != 0).ok_or(HratpError::Singular)?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for j in c..n + k {
            m[c][j] /= &pivot;
        }
        let (top, rest) = m.split_at_mut(c + 1);
        let prow = &top[c];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = row[c].clone();
            for j in c..n + k {
                row[j] -= Rational::from(&f * &prow[j]);
            }
        }
    }
    for c in (0..n).rev() {
        for i in 0..c {
            if m[i][c] == 0 {
                continue;
            }
            let f = m[i][c].clone();
            for j in n..n + k {
                let v = Rational::from(&f * &m[c][j]);
                m[i][j] -= v;
            }
            m[i][c] = Rational::new();
        }
    }
    Ok((0..k)
        .map(|s| (0..n).map(|i| m[i][n + s].clone()).collect())
        .collect())
}

pub fn reference_inverse(a: &DenseMatrix<Rational>) -> Result<DenseMatrix<Rational>> {
    let n = a.rows();
    let id: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..n).map(|i| Rational::from(u32::from(i == j))).collect())
        .collect();
    let cols = reference_solve(a, &id)?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

fn float_rows(a: &DenseMatrix<Rational>, bits: u32) -> Vec<Vec<Float>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|v| to_float(v, bits)).collect())
        .collect()
}

/// Real eigenvalues at `digits` decimal digits, descending.
pub fn reference_eigenvalues(a: &DenseMatrix<Rational>, digits: u32) -> Result<Vec<Float>> {
    let bits = bits_for_digits(digits);
    let ev = eig::eigenvalues(&float_rows(a, bits))?;
    let scale = ev
        .iter()
        .map(|z| Float::with_val(bits, z.0.clone().hypot(&z.1)))
        .fold(Float::with_val(bits, 0), |acc, v| if v > acc { v } else { acc });
    let tol = Float::with_val(bits, 1u32) >> (bits / 2);
    if ev.iter().any(|z| z.1.clone().abs() > tol.clone() * &scale) {
        return Err(HratpError::Domain("spectrum is not real".into()));
    }
    let mut re: Vec<Float> = ev.into_iter().map(|z| z.0).collect();
    re.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(re)
}

/// Singular values at `digits` decimal digits, descending.
pub fn reference_singular_values(a: &DenseMatrix<Rational>, digits: u32) -> Vec<Float> {
    eig::singular_values(&float_rows(a, bits_for_digits(digits)))
}

/// `sigma_max / sigma_min`.
pub fn condition_number_2(a: &DenseMatrix<Rational>, digits: u32) -> Result<f64> {
    let sv = reference_singular_values(a, digits);
    let smallest = sv.last().expect("non-empty matrix");
    if smallest.is_zero() {
        return Err(HratpError::Singular);
    }
    Ok(Float::with_val(smallest.prec(), &sv[0] / smallest).to_f64())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Vector2,
    Matrix2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub relative_error: f64,
    pub norm_kind: NormKind,
}

/// `||y - y~||_2 / ||y||_2`, evaluated exactly before the final square root.
pub fn relative_error_vector(reference: &[Rational], computed: &[f64]) -> Result<ErrorReport> {
    if reference.len() != computed.len() {
        return Err(HratpError::OrderMismatch {
            left: reference.len(),
            right: computed.len(),
        });
    }
    let mut num = Rational::new();
    let mut den = Rational::new();
    for (y, c) in reference.iter().zip(computed) {
        let diff = y.clone() - <Rational as Scalar>::from_f64(*c);
        num += diff.clone() * &diff;
        den += Rational::from(y * y);
    }
    if den == 0 {
        return Err(HratpError::Domain("reference vector is zero".into()));
    }
    Ok(ErrorReport {
        relative_error: (num / den).to_f64().sqrt(),
        norm_kind: NormKind::Vector2,
    })
}

/// Spectral-norm relative error, with norms evaluated at `digits` decimal digits.
pub fn relative_error_matrix(
    reference: &DenseMatrix<Rational>,
    computed: &DenseMatrix<f64>,
    digits: u32,
) -> Result<ErrorReport> {
    if reference.rows() != computed.rows() || reference.cols() != computed.cols() {
        return Err(HratpError::OrderMismatch {
            left: reference.rows(),
            right: computed.rows(),
        });
    }
    let diff = DenseMatrix::from_fn(reference.rows(), reference.cols(), |i, j| {
        reference[(i, j)].clone() - <Rational as Scalar>::from_f64(computed[(i, j)])
    });
    let bits = bits_for_digits(digits);
    let top = eig::singular_values(&float_rows(&diff, bits));
    let bottom = eig::singular_values(&float_rows(reference, bits));
    if bottom[0].is_zero() {
        return Err(HratpError::Domain("reference matrix is zero".into()));
    }
    Ok(ErrorReport {
        relative_error: Float::with_val(bits, &top[0] / &bottom[0]).to_f64(),
        norm_kind: NormKind::Matrix2,
    })
}

/// `|v - v~| / |v|` for a multiprecision reference value.
pub fn relative_error_value(reference: &Float, computed: f64) -> f64 {
    let diff = Float::with_val(reference.prec(), reference - computed);
    Float::with_val(reference.prec(), diff / reference).abs().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::q_abel_change_matrix;
    use crate::scalar::ratio;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn p(q: Rational, alpha: i64, n: usize) -> QAbelParams<Rational> {
        QAbelParams::new(q, r(alpha), n).unwrap()
    }

    #[test]
    fn collocation_examples() {
        assert_eq!(exact_collocation(&p(r(1), -1, 0), &[r(3)]).unwrap().to_rows(), vec![vec![r(1)]]);
        let a = exact_collocation(&p(r(1), -1, 2), &[r(1), r(2), r(3)]).unwrap();
        assert_eq!((0..3).map(|i| a[(i, 2)].clone()).collect::<Vec<_>>(), vec![r(3), r(8), r(15)]);
    }

    #[test]
    fn wronskian_examples() {
        let w = exact_wronskian(&p(r(1), -1, 2), &r(0));
        assert_eq!(
            w.to_rows(),
            vec![vec![r(1), r(0), r(0)], vec![r(0), r(1), r(2)], vec![r(0), r(0), r(2)]]
        );
    }

    #[test]
    fn polynomials_match_change_of_basis() {
        for q in [ratio(1, 2), r(1), r(2)] {
            let params = p(q, -2, 5);
            let l = q_abel_change_matrix(&params);
            for (m, row) in l.iter().enumerate() {
                let poly = qabel_polynomial(&params, m);
                for (k, c) in row.iter().enumerate() {
                    let want = poly.get(k).cloned().unwrap_or_default();
                    assert_eq!(*c, want);
                }
            }
        }
    }

    #[test]
    fn gramian_examples() {
        assert_eq!(exact_gramian(&p(r(1), -1, 0)).to_rows(), vec![vec![r(1)]]);
        assert_eq!(
            exact_gramian(&p(r(1), -1, 1)).to_rows(),
            vec![vec![r(1), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 3)]]
        );
    }

    #[test]
    fn exact_inverse_of_hilbert() {
        let h = DenseMatrix::from_fn(3, 3, |i, j| ratio(1, (i + j + 1) as i64));
        let inv = reference_inverse(&h).unwrap();
        assert_eq!(
            inv.to_rows(),
            vec![
                vec![r(9), r(-36), r(30)],
                vec![r(-36), r(192), r(-180)],
                vec![r(30), r(-180), r(180)]
            ]
        );
        let x = reference_solve(&DenseMatrix::identity(2), &[vec![r(4), r(5)]]).unwrap();
        assert_eq!(x, vec![vec![r(4), r(5)]]);
    }

    #[test]
    fn spectrum_of_hilbert_two() {
        let h = DenseMatrix::from_fn(2, 2, |i, j| ratio(1, (i + j + 1) as i64));
        let ev = reference_eigenvalues(&h, 60).unwrap();
        let bits = bits_for_digits(60);
        let disc = Float::with_val(bits, 16u32) / 9u32 - Float::with_val(bits, 1u32) / 3u32;
        let big = (Float::with_val(bits, 4u32) / 3u32 + disc.sqrt()) / 2u32;
        assert!(Float::with_val(bits, &ev[0] - &big).abs() < 1e-55);
        let det = Float::with_val(bits, &ev[0] * &ev[1]);
        assert!(Float::with_val(bits, det - Float::with_val(bits, 1u32) / 12u32).abs() < 1e-55);
    }

    #[test]
    fn condition_numbers() {
        assert_eq!(condition_number_2(&DenseMatrix::identity(3), 50).unwrap(), 1.0);
        let d = DenseMatrix::diagonal(&[r(10), r(1)]);
        assert!((condition_number_2(&d, 50).unwrap() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn relative_errors() {
        assert_eq!(relative_error_vector(&[r(1), r(2)], &[1.0, 2.0]).unwrap().relative_error, 0.0);
        assert_eq!(relative_error_vector(&[r(1), r(0)], &[1.0, 1.0]).unwrap().relative_error, 1.0);
        let e = relative_error_vector(&[r(3), r(4)], &[3.0, 4.0005]).unwrap().relative_error;
        assert!((e - 1e-4).abs() < 1e-12);
        assert!(relative_error_vector(&[r(0)], &[1.0]).is_err());
        let m = DenseMatrix::from_rows(vec![vec![r(2), r(0)], vec![r(0), r(1)]]).unwrap();
        let c = DenseMatrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 1.5]]).unwrap();
        let e = relative_error_matrix(&m, &c, 50).unwrap();
        assert_eq!(e.norm_kind, NormKind::Matrix2);
        assert!((e.relative_error - 0.25).abs() < 1e-15);
    }
}
