//! Accurate algorithms on bidiagonal decompositions of totally positive matrices.
//!
//! With nonnegative decomposition entries every routine here only multiplies, divides and
//! adds nonnegative quantities, so floating-point results keep high relative accuracy.

mod compose;
mod spectra;
mod work;

pub use compose::{
    bd_collocation, bd_gramian_qabel, bd_wronskian_qabel, solve_collocation, solve_wronskian,
    Conjugation, StructuredBd,
};
pub use spectra::{dqd_eigenvalues, tn_eigenvalues, tn_singular_values, tridiagonal_form};

use crate::bd_core::{transpose_bd, BdMatrix, DenseMatrix};
use crate::error::{HratpError, Result};
use crate::scalar::Scalar;
use work::{lower_word, Work};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    Alternating,
    Constant,
    Other,
}

impl SignPattern {
    /// A single nonzero entry counts as alternating.
    pub fn classify<T: Scalar>(d: &[T]) -> Self {
        if d.is_empty() || d.iter().any(Scalar::is_zero) {
            return SignPattern::Other;
        }
        if d.windows(2).all(|w| w[0].is_positive() != w[1].is_positive()) {
            SignPattern::Alternating
        } else if d.iter().all(Scalar::is_positive) || d.iter().all(Scalar::is_negative) {
            SignPattern::Constant
        } else {
            SignPattern::Other
        }
    }
}

pub fn is_alternating<T: Scalar>(d: &[T]) -> bool {
    SignPattern::classify(d) == SignPattern::Alternating
}

/// Strict constant sign; a single nonzero entry qualifies.
pub fn is_constant_sign<T: Scalar>(d: &[T]) -> bool {
    !d.is_empty() && (d.iter().all(Scalar::is_positive) || d.iter().all(Scalar::is_negative))
}

/// Whether a result carries the high-relative-accuracy guarantee, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HraReport {
    pub guaranteed: bool,
    pub reason: String,
}

impl HraReport {
    pub fn yes(reason: impl Into<String>) -> Self {
        Self {
            guaranteed: true,
            reason: reason.into(),
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        Self {
            guaranteed: false,
            reason: reason.into(),
        }
    }
}

pub(crate) fn require_certified<T: Scalar>(bd: &BdMatrix<T>, what: &str) -> Result<()> {
    if bd.is_tp_certified() {
        Ok(())
    } else {
        Err(HratpError::HraNotGuaranteed(format!(
            "{what} needs a TP-certified decomposition"
        )))
    }
}

/// Keeps the cells of `bd` selected by `keep(i, j)`, with unit pivots where the diagonal
/// is dropped.
fn part<T: Scalar>(bd: &BdMatrix<T>, keep: impl Fn(usize, usize) -> bool) -> BdMatrix<T> {
    let n = bd.order();
    let cells = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if keep(i, j) {
                bd.get(i, j).clone()
            } else if i == j {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    BdMatrix::from_cells(n, cells).expect("same shape")
}

/// Decomposition of `A B` from those of `A` and `B`.
///
/// The middle `M = D_A U_A L_B D_B` is refactored by passing the generators of `L_B`
/// through `U_A`; then `L_A L_M` and `U_M U_B` are formed by appending generators.
pub fn tn_product<T: Scalar>(a: &BdMatrix<T>, b: &BdMatrix<T>) -> Result<BdMatrix<T>> {
    if a.order() != b.order() {
        return Err(HratpError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    require_certified(a, "tn_product")?;
    require_certified(b, "tn_product")?;
    let n = a.order();
    let mut m = Work::new(&part(a, |i, j| i <= j));
    for (g, y) in lower_word(b) {
        m.times_lower(g, y);
    }
    m.times_diag(&b.pivots());
    let m = m.finish();

    let mut lower = Work::new(&part(a, |i, j| i > j));
    for (g, y) in lower_word(&m) {
        lower.lower_times_e(g, y);
    }
    // (U_M U_B)^T = U_B^T U_M^T as a lower word.
    let mut upper = Work::new(&part(&transpose_bd(b), |i, j| i > j));
    for (g, y) in lower_word(&transpose_bd(&m)) {
        upper.lower_times_e(g, y);
    }
    let cells = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Greater => lower.cell(i, j),
                std::cmp::Ordering::Equal => m.get(i, i).clone(),
                std::cmp::Ordering::Less => upper.cell(j, i),
            }
        })
        .collect();
    BdMatrix::from_cells(n, cells)
}

/// Solves `A x = d` through the bidiagonal factors.
pub fn tn_solve<T: Scalar>(bd: &BdMatrix<T>, d: &[T]) -> Result<(Vec<T>, HraReport)> {
    require_certified(bd, "tn_solve")?;
    let n = bd.order();
    if d.len() != n {
        return Err(HratpError::OrderMismatch {
            left: n,
            right: d.len(),
        });
    }
    if bd.pivots().iter().any(Scalar::is_zero) {
        return Err(HratpError::Singular);
    }
    let mut x = d.to_vec();
    for k in (1..n).rev() {
        for r in k..n {
            let m = bd.get(r, r - k);
            if !m.is_zero() {
                x[r] = x[r].clone() - m.clone() * x[r - 1].clone();
            }
        }
    }
    for (i, xi) in x.iter_mut().enumerate() {
        *xi = xi.clone() / bd.get(i, i).clone();
    }
    for k in 1..n {
        for r in ((k - 1)..(n - 1)).rev() {
            let m = bd.get(r + 1 - k, r + 1);
            if !m.is_zero() {
                x[r] = x[r].clone() - m.clone() * x[r + 1].clone();
            }
        }
    }
    let report = if is_alternating(d) {
        HraReport::yes("TP-certified matrix and alternating right-hand side")
    } else {
        HraReport::no("right-hand side does not alternate in sign")
    };
    Ok((x, report))
}

/// `A^{-1}` as a dense matrix.
///
/// `J A^{-1} J` is the product of `D^{-1}` and the inverted factors with their signs removed,
/// so it is accumulated with additions of nonnegative terms only; the checkerboard signs are
/// applied at the end.
pub fn tn_inverse_expand<T: Scalar>(bd: &BdMatrix<T>) -> Result<DenseMatrix<T>> {
    require_certified(bd, "tn_inverse_expand")?;
    let n = bd.order();
    let mut m = DenseMatrix::diagonal(&bd.pivots().iter().map(|p| T::one() / p.clone()).collect::<Vec<_>>());
    // Right factors J F_k^{-1} J = E_{n-2} ... E_{k-1}, k = 1..n-1.
    for k in 1..n {
        for g in ((k - 1)..(n - 1)).rev() {
            let f = bd.get(g + 1, g + 1 - k);
            if f.is_zero() {
                continue;
            }
            for r in 0..n {
                let add = f.clone() * m[(r, g + 1)].clone();
                if !add.is_zero() {
                    m[(r, g)] = m[(r, g)].clone() + add;
                }
            }
        }
    }
    // Left factors J G_k^{-1} J = U_{k-1} ... U_{n-2}, applied to M for k = 1..n-1.
    for k in 1..n {
        for g in ((k - 1)..(n - 1)).rev() {
            let u = bd.get(g + 1 - k, g + 1);
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let add = u.clone() * m[(g + 1, c)].clone();
                if !add.is_zero() {
                    m[(g, c)] = m[(g, c)].clone() + add;
                }
            }
        }
    }
    Ok(m.j_conjugate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd_catalog::{
        bd_abel_change, bd_hilbert, bd_vandermonde, bd_wronskian_monomials, NodeSequence,
    };
    use crate::bd_core::{bd_from_dense, expand, transpose_bd};
    use crate::qcalc::QAbelParams;
    use crate::scalar::ratio;
    use rug::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn check_product(a: &BdMatrix<Rational>, b: &BdMatrix<Rational>) {
        let p = tn_product(a, b).unwrap();
        let dense = expand(a).matmul(&expand(b)).unwrap();
        assert_eq!(expand(&p), dense);
        assert_eq!(p, bd_from_dense(&dense).unwrap());
        assert!(p.is_tp_certified());
    }

    #[test]
    fn product_with_identity() {
        let h = bd_hilbert::<Rational>(3);
        assert_eq!(tn_product(&BdMatrix::identity(4), &h).unwrap(), h);
        assert_eq!(tn_product(&h, &BdMatrix::identity(4)).unwrap(), h);
    }

    #[test]
    fn product_examples() {
        let v = bd_vandermonde(&NodeSequence::new(vec![r(1), r(2), r(3)]).unwrap()).unwrap();
        let l = bd_abel_change(&QAbelParams::new(r(1), r(-1), 2).unwrap());
        check_product(&v, &transpose_bd(&l));
        let h = bd_hilbert::<Rational>(1);
        check_product(&h, &h);
    }

    #[test]
    fn products_with_zero_entries() {
        let p = QAbelParams::new(ratio(1, 2), r(-2), 4).unwrap();
        let l = bd_abel_change(&p);
        let lt = transpose_bd(&l);
        for x in [r(0), ratio(3, 2), r(50)] {
            let w = bd_wronskian_monomials(&x, 4).unwrap();
            check_product(&w, &lt);
            check_product(&lt, &w);
            check_product(&transpose_bd(&w), &l);
        }
        let h = bd_hilbert::<Rational>(4);
        check_product(&l, &h);
        check_product(&h, &l);
        check_product(&l, &lt);
        check_product(&lt, &l);
        check_product(&l, &l);
        check_product(&lt, &lt);
    }

    #[test]
    fn solve_vandermonde() {
        let v = bd_vandermonde(&NodeSequence::new(vec![r(1), r(2), r(3)]).unwrap()).unwrap();
        let (x, rep) = tn_solve(&v, &[r(1), r(-1), r(1)]).unwrap();
        assert_eq!(x, vec![r(7), r(-8), r(2)]);
        assert!(rep.guaranteed);
        let (_, rep) = tn_solve(&v, &[r(1), r(1), r(1)]).unwrap();
        assert!(!rep.guaranteed);
    }

    #[test]
    fn solve_identity() {
        let (x, _) = tn_solve(&BdMatrix::<Rational>::identity(3), &[r(4), r(-2), r(7)]).unwrap();
        assert_eq!(x, vec![r(4), r(-2), r(7)]);
    }

    #[test]
    fn inverse_of_hilbert() {
        let inv = tn_inverse_expand(&bd_hilbert::<Rational>(2)).unwrap();
        let want = vec![
            vec![r(9), r(-36), r(30)],
            vec![r(-36), r(192), r(-180)],
            vec![r(30), r(-180), r(180)],
        ];
        assert_eq!(inv.to_rows(), want);
        assert_eq!(tn_inverse_expand(&BdMatrix::<Rational>::identity(3)).unwrap(), DenseMatrix::identity(3));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let p = QAbelParams::new(r(2), ratio(-1, 3), 4).unwrap();
        let a = tn_product(
            &bd_vandermonde(&NodeSequence::new(vec![ratio(1, 5), ratio(2, 5), r(1), r(2), r(3)]).unwrap()).unwrap(),
            &transpose_bd(&bd_abel_change(&p)),
        )
        .unwrap();
        let inv = tn_inverse_expand(&a).unwrap();
        assert_eq!(expand(&a).matmul(&inv).unwrap(), DenseMatrix::identity(5));
    }

    #[test]
    fn sign_patterns() {
        assert_eq!(SignPattern::classify(&[1.0, -2.0, 3.0]), SignPattern::Alternating);
        assert_eq!(SignPattern::classify(&[-1.0, -2.0]), SignPattern::Constant);
        assert_eq!(SignPattern::classify(&[1.0, 2.0, -3.0]), SignPattern::Other);
        assert_eq!(SignPattern::classify(&[1.0, 0.0]), SignPattern::Other);
        assert!(is_constant_sign(&[5.0]));
    }

    #[test]
    fn uncertified_input_rejected() {
        let l = bd_abel_change(&QAbelParams::new(r(1), r(1), 2).unwrap());
        assert!(matches!(tn_product(&l, &l), Err(HratpError::HraNotGuaranteed(_))));
        assert!(matches!(tn_solve(&l, &[r(1), r(1), r(1)]), Err(HratpError::HraNotGuaranteed(_))));
    }
}
