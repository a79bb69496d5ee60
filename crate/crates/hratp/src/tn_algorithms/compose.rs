//! Decompositions of the q-Abel collocation, Wronskian and Gramian matrices as products of
//! catalog decompositions, and the solvers built on them.

use super::{
    is_alternating, tn_eigenvalues, tn_inverse_expand, tn_product, tn_singular_values, tn_solve,
    HraReport,
};
use crate::bd_catalog::{
    bd_abel_change, bd_abel_change_j, bd_hilbert, bd_vandermonde, bd_vandermonde_j,
    bd_wronskian_monomials, bd_wronskian_monomials_j, NodeSequence, SignClass,
};
use crate::bd_core::{expand, j_vector, transpose_bd, BdMatrix, DenseMatrix};
use crate::error::{HratpError, Result};
use crate::oracle::baseline;
use crate::qcalc::QAbelParams;
use crate::scalar::Scalar;

/// How the stored decomposition relates to the matrix it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugation {
    /// The decomposition is that of the matrix itself.
    None,
    /// The decomposition is that of `M J`.
    RightJ,
    /// The decomposition is that of `J M J`.
    BothJ,
}

#[derive(Clone, PartialEq)]
pub struct StructuredBd<T> {
    pub bd: BdMatrix<T>,
    pub conjugation: Conjugation,
}

impl<T: std::fmt::Display> std::fmt::Debug for StructuredBd<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructuredBd")
            .field("bd", &self.bd)
            .field("conjugation", &self.conjugation)
            .finish()
    }
}

impl<T: Scalar> StructuredBd<T> {
    pub fn plain(bd: BdMatrix<T>) -> Self {
        Self {
            bd,
            conjugation: Conjugation::None,
        }
    }

    /// The represented matrix, with any conjugation undone.
    pub fn matrix(&self) -> DenseMatrix<T> {
        let m = expand(&self.bd);
        match self.conjugation {
            Conjugation::None => m,
            Conjugation::RightJ => m.right_j(),
            Conjugation::BothJ => m.j_conjugate(),
        }
    }

    pub fn solve(&self, d: &[T]) -> Result<(Vec<T>, HraReport)> {
        match self.conjugation {
            Conjugation::None => tn_solve(&self.bd, d),
            Conjugation::RightJ => {
                let (x, report) = tn_solve(&self.bd, d)?;
                Ok((j_vector(&x), report))
            }
            Conjugation::BothJ => {
                let (x, _) = tn_solve(&self.bd, &j_vector(d))?;
                let report = if is_alternating(&j_vector(d)) {
                    HraReport::yes("TP-certified J-conjugate and constant-sign right-hand side")
                } else {
                    HraReport::no("right-hand side does not have constant sign")
                };
                Ok((j_vector(&x), report))
            }
        }
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>> {
        let inv = tn_inverse_expand(&self.bd)?;
        Ok(match self.conjugation {
            Conjugation::None => inv,
            // (A_J J)^{-1} = J A_J^{-1}
            Conjugation::RightJ => inv.transpose().right_j().transpose(),
            Conjugation::BothJ => inv.j_conjugate(),
        })
    }
}

impl StructuredBd<f64> {
    pub fn singular_values(&self) -> Result<(Vec<f64>, HraReport)> {
        tn_singular_values(&self.bd)
    }

    /// Eigenvalues, descending. For a decomposition of `M J` they come from a conventional
    /// dense iteration on `M` and carry no accuracy guarantee.
    pub fn eigenvalues(&self) -> Result<(Vec<f64>, HraReport)> {
        match self.conjugation {
            Conjugation::None | Conjugation::BothJ => tn_eigenvalues(&self.bd),
            Conjugation::RightJ => {
                let ev = baseline::eigenvalues(&self.matrix())?;
                let scale = ev.iter().map(|z| z.0.hypot(z.1)).fold(0.0, f64::max);
                if ev.iter().any(|z| z.1.abs() > 1e-8 * scale) {
                    return Err(HratpError::Domain("spectrum is not real".into()));
                }
                let mut re: Vec<f64> = ev.into_iter().map(|z| z.0).collect();
                re.sort_by(|a, b| b.total_cmp(a));
                Ok((
                    re,
                    HraReport::no(
                        "accurate eigenvalues are only available for increasing positive nodes with alpha <= 0",
                    ),
                ))
            }
        }
    }
}

fn check_order<T: Scalar>(params: &QAbelParams<T>, len: usize) -> Result<()> {
    if params.order() != len {
        return Err(HratpError::OrderMismatch {
            left: params.order(),
            right: len,
        });
    }
    Ok(())
}

/// Decomposition of the collocation matrix `(A_{j}(t_i))` as `V L^T`, or of `A J` as
/// `(V J)(J L^T J)` for decreasing negative nodes.
pub fn bd_collocation<T: Scalar>(
    params: &QAbelParams<T>,
    nodes: &NodeSequence<T>,
) -> Result<StructuredBd<T>> {
    check_order(params, nodes.len())?;
    match nodes.sign_class() {
        SignClass::IncreasingPositive => {
            if params.alpha.is_positive() {
                return Err(HratpError::Hypothesis(
                    "collocation at increasing positive nodes needs alpha <= 0".into(),
                ));
            }
            let bd = tn_product(&bd_vandermonde(nodes)?, &transpose_bd(&bd_abel_change(params)))?;
            Ok(StructuredBd::plain(bd))
        }
        SignClass::DecreasingNegative => {
            if params.alpha.is_negative() {
                return Err(HratpError::Hypothesis(
                    "collocation at decreasing negative nodes needs alpha >= 0".into(),
                ));
            }
            let bd = tn_product(
                &bd_vandermonde_j(nodes)?,
                &transpose_bd(&bd_abel_change_j(params)),
            )?;
            Ok(StructuredBd {
                bd,
                conjugation: Conjugation::RightJ,
            })
        }
    }
}

/// Decomposition of the Wronskian of the q-Abel basis at `x`, as `W_m L^T`, or of `J W J`
/// as `(J W_m J)(J L^T J)` when `x <= 0` and `alpha >= 0`.
pub fn bd_wronskian_qabel<T: Scalar>(params: &QAbelParams<T>, x: &T) -> Result<StructuredBd<T>> {
    let n = params.n;
    if !x.is_negative() && !params.alpha.is_positive() {
        let bd = tn_product(
            &bd_wronskian_monomials(x, n)?,
            &transpose_bd(&bd_abel_change(params)),
        )?;
        Ok(StructuredBd::plain(bd))
    } else if !x.is_positive() && !params.alpha.is_negative() {
        let bd = tn_product(
            &bd_wronskian_monomials_j(x, n)?,
            &transpose_bd(&bd_abel_change_j(params)),
        )?;
        Ok(StructuredBd {
            bd,
            conjugation: Conjugation::BothJ,
        })
    } else {
        Err(HratpError::Hypothesis(
            "Wronskian needs x >= 0 with alpha <= 0, or x <= 0 with alpha >= 0".into(),
        ))
    }
}

/// Decomposition of the Gramian `L H L^T` under the inner product on `[0, 1]`.
pub fn bd_gramian_qabel<T: Scalar>(params: &QAbelParams<T>) -> Result<BdMatrix<T>> {
    if params.alpha.is_positive() {
        return Err(HratpError::Hypothesis("Gramian needs alpha <= 0".into()));
    }
    let l = bd_abel_change(params);
    let lh = tn_product(&l, &bd_hilbert(params.n))?;
    tn_product(&lh, &transpose_bd(&l))
}

/// Solves `A y = d` for the collocation matrix.
pub fn solve_collocation<T: Scalar>(
    params: &QAbelParams<T>,
    nodes: &NodeSequence<T>,
    d: &[T],
) -> Result<(Vec<T>, HraReport)> {
    bd_collocation(params, nodes)?.solve(d)
}

/// Solves `W y = d` for the Wronskian at `x`.
pub fn solve_wronskian<T: Scalar>(
    params: &QAbelParams<T>,
    x: &T,
    d: &[T],
) -> Result<(Vec<T>, HraReport)> {
    bd_wronskian_qabel(params, x)?.solve(d)
}
