//! Closed-form bidiagonal decompositions of the structured matrices built on q-Abel bases.

use crate::bd_core::BdMatrix;
use crate::error::{HratpError, Result};
use crate::qcalc::{choose2, q_integer, QAbelParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    IncreasingPositive,
    DecreasingNegative,
}

/// Strictly monotone nodes of one sign.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSequence<T> {
    nodes: Vec<T>,
    sign_class: SignClass,
}

impl<T: Scalar> NodeSequence<T> {
    /// Classifies the nodes; anything that is neither `0 < t_1 < ... ` nor `0 > t_1 > ...` is rejected.
    pub fn new(nodes: Vec<T>) -> Result<Self> {
        let first = nodes
            .first()
            .ok_or_else(|| HratpError::Domain("node sequence is empty".into()))?;
        let sign_class = if first.is_positive() {
            SignClass::IncreasingPositive
        } else if first.is_negative() {
            SignClass::DecreasingNegative
        } else {
            return Err(HratpError::Domain("nodes must be nonzero".into()));
        };
        for w in nodes.windows(2) {
            let ok = match sign_class {
                SignClass::IncreasingPositive => w[1] > w[0],
                SignClass::DecreasingNegative => w[1] < w[0],
            };
            if !ok {
                return Err(HratpError::Domain(format!(
                    "nodes must be strictly {} and of one sign",
                    match sign_class {
                        SignClass::IncreasingPositive => "increasing",
                        SignClass::DecreasingNegative => "decreasing",
                    }
                )));
            }
        }
        Ok(Self { nodes, sign_class })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn sign_class(&self) -> SignClass {
        self.sign_class
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn square<T: Scalar>(order: usize, mut f: impl FnMut(usize, usize) -> T) -> BdMatrix<T> {
    let cells = (0..order * order).map(|idx| f(idx / order, idx % order)).collect();
    BdMatrix::from_cells(order, cells).expect("well-formed catalog matrix")
}

fn abel_cells<T: Scalar>(params: &QAbelParams<T>, sign: T) -> BdMatrix<T> {
    let q = &params.q;
    let order = params.order();
    let ints: Vec<T> = (0..=order).map(|m| q_integer(m, q)).collect();
    let coeff = sign * params.alpha.clone();
    square(order, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        if i == j {
            q.powi(choose2(i - 1))
        } else if i > j && j >= 2 {
            let ratio = ints[i - 1].clone() / ints[i - 2].clone();
            coeff.clone() * q.powi((j - 2) as u32) * ratio.powi((i - j) as u32) * ints[i - j].clone()
        } else {
            T::zero()
        }
    })
}

/// Decomposition of the monomial-to-q-Abel change of basis `L`.
pub fn bd_abel_change<T: Scalar>(params: &QAbelParams<T>) -> BdMatrix<T> {
    abel_cells(params, -T::one())
}

/// Decomposition of `J L J`.
pub fn bd_abel_change_j<T: Scalar>(params: &QAbelParams<T>) -> BdMatrix<T> {
    abel_cells(params, T::one())
}

fn vandermonde_lower<T: Scalar>(t: &[T]) -> Vec<Vec<T>> {
    // lower[i][j] for j < i: prod_{k=1}^{j} (t_i - t_{i-k}) / (t_{i-1} - t_{i-k-1}), 0-based.
    let n = t.len();
    let mut lower = vec![vec![T::zero(); n]; n];
    for i in 1..n {
        let mut acc = T::one();
        for j in 0..i {
            if j > 0 {
                acc = acc * (t[i].clone() - t[i - j].clone())
                    / (t[i - 1].clone() - t[i - j - 1].clone());
            }
            lower[i][j] = acc.clone();
        }
    }
    lower
}

fn pivot_products<T: Scalar>(t: &[T]) -> Vec<T> {
    (0..t.len())
        .map(|i| (0..i).fold(T::one(), |acc, k| acc * (t[i].clone() - t[k].clone())))
        .collect()
}

/// Decomposition of the Vandermonde matrix `(t_i^{j-1})` at increasing positive nodes.
pub fn bd_vandermonde<T: Scalar>(nodes: &NodeSequence<T>) -> Result<BdMatrix<T>> {
    if nodes.sign_class != SignClass::IncreasingPositive {
        return Err(HratpError::Domain(
            "Vandermonde decomposition needs increasing positive nodes".into(),
        ));
    }
    let t = &nodes.nodes;
    let lower = vandermonde_lower(t);
    let piv = pivot_products(t);
    Ok(square(t.len(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => lower[i][j].clone(),
        std::cmp::Ordering::Equal => piv[i].clone(),
        std::cmp::Ordering::Less => t[i].clone(),
    }))
}

/// Decomposition of `V J` at decreasing negative nodes.
pub fn bd_vandermonde_j<T: Scalar>(nodes: &NodeSequence<T>) -> Result<BdMatrix<T>> {
    if nodes.sign_class != SignClass::DecreasingNegative {
        return Err(HratpError::Domain(
            "J-Vandermonde decomposition needs decreasing negative nodes".into(),
        ));
    }
    let t = &nodes.nodes;
    let lower = vandermonde_lower(t);
    let piv = pivot_products(t);
    Ok(square(t.len(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => lower[i][j].clone(),
        std::cmp::Ordering::Equal => {
            if i % 2 == 1 {
                -piv[i].clone()
            } else {
                piv[i].clone()
            }
        }
        std::cmp::Ordering::Less => -t[i].clone(),
    }))
}

fn factorials<T: Scalar>(order: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(order);
    let mut acc = T::one();
    for i in 0..order {
        if i > 0 {
            acc = acc * T::from_i64(i as i64);
        }
        out.push(acc.clone());
    }
    out
}

fn wronskian_cells<T: Scalar>(upper: T, n: usize) -> BdMatrix<T> {
    let fact = factorials::<T>(n + 1);
    square(n + 1, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => T::zero(),
        std::cmp::Ordering::Equal => fact[i].clone(),
        std::cmp::Ordering::Less => upper.clone(),
    })
}

/// Decomposition of the Wronskian of `(1, x, ..., x^n)` at `x >= 0`.
pub fn bd_wronskian_monomials<T: Scalar>(x: &T, n: usize) -> Result<BdMatrix<T>> {
    if x.is_negative() {
        return Err(HratpError::Domain(
            "monomial Wronskian decomposition needs x >= 0".into(),
        ));
    }
    Ok(wronskian_cells(x.clone(), n))
}

/// Decomposition of `J W J` for the monomial Wronskian at `x <= 0`.
pub fn bd_wronskian_monomials_j<T: Scalar>(x: &T, n: usize) -> Result<BdMatrix<T>> {
    if x.is_positive() {
        return Err(HratpError::Domain(
            "J-conjugated monomial Wronskian decomposition needs x <= 0".into(),
        ));
    }
    Ok(wronskian_cells(-x.clone(), n))
}

/// Decomposition of the Hilbert matrix `(1/(i+j-1))` of order `n + 1`.
pub fn bd_hilbert<T: Scalar>(n: usize) -> BdMatrix<T> {
    let order = n + 1;
    // ((i-1)!)^4 / ((2i-1)! (2i-2)!) built incrementally from the previous pivot.
    let mut piv = Vec::with_capacity(order);
    let mut p = T::one();
    for i in 1..=order {
        if i > 1 {
            let a = T::from_i64((i - 1) as i64);
            let a4 = a.powi(4);
            let b = (2 * i - 1) as i64;
            let c = (2 * i - 2) as i64;
            let d = (2 * i - 3) as i64;
            // (2i-1)!(2i-2)! / ((2i-3)!(2i-4)!) = (2i-1)(2i-2)(2i-2)(2i-3)
            let growth = T::from_i64(b) * T::from_i64(c) * T::from_i64(c) * T::from_i64(d);
            p = p * a4 / growth;
        }
        piv.push(p.clone());
    }
    square(order, |i0, j0| {
        let (i, j) = ((i0 + 1) as i64, (j0 + 1) as i64);
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => {
                T::from_i64((i - 1) * (i - 1)) / (T::from_i64(i + j - 1) * T::from_i64(i + j - 2))
            }
            std::cmp::Ordering::Equal => piv[i0].clone(),
            std::cmp::Ordering::Less => {
                T::from_i64((j - 1) * (j - 1)) / (T::from_i64(i + j - 1) * T::from_i64(i + j - 2))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd_core::{check_tp_signature, expand, DenseMatrix, TpSignature};
    use crate::scalar::ratio;
    use rug::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn nodes(v: &[i64]) -> NodeSequence<Rational> {
        NodeSequence::new(v.iter().map(|&x| r(x)).collect()).unwrap()
    }

    #[test]
    fn node_validation() {
        assert!(NodeSequence::new(vec![1.0, 2.0, 3.0]).is_ok());
        assert!(NodeSequence::new(vec![-1.0, -2.0]).is_ok());
        assert!(NodeSequence::new(vec![1.0, 1.0]).is_err());
        assert!(NodeSequence::new(vec![1.0, -2.0]).is_err());
        assert!(NodeSequence::new(vec![0.0, 1.0]).is_err());
        assert!(NodeSequence::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn abel_n3_matches_printed_factorization() {
        let q = ratio(3, 2);
        let alpha = ratio(-2, 5);
        let p = QAbelParams::new(q.clone(), alpha.clone(), 3).unwrap();
        let bd = bd_abel_change(&p);
        let i2 = q_integer(2, &q);
        let i3 = q_integer(3, &q);
        assert_eq!(*bd.get(2, 1), -alpha.clone() * i2.clone());
        assert_eq!(*bd.get(3, 2), -alpha.clone() * q.clone() * i3.clone() / i2.clone());
        let ratio32 = i3 / i2.clone();
        assert_eq!(*bd.get(3, 1), -alpha * ratio32.clone() * ratio32 * i2);
        assert_eq!(bd.pivots(), vec![r(1), r(1), q.clone(), q.clone() * q.clone() * q]);
        assert_eq!(*bd.get(1, 0), 0);
        assert_eq!(*bd.get(0, 3), 0);
    }

    #[test]
    fn abel_alpha_zero_is_diagonal() {
        let p = QAbelParams::new(r(2), r(0), 3).unwrap();
        let bd = bd_abel_change(&p);
        assert_eq!(bd, BdMatrix::diagonal(&[r(1), r(1), r(2), r(8)]));
        assert_eq!(bd_abel_change_j(&p), bd);
    }

    #[test]
    fn abel_j_example() {
        let p = QAbelParams::new(r(2), r(1), 3).unwrap();
        assert_eq!(*bd_abel_change_j(&p).get(2, 1), 3);
    }

    #[test]
    fn vandermonde_123() {
        let bd = bd_vandermonde(&nodes(&[1, 2, 3])).unwrap();
        assert_eq!(bd.pivots(), vec![r(1), r(1), r(2)]);
        assert_eq!(*bd.get(1, 0), 1);
        assert_eq!(*bd.get(2, 0), 1);
        assert_eq!(*bd.get(2, 1), 1);
        assert_eq!(*bd.get(0, 1), 1);
        assert_eq!(*bd.get(0, 2), 1);
        assert_eq!(*bd.get(1, 2), 2);
        assert_eq!(check_tp_signature(&bd), TpSignature::Stp);
        assert!(bd_vandermonde(&nodes(&[-1, -2])).is_err());
    }

    #[test]
    fn vandermonde_single_node() {
        let bd = bd_vandermonde(&nodes(&[7])).unwrap();
        assert_eq!(bd, BdMatrix::diagonal(&[r(1)]));
    }

    #[test]
    fn vandermonde_expands_exactly() {
        let t = [1, 2, 3, 4];
        let v = DenseMatrix::from_fn(4, 4, |i, j| r(t[i]).powi(j as u32));
        assert_eq!(expand(&bd_vandermonde(&nodes(&t)).unwrap()), v);
    }

    #[test]
    fn vandermonde_j_examples() {
        let bd = bd_vandermonde_j(&nodes(&[-1, -2, -3])).unwrap();
        assert_eq!(bd.pivots(), vec![r(1), r(1), r(2)]);
        assert_eq!(*bd.get(0, 1), 1);
        assert_eq!(*bd.get(1, 2), 2);
        assert!(bd.get(2, 1) == &r(1) && bd.get(1, 0) == &r(1));
        assert_eq!(bd_vandermonde_j(&nodes(&[-1])).unwrap(), BdMatrix::diagonal(&[r(1)]));
        let t = [-1, -2, -3, -4];
        let vj = DenseMatrix::from_fn(4, 4, |i, j| r(t[i]).powi(j as u32)).right_j();
        assert_eq!(expand(&bd_vandermonde_j(&nodes(&t)).unwrap()), vj);
        assert!(bd_vandermonde_j(&nodes(&[1, 2])).is_err());
    }

    fn monomial_wronskian(x: &Rational, n: usize) -> DenseMatrix<Rational> {
        DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
            if j < i {
                return r(0);
            }
            // d^i/dx^i x^j = j!/(j-i)! x^{j-i}
            let falling = ((j - i + 1)..=j).fold(r(1), |acc, k| acc * r(k as i64));
            falling * x.powi((j - i) as u32)
        })
    }

    #[test]
    fn wronskian_examples() {
        let bd = bd_wronskian_monomials(&r(0), 3).unwrap();
        assert_eq!(bd, BdMatrix::diagonal(&[r(1), r(1), r(2), r(6)]));
        let bd = bd_wronskian_monomials(&r(2), 3).unwrap();
        assert_eq!(expand(&bd), monomial_wronskian(&r(2), 3));
        assert_eq!(check_tp_signature(&bd), TpSignature::Tp);
        assert!(bd_wronskian_monomials(&r(-1), 3).is_err());
    }

    #[test]
    fn wronskian_j_examples() {
        assert_eq!(
            bd_wronskian_monomials_j(&r(0), 2).unwrap(),
            bd_wronskian_monomials(&r(0), 2).unwrap()
        );
        let bd = bd_wronskian_monomials_j(&r(-20), 3).unwrap();
        assert!((0..4).all(|i| ((i + 1)..4).all(|j| *bd.get(i, j) == 20)));
        let bd = bd_wronskian_monomials_j(&r(-1), 3).unwrap();
        assert_eq!(expand(&bd), monomial_wronskian(&r(-1), 3).j_conjugate());
        assert!(bd_wronskian_monomials_j(&r(1), 3).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(bd_hilbert::<Rational>(0), BdMatrix::diagonal(&[r(1)]));
        let bd = bd_hilbert::<Rational>(1);
        assert_eq!(*bd.get(1, 0), ratio(1, 2));
        assert_eq!(*bd.get(1, 1), ratio(1, 12));
        let h = DenseMatrix::from_fn(5, 5, |i, j| ratio(1, (i + j + 1) as i64));
        assert_eq!(expand(&bd_hilbert::<Rational>(4)), h);
        assert_eq!(check_tp_signature(&bd_hilbert::<Rational>(4)), TpSignature::Stp);
    }
}
