//! q-integers, q-factorials, Gaussian binomials and q-Abel polynomials.

use crate::error::{HratpError, Result};
use crate::scalar::Scalar;

/// Below this distance from 1 the floating closed form `(1-q^m)/(1-q)` loses about
/// `1/(m|1-q|)` ulps to cancellation, so the positive sum is used instead. At or above it
/// the closed form amplifies rounding by at most 3.
pub const SUMMATION_THRESHOLD: f64 = 0.5;

/// Parameters of a q-Abel family: deformation `q > 0`, shift `alpha`, maximal degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QAbelParams<T> {
    pub q: T,
    pub alpha: T,
    pub n: usize,
}

impl<T: Scalar> QAbelParams<T> {
    pub fn new(q: T, alpha: T, n: usize) -> Result<Self> {
        if !q.is_positive() {
            return Err(HratpError::Domain(format!("q must be positive, got {q}")));
        }
        Ok(Self { q, alpha, n })
    }

    /// Order of the matrices built from this family.
    pub fn order(&self) -> usize {
        self.n + 1
    }
}

/// `[m] = 1 + q + ... + q^(m-1)`.
pub fn q_integer<T: Scalar>(m: usize, q: &T) -> T {
    if m == 0 {
        return T::zero();
    }
    let near_one = (1.0 - q.to_f64()).abs() < SUMMATION_THRESHOLD;
    if T::is_exact() || near_one {
        let mut acc = T::zero();
        let mut p = T::one();
        for _ in 0..m {
            acc = acc + p.clone();
            p = p * q.clone();
        }
        acc
    } else {
        (T::one() - q.powi(m as u32)) / (T::one() - q.clone())
    }
}

/// `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial<T: Scalar>(m: usize, q: &T) -> T {
    (1..=m).fold(T::one(), |acc, t| acc * q_integer(t, q))
}

/// Gaussian binomial `[m choose k]_q`; zero outside `0 <= k <= m`.
///
/// Evaluated as `prod_{t=1}^{k} [m-k+t]/[t]`, multiplying and dividing in turn.
pub fn q_binomial<T: Scalar>(m: i64, k: i64, q: &T) -> T {
    if k < 0 || m < 0 || k > m {
        return T::zero();
    }
    let k = k.min(m - k) as usize;
    let m = m as usize;
    let mut acc = T::one();
    for t in 1..=k {
        acc = acc * q_integer(m - k + t, q);
        acc = acc / q_integer(t, q);
    }
    acc
}

/// Ordinary `C(m, 2)` for small nonnegative `m`.
pub(crate) fn choose2(m: usize) -> u32 {
    if m < 2 {
        0
    } else {
        (m * (m - 1) / 2) as u32
    }
}

/// `A_m(x) = x * prod_{j=1}^{m-1} (x q^j - alpha [m])`, with `A_0 = 1`.
pub fn q_abel_eval<T: Scalar>(params: &QAbelParams<T>, m: usize, x: &T) -> Result<T> {
    if m > params.n {
        return Err(HratpError::Domain(format!(
            "degree {m} exceeds family bound {}",
            params.n
        )));
    }
    if m == 0 {
        return Ok(T::one());
    }
    let shift = params.alpha.clone() * q_integer(m, &params.q);
    let mut acc = x.clone();
    let mut qj = T::one();
    for _ in 1..m {
        qj = qj * params.q.clone();
        acc = acc * (x.clone() * qj.clone() - shift.clone());
    }
    Ok(acc)
}

/// Entry `l_{i,j}` (1-based) of the lower triangular matrix taking monomials to q-Abel polynomials.
pub fn q_abel_monomial_coeff<T: Scalar>(params: &QAbelParams<T>, i: usize, j: usize) -> Result<T> {
    let order = params.order();
    if i == 0 || j == 0 || i > order || j > order {
        return Err(HratpError::Domain(format!(
            "index ({i},{j}) outside 1..={order}"
        )));
    }
    if j > i {
        return Ok(T::zero());
    }
    if j == 1 {
        return Ok(if i == 1 { T::one() } else { T::zero() });
    }
    let base = -(params.alpha.clone() * q_integer(i - 1, &params.q));
    let value = base.powi((i - j) as u32)
        * params.q.powi(choose2(j - 1))
        * q_binomial((i - 2) as i64, (i - j) as i64, &params.q);
    Ok(value)
}

/// The full change-of-basis matrix as row-major entries `l_{i,j}`.
pub fn q_abel_change_matrix<T: Scalar>(params: &QAbelParams<T>) -> Vec<Vec<T>> {
    let order = params.order();
    (1..=order)
        .map(|i| {
            (1..=order)
                .map(|j| q_abel_monomial_coeff(params, i, j).expect("indices in range"))
                .collect()
        })
        .collect()
}

/// `S_{k,i} = sum_{l=0}^{k} (-1)^l q^{C(l+1,2)} [k choose l] [i-l choose k]`, term by term.
pub fn lemma1_sum<T: Scalar>(k: usize, i: usize, q: &T) -> Result<T> {
    if i < k {
        return Err(HratpError::Domain(format!("need i >= k, got i={i}, k={k}")));
    }
    let mut acc = T::zero();
    for l in 0..=k {
        let term = q.powi(choose2(l + 1))
            * q_binomial(k as i64, l as i64, q)
            * q_binomial((i - l) as i64, k as i64, q);
        acc = if l % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use rug::Rational;

    fn params(q: Rational, alpha: Rational, n: usize) -> QAbelParams<Rational> {
        QAbelParams::new(q, alpha, n).unwrap()
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(5, &1.0), 5.0);
        assert_eq!(q_integer(0, &2.0), 0.0);
        assert_eq!(q_integer(3, &2.0), 7.0);
        assert_eq!(q_integer(3, &Rational::from(2)), 7);
    }

    #[test]
    fn q_integer_near_one_uses_summation() {
        let q = 1.0 + 1e-12;
        let v = q_integer(10, &q);
        assert!((v - 10.0).abs() < 1e-9);
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0, &3.0), 1.0);
        assert_eq!(q_factorial(3, &1.0), 6.0);
        assert_eq!(q_factorial(3, &2.0), 21.0);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(4, 0, &7.0), 1.0);
        assert_eq!(q_binomial(4, 2, &1.0), 6.0);
        assert_eq!(q_binomial(4, 2, &2.0), 35.0);
        assert_eq!(q_binomial(4, 5, &2.0), 0.0);
        assert_eq!(q_binomial(4, -1, &2.0), 0.0);
    }

    #[test]
    fn q_abel_eval_examples() {
        let p = QAbelParams::new(0.7, -2.0, 5).unwrap();
        assert_eq!(q_abel_eval(&p, 0, &17.3).unwrap(), 1.0);
        assert_eq!(q_abel_eval(&p, 1, &4.5).unwrap(), 4.5);
        let p = QAbelParams::new(1.0, 1.0, 3).unwrap();
        assert_eq!(q_abel_eval(&p, 2, &3.0).unwrap(), 3.0);
        assert!(q_abel_eval(&p, 4, &3.0).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let p = params(ratio(2, 3), ratio(-5, 2), 4);
        assert_eq!(q_abel_monomial_coeff(&p, 1, 1).unwrap(), 1);
        let expected = -(p.alpha.clone() * q_integer(2, &p.q));
        assert_eq!(q_abel_monomial_coeff(&p, 3, 2).unwrap(), expected);
        let p = params(Rational::from(1), Rational::from(1), 4);
        assert_eq!(q_abel_monomial_coeff(&p, 4, 2).unwrap(), 9);
        assert!(q_abel_monomial_coeff(&p, 6, 1).is_err());
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_sum(0, 5, &Rational::from(2)).unwrap(), 1);
        assert_eq!(lemma1_sum(1, 1, &Rational::from(1)).unwrap(), 1);
        assert_eq!(lemma1_sum(3, 7, &ratio(3, 2)).unwrap(), 1);
        assert!(lemma1_sum(3, 2, &Rational::from(1)).is_err());
    }

    #[test]
    fn rejects_nonpositive_q() {
        assert!(QAbelParams::new(0.0, 1.0, 2).is_err());
        assert!(QAbelParams::new(-1.0, 1.0, 2).is_err());
    }
}
