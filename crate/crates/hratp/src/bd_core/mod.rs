//! Bidiagonal decompositions `A = F_n ... F_1 D G_1 ... G_n` in compact storage.
//!
//! Cell `(i, j)` of a [`BdMatrix`] holds the Neville multiplier `m_{i,j}` of `A` when
//! `i > j`, the diagonal pivot when `i == j`, and the multiplier of `A^T` at `(j, i)`
//! when `i < j`. The factor `F_k` carries `m_{r, r-k}` at position `(r, r-1)`, so it is the
//! product of elementary bidiagonals `E_{k-1} E_k ... E_{n-1}` in increasing order, where
//! `E_g(x) = I + x e_{g+1} e_g^T` (0-based). `G_k` is the transpose of the same shape
//! built from the upper cells.

mod dense;
mod neville;

pub use dense::{j_vector, DenseMatrix};
pub use neville::{neville_eliminate, NevilleTrace};

use std::fmt;

use crate::error::{HratpError, Result};
use crate::scalar::Scalar;

/// Whether a decomposition satisfies the sign and zero-pattern conditions of total positivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpClass {
    TpCertified,
    Signed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpSignature {
    Stp,
    Tp,
    NotCertified,
}

#[derive(Clone, PartialEq)]
pub struct BdMatrix<T> {
    order: usize,
    cells: Vec<T>,
    tp_class: TpClass,
}

impl<T: Scalar> BdMatrix<T> {
    /// Builds from row-major cells; the TP class is derived, never supplied.
    pub fn from_cells(order: usize, cells: Vec<T>) -> Result<Self> {
        if order == 0 {
            return Err(HratpError::Domain("order must be positive".into()));
        }
        if cells.len() != order * order {
            return Err(HratpError::Domain(format!(
                "expected {} cells, got {}",
                order * order,
                cells.len()
            )));
        }
        let tp_class = match signature_of(order, &cells) {
            TpSignature::NotCertified => TpClass::Signed,
            _ => TpClass::TpCertified,
        };
        Ok(Self {
            order,
            cells,
            tp_class,
        })
    }

    pub fn from_dense_cells(cells: &DenseMatrix<T>) -> Result<Self> {
        if !cells.is_square() {
            return Err(HratpError::Domain("BD cell array must be square".into()));
        }
        Self::from_cells(cells.rows(), cells.data().to_vec())
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::from_dense_cells(&DenseMatrix::from_rows(rows)?)
    }

    pub fn identity(order: usize) -> Self {
        Self::diagonal(&vec![T::one(); order])
    }

    /// Decomposition of a diagonal matrix.
    pub fn diagonal(pivots: &[T]) -> Self {
        let n = pivots.len();
        let cells = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if i == j {
                    pivots[i].clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        Self::from_cells(n, cells).expect("well-formed diagonal")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.cells[i * self.order + j]
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<T> {
        self.cells
    }

    pub fn tp_class(&self) -> TpClass {
        self.tp_class
    }

    pub fn is_tp_certified(&self) -> bool {
        self.tp_class == TpClass::TpCertified
    }

    pub fn pivots(&self) -> Vec<T> {
        (0..self.order).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn to_dense_cells(&self) -> DenseMatrix<T> {
        DenseMatrix::from_vec(self.order, self.order, self.cells.clone()).expect("square")
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> BdMatrix<U> {
        BdMatrix::from_cells(self.order, self.cells.iter().map(f).collect()).expect("same shape")
    }

    pub fn to_f64(&self) -> BdMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Text form: a `BD n=<order>` header, then one space-separated row per line.
    pub fn serialize(&self) -> String {
        let mut out = format!("BD n={}\n", self.order);
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| HratpError::Parse("empty input".into()))?;
        let order: usize = header
            .trim()
            .strip_prefix("BD n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| HratpError::Parse(format!("bad header {header:?}")))?;
        let mut cells = Vec::with_capacity(order * order);
        for (r, line) in lines.enumerate() {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != order {
                return Err(HratpError::Parse(format!(
                    "row {} has {} entries, expected {order}",
                    r + 1,
                    row.len()
                )));
            }
            for tok in row {
                let v = tok
                    .parse::<T>()
                    .map_err(|_| HratpError::Parse(format!("bad entry {tok:?}")))?;
                cells.push(v);
            }
        }
        if cells.len() != order * order {
            return Err(HratpError::Parse(format!(
                "expected {order} rows, got {}",
                cells.len() / order.max(1)
            )));
        }
        Self::from_cells(order, cells)
    }
}

impl<T: fmt::Display> fmt::Debug for BdMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BdMatrix n={} ({:?})", self.order, self.tp_class)?;
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.cells[i * self.order + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Zero pattern making the factorization unique: below the diagonal a zero forces zeros
/// further down its column, above the diagonal a zero forces zeros further along its row.
pub(crate) fn zero_pattern_holds<T: Scalar>(order: usize, cells: &[T]) -> bool {
    let at = |i: usize, j: usize| &cells[i * order + j];
    for j in 0..order {
        let mut seen_zero = false;
        for i in (j + 1)..order {
            if at(i, j).is_zero() {
                seen_zero = true;
            } else if seen_zero {
                return false;
            }
        }
    }
    for i in 0..order {
        let mut seen_zero = false;
        for j in (i + 1)..order {
            if at(i, j).is_zero() {
                seen_zero = true;
            } else if seen_zero {
                return false;
            }
        }
    }
    true
}

fn signature_of<T: Scalar>(order: usize, cells: &[T]) -> TpSignature {
    let mut strict = true;
    for i in 0..order {
        for j in 0..order {
            let v = &cells[i * order + j];
            if i == j {
                if !v.is_positive() {
                    return TpSignature::NotCertified;
                }
            } else if v.is_negative() {
                return TpSignature::NotCertified;
            } else if v.is_zero() {
                strict = false;
            }
        }
    }
    if strict {
        TpSignature::Stp
    } else if zero_pattern_holds(order, cells) {
        TpSignature::Tp
    } else {
        TpSignature::NotCertified
    }
}

pub fn check_tp_signature<T: Scalar>(bd: &BdMatrix<T>) -> TpSignature {
    signature_of(bd.order, &bd.cells)
}

/// Decomposition from the Neville eliminations of `a` and `a^T`.
pub fn bd_from_dense<T: Scalar>(a: &DenseMatrix<T>) -> Result<BdMatrix<T>> {
    let lower = neville_eliminate(a)?;
    let upper = neville_eliminate(&a.transpose())?;
    let n = a.rows();
    let cells = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Greater => lower.multipliers[(i, j)].clone(),
                std::cmp::Ordering::Equal => lower.pivots[i].clone(),
                std::cmp::Ordering::Less => upper.multipliers[(j, i)].clone(),
            }
        })
        .collect();
    BdMatrix::from_cells(n, cells)
}

/// Multiplies the factorization out. With nonnegative cells every update adds
/// products of nonnegative numbers.
pub fn expand<T: Scalar>(bd: &BdMatrix<T>) -> DenseMatrix<T> {
    let n = bd.order;
    let mut m = DenseMatrix::diagonal(&bd.pivots());
    // M <- D G_1 ... G_{n-1}; G_k = E^U_{n-2} ... E^U_{k-1}, right-multiplied in that order.
    for k in 1..n {
        for g in ((k - 1)..(n - 1)).rev() {
            let x = bd.get(g + 1 - k, g + 1);
            if x.is_zero() {
                continue;
            }
            for r in 0..n {
                let add = x.clone() * m[(r, g)].clone();
                if !add.is_zero() {
                    m[(r, g + 1)] = m[(r, g + 1)].clone() + add;
                }
            }
        }
    }
    // M <- F_{n-1} ... F_1 M; F_k = E_{k-1} ... E_{n-2}, applied right to left.
    for k in 1..n {
        for g in ((k - 1)..(n - 1)).rev() {
            let x = bd.get(g + 1, g + 1 - k);
            if x.is_zero() {
                continue;
            }
            for c in 0..n {
                let add = x.clone() * m[(g, c)].clone();
                if !add.is_zero() {
                    m[(g + 1, c)] = m[(g + 1, c)].clone() + add;
                }
            }
        }
    }
    m
}

/// Decomposition of `A^T`: cells mirrored across the diagonal.
pub fn transpose_bd<T: Scalar>(bd: &BdMatrix<T>) -> BdMatrix<T> {
    let n = bd.order;
    let cells = (0..n * n)
        .map(|idx| bd.get(idx % n, idx / n).clone())
        .collect();
    BdMatrix::from_cells(n, cells).expect("same shape")
}

/// Decomposition of `J A J` with `J = diag((-1)^i)`: off-diagonal cells negated.
pub fn j_conjugate_bd<T: Scalar>(bd: &BdMatrix<T>) -> BdMatrix<T> {
    let n = bd.order;
    let cells = bd
        .cells
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            if idx / n == idx % n {
                v.clone()
            } else {
                -v.clone()
            }
        })
        .collect();
    BdMatrix::from_cells(n, cells).expect("same shape")
}
