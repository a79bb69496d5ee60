#![allow(dead_code)]

use hratp::bd_core::BdMatrix;
use rand::Rng;
use rug::Rational;

pub fn r(p: i64, q: i64) -> Rational {
    Rational::from((p, q))
}

pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let k = m.len();
    let mut d = Rational::from(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| m[i][c] != 0) else {
            return Rational::new();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..k {
            let f = Rational::from(&m[i][c] / &m[c][c]);
            for j in c..k {
                let t = Rational::from(&f * &m[c][j]);
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Smallest minor of `a` over all square submatrices, exactly.
pub fn min_minor(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    let mut lowest: Option<Rational> = None;
    for rows in &subsets {
        for cols in subsets.iter().filter(|c| c.len() == rows.len()) {
            let sub = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                .collect();
            let d = det(sub);
            if lowest.as_ref().is_none_or(|l| d < *l) {
                lowest = Some(d);
            }
        }
    }
    lowest.unwrap_or_default()
}

/// Random TP decomposition with a legal zero pattern: a zero below the diagonal is followed
/// by zeros further down its column, one above by zeros further along its row.
pub fn random_tp_bd(rng: &mut impl Rng, n: usize) -> BdMatrix<Rational> {
    let col_cut: Vec<usize> = (0..n).map(|_| rng.random_range(0..=n)).collect();
    let row_cut: Vec<usize> = (0..n).map(|_| rng.random_range(0..=n)).collect();
    let cells = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let keep = match i.cmp(&j) {
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Greater => i - j <= col_cut[j],
                std::cmp::Ordering::Less => j - i <= row_cut[i],
            };
            if keep {
                r(rng.random_range(1..9), rng.random_range(1..5))
            } else {
                Rational::new()
            }
        })
        .collect();
    BdMatrix::from_cells(n, cells).unwrap()
}
