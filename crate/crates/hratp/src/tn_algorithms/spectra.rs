use super::work::Work;
use super::{require_certified, tn_product, HraReport};
use crate::bd_core::{transpose_bd, BdMatrix};
use crate::error::Result;
use crate::scalar::Scalar;

/// Decomposition of a tridiagonal matrix similar to `A`.
///
/// Each off-bidiagonal entry is removed by dropping its generator from the lower (or upper)
/// word and multiplying the opposite side by the same generator, which keeps the spectrum.
/// Entries are taken column by column, bottom first, so the dropped generator is always
/// the leftmost of the word.
pub fn tridiagonal_form<T: Scalar>(bd: &BdMatrix<T>) -> Result<BdMatrix<T>> {
    require_certified(bd, "tridiagonal reduction")?;
    let mut w = Work::new(bd);
    let n = w.order();
    for _side in 0..2 {
        for j in 0..n.saturating_sub(2) {
            for i in ((j + 2)..n).rev() {
                let x = w.cell(i, j);
                if x.is_zero() {
                    continue;
                }
                w.set_cell(i, j, T::zero());
                w.times_lower(i - 1, x);
            }
        }
        w.flip();
    }
    Ok(w.finish())
}

/// Eigenvalues of the symmetric matrix `B^T B` with `B` upper bidiagonal,
/// `q_i = B_{ii}^2`, `e_i = B_{i,i+1}^2`, by the zero-shift differential qd iteration.
/// Returned in descending order.
pub fn dqd_eigenvalues(q: &[f64], e: &[f64]) -> Vec<f64> {
    let m = q.len();
    assert_eq!(e.len(), m.saturating_sub(1), "need one off-diagonal fewer than diagonal");
    let mut q = q.to_vec();
    let mut e = e.to_vec();
    let tol = f64::EPSILON * f64::EPSILON;
    let negligible = |e: f64, a: f64, b: f64| e <= tol * a.min(b);
    let mut hi = m;
    let mut sweeps = 0usize;
    let cap = 200_000 * m.max(1);
    while hi > 1 {
        if negligible(e[hi - 2], q[hi - 2], q[hi - 1]) {
            e[hi - 2] = 0.0;
            hi -= 1;
            continue;
        }
        let mut lo = hi - 2;
        while lo > 0 && !negligible(e[lo - 1], q[lo - 1], q[lo]) {
            lo -= 1;
        }
        if lo > 0 {
            e[lo - 1] = 0.0;
        }
        let mut d = q[lo];
        for i in lo..hi - 1 {
            let qh = d + e[i];
            let t = q[i + 1] / qh;
            e[i] *= t;
            q[i] = qh;
            d *= t;
        }
        q[hi - 1] = d;
        sweeps += 1;
        if sweeps > cap {
            break;
        }
    }
    q.sort_by(|a, b| b.total_cmp(a));
    q
}

/// All eigenvalues of a TP-certified matrix, descending.
pub fn tn_eigenvalues(bd: &BdMatrix<f64>) -> Result<(Vec<f64>, HraReport)> {
    let t = tridiagonal_form(bd)?;
    let n = t.order();
    // T = F_1 D G_1 factors as the dqd pair q_i = d_i, e_i = d_i l_i u_i.
    let q: Vec<f64> = t.pivots();
    let e: Vec<f64> = (0..n - 1)
        .map(|i| *t.get(i, i) * *t.get(i + 1, i) * *t.get(i, i + 1))
        .collect();
    Ok((
        dqd_eigenvalues(&q, &e),
        HraReport::yes("TP-certified decomposition"),
    ))
}

/// All singular values of a TP-certified matrix, descending, as square roots of the
/// eigenvalues of `A^T A` whose decomposition is formed accurately.
pub fn tn_singular_values(bd: &BdMatrix<f64>) -> Result<(Vec<f64>, HraReport)> {
    require_certified(bd, "tn_singular_values")?;
    let ata = tn_product(&transpose_bd(bd), bd)?;
    let (ev, report) = tn_eigenvalues(&ata)?;
    Ok((ev.into_iter().map(f64::sqrt).collect(), report))
}
