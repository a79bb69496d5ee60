//! Dense eigenvalue and singular value routines, generic over the arithmetic.

use super::real::Real;
use crate::error::{HratpError, Result};

fn sign<R: Real>(a: &R, b: &R) -> R {
    if *b >= b.lit(0.0) {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Reduction to upper Hessenberg form by stabilized elementary similarity transforms.
/// `a` is 1-based with row and column 0 unused.
fn hessenberg<R: Real>(a: &mut [Vec<R>], n: usize) {
    let zero = a[1][1].lit(0.0);
    for m in 2..n {
        let mut x = zero.clone();
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1].clone();
                i = j;
            }
        }
        if i != m {
            a.swap(i, m);
            for row in a.iter_mut().skip(1) {
                row.swap(i, m);
            }
        }
        if !x.is_zero() {
            for i in (m + 1)..=n {
                let y = a[i][m - 1].clone();
                if y.is_zero() {
                    continue;
                }
                let y = y / x.clone();
                a[i][m - 1] = zero.clone();
                for j in m..=n {
                    let v = y.clone() * a[m][j].clone();
                    a[i][j] = a[i][j].clone() - v;
                }
                for j in 1..=n {
                    let v = y.clone() * a[j][i].clone();
                    a[j][m] = a[j][m].clone() + v;
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR iteration.
/// Returns `(re, im)` pairs in the order they deflate.
#[allow(unused_assignments)]
fn hessenberg_qr<R: Real>(a: &mut [Vec<R>], n: usize) -> Result<Vec<(R, R)>> {
    let zero = a[1][1].lit(0.0);
    let eps = zero.epsilon();
    let mut out = Vec::with_capacity(n);
    let mut anorm = zero.clone();
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm = anorm + a[i][j].abs();
        }
    }
    let mut nn = n;
    let mut t = zero.clone();
    let (mut x, mut y, mut z, mut w) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
    let (mut p, mut q, mut r, mut s) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s.is_zero() {
                    s = anorm.clone();
                }
                if a[l][l - 1].abs() <= eps.clone() * s {
                    a[l][l - 1] = zero.clone();
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn].clone();
            if l == nn {
                out.push((x + t.clone(), zero.clone()));
                nn -= 1;
                break;
            }
            y = a[nn - 1][nn - 1].clone();
            w = a[nn][nn - 1].clone() * a[nn - 1][nn].clone();
            if l == nn - 1 {
                p = (y - x.clone()) * zero.lit(0.5);
                q = p.clone() * p.clone() + w.clone();
                z = q.abs().sqrt();
                x = x + t.clone();
                if q >= zero {
                    z = p.clone() + sign(&z, &p);
                    let first = x.clone() + z.clone();
                    let second = if z.is_zero() {
                        first.clone()
                    } else {
                        x.clone() - w / z
                    };
                    out.push((first, zero.clone()));
                    out.push((second, zero.clone()));
                } else {
                    out.push((x.clone() + p.clone(), -z.clone()));
                    out.push((x + p, z));
                }
                nn = nn.saturating_sub(2);
                break;
            }
            if its == 60 {
                return Err(HratpError::Domain(
                    "QR iteration did not converge".into(),
                ));
            }
            if its == 10 || its == 20 || its == 40 {
                t = t + x.clone();
                for i in 1..=nn {
                    a[i][i] = a[i][i].clone() - x.clone();
                }
                s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                x = zero.lit(0.75) * s.clone();
                y = x.clone();
                w = zero.lit(-0.4375) * s.clone() * s;
            }
            its += 1;
            let mut m = nn - 2;
            loop {
                z = a[m][m].clone();
                r = x.clone() - z.clone();
                s = y.clone() - z.clone();
                p = (r.clone() * s.clone() - w.clone()) / a[m + 1][m].clone() + a[m][m + 1].clone();
                q = a[m + 1][m + 1].clone() - z.clone() - r - s;
                r = a[m + 2][m + 1].clone();
                s = p.abs() + q.abs() + r.abs();
                p = p / s.clone();
                q = q / s.clone();
                r = r / s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= eps.clone() * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i][i - 2] = zero.clone();
                if i != m + 2 {
                    a[i][i - 3] = zero.clone();
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a[k][k - 1].clone();
                    q = a[k + 1][k - 1].clone();
                    r = zero.clone();
                    if k != nn - 1 {
                        r = a[k + 2][k - 1].clone();
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if !x.is_zero() {
                        p = p / x.clone();
                        q = q / x.clone();
                        r = r / x.clone();
                    }
                }
                s = sign(
                    &(p.clone() * p.clone() + q.clone() * q.clone() + r.clone() * r.clone()).sqrt(),
                    &p,
                );
                if !s.is_zero() {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1].clone();
                        }
                    } else {
                        a[k][k - 1] = -s.clone() * x.clone();
                    }
                    p = p + s.clone();
                    x = p.clone() / s.clone();
                    y = q.clone() / s.clone();
                    z = r.clone() / s.clone();
                    q = q / p.clone();
                    r = r / p.clone();
                    for j in k..=nn {
                        p = a[k][j].clone() + q.clone() * a[k + 1][j].clone();
                        if k != nn - 1 {
                            p = p + r.clone() * a[k + 2][j].clone();
                            a[k + 2][j] = a[k + 2][j].clone() - p.clone() * z.clone();
                        }
                        a[k + 1][j] = a[k + 1][j].clone() - p.clone() * y.clone();
                        a[k][j] = a[k][j].clone() - p.clone() * x.clone();
                    }
                    let mmin = nn.min(k + 3);
                    for i in l..=mmin {
                        p = x.clone() * a[i][k].clone() + y.clone() * a[i][k + 1].clone();
                        if k != nn - 1 {
                            p = p + z.clone() * a[i][k + 2].clone();
                            a[i][k + 2] = a[i][k + 2].clone() - p.clone() * r.clone();
                        }
                        a[i][k + 1] = a[i][k + 1].clone() - p.clone() * q.clone();
                        a[i][k] = a[i][k].clone() - p.clone();
                    }
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

/// All eigenvalues of a square matrix given by rows, as `(re, im)` pairs.
pub fn eigenvalues<R: Real>(rows: &[Vec<R>]) -> Result<Vec<(R, R)>> {
    let n = rows.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let zero = rows[0][0].lit(0.0);
    if n == 1 {
        return Ok(vec![(rows[0][0].clone(), zero)]);
    }
    let mut a = vec![vec![zero.clone(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = rows[i][j].clone();
        }
    }
    hessenberg(&mut a, n);
    hessenberg_qr(&mut a, n)
}

/// Singular values by one-sided Jacobi rotations, descending.
pub fn singular_values<R: Real>(rows: &[Vec<R>]) -> Vec<R> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 {
        return Vec::new();
    }
    let one = rows[0][0].lit(1.0);
    let eps = one.epsilon();
    // column-major copy
    let mut c: Vec<Vec<R>> = (0..n).map(|j| (0..m).map(|i| rows[i][j].clone()).collect()).collect();
    let dot = |u: &[R], v: &[R]| {
        u.iter()
            .zip(v)
            .fold(one.lit(0.0), |acc, (a, b)| acc + a.clone() * b.clone())
    };
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&c[p], &c[p]);
                let beta = dot(&c[q], &c[q]);
                let gamma = dot(&c[p], &c[q]);
                if gamma.is_zero() || gamma.abs() <= eps.clone() * (alpha.clone() * beta.clone()).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (one.lit(2.0) * gamma);
                let t = sign(&one, &zeta) / (zeta.abs() + (one.clone() + zeta.clone() * zeta).sqrt());
                let cs = one.clone() / (one.clone() + t.clone() * t.clone()).sqrt();
                let sn = cs.clone() * t;
                let (lo, hi) = c.split_at_mut(q);
                for (up, uq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let a = up.clone();
                    let b = uq.clone();
                    *up = cs.clone() * a.clone() - sn.clone() * b.clone();
                    *uq = sn.clone() * a + cs.clone() * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<R> = c.iter().map(|col| dot(col, col).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}
