use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Exact Pfaffian of a skew-symmetric matrix by elimination. Each step
/// pivots row `k` onto a nonzero `m[k][k+1]` and clears the rest of row `k`
/// with a congruence of determinant 1, so
/// `Pf(M) = m[k][k+1] · Pf(M without k, k+1)`.
pub fn pfaffian(m: &Matrix) -> Result<Scalar> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSkewSymmetric);
    }
    for i in 0..n {
        for j in i..n {
            if m[i][j] != -m[j][i].clone() {
                return Err(Error::NotSkewSymmetric);
            }
        }
    }
    if n % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let mut a = m.clone();
    let mut pf = Scalar::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k + 1 {
            a.swap(k + 1, p);
            for row in a.iter_mut() {
                row.swap(k + 1, p);
            }
            pf = -pf;
        }
        let piv = a[k][k + 1].clone();
        pf = &pf * &piv;
        let inv = piv.inv()?;
        for i in k + 2..n {
            if a[k][i].is_zero() {
                continue;
            }
            let c = &a[k][i] * &inv;
            // row_i -= c·row_{k+1}, then col_i -= c·col_{k+1}
            for j in k..n {
                let t = &c * &a[k + 1][j];
                a[i][j] = &a[i][j] - &t;
            }
            for j in k..n {
                let t = &c * &a[j][k + 1];
                a[j][i] = &a[j][i] - &t;
            }
        }
    }
    Ok(pf)
}
