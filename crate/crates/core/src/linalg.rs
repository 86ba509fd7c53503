//! Exact dense linear algebra over `ℚ(ζ₈)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Internal("matrix is not square".into()));
    }
    Ok(n)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det_bareiss(m: &Matrix) -> Result<Scalar> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Scalar::zero()),
            }
        }
        let inv_prev = prev.inv()?;
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &t * &inv_prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Solves `a·x = b`; `None` if `a` is singular.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::Internal("right-hand side has the wrong length".into()));
    }
    let mut m: Matrix = a.iter().zip(b).map(|(r, y)| r.iter().cloned().chain([y.clone()]).collect()).collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(col, p);
        let inv = m[col][col].inv()?;
        for x in m[col].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Ok(Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    /// Leibniz expansion over all permutations.
    fn det_leibniz(m: &Matrix) -> Scalar {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Scalar::zero();
        loop {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let term: Scalar = (0..n).map(|i| m[i][perm[i]].clone()).product();
            total = if inversions % 2 == 0 { total + term } else { total - term };
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let cases = [
            ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]),
            ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]),
            ints(&[&[0, 0, 1, 2], &[1, 2, 0, 0], &[3, 1, 4, 1], &[5, 9, 2, 6]]),
            ints(&[&[1, 2], &[2, 4]]),
        ];
        for m in &cases {
            assert_eq!(det_bareiss(m).unwrap(), det_leibniz(m));
        }
        let z = Scalar::zeta8();
        let m = vec![vec![z.clone(), Scalar::one()], vec![Scalar::i(), z.conj()]];
        assert_eq!(det_bareiss(&m).unwrap(), det_leibniz(&m));
        assert_eq!(det_bareiss(&vec![]).unwrap(), Scalar::one());
    }

    #[test]
    fn solve_roundtrip() {
        let a = ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let x = [Scalar::from_int(1), Scalar::from_ratio(-1, 2), Scalar::i()];
        let b: Vec<Scalar> = a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        assert_eq!(solve(&a, &b).unwrap().unwrap(), x.to_vec());
        assert_eq!(solve(&ints(&[&[1, 2], &[2, 4]]), &[Scalar::one(), Scalar::one()]).unwrap(), None);
    }
}
