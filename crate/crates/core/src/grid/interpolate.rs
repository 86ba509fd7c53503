use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::scalar::Scalar;

/// Coefficients `c` with `Σ_ℓ c_ℓ x_k^ℓ = y_k` for every `k`.
pub fn vandermonde_interpolate(xs: &[Scalar], ys: &[Scalar]) -> Result<Vec<Scalar>> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    for (k, x) in xs.iter().enumerate() {
        if xs[..k].contains(x) {
            return Err(Error::DuplicatePoint(k));
        }
    }
    let a: Vec<Vec<Scalar>> = xs
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(xs.len());
            let mut p = Scalar::one();
            for _ in 0..xs.len() {
                row.push(p.clone());
                p = &p * x;
            }
            row
        })
        .collect();
    solve(&a, ys)?.ok_or_else(|| Error::Internal("Vandermonde system with distinct points is singular".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn recovers_coefficients() {
        let c = vandermonde_interpolate(&ints(&[2, 4, 8]), &ints(&[17, 57, 209])).unwrap();
        assert_eq!(c, ints(&[1, 2, 3]));
        let xs = vec![Scalar::one(), Scalar::i(), -Scalar::one(), -Scalar::i()];
        let coeffs = vec![Scalar::zeta8(), Scalar::from_ratio(1, 3), Scalar::zero(), Scalar::sqrt2()];
        let ys: Vec<Scalar> = xs
            .iter()
            .map(|x| coeffs.iter().enumerate().map(|(l, c)| c * &x.pow(l as i64).unwrap()).sum())
            .collect();
        assert_eq!(vandermonde_interpolate(&xs, &ys).unwrap(), coeffs);
    }

    #[test]
    fn errors() {
        assert_eq!(
            vandermonde_interpolate(&ints(&[1, 2, 1]), &ints(&[0, 0, 0])),
            Err(Error::DuplicatePoint(2))
        );
        assert_eq!(
            vandermonde_interpolate(&ints(&[1, 2]), &ints(&[0])),
            Err(Error::LengthMismatch { xs: 2, ys: 1 })
        );
    }
}
