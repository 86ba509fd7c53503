use crate::scalar::Scalar;
use crate::signature::{var_bit, Signature};

/// `f = scale · u₁ ⊗ … ⊗ uₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degenerate {
    pub scale: Scalar,
    pub factors: Vec<Signature>,
}

/// Unary factors of a degenerate signature, or `None` if `f` is not a
/// tensor product of unaries. The zero signature is degenerate with
/// `scale = 0`.
pub fn degenerate_factors(f: &Signature) -> Option<Degenerate> {
    let n = f.arity();
    let ones = || -> Vec<Signature> { (0..n).map(|_| Signature::unary(Scalar::one(), Scalar::one())).collect() };
    let Some(alpha) = f.values().iter().position(|v| !v.is_zero()) else {
        return Some(Degenerate {
            scale: Scalar::zero(),
            factors: ones(),
        });
    };
    if n == 0 {
        return Some(Degenerate {
            scale: f.value(0).clone(),
            factors: vec![],
        });
    }
    // With u_j(b) = f(α with x_j := b), f is degenerate iff
    // f(x) · f(α)^{n-1} = Π_j u_j(x_j) for every x.
    let fa = f.value(alpha);
    let u: Vec<[Scalar; 2]> = (1..=n)
        .map(|j| {
            let bit = var_bit(n, j);
            [f.value(alpha & !bit).clone(), f.value(alpha | bit).clone()]
        })
        .collect();
    let fa_pow = (1..n).fold(Scalar::one(), |acc, _| &acc * fa);
    for x in 0..1usize << n {
        let mut prod = Scalar::one();
        for (j, uj) in u.iter().enumerate() {
            let b = (x & var_bit(n, j + 1) != 0) as usize;
            if uj[b].is_zero() {
                prod = Scalar::zero();
                break;
            }
            prod = &prod * &uj[b];
        }
        let lhs = f.value(x);
        if lhs.is_zero() != prod.is_zero() || (!prod.is_zero() && (lhs * &fa_pow) != prod) {
            return None;
        }
    }
    Some(Degenerate {
        scale: fa_pow.inv().expect("f(α) is nonzero"),
        factors: u.into_iter().map(|[a, b]| Signature::unary(a, b)).collect(),
    })
}

pub fn is_degenerate(f: &Signature) -> bool {
    degenerate_factors(f).is_some()
}
