use serde::{Deserialize, Serialize};

use crate::signature::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    /// Nonzero entries of both weights.
    None,
    Zero,
}

pub fn parity_of(f: &Signature) -> Parity {
    let (mut even, mut odd) = (false, false);
    for (x, v) in f.values().iter().enumerate() {
        if !v.is_zero() {
            if x.count_ones() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
    }
    match (even, odd) {
        (true, true) => Parity::None,
        (true, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (false, false) => Parity::Zero,
    }
}
