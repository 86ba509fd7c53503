use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parity::{parity_of, Parity};
use crate::scalar::Scalar;
use crate::signature::{bitstring, var_bit, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchgateWitness {
    /// Nonzero entries of both parities.
    Parity { even_index: String, odd_index: String },
    /// The identity `Σᵢ (-1)ⁱ f_{α⊕e_{pᵢ}} f_{α⊕P⊕e_{pᵢ}} = 0` fails.
    Identity { alpha: String, positions: Vec<usize> },
}

/// Position vectors of even length at least 4, ordered by length and then
/// lexicographically. Shorter ones give trivial identities under parity.
pub fn position_vectors(n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for p in start..=n {
            cur.push(p);
            go(p + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in (4..=n).step_by(2) {
        go(1, n, len, &mut Vec::new(), &mut out);
    }
    out
}

fn identity_holds(f: &Signature, alpha: usize, positions: &[usize], mask: usize) -> bool {
    let n = f.arity();
    let mut acc = Scalar::zero();
    for (i, &p) in positions.iter().enumerate() {
        let e = var_bit(n, p);
        let a = f.value(alpha ^ e);
        let b = f.value(alpha ^ mask ^ e);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let t = a * b;
        // (-1)^i with 1-based i
        if i % 2 == 0 {
            acc -= &t;
        } else {
            acc += &t;
        }
    }
    acc.is_zero()
}

/// Evidence that `f ∉ ℳ`, or `None` if `f` is a matchgate signature. The
/// scan runs over patterns `α` ascending and, for each, position vectors in
/// the order of [`position_vectors`]; the first failure is reported. Only
/// identities that can be nonzero under the Parity Condition are evaluated.
pub fn matchgate_witness(f: &Signature) -> Option<MatchgateWitness> {
    let n = f.arity();
    let want_alpha_parity = match parity_of(f) {
        Parity::Zero => return None,
        Parity::None => {
            let nz = |w: u32| {
                (0..f.values().len())
                    .find(|&x| x.count_ones() % 2 == w && !f.value(x).is_zero())
                    .expect("both parities present")
            };
            return Some(MatchgateWitness::Parity {
                even_index: bitstring(nz(0), n),
                odd_index: bitstring(nz(1), n),
            });
        }
        // Terms f_{α⊕e} f_{α⊕P⊕e} need wt(α)+1 to match the support parity.
        Parity::Even => 1,
        Parity::Odd => 0,
    };
    let positions = position_vectors(n);
    if positions.is_empty() {
        return None;
    }
    let masks: Vec<usize> = positions
        .iter()
        .map(|ps| ps.iter().map(|&p| var_bit(n, p)).fold(0, |a, b| a | b))
        .collect();
    (0..1usize << n)
        .into_par_iter()
        .filter(|a| a.count_ones() % 2 == want_alpha_parity)
        .find_map_first(|alpha| {
            positions
                .iter()
                .zip(&masks)
                .find(|(ps, &m)| !identity_holds(f, alpha, ps, m))
                .map(|(ps, _)| MatchgateWitness::Identity {
                    alpha: bitstring(alpha, n),
                    positions: ps.clone(),
                })
        })
}

pub fn is_matchgate(f: &Signature) -> bool {
    matchgate_witness(f).is_none()
}
