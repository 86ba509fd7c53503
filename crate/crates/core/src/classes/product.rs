use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{var_bit, Signature};

/// `f(x) = constant · Π_b factors[b](x restricted to blocks[b])`, with the
/// finest possible partition of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub constant: Scalar,
    /// Variable blocks (1-based, ascending), ordered by smallest variable.
    pub blocks: Vec<Vec<usize>>,
    pub factors: Vec<Signature>,
}

struct Splitter<'a> {
    f: &'a Signature,
    alpha: usize,
}

impl Splitter<'_> {
    /// Whether the flattening of `f` with rows indexed by the variables in
    /// `mask` has rank one.
    fn separable(&self, mask: usize) -> bool {
        let f = self.f;
        let a = self.alpha;
        let fa = f.value(a);
        (0..f.values().len()).all(|x| {
            let p = f.value((x & mask) | (a & !mask));
            let q = f.value((a & mask) | (x & !mask));
            let lhs = f.value(x);
            if p.is_zero() || q.is_zero() {
                return lhs.is_zero();
            }
            !lhs.is_zero() && (lhs * fa) == (p * q)
        })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Variables that must share a block: a pair with a rank-2 slice, or a pair
/// of non-constant variables whose XOR is constant on the support.
fn forced_components(f: &Signature) -> Vec<usize> {
    let n = f.arity();
    let supp = f.support();
    let mut uf = UnionFind((0..=n).collect());
    for i in 1..=n {
        let bi = var_bit(n, i);
        for j in i + 1..=n {
            let bj = var_bit(n, j);
            if uf.find(i) == uf.find(j) {
                continue;
            }
            let first = supp[0];
            let constant = |m: usize| supp.iter().all(|&x| (x & m == 0) == (first & m == 0));
            let coupled = !constant(bi)
                && !constant(bj)
                && supp
                    .iter()
                    .all(|&x| ((x & bi != 0) ^ (x & bj != 0)) == ((first & bi != 0) ^ (first & bj != 0)));
            let rank2 = coupled
                || (0..f.values().len()).filter(|&b| b & (bi | bj) == 0).any(|b| {
                    let (v00, v11) = (f.value(b), f.value(b | bi | bj));
                    let (v01, v10) = (f.value(b | bj), f.value(b | bi));
                    let d1 = !v00.is_zero() && !v11.is_zero();
                    let d2 = !v01.is_zero() && !v10.is_zero();
                    (d1 || d2) && v00 * v11 != v01 * v10
                });
            if rank2 {
                uf.union(i, j);
            }
        }
    }
    (0..=n).map(|v| uf.find(v)).collect()
}

/// The unique finest tensor factorization of a nonzero signature.
pub fn primitive_decomposition(f: &Signature) -> Result<PrimitiveDecomposition> {
    let n = f.arity();
    let alpha = f.values().iter().position(|v| !v.is_zero()).ok_or(Error::ZeroSignature)?;
    if n == 0 {
        return Ok(PrimitiveDecomposition {
            constant: f.value(0).clone(),
            blocks: vec![],
            factors: vec![],
        });
    }
    let sp = Splitter { f, alpha };
    let roots = forced_components(f);
    let mut comps: Vec<usize> = Vec::new();
    let mut comp_of_root = std::collections::BTreeMap::new();
    for v in 1..=n {
        let idx = *comp_of_root.entry(roots[v]).or_insert_with(|| {
            comps.push(0);
            comps.len() - 1
        });
        comps[idx] |= var_bit(n, v);
    }
    // The forced components refine the true blocks. Grow each block from
    // its first component by the smallest union of components that splits
    // off with a rank-one flattening.
    let mut blocks: Vec<usize> = Vec::new();
    let mut remaining = comps;
    while !remaining.is_empty() {
        let head = remaining[0];
        let rest = &remaining[1..];
        let mut chosen = None;
        'size: for size in 0..=rest.len() {
            for combo in combinations(rest.len(), size) {
                let mask = combo.iter().fold(head, |m, &c| m | rest[c]);
                if size == rest.len() || sp.separable(mask) {
                    chosen = Some((mask, combo));
                    break 'size;
                }
            }
        }
        let (mask, combo) = chosen.expect("the full remainder always separates");
        blocks.push(mask);
        remaining = rest
            .iter()
            .enumerate()
            .filter(|(k, _)| !combo.contains(k))
            .map(|(_, &c)| c)
            .collect();
    }
    let fa = f.value(alpha);
    let mut block_vars: Vec<Vec<usize>> = blocks
        .iter()
        .map(|&m| (1..=n).filter(|&v| m & var_bit(n, v) != 0).collect())
        .collect();
    block_vars.sort();
    let factors = block_vars
        .iter()
        .map(|vars| {
            let k = vars.len();
            Signature::from_fn(k, |y| {
                let mut x = alpha;
                for (t, &v) in vars.iter().enumerate() {
                    let b = var_bit(n, v);
                    if y & (1 << (k - 1 - t)) != 0 {
                        x |= b;
                    } else {
                        x &= !b;
                    }
                }
                f.value(x).clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let constant = fa.pow(1 - block_vars.len() as i64)?;
    Ok(PrimitiveDecomposition {
        constant,
        blocks: block_vars,
        factors,
    })
}

/// Index sets of size `k` from `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A primitive factor that is neither unary nor supported on two antipodal
/// points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWitness {
    pub block: Vec<usize>,
    pub support_size: usize,
}

/// Evidence that `f ∉ 𝒫`, or `None` if `f ∈ 𝒫`. The zero signature counts
/// as a member.
pub fn product_witness(f: &Signature) -> Option<ProductWitness> {
    let Ok(d) = primitive_decomposition(f) else {
        return None;
    };
    d.blocks.iter().zip(&d.factors).find_map(|(block, g)| {
        if g.arity() <= 1 {
            return None;
        }
        let s = g.support();
        let full = (1usize << g.arity()) - 1;
        match s.as_slice() {
            [_] => None,
            [a, b] if a ^ b == full => None,
            _ => Some(ProductWitness {
                block: block.clone(),
                support_size: s.len(),
            }),
        }
    })
}

pub fn is_product(f: &Signature) -> bool {
    product_witness(f).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Operand, SymmetricSignature};

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    /// Rebuilds `f` from its decomposition.
    fn rebuild(f: &Signature, d: &PrimitiveDecomposition) -> Signature {
        let n = f.arity();
        Signature::from_fn(n, |x| {
            d.blocks.iter().zip(&d.factors).fold(d.constant.clone(), |acc, (vars, g)| {
                let y = vars
                    .iter()
                    .fold(0usize, |y, &v| (y << 1) | (x & var_bit(n, v) != 0) as usize);
                &acc * g.value(y)
            })
        })
        .unwrap()
    }

    #[test]
    fn crossover_splits_into_two_equalities() {
        let x = Signature::crossover();
        let d = primitive_decomposition(&x).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(d.factors, vec![sym(&[1, 0, 1]), sym(&[1, 0, 1])]);
        assert_eq!(rebuild(&x, &d), x);
        assert!(is_product(&x));
    }

    #[test]
    fn symmetric_members() {
        assert!(!is_product(&sym(&[1, 0, 1, 0])));
        assert!(is_product(&sym(&[0, 1, 0])));
        assert!(is_product(&sym(&[3, 0, 0, 0, -2])));
        assert!(is_product(&sym(&[1, 2, 4])));
        assert!(!is_product(&sym(&[0, 1, 1, 1])));
        assert!(!is_product(&sym(&[1, 1, 2])));
        assert!(is_product(&Signature::zero(3).unwrap()));
        assert!(!is_product(&sym(&[0, 1, 0, 0])));
    }

    #[test]
    fn decomposition_with_unaries_and_disequality() {
        let neq = sym(&[0, 1, 0]);
        let u = Signature::unary(Scalar::from_int(2), Scalar::i());
        let eq3 = sym(&[5, 0, 0, -1]);
        let a = neq.tensor(&u, &[Operand::Left, Operand::Right, Operand::Left]).unwrap();
        let f = a
            .tensor(&eq3, &[Operand::Right, Operand::Left, Operand::Right, Operand::Left, Operand::Right, Operand::Left])
            .unwrap();
        let d = primitive_decomposition(&f).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 3, 5], vec![2, 6], vec![4]]);
        assert_eq!(rebuild(&f, &d), f);
        assert!(is_product(&f));
    }

    #[test]
    fn parity_block_is_not_split() {
        let f = sym(&[1, 0, 1, 0]);
        let d = primitive_decomposition(&f).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2, 3]]);
        let w = product_witness(&f).unwrap();
        assert_eq!(w.support_size, 4);
    }

    #[test]
    fn not_all_equal_is_one_block() {
        let f = Signature::from_ints(3, &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap();
        let d = primitive_decomposition(&f).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(rebuild(&f, &d), f);
        assert_eq!(primitive_decomposition(&Signature::zero(2).unwrap()), Err(Error::ZeroSignature));
    }
}
