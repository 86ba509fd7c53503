//! Signatures and the gadget algebra on them.
//!
//! A signature of arity `n` is the truth table of a function
//! `{0,1}ⁿ → Q(ζ)`, stored in lexicographic order with `x₁` as the most
//! significant bit: entry `0b0110` of an arity-4 signature is `f(0,1,1,0)`.
//! Variables are addressed 1-based throughout the public API, mirroring the
//! `x₁ … xₙ` naming, so `pin(f, 1, 0)` restricts the first variable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest arity accepted by any operation (2¹⁶ entries).
pub const MAX_ARITY: usize = 16;

/// Truth-table bit of variable `var` (1-based) in an arity-`arity` index.
#[inline]
pub fn var_bit(arity: usize, var: usize) -> usize {
    1 << (arity - var)
}

/// Formats a truth-table index as the bit string `x₁x₂…xₙ`.
pub fn bitstring(index: usize, arity: usize) -> String {
    (1..=arity)
        .map(|v| if index & var_bit(arity, v) != 0 { '1' } else { '0' })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    arity: usize,
    values: Vec<Scalar>,
}

/// Which operand of a tensor product supplies an output variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operand {
    Left,
    Right,
}

impl Signature {
    pub fn new(arity: usize, values: Vec<Scalar>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        if values.len() != 1 << arity {
            return Err(Error::InvalidSignature(format!(
                "arity {arity} needs {} values, got {}",
                1usize << arity,
                values.len()
            )));
        }
        Ok(Self { arity, values })
    }

    pub fn from_fn(arity: usize, f: impl FnMut(usize) -> Scalar) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        Ok(Self {
            arity,
            values: (0..1usize << arity).map(f).collect(),
        })
    }

    pub fn from_ints(arity: usize, values: &[i64]) -> Result<Self> {
        Self::new(arity, values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    /// An arity-0 signature.
    pub fn constant(value: Scalar) -> Self {
        Self {
            arity: 0,
            values: vec![value],
        }
    }

    pub fn zero(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |_| Scalar::zero())
    }

    pub fn unary(a: Scalar, b: Scalar) -> Self {
        Self {
            arity: 1,
            values: vec![a, b],
        }
    }

    /// `(=ₙ) = [1, 0, …, 0, 1]`.
    pub fn equality(arity: usize) -> Result<Self> {
        let full = (1usize << arity) - 1;
        Self::from_fn(arity, |x| {
            if x == 0 || x == full {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// `[0, 1, 0, …, 0]`: one at the inputs of Hamming weight one.
    pub fn exact_one(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |x| {
            if x.count_ones() == 1 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// `[1, 0, 1, 0, …]`: the even-weight indicator, i.e. the Hadamard image
    /// of `=ₙ` with the factor 2 dropped.
    pub fn even_parity(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |x| {
            if x.count_ones() % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// The crossover: `x₁ = x₃` and `x₂ = x₄`.
    pub fn crossover() -> Self {
        Self::from_fn(4, |x| match x {
            0b0000 | 0b0101 | 0b1010 | 0b1111 => Scalar::one(),
            _ => Scalar::zero(),
        })
        .expect("arity 4")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn value(&self, index: usize) -> &Scalar {
        &self.values[index]
    }

    /// Entry at the input `bits = (x₁, …, xₙ)`.
    pub fn at(&self, bits: &[u8]) -> &Scalar {
        assert_eq!(bits.len(), self.arity);
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// The symmetric form `[f₀, …, fₙ]` if the signature depends only on
    /// the Hamming weight.
    pub fn as_symmetric(&self) -> Option<SymmetricSignature> {
        let mut entries: Vec<Option<&Scalar>> = vec![None; self.arity + 1];
        for (x, v) in self.values.iter().enumerate() {
            let w = x.count_ones() as usize;
            match entries[w] {
                None => entries[w] = Some(v),
                Some(seen) if seen != v => return None,
                _ => {}
            }
        }
        Some(SymmetricSignature {
            entries: entries.into_iter().map(|e| e.unwrap().clone()).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            arity: self.arity,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Signature) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self {
            arity: self.arity,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    fn same_arity(&self, other: &Signature) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(format!(
                "{} vs {}",
                self.arity, other.arity
            )));
        }
        Ok(())
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var == 0 || var > self.arity {
            return Err(Error::VariableOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        Ok(())
    }

    /// Truth-table indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| !self.values[x].is_zero()).collect()
    }

    /// Splits `f = λ · g` where the first nonzero entry of `g` is 1.
    pub fn normalize(&self) -> Result<(Scalar, Signature)> {
        let lambda = self
            .values
            .iter()
            .find(|v| !v.is_zero())
            .ok_or(Error::ZeroSignature)?
            .clone();
        let inv = lambda.inv()?;
        Ok((lambda, self.scale(&inv)))
    }

    /// Renames variables: `g(x₁,…,xₙ) = f(x_{order[0]}, …, x_{order[n-1]})`.
    /// `order` must be a permutation of `1..=n`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let n = self.arity;
        if order.len() != n {
            return Err(Error::ArityMismatch(format!(
                "permutation of length {} for arity {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in order {
            self.check_var(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidSignature(format!("variable {v} repeated in permutation")));
            }
        }
        Self::from_fn(n, |y| {
            let mut x = 0;
            for (k, &v) in order.iter().enumerate() {
                if y & var_bit(n, v) != 0 {
                    x |= var_bit(n, k + 1);
                }
            }
            self.values[x].clone()
        })
    }

    /// Tensor product on disjoint variables. `interleaving[k]` names the
    /// operand that supplies output variable `k+1`; each operand's variables
    /// keep their internal order.
    pub fn tensor(&self, g: &Signature, interleaving: &[Operand]) -> Result<Self> {
        let left = interleaving.iter().filter(|&&o| o == Operand::Left).count();
        let right = interleaving.len() - left;
        if left != self.arity || right != g.arity {
            return Err(Error::MalformedInterleaving(format!(
                "interleaving assigns {left}+{right} variables to operands of arity {}+{}",
                self.arity, g.arity
            )));
        }
        let n = interleaving.len();
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge(n));
        }
        Self::from_fn(n, |x| {
            let (mut a, mut b) = (0usize, 0usize);
            for (k, op) in interleaving.iter().enumerate() {
                let bit = (x >> (n - 1 - k)) & 1;
                match op {
                    Operand::Left => a = (a << 1) | bit,
                    Operand::Right => b = (b << 1) | bit,
                }
            }
            &self.values[a] * &g.values[b]
        })
    }

    /// `f ⊗ g` with all of `f`'s variables first.
    pub fn tensor_concat(&self, g: &Signature) -> Result<Self> {
        let mut order = vec![Operand::Left; self.arity];
        order.extend(std::iter::repeat_n(Operand::Right, g.arity));
        self.tensor(g, &order)
    }

    /// `f^{xᵢ=b}`: the arity `n-1` restriction.
    pub fn pin(&self, var: usize, b: u8) -> Result<Self> {
        self.check_var(var)?;
        let pin = if b == 0 {
            Signature::unary(Scalar::one(), Scalar::zero())
        } else {
            Signature::unary(Scalar::zero(), Scalar::one())
        };
        self.derivative_on(&pin, &[var])
    }

    /// Contracts `g` into `f`: input `j` of `g` is joined to variable
    /// `matched[j-1]` of `f`. The unmatched variables of `f` keep their
    /// original relative order.
    pub fn derivative_on(&self, g: &Signature, matched: &[usize]) -> Result<Self> {
        let n = self.arity;
        let m = g.arity;
        if matched.len() != m {
            return Err(Error::ArityMismatch(format!(
                "{} matched variables for a gadget of arity {m}",
                matched.len()
            )));
        }
        if m > n {
            return Err(Error::ArityMismatch(format!(
                "gadget arity {m} exceeds signature arity {n}"
            )));
        }
        let mut used = vec![false; n + 1];
        for &v in matched {
            self.check_var(v)?;
            if std::mem::replace(&mut used[v], true) {
                return Err(Error::ArityMismatch(format!("variable {v} matched twice")));
            }
        }
        let free: Vec<usize> = (1..=n).filter(|&v| !used[v]).collect();
        let k = free.len();
        // Precompute the f-index contribution of each gadget assignment.
        let gadget_offsets: Vec<usize> = (0..1usize << m)
            .map(|z| {
                matched.iter().enumerate().fold(0, |acc, (j, &v)| {
                    if z & var_bit(m, j + 1) != 0 {
                        acc | var_bit(n, v)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        Self::from_fn(k, |y| {
            let base = free.iter().enumerate().fold(0, |acc, (j, &v)| {
                if y & var_bit(k, j + 1) != 0 {
                    acc | var_bit(n, v)
                } else {
                    acc
                }
            });
            let mut acc = Scalar::zero();
            for (z, off) in gadget_offsets.iter().enumerate() {
                let gv = &g.values[z];
                let fv = &self.values[base | off];
                if gv.is_zero() || fv.is_zero() {
                    continue;
                }
                acc += &(fv * gv);
            }
            acc
        })
    }

    /// The planar derivative `∂^{i-1,…,i-m}_g(f)`: input `j` of `g` is joined
    /// to variable `i-j (mod n)` of `f`, so `g`'s counterclockwise order
    /// meets `f`'s edges clockwise.
    pub fn derivative(&self, g: &Signature, position: usize) -> Result<Self> {
        let n = self.arity;
        if n == 0 {
            return Err(Error::ArityMismatch("derivative of an arity-0 signature".into()));
        }
        self.check_var(((position as i64 - 1).rem_euclid(n as i64) + 1) as usize)?;
        let matched: Vec<usize> = (1..=g.arity)
            .map(|j| ((position as i64 - j as i64 - 1).rem_euclid(n as i64) + 1) as usize)
            .collect();
        self.derivative_on(g, &matched)
    }

    /// `∂ᵏ_g(f)`: `k` copies of `g` attached one after another.
    pub fn derivative_repeated(&self, g: &Signature, k: usize) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative(g, 1)?;
        }
        Ok(f)
    }

    /// One counterclockwise step: `g(x₁,…,xₙ) = f(x₂,…,xₙ,x₁)`.
    pub fn rotate(&self) -> Self {
        let n = self.arity;
        if n < 2 {
            return self.clone();
        }
        let order: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
        self.reorder(&order).expect("rotation is a permutation")
    }

    /// `g(…, xᵢ, …) = f(…, 1-xᵢ, …)`.
    pub fn flip_var(&self, var: usize) -> Result<Self> {
        self.check_var(var)?;
        let bit = var_bit(self.arity, var);
        Self::from_fn(self.arity, |x| self.values[x ^ bit].clone())
    }

    /// Joins variable `var` of `f` to the first input of the binary `b`;
    /// `b`'s second input takes the place of `xᵢ`. With `b = [1,0,a]` this
    /// multiplies every entry with `xᵢ = 1` by `a`.
    pub fn connect_binary(&self, var: usize, b: &Signature) -> Result<Self> {
        self.check_var(var)?;
        if b.arity != 2 {
            return Err(Error::ArityMismatch(format!("expected binary, got arity {}", b.arity)));
        }
        let bit = var_bit(self.arity, var);
        Self::from_fn(self.arity, |x| {
            let y = (x & bit != 0) as usize;
            let lo = x & !bit;
            &(&self.values[lo] * &b.values[y]) + &(&self.values[lo | bit] * &b.values[2 | y])
        })
    }

    /// Matrix view with rows indexed by `row_vars` and columns by `col_vars`,
    /// each listed most significant first. Together they must cover every
    /// variable exactly once.
    pub fn matrix(&self, row_vars: &[usize], col_vars: &[usize]) -> Result<SignatureMatrix> {
        let n = self.arity;
        if row_vars.len() + col_vars.len() != n {
            return Err(Error::ArityMismatch(format!(
                "{} row + {} column variables for arity {n}",
                row_vars.len(),
                col_vars.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in row_vars.iter().chain(col_vars) {
            self.check_var(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::ArityMismatch(format!("variable {v} used twice")));
            }
        }
        let place = |vars: &[usize], idx: usize| {
            vars.iter().enumerate().fold(0usize, |acc, (k, &v)| {
                if idx & (1 << (vars.len() - 1 - k)) != 0 {
                    acc | var_bit(n, v)
                } else {
                    acc
                }
            })
        };
        let entries = (0..1usize << row_vars.len())
            .map(|r| {
                let rb = place(row_vars, r);
                (0..1usize << col_vars.len())
                    .map(|c| self.values[rb | place(col_vars, c)].clone())
                    .collect()
            })
            .collect();
        Ok(SignatureMatrix {
            row_vars: row_vars.to_vec(),
            col_vars: col_vars.to_vec(),
            entries,
        })
    }

    /// Rows by `x₁…x_k`, columns by the reversed suffix `xₙ…x_{k+1}`;
    /// for arity 4 and `k = 2` this is `M_{x₁x₂,x₄x₃}`.
    pub fn signature_matrix(&self, split: usize) -> Result<SignatureMatrix> {
        if split > self.arity {
            return Err(Error::VariableOutOfRange {
                index: split,
                arity: self.arity,
            });
        }
        let rows: Vec<usize> = (1..=split).collect();
        let cols: Vec<usize> = (split + 1..=self.arity).rev().collect();
        self.matrix(&rows, &cols)
    }

    /// Inverse of [`Signature::signature_matrix`].
    pub fn from_signature_matrix(m: &SignatureMatrix) -> Result<Self> {
        let n = m.row_vars.len() + m.col_vars.len();
        let mut values = vec![Scalar::zero(); 1 << n];
        for (r, row) in m.entries.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let mut x = 0usize;
                for (k, &var) in m.row_vars.iter().enumerate() {
                    if r & (1 << (m.row_vars.len() - 1 - k)) != 0 {
                        x |= var_bit(n, var);
                    }
                }
                for (k, &var) in m.col_vars.iter().enumerate() {
                    if c & (1 << (m.col_vars.len() - 1 - k)) != 0 {
                        x |= var_bit(n, var);
                    }
                }
                values[x] = v.clone();
            }
        }
        Self::new(n, values)
    }

    /// Links two arity-4 signatures: `f`'s `(x₃, x₄)` are joined to `g`'s
    /// `(x₂, x₁)`. The result's matrix is `M(f)·M(g)`.
    pub fn link(&self, g: &Signature) -> Result<Self> {
        if self.arity != 4 || g.arity != 4 {
            return Err(Error::ArityMismatch(format!(
                "link needs two arity-4 signatures, got {} and {}",
                self.arity, g.arity
            )));
        }
        let product = self.signature_matrix(2)?.mul(&g.signature_matrix(2)?)?;
        Self::from_signature_matrix(&product)
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature(arity {}: [", self.arity)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "])")
    }
}

/// `[f₀, …, fₙ]` indexed by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricSignature {
    entries: Vec<Scalar>,
}

impl SymmetricSignature {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidSignature("symmetric signature needs at least one entry".into()));
        }
        if entries.len() - 1 > MAX_ARITY {
            return Err(Error::ArityTooLarge(entries.len() - 1));
        }
        Ok(Self { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn arity(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn to_signature(&self) -> Signature {
        Signature::from_fn(self.arity(), |x| self.entries[x.count_ones() as usize].clone())
            .expect("arity checked at construction")
    }
}

impl From<&SymmetricSignature> for Signature {
    fn from(s: &SymmetricSignature) -> Self {
        s.to_signature()
    }
}

/// A signature laid out as a matrix over a split of its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMatrix {
    pub row_vars: Vec<usize>,
    pub col_vars: Vec<usize>,
    pub entries: Vec<Vec<Scalar>>,
}

impl SignatureMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Matrix product; the result keeps `self`'s row variables and `rhs`'s
    /// column variables.
    pub fn mul(&self, rhs: &SignatureMatrix) -> Result<SignatureMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::ArityMismatch(format!(
                "{}x{} times {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..rhs.cols())
                    .map(|c| row.iter().enumerate().map(|(k, a)| a * &rhs.entries[k][c]).sum())
                    .collect()
            })
            .collect();
        Ok(SignatureMatrix {
            row_vars: self.row_vars.clone(),
            col_vars: rhs.col_vars.clone(),
            entries,
        })
    }
}

/// JSON form: `{"arity": n, "values": [...]}` or `{"symmetric": [...]}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SignatureRepr {
    Full { arity: usize, values: Vec<Scalar> },
    Symmetric { symmetric: Vec<Scalar> },
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Full<'a> {
            arity: usize,
            values: &'a [Scalar],
        }
        Full {
            arity: self.arity,
            values: &self.values,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match SignatureRepr::deserialize(d)? {
            SignatureRepr::Full { arity, values } => {
                Signature::new(arity, values).map_err(D::Error::custom)
            }
            SignatureRepr::Symmetric { symmetric } => SymmetricSignature::new(symmetric)
                .map(|s| s.to_signature())
                .map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    fn full(n: usize, v: &[i64]) -> Signature {
        Signature::from_ints(n, v).unwrap()
    }

    #[test]
    fn bit_order_is_msb_first() {
        let f = full(3, &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(f.at(&[1, 0, 0]), &Scalar::from_int(4));
        assert_eq!(f.at(&[0, 0, 1]), &Scalar::from_int(1));
        assert_eq!(bitstring(0b011, 3), "011");
    }

    #[test]
    fn from_symmetric_examples() {
        assert_eq!(sym(&[1, 0, 1]), full(2, &[1, 0, 0, 1]));
        assert_eq!(sym(&[0, 1, 0, 0]), Signature::exact_one(3).unwrap());
        assert_eq!(sym(&[1, 0, 1, 0]), full(3, &[1, 0, 0, 1, 0, 1, 1, 0]));
    }

    #[test]
    fn as_symmetric_roundtrip() {
        let s = SymmetricSignature::from_ints(&[3, 1, 4, 1]).unwrap();
        assert_eq!(s.to_signature().as_symmetric(), Some(s));
        assert_eq!(full(2, &[1, 2, 3, 4]).as_symmetric(), None);
    }

    #[test]
    fn tensor_examples() {
        let u = sym(&[1, 0]);
        assert_eq!(u.tensor_concat(&u).unwrap(), full(2, &[1, 0, 0, 0]));
        let eq2 = sym(&[1, 0, 1]);
        let il = [Operand::Left, Operand::Right, Operand::Left, Operand::Right];
        assert_eq!(eq2.tensor(&eq2, &il).unwrap(), Signature::crossover());
        assert!(matches!(
            eq2.tensor(&eq2, &il[..3]),
            Err(Error::MalformedInterleaving(_))
        ));
    }

    #[test]
    fn tensor_of_disequalities_interleaved() {
        // [0,1,0] on (x1,x3) times [0,1,0] on (x2,x4), checked pointwise.
        let neq = sym(&[0, 1, 0]);
        let il = [Operand::Left, Operand::Right, Operand::Left, Operand::Right];
        let t = neq.tensor(&neq, &il).unwrap();
        for x in 0..16usize {
            let b = |v: usize| (x >> (4 - v)) & 1;
            let want = (b(1) != b(3) && b(2) != b(4)) as i64;
            assert_eq!(t.value(x), &Scalar::from_int(want), "x={}", bitstring(x, 4));
        }
    }

    #[test]
    fn pin_examples() {
        assert_eq!(Signature::equality(3).unwrap().pin(1, 0).unwrap(), sym(&[1, 0, 0]));
        assert_eq!(sym(&[1, 0, 1, 0]).pin(1, 1).unwrap(), sym(&[0, 1, 0]));
        // Pinning x1 = 0 in the crossover forces x3 = 0 and leaves x2 = x4.
        let p = Signature::crossover().pin(1, 0).unwrap();
        let il = [Operand::Right, Operand::Left, Operand::Right];
        assert_eq!(p, sym(&[1, 0]).tensor(&sym(&[1, 0, 1]), &il).unwrap());
        assert!(matches!(sym(&[1, 0]).pin(2, 0), Err(Error::VariableOutOfRange { .. })));
    }

    #[test]
    fn derivative_examples() {
        let d = sym(&[1, 0, 1, 0]).derivative(&sym(&[0, 1]), 1).unwrap();
        assert_eq!(d, sym(&[0, 1, 0]));
        let x = Scalar::from_int(2);
        let u = Signature::unary(Scalar::one(), x);
        assert_eq!(
            Signature::equality(4).unwrap().derivative_repeated(&u, 3).unwrap(),
            sym(&[1, 8])
        );
        let both = full(2, &[0, 0, 0, 1]);
        let c = both.derivative(&sym(&[1, 0, 1]), 1).unwrap();
        assert_eq!(c, Signature::constant(Scalar::one()));
        assert!(sym(&[1, 0]).derivative(&sym(&[1, 0, 1]), 1).is_err());
    }

    #[test]
    fn planar_derivative_matches_clockwise_edges() {
        // position i joins g's input j to f's variable i-j (mod n).
        let f = Signature::from_fn(4, |x| Scalar::from_int(x as i64 + 1)).unwrap();
        let g = full(2, &[1, 2, 3, 5]);
        assert_eq!(f.derivative(&g, 3).unwrap(), f.derivative_on(&g, &[2, 1]).unwrap());
        assert_eq!(f.derivative(&g, 1).unwrap(), f.derivative_on(&g, &[4, 3]).unwrap());
        assert_eq!(f.derivative(&g, 2).unwrap(), f.derivative_on(&g, &[1, 4]).unwrap());
    }

    #[test]
    fn rotate_examples() {
        let x = Signature::crossover();
        assert_eq!(x.rotate(), x);
        let s = sym(&[2, 7, 1, 8]);
        assert_eq!(s.rotate(), s);
        assert_eq!(full(2, &[1, 2, 3, 4]).rotate(), full(2, &[1, 3, 2, 4]));
    }

    #[test]
    fn rotate_moves_matrix_entries_along_figure_cycles() {
        // Weight-one entries cycle f0010 -> f0001 -> f1000 -> f0100 -> f0010
        // positions in M_{x1x2,x4x3}: (1,2) -> (1,3) -> (3,1) -> (2,1) -> (1,2)
        let f = Signature::from_fn(4, |x| Scalar::from_int(x as i64 + 1)).unwrap();
        let m = f.signature_matrix(2).unwrap();
        let r = f.rotate().signature_matrix(2).unwrap();
        let e = |m: &SignatureMatrix, i: usize, j: usize| m.entries[i - 1][j - 1].clone();
        assert_eq!(e(&r, 1, 3), e(&m, 1, 2));
        assert_eq!(e(&r, 1, 2), e(&m, 2, 1));
        assert_eq!(e(&r, 2, 1), e(&m, 3, 1));
        assert_eq!(e(&r, 3, 1), e(&m, 1, 3));
        // the weight-two swap (2,3) <-> (3,2)
        assert_eq!(e(&r, 2, 3), e(&m, 3, 2));
        assert_eq!(e(&r, 3, 2), e(&m, 2, 3));
        // the weight-two 4-cycle 14 <- 22 <- 41 <- 33 <- 14
        assert_eq!(e(&r, 1, 4), e(&m, 2, 2));
        assert_eq!(e(&r, 2, 2), e(&m, 4, 1));
        assert_eq!(e(&r, 4, 1), e(&m, 3, 3));
        assert_eq!(e(&r, 3, 3), e(&m, 1, 4));
        // weight three: 42 <- 43 <- 34 <- 24 <- 42
        assert_eq!(e(&r, 4, 2), e(&m, 4, 3));
        assert_eq!(e(&r, 4, 3), e(&m, 3, 4));
        assert_eq!(e(&r, 3, 4), e(&m, 2, 4));
        assert_eq!(e(&r, 2, 4), e(&m, 4, 2));
    }

    #[test]
    fn flip_examples() {
        assert_eq!(sym(&[1, 0]).flip_var(1).unwrap(), sym(&[0, 1]));
        assert_eq!(sym(&[1, 0, 1]).flip_var(1).unwrap(), sym(&[0, 1, 0]));
        let f = full(2, &[1, 2, 3, 4]);
        assert_eq!(f.flip_var(2).unwrap().flip_var(2).unwrap(), f);
    }

    #[test]
    fn crossover_matrix_and_link() {
        let x = Signature::crossover();
        let m = x.signature_matrix(2).unwrap();
        let want = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
        for (r, row) in want.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(m.entries[r][c], Scalar::from_int(v));
            }
        }
        let id = x.link(&x).unwrap();
        let mi = id.signature_matrix(2).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(mi.entries[r][c], Scalar::from_int((r == c) as i64));
            }
        }
        // (x1 = x4)(x2 = x3)
        for xx in 0..16usize {
            let b = |v: usize| (xx >> (4 - v)) & 1;
            let want = (b(1) == b(4) && b(2) == b(3)) as i64;
            assert_eq!(id.value(xx), &Scalar::from_int(want));
        }
        let f = Signature::from_fn(4, |k| Scalar::from_int(k as i64 * 3 - 7)).unwrap();
        assert_eq!(f.link(&id).unwrap(), f);
        assert_eq!(id.link(&f).unwrap(), f);
        assert!(sym(&[1, 0, 1]).link(&x).is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let f = Signature::from_fn(5, |k| Scalar::from_int(k as i64)).unwrap();
        for split in 0..=5 {
            let m = f.signature_matrix(split).unwrap();
            assert_eq!(Signature::from_signature_matrix(&m).unwrap(), f);
        }
    }

    #[test]
    fn support_and_normalize() {
        assert_eq!(sym(&[0, 1, 0]).support(), vec![0b01, 0b10]);
        let i = Scalar::i();
        let f = Signature::new(
            2,
            vec![Scalar::from_int(2), Scalar::zero(), Scalar::zero(), Scalar::from_int(2) * i.clone()],
        )
        .unwrap();
        let (lambda, g) = f.normalize().unwrap();
        assert_eq!(lambda, Scalar::from_int(2));
        assert_eq!(g.values(), &[Scalar::one(), Scalar::zero(), Scalar::zero(), i]);
        let supp: Vec<String> = Signature::crossover().support().iter().map(|&x| bitstring(x, 4)).collect();
        assert_eq!(supp, ["0000", "0101", "1010", "1111"]);
        assert_eq!(Signature::zero(2).unwrap().normalize(), Err(Error::ZeroSignature));
    }

    #[test]
    fn arity_cap() {
        assert_eq!(Signature::zero(17).unwrap_err(), Error::ArityTooLarge(17));
        assert!(Signature::zero(16).is_ok());
    }

    #[test]
    fn binary_connection_scales_entries() {
        let a = Scalar::from_int(5);
        let b = Signature::new(2, vec![Scalar::one(), Scalar::zero(), Scalar::zero(), a.clone()]).unwrap();
        let f = Signature::from_fn(3, |k| Scalar::from_int(k as i64 + 1)).unwrap();
        for var in 1..=3 {
            let h = f.connect_binary(var, &b).unwrap();
            for x in 0..8 {
                let want = if x & var_bit(3, var) != 0 { f.value(x) * &a } else { f.value(x).clone() };
                assert_eq!(h.value(x), &want);
            }
        }
    }

    #[test]
    fn json_forms() {
        let f: Signature = serde_json::from_str(r#"{"symmetric": ["1", "0", "i"]}"#).unwrap();
        assert_eq!(f.arity(), 2);
        assert_eq!(f.value(3), &Scalar::i());
        let back: Signature = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Signature>(r#"{"arity": 2, "values": ["1"]}"#).is_err());
    }
}
