//! Holographic transformations: `T^{⊗n}` acting on signatures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// The 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Transform2x2 {
    pub m: [[Scalar; 2]; 2],
}

/// Which side of a bipartite grid a transform acts on. Column-side
/// signatures become `T⁻¹f`, row-side signatures become `fT`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Row,
    Column,
}

impl Transform2x2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    /// `H₂ = [[1, 1], [1, -1]]`, without the `1/√2`.
    pub fn hadamard() -> Self {
        Self::from_ints(1, 1, 1, -1)
    }

    /// The orthogonal Hadamard matrix `H₂/√2`.
    pub fn hadamard_normalized() -> Self {
        let s = Scalar::sqrt2().inv().expect("√2 is nonzero");
        Self::new(s.clone(), s.clone(), s.clone(), -s)
    }

    pub fn diag(a: Scalar, b: Scalar) -> Self {
        Self::new(a, Scalar::zero(), Scalar::zero(), b)
    }

    /// Named constants: `H2`, `H2/sqrt2`, `I`, `X`, `diag(1,i)`,
    /// `diag(1,-i)`, `diag(1,zeta8)`, `diag(1,zeta8^k)`.
    pub fn named(name: &str) -> Option<Self> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "H2" => return Some(Self::hadamard()),
            "H2/sqrt2" => return Some(Self::hadamard_normalized()),
            "I" => return Some(Self::identity()),
            "X" => return Some(Self::from_ints(0, 1, 1, 0)),
            "diag(1,i)" => return Some(Self::diag(Scalar::one(), Scalar::i())),
            "diag(1,-i)" => return Some(Self::diag(Scalar::one(), -Scalar::i())),
            "diag(1,zeta8)" => return Some(Self::diag(Scalar::one(), Scalar::zeta8())),
            _ => {}
        }
        let k = compact.strip_prefix("diag(1,zeta8^")?.strip_suffix(')')?;
        let k: i64 = k.parse().ok()?;
        Some(Self::diag(Scalar::one(), Scalar::zeta8_pow(k)))
    }

    pub fn det(&self) -> Scalar {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularTransform);
        }
        let inv = det.inv()?;
        let [[a, b], [c, d]] = &self.m;
        Ok(Self::new(d * &inv, -(b * &inv), -(c * &inv), a * &inv))
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self::new(a.clone(), c.clone(), b.clone(), d.clone())
    }

    pub fn mul(&self, rhs: &Transform2x2) -> Self {
        let e = |i: usize, j: usize| &self.m[i][0] * &rhs.m[0][j] + &self.m[i][1] * &rhs.m[1][j];
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// `T^{⊗n} f`, treating `f` as a column vector.
    pub fn apply(&self, f: &Signature) -> Signature {
        let n = f.arity();
        let mut v = f.values().to_vec();
        let [[a, b], [c, d]] = &self.m;
        for var in 1..=n {
            let bit = 1usize << (n - var);
            for x in 0..v.len() {
                if x & bit != 0 {
                    continue;
                }
                let (v0, v1) = (&v[x], &v[x | bit]);
                let lo = a * v0 + b * v1;
                let hi = c * v0 + d * v1;
                v[x] = lo;
                v[x | bit] = hi;
            }
        }
        Signature::new(n, v).expect("arity unchanged")
    }

    /// Column side: `(T⁻¹)^{⊗n} f`. Row side: `f T^{⊗n}`, i.e. `(Tᵀ)^{⊗n} f`.
    pub fn transform(&self, f: &Signature, side: Side) -> Result<Signature> {
        match side {
            Side::Column => Ok(self.inverse()?.apply(f)),
            Side::Row => Ok(self.transpose().apply(f)),
        }
    }
}

/// `H₂^{⊗n} f` with the unnormalized Hadamard matrix.
pub fn hadamard(f: &Signature) -> Signature {
    Transform2x2::hadamard().apply(f)
}

impl fmt::Debug for Transform2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// JSON: a 2×2 array of scalars or one of the names accepted by
/// [`Transform2x2::named`].
impl Serialize for Transform2x2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Transform2x2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Matrix([[Scalar; 2]; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Name(n) => {
                Transform2x2::named(&n).ok_or_else(|| D::Error::custom(format!("unknown transform {n:?}")))
            }
            Repr::Matrix(m) => Ok(Transform2x2 { m }),
        }
    }
}
