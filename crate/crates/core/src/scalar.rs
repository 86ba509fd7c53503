//! Exact arithmetic in the eighth cyclotomic field Q(ζ), ζ = e^{iπ/4}.
//!
//! An element is stored as `a0 + a1 ζ + a2 ζ² + a3 ζ³` with rational
//! coefficients, reduced modulo the minimal polynomial `ζ⁴ + 1`. The basis
//! representation is canonical, so structural equality is field equality.
//! `ζ²` is the imaginary unit and `ζ - ζ³` is √2.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    c: [BigRational; 4],
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics on a zero denominator like `Ratio::new`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Self::zero();
        s.c[0] = r;
        s
    }

    pub fn from_coeffs(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    pub fn from_int_coeffs(c: [i64; 4]) -> Self {
        Self {
            c: c.map(|v| BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// The primitive eighth root of unity ζ.
    pub fn zeta8() -> Self {
        Self::from_int_coeffs([0, 1, 0, 0])
    }

    /// The imaginary unit, ζ².
    pub fn i() -> Self {
        Self::from_int_coeffs([0, 0, 1, 0])
    }

    /// √2 = ζ - ζ³.
    pub fn sqrt2() -> Self {
        Self::from_int_coeffs([0, 1, 0, -1])
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        Self::one().mul_i_pow(k)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta8_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_int_coeffs(c)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// Multiplication by ζ, a signed rotation of the coefficients.
    pub fn mul_zeta8(&self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        Self {
            c: [-a3.clone(), a0.clone(), a1.clone(), a2.clone()],
        }
    }

    /// Multiplication by `i^k` without general field multiplication.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        let c = match k.rem_euclid(4) {
            0 => [a0.clone(), a1.clone(), a2.clone(), a3.clone()],
            1 => [-a2.clone(), -a3.clone(), a0.clone(), a1.clone()],
            2 => [-a0.clone(), -a1.clone(), -a2.clone(), -a3.clone()],
            _ => [a2.clone(), a3.clone(), -a0.clone(), -a1.clone()],
        };
        Self { c }
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹ = -ζ³.
    pub fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        Self {
            c: [a0.clone(), -a3.clone(), -a2.clone(), -a1.clone()],
        }
    }

    /// Multiplicative inverse through the tower Q ⊂ Q(√2) ⊂ Q(ζ).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = self.conj();
        // self * conj(self) is real, so it has the form p + q√2.
        let real = self * &conj;
        let p = real.c[0].clone();
        let q = real.c[1].clone();
        let galois = Self {
            c: [p.clone(), -q.clone(), BigRational::zero(), q.clone()],
        };
        let norm = &p * &p - BigRational::from_integer(BigInt::from(2)) * &q * &q;
        let scale = norm.recip();
        Ok((&conj * &galois).scale(&scale))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Returns `k` with `self = i^k`, if there is one.
    pub fn as_power_of_i(&self) -> Option<u8> {
        let nonzero: Vec<usize> = (0..4).filter(|&j| !self.c[j].is_zero()).collect();
        match nonzero.as_slice() {
            [0] if self.c[0].is_one() => Some(0),
            [0] if (-&self.c[0]).is_one() => Some(2),
            [2] if self.c[2].is_one() => Some(1),
            [2] if (-&self.c[2]).is_one() => Some(3),
            _ => None,
        }
    }

    /// Returns `k` with `self = i^k · base`, if there is one.
    pub fn ratio_power_of_i(&self, base: &Scalar) -> Option<u8> {
        (0..4u8).find(|&k| base.mul_i_pow(k as i64) == *self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let units = ["", "ζ", "i", "ζ³"];
        let mut first = true;
        for (coeff, unit) in self.c.iter().zip(units) {
            if coeff.is_zero() {
                continue;
            }
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{mag}{unit}")?;
            }
        }
        Ok(())
    }
}

fn mul_coeffs(a: &[BigRational; 4], b: &[BigRational; 4]) -> [BigRational; 4] {
    let mut out: [BigRational; 4] = Default::default();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let t = ai * bj;
            let k = i + j;
            if k < 4 {
                out[k] += t;
            } else {
                out[k - 4] -= t;
            }
        }
    }
    out
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            c: mul_coeffs(&self.c, &rhs.c),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.c = mul_coeffs(&self.c, &rhs.c);
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"p"`, `"p/q"`, `"i"` and `"-i"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "i" => Ok(Scalar::i()),
            "-i" => Ok(-Scalar::i()),
            other => Ok(Scalar::from_rational(parse_rational(other)?)),
        }
    }
}

/// Rationals use the bare-string shorthand; everything else the full array.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(r) = self.as_rational() {
            return serializer.serialize_str(&format_rational(r));
        }
        let mut seq = serializer.serialize_seq(Some(4))?;
        for c in &self.c {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

struct ScalarVisitor;

impl<'de> Visitor<'de> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\", \"i\", an integer, or an array of 4 rational strings")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
        Scalar::from_str(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::from_rational(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Scalar, A::Error> {
        let mut c: [BigRational; 4] = Default::default();
        for (k, slot) in c.iter_mut().enumerate() {
            let s: String = seq
                .next_element()?
                .ok_or_else(|| de::Error::invalid_length(k, &self))?;
            *slot = parse_rational(&s).map_err(de::Error::custom)?;
        }
        if seq.next_element::<de::IgnoredAny>()?.is_some() {
            return Err(de::Error::invalid_length(5, &self));
        }
        Ok(Scalar { c })
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}
