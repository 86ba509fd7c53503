use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{bitstring, var_bit, Signature};

/// A dependent variable of an affine support: `x_var = rhs ⊕ ⨁_{j ∈ mask} x_j`,
/// where `mask` uses truth-table bit positions and only covers free
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dependent {
    pub var: usize,
    pub mask: usize,
    pub rhs: u8,
}

/// An affine subspace of `{0,1}ⁿ` parametrized by its free variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSupport {
    pub arity: usize,
    /// Free variables (1-based, ascending): the lexicographically smallest
    /// set that determines a support point.
    pub free_vars: Vec<usize>,
    pub dependents: Vec<Dependent>,
}

impl AffineSupport {
    pub fn dimension(&self) -> usize {
        self.free_vars.len()
    }

    /// The support point whose free variables read `y` (most significant
    /// bit = first free variable).
    pub fn point(&self, y: usize) -> usize {
        let n = self.arity;
        let k = self.free_vars.len();
        let mut x = 0usize;
        for (t, &v) in self.free_vars.iter().enumerate() {
            if y & (1 << (k - 1 - t)) != 0 {
                x |= var_bit(n, v);
            }
        }
        for d in &self.dependents {
            if (d.rhs as u32 + (x & d.mask).count_ones()) % 2 == 1 {
                x |= var_bit(n, d.var);
            }
        }
        x
    }

    pub fn contains(&self, x: usize) -> bool {
        self.dependents.iter().all(|d| {
            let xv = (x & var_bit(self.arity, d.var) != 0) as u32;
            (xv + d.rhs as u32 + (x & d.mask).count_ones()).is_multiple_of(2)
        })
    }

    /// Rows of the constraint matrix `A` acting on `(x₁, …, xₙ, 1)`.
    pub fn constraint_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.arity;
        self.dependents
            .iter()
            .map(|d| {
                let mut row: Vec<u8> = (1..=n).map(|v| (d.mask & var_bit(n, v) != 0) as u8).collect();
                row[d.var - 1] = 1;
                row.push(d.rhs);
                row
            })
            .collect()
    }
}

/// Reduced row echelon basis of the span of `vectors`; every row's pivot is
/// its highest set bit and appears in no other row.
pub(crate) fn z2_rref(vectors: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut rows: Vec<usize> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            let pivot = 1usize << (usize::BITS - 1 - r.leading_zeros());
            if v & pivot != 0 {
                v ^= r;
            }
        }
        if v != 0 {
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let pivot = |r: usize| 1usize << (usize::BITS - 1 - r.leading_zeros());
    for i in (0..rows.len()).rev() {
        let p = pivot(rows[i]);
        let ri = rows[i];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != i && *row & p != 0 {
                *row ^= ri;
            }
        }
    }
    rows
}

/// The affine support of `f`, or `None` when the support is empty or not
/// an affine subspace.
pub fn affine_support(f: &Signature) -> Option<AffineSupport> {
    let n = f.arity();
    let pts = f.support();
    let &p0 = pts.first()?;
    let rows = z2_rref(pts.iter().map(|&p| p ^ p0));
    if pts.len() != 1usize << rows.len() {
        return None;
    }
    let pivot_var = |r: usize| n - (usize::BITS - 1 - r.leading_zeros()) as usize;
    let mut free: Vec<(usize, usize)> = rows.iter().map(|&r| (pivot_var(r), r)).collect();
    free.sort_unstable();
    let free_mask: usize = free.iter().map(|&(v, _)| var_bit(n, v)).sum();
    let dependents = (1..=n)
        .filter(|&v| free_mask & var_bit(n, v) == 0)
        .map(|j| {
            let mask: usize = free
                .iter()
                .filter(|&&(_, r)| r & var_bit(n, j) != 0)
                .map(|&(v, _)| var_bit(n, v))
                .sum();
            let p0j = (p0 & var_bit(n, j) != 0) as u32;
            let rhs = ((p0j + (mask & p0).count_ones()) % 2) as u8;
            Dependent { var: j, mask, rhs }
        })
        .collect();
    Some(AffineSupport {
        arity: n,
        free_vars: free.into_iter().map(|(v, _)| v).collect(),
        dependents,
    })
}

/// The compressed signature of `f` for the free set `free_vars`: the
/// restriction of `f` to its support, read as a function of the given
/// variables (in the given order).
pub fn compress(f: &Signature, free_vars: &[usize]) -> Result<Signature> {
    let n = f.arity();
    let supp = affine_support(f).ok_or(if f.is_zero() {
        Error::ZeroSignature
    } else {
        Error::NonAffineSupport
    })?;
    let k = free_vars.len();
    if k != supp.dimension() {
        return Err(Error::InvalidSignature(format!(
            "support has dimension {}, got {k} free variables",
            supp.dimension()
        )));
    }
    for &v in free_vars {
        if v == 0 || v > n {
            return Err(Error::VariableOutOfRange { index: v, arity: n });
        }
    }
    let mut out: Vec<Option<Scalar>> = vec![None; 1 << k];
    for x in f.support() {
        let y = free_vars
            .iter()
            .fold(0usize, |acc, &v| (acc << 1) | (x & var_bit(n, v) != 0) as usize);
        if out[y].replace(f.value(x).clone()).is_some() {
            return Err(Error::InvalidSignature(format!(
                "variables {free_vars:?} do not determine the support"
            )));
        }
    }
    Signature::new(k, out.into_iter().map(|v| v.expect("2^k distinct projections")).collect())
}

/// A multilinear polynomial over `ℤ₄`; `coeffs[m]` is the coefficient of the
/// monomial whose variables are the set bits of `m` (truth-table layout).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Polynomial {
    arity: usize,
    coeffs: Vec<u8>,
}

impl Z4Polynomial {
    /// Interpolates the unique multilinear `P` with `P(x) = exps[x] mod 4`.
    pub fn from_values(arity: usize, exps: &[u8]) -> Self {
        assert_eq!(exps.len(), 1 << arity);
        let mut c: Vec<u8> = exps.iter().map(|e| e % 4).collect();
        for var in 1..=arity {
            let bit = var_bit(arity, var);
            for x in 0..c.len() {
                if x & bit != 0 {
                    c[x] = (c[x] + 4 - c[x ^ bit]) % 4;
                }
            }
        }
        Self { arity, coeffs: c }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Coefficient of `Π_{v ∈ vars} x_v`.
    pub fn coefficient(&self, vars: &[usize]) -> u8 {
        let m = vars.iter().map(|&v| var_bit(self.arity, v)).fold(0, |a, b| a | b);
        self.coeffs[m]
    }

    /// Nonzero terms as (variables, coefficient), by degree then variables.
    pub fn terms(&self) -> Vec<(Vec<usize>, u8)> {
        let mut t: Vec<(Vec<usize>, u8)> = (0..self.coeffs.len())
            .filter(|&m| self.coeffs[m] != 0)
            .map(|m| (self.vars_of(m), self.coeffs[m]))
            .collect();
        t.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        t
    }

    fn vars_of(&self, m: usize) -> Vec<usize> {
        (1..=self.arity).filter(|&v| m & var_bit(self.arity, v) != 0).collect()
    }

    pub fn degree(&self) -> usize {
        (0..self.coeffs.len())
            .filter(|&m| self.coeffs[m] != 0)
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, x: usize) -> u8 {
        let mut acc = 0u32;
        let mut m = x;
        // iterate over all submasks of x
        loop {
            acc += self.coeffs[m] as u32;
            if m == 0 {
                break;
            }
            m = (m - 1) & x;
        }
        (acc % 4) as u8
    }

    /// First term violating "degree ≤ 2 with even cross terms".
    fn first_violation(&self) -> Option<AffineWitness> {
        for (vars, c) in self.terms() {
            if vars.len() > 2 {
                return Some(AffineWitness::HighDegreeTerm { monomial: vars, coefficient: c });
            }
            if vars.len() == 2 && c % 2 == 1 {
                return Some(AffineWitness::OddCrossTerm { monomial: vars, coefficient: c });
            }
        }
        None
    }
}

impl fmt::Display for Z4Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (vars, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 || vars.is_empty() {
                write!(f, "{c}")?;
            }
            for v in vars {
                write!(f, "x{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Z4Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z4Polynomial({self})")
    }
}

/// The `P` with `f = i^P`; every entry must be a power of `i`.
pub fn z4_polynomial(f: &Signature) -> Result<Z4Polynomial> {
    let exps = f
        .values()
        .iter()
        .enumerate()
        .map(|(x, v)| v.as_power_of_i().ok_or(Error::NotPowerOfI(x)))
        .collect::<Result<Vec<u8>>>()?;
    Ok(Z4Polynomial::from_values(f.arity(), &exps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AffineWitness {
    /// The entry is not `λ·iᵏ` for the first nonzero entry `λ`.
    EntryNotUnitMultiple { index: String },
    NonAffineSupport,
    HighDegreeTerm { monomial: Vec<usize>, coefficient: u8 },
    OddCrossTerm { monomial: Vec<usize>, coefficient: u8 },
}

/// Evidence that `f ∉ 𝒜`, or `None` if `f ∈ 𝒜`.
pub fn affine_witness(f: &Signature) -> Option<AffineWitness> {
    let n = f.arity();
    let Some(first) = f.values().iter().position(|v| !v.is_zero()) else {
        return None;
    };
    let lambda = f.value(first);
    let mut exps = vec![0u8; f.values().len()];
    for (x, v) in f.values().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        match v.ratio_power_of_i(lambda) {
            Some(k) => exps[x] = k,
            None => {
                return Some(AffineWitness::EntryNotUnitMultiple {
                    index: bitstring(x, n),
                })
            }
        }
    }
    let Some(supp) = affine_support(f) else {
        return Some(AffineWitness::NonAffineSupport);
    };
    let k = supp.dimension();
    let compressed: Vec<u8> = (0..1usize << k).map(|y| exps[supp.point(y)]).collect();
    Z4Polynomial::from_values(k, &compressed)
        .first_violation()
        .map(|w| match w {
            // report monomials in the original variable names
            AffineWitness::HighDegreeTerm { monomial, coefficient } => AffineWitness::HighDegreeTerm {
                monomial: monomial.iter().map(|&t| supp.free_vars[t - 1]).collect(),
                coefficient,
            },
            AffineWitness::OddCrossTerm { monomial, coefficient } => AffineWitness::OddCrossTerm {
                monomial: monomial.iter().map(|&t| supp.free_vars[t - 1]).collect(),
                coefficient,
            },
            other => other,
        })
}

pub fn is_affine(f: &Signature) -> bool {
    affine_witness(f).is_none()
}
