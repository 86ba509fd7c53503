use serde::{Deserialize, Serialize};

use super::affine::{affine_witness, AffineWitness};
use super::degenerate::is_degenerate;
use super::matchgate::{matchgate_witness, MatchgateWitness};
use super::parity::{parity_of, Parity};
use super::product::{product_witness, ProductWitness};
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transform::{hadamard, Transform2x2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TractableClass {
    #[serde(rename = "A")]
    Affine,
    #[serde(rename = "P")]
    Product,
    #[serde(rename = "M")]
    Matchgate,
    #[serde(rename = "M_hat")]
    MatchgateHat,
    #[serde(rename = "A_dagger")]
    AffineDagger,
    #[serde(rename = "M_hat_dagger")]
    MatchgateHatDagger,
}

impl TractableClass {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Affine => "A",
            Self::Product => "P",
            Self::Matchgate => "M",
            Self::MatchgateHat => "M_hat",
            Self::AffineDagger => "A_dagger",
            Self::MatchgateHatDagger => "M_hat_dagger",
        }
    }

    pub fn contains(self, f: &Signature) -> bool {
        match self {
            Self::Affine => affine_witness(f).is_none(),
            Self::Product => product_witness(f).is_none(),
            Self::Matchgate => matchgate_witness(f).is_none(),
            Self::MatchgateHat => is_m_hat(f),
            Self::AffineDagger => is_a_dagger(f),
            Self::MatchgateHatDagger => is_m_hat_dagger(f),
        }
    }
}

/// A failed test under the diagonal transform `diag(1, ω)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaWitness<W> {
    pub omega: String,
    pub witness: W,
}

/// `f ∈ ℳ̂` iff `H₂ f ∈ ℳ` (`H₂⁻¹ = H₂/2` and scaling is irrelevant).
pub fn m_hat_witness(f: &Signature) -> Option<MatchgateWitness> {
    matchgate_witness(&hadamard(f))
}

pub fn is_m_hat(f: &Signature) -> bool {
    m_hat_witness(f).is_none()
}

fn undiag(f: &Signature, omega: &Scalar) -> Signature {
    Transform2x2::diag(Scalar::one(), omega.inv().expect("root of unity"))
        .apply(f)
}

/// `f ∈ 𝒜†` iff `diag(1, ω)⁻¹ f ∈ 𝒜` for `ω ∈ {ζ, ζ³}`; the other two
/// eighth roots with `ω⁴ = -1` differ by `diag(1, -1)`, which fixes `𝒜`.
pub fn a_dagger_witness(f: &Signature) -> Option<Vec<OmegaWitness<AffineWitness>>> {
    let mut out = Vec::new();
    for (k, label) in [(1, "zeta8"), (3, "zeta8^3")] {
        {
            let w = affine_witness(&undiag(f, &Scalar::zeta8_pow(k)))?;
            out.push(OmegaWitness {
            omega: label.into(),
            witness: w,
        })
        }
    }
    Some(out)
}

pub fn is_a_dagger(f: &Signature) -> bool {
    a_dagger_witness(f).is_none()
}

/// `f ∈ ℳ̂†` iff `H₂ diag(1, ω)⁻¹ f ∈ ℳ` for `ω = ±i`.
pub fn m_hat_dagger_witness(f: &Signature) -> Option<Vec<OmegaWitness<MatchgateWitness>>> {
    let mut out = Vec::new();
    for (omega, label) in [(Scalar::i(), "i"), (-Scalar::i(), "-i")] {
        {
            let w = m_hat_witness(&undiag(f, &omega))?;
            out.push(OmegaWitness {
            omega: label.into(),
            witness: w,
        })
        }
    }
    Some(out)
}

pub fn is_m_hat_dagger(f: &Signature) -> bool {
    m_hat_dagger_witness(f).is_none()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matchgate: Option<MatchgateWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matchgate_hat: Option<MatchgateWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_dagger: Option<Vec<OmegaWitness<AffineWitness>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matchgate_hat_dagger: Option<Vec<OmegaWitness<MatchgateWitness>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub arity: usize,
    pub parity: Parity,
    pub degenerate: bool,
    pub affine: bool,
    pub product: bool,
    pub matchgate: bool,
    pub matchgate_hat: bool,
    pub affine_dagger: bool,
    pub matchgate_hat_dagger: bool,
    pub witnesses: ClassWitnesses,
}

impl ClassReport {
    pub fn holds(&self, class: TractableClass) -> bool {
        match class {
            TractableClass::Affine => self.affine,
            TractableClass::Product => self.product,
            TractableClass::Matchgate => self.matchgate,
            TractableClass::MatchgateHat => self.matchgate_hat,
            TractableClass::AffineDagger => self.affine_dagger,
            TractableClass::MatchgateHatDagger => self.matchgate_hat_dagger,
        }
    }
}

pub fn class_report(f: &Signature) -> ClassReport {
    let witnesses = ClassWitnesses {
        affine: affine_witness(f),
        product: product_witness(f),
        matchgate: matchgate_witness(f),
        matchgate_hat: m_hat_witness(f),
        affine_dagger: a_dagger_witness(f),
        matchgate_hat_dagger: m_hat_dagger_witness(f),
    };
    ClassReport {
        arity: f.arity(),
        parity: parity_of(f),
        degenerate: is_degenerate(f),
        affine: witnesses.affine.is_none(),
        product: witnesses.product.is_none(),
        matchgate: witnesses.matchgate.is_none(),
        matchgate_hat: witnesses.matchgate_hat.is_none(),
        affine_dagger: witnesses.affine_dagger.is_none(),
        matchgate_hat_dagger: witnesses.matchgate_hat_dagger.is_none(),
        witnesses,
    }
}
