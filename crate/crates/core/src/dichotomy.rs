//! Complexity classification of finite signature sets for Pl-#CSP, #CSP and
//! symmetric Pl-#CSP².

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{
    a_dagger_witness, affine_witness, m_hat_dagger_witness, m_hat_witness, product_witness, AffineWitness,
    MatchgateWitness, OmegaWitness, ProductWitness, TractableClass,
};
use crate::error::{Error, Result};
use crate::signature::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    PTime,
    PlanarPTimeOnly,
    SharpPHard,
}

/// Why a member fails a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassEvidence {
    Affine(AffineWitness),
    Product(ProductWitness),
    Matchgate(MatchgateWitness),
    AffineDagger(Vec<OmegaWitness<AffineWitness>>),
    MatchgateHatDagger(Vec<OmegaWitness<MatchgateWitness>>),
}

/// The first member of the set outside `class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedContainment {
    pub class: TractableClass,
    pub index: usize,
    pub signature: Signature,
    pub evidence: ClassEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyVerdict {
    pub category: Category,
    /// Every tested class containing the whole set.
    pub holding: Vec<TractableClass>,
    pub witnesses: Vec<FailedContainment>,
}

impl DichotomyVerdict {
    pub fn holds(&self, class: TractableClass) -> bool {
        self.holding.contains(&class)
    }
}

fn evidence(class: TractableClass, f: &Signature) -> Option<ClassEvidence> {
    match class {
        TractableClass::Affine => affine_witness(f).map(ClassEvidence::Affine),
        TractableClass::Product => product_witness(f).map(ClassEvidence::Product),
        TractableClass::Matchgate => crate::classes::matchgate_witness(f).map(ClassEvidence::Matchgate),
        TractableClass::MatchgateHat => m_hat_witness(f).map(ClassEvidence::Matchgate),
        TractableClass::AffineDagger => a_dagger_witness(f).map(ClassEvidence::AffineDagger),
        TractableClass::MatchgateHatDagger => m_hat_dagger_witness(f).map(ClassEvidence::MatchgateHatDagger),
    }
}

/// Tests each class against the whole set; returns the classes that hold
/// and one failing member per class that does not.
fn containments(set: &[Signature], classes: &[TractableClass]) -> (Vec<TractableClass>, Vec<FailedContainment>) {
    let mut holding = Vec::new();
    let mut witnesses = Vec::new();
    for &class in classes {
        let failure = set
            .par_iter()
            .enumerate()
            .find_map_first(|(index, f)| evidence(class, f).map(|e| (index, e)));
        match failure {
            None => holding.push(class),
            Some((index, evidence)) => witnesses.push(FailedContainment {
                class,
                index,
                signature: set[index].clone(),
                evidence,
            }),
        }
    }
    (holding, witnesses)
}

/// Pl-#CSP(𝓕): polynomial time if `𝓕 ⊆ 𝒜` or `𝓕 ⊆ 𝒫`, polynomial time on
/// planar instances only if otherwise `𝓕 ⊆ ℳ̂`, and #P-hard in every other
/// case.
pub fn classify_pl_csp(set: &[Signature]) -> DichotomyVerdict {
    use TractableClass::*;
    let (holding, witnesses) = containments(set, &[Affine, Product, MatchgateHat]);
    let category = if holding.contains(&Affine) || holding.contains(&Product) {
        Category::PTime
    } else if holding.contains(&MatchgateHat) {
        Category::PlanarPTimeOnly
    } else {
        Category::SharpPHard
    };
    DichotomyVerdict {
        category,
        holding,
        witnesses,
    }
}

/// #CSP(𝓕) without planarity: polynomial time iff `𝓕 ⊆ 𝒜` or `𝓕 ⊆ 𝒫`.
pub fn classify_csp(set: &[Signature]) -> DichotomyVerdict {
    use TractableClass::*;
    let (holding, witnesses) = containments(set, &[Affine, Product]);
    let category = if holding.is_empty() {
        Category::SharpPHard
    } else {
        Category::PTime
    };
    DichotomyVerdict {
        category,
        holding,
        witnesses,
    }
}

/// Pl-#CSP²(𝓕) for symmetric `𝓕`: polynomial time iff `𝓕` lies in one of
/// `𝒫`, `𝒜`, `𝒜†`, `ℳ̂`, `ℳ̂†`.
pub fn classify_pl_csp2_symmetric(set: &[Signature]) -> Result<DichotomyVerdict> {
    use TractableClass::*;
    if let Some(i) = set.iter().position(|f| f.as_symmetric().is_none()) {
        return Err(Error::Asymmetric(i));
    }
    let (holding, witnesses) = containments(set, &[Product, Affine, AffineDagger, MatchgateHat, MatchgateHatDagger]);
    let category = if holding.is_empty() {
        Category::SharpPHard
    } else {
        Category::PTime
    };
    Ok(DichotomyVerdict {
        category,
        holding,
        witnesses,
    })
}
