//! Membership tests for the tractable families: affine `𝒜`, product-type
//! `𝒫`, matchgate `ℳ`, and their transformed versions `ℳ̂ = H₂ℳ`,
//! `𝒜† = 𝒯₄𝒜`, `ℳ̂† = 𝒯₂ℳ̂`.
//!
//! Each test comes as a `*_witness` function returning the evidence of
//! non-membership and an `is_*` wrapper.

mod affine;
mod degenerate;
mod matchgate;
mod parity;
mod product;
mod report;

pub use affine::{
    affine_support, affine_witness, compress, is_affine, z4_polynomial, AffineSupport, AffineWitness,
    Dependent, Z4Polynomial,
};
pub use degenerate::{degenerate_factors, is_degenerate, Degenerate};
pub use matchgate::{is_matchgate, matchgate_witness, position_vectors, MatchgateWitness};
pub use parity::{parity_of, Parity};
pub use product::{is_product, primitive_decomposition, product_witness, PrimitiveDecomposition, ProductWitness};
pub use report::{
    a_dagger_witness, class_report, is_a_dagger, is_m_hat, is_m_hat_dagger, m_hat_dagger_witness, m_hat_witness,
    ClassReport, ClassWitnesses, OmegaWitness, TractableClass,
};
