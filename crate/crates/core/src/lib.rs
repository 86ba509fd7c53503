//! Exact Holant machinery: signatures over Q(ζ₈), tractable classes,
//! holographic transformations, planar grid evaluation, FKT and the
//! Pl-#CSP classifier.

pub mod classes;
pub mod dichotomy;
pub mod embedding;
pub mod error;
pub mod fkt;
pub mod gen;
pub mod grid;
pub mod holographic;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod signature;
pub mod transform;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use signature::{bitstring, Operand, Signature, SignatureMatrix, SymmetricSignature, MAX_ARITY};
pub use transform::{Side, Transform2x2};
