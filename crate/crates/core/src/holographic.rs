//! Holographic transformations of whole grids and signature sets.

use serde::Serialize;

use crate::classes::TractableClass;
use crate::error::{Error, Result};
use crate::grid::SignatureGrid;
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transform::{Side, Transform2x2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HolantInvariance {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub equal: bool,
}

/// `Holant(Ω; 𝓖 | 𝓕) → Holant(Ω'; 𝓖T | T⁻¹𝓕)`: row-side vertices are
/// replaced by `fT` and column-side vertices by `T⁻¹f`.
pub fn transform_grid(grid: &SignatureGrid, t: &Transform2x2) -> Result<SignatureGrid> {
    grid.check_bipartite()?;
    let inv = t.inverse()?;
    grid.map_signatures(|_, v| match v.side {
        Some(Side::Row) => t.transform(&v.signature, Side::Row),
        Some(Side::Column) => Ok(inv.apply(&v.signature)),
        None => Err(Error::NotBipartite("vertex without a side label".into())),
    })
}

/// Evaluates a bipartite grid before and after the transformation by brute
/// force.
pub fn check_holant_invariance(grid: &SignatureGrid, t: &Transform2x2) -> Result<HolantInvariance> {
    let moved = transform_grid(grid, t)?;
    let lhs = grid.brute_force_holant()?;
    let rhs = moved.brute_force_holant()?;
    let equal = lhs == rhs;
    Ok(HolantInvariance { lhs, rhs, equal })
}

/// Whether `𝓖T ⊆ 𝒞` and `T⁻¹𝓕 ⊆ 𝒞` for the class `𝒞`. A singular `T`
/// transforms nothing.
pub fn is_transformable_given(g_set: &[Signature], f_set: &[Signature], t: &Transform2x2, class: TractableClass) -> bool {
    let Ok(inv) = t.inverse() else {
        return false;
    };
    g_set
        .iter()
        .all(|g| t.transform(g, Side::Row).is_ok_and(|h| class.contains(&h)))
        && f_set.iter().all(|f| class.contains(&inv.apply(f)))
}
