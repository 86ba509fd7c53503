use rayon::prelude::*;

use super::{GridVertex, SignatureGrid};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transform::Side;

/// Brute-force cap on #CSP variables.
pub const MAX_CSP_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub signature: Signature,
    pub name: Option<String>,
    /// Variables (0-based) in the order of the signature's inputs.
    pub vars: Vec<usize>,
}

impl Constraint {
    pub fn new(signature: Signature, vars: Vec<usize>) -> Self {
        Self {
            signature,
            name: None,
            vars,
        }
    }
}

/// A #CSP instance over Boolean variables `0..num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(num_vars: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for (i, c) in constraints.iter().enumerate() {
            if c.vars.len() != c.signature.arity() {
                return Err(Error::ArityMismatch(format!(
                    "constraint {i} lists {} variables for a signature of arity {}",
                    c.vars.len(),
                    c.signature.arity()
                )));
            }
            if let Some(&v) = c.vars.iter().find(|&&v| v >= num_vars) {
                return Err(Error::InvalidGrid(format!("constraint {i} uses variable {v} of {num_vars}")));
            }
        }
        Ok(Self { num_vars, constraints })
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.constraints.iter().map(|c| &c.signature)
    }
}

/// `Σ_{x ∈ {0,1}^n} Π_c f_c(x|c)`.
pub fn brute_force_csp(inst: &CspInstance) -> Result<Scalar> {
    let n = inst.num_vars;
    if n > MAX_CSP_VARS {
        return Err(Error::TooLarge(format!(
            "{n} variables exceed the brute-force cap of {MAX_CSP_VARS}"
        )));
    }
    let bb = if n >= 12 { 8 } else { 0 };
    let per = 1u64 << (n - bb);
    let partial: Vec<Scalar> = (0..1u64 << bb)
        .into_par_iter()
        .map(|b| {
            let mut acc = Scalar::zero();
            'assign: for x in b * per..(b + 1) * per {
                let mut prod = Scalar::one();
                for c in &inst.constraints {
                    let idx = c.vars.iter().fold(0usize, |i, &v| (i << 1) | ((x >> v) & 1) as usize);
                    let val = c.signature.value(idx);
                    if val.is_zero() {
                        continue 'assign;
                    }
                    if !val.is_one() {
                        prod = &prod * val;
                    }
                }
                acc += &prod;
            }
            acc
        })
        .collect();
    Ok(partial.into_iter().sum())
}

/// The bipartite grid of `Holant(𝓔𝓠 | 𝓕)`: vertex `v < num_vars` carries
/// `=_d` for the `d` occurrences of variable `v` (row side), followed by one
/// column-side vertex per constraint. An unused variable becomes the
/// arity-0 constant 2.
pub fn csp_to_grid(inst: &CspInstance) -> Result<SignatureGrid> {
    let mut var_edges: Vec<Vec<usize>> = vec![Vec::new(); inst.num_vars];
    let mut next = 0;
    let mut cons_vertices = Vec::new();
    for c in &inst.constraints {
        let edges: Vec<usize> = c
            .vars
            .iter()
            .map(|&v| {
                var_edges[v].push(next);
                next += 1;
                next - 1
            })
            .collect();
        cons_vertices.push(GridVertex {
            signature: c.signature.clone(),
            name: c.name.clone(),
            edges,
            side: Some(Side::Column),
        });
    }
    let mut vertices = Vec::new();
    for edges in var_edges {
        let sig = if edges.is_empty() {
            Signature::constant(Scalar::from_int(2))
        } else {
            Signature::equality(edges.len())?
        };
        vertices.push(GridVertex::new(sig, edges).on_side(Side::Row));
    }
    vertices.extend(cons_vertices);
    SignatureGrid::new(vertices, next, vec![])
}
