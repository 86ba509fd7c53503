//! Fixed workloads shared by the benchmarks.

use holant_core::fkt::PlanarGraph;
use holant_core::gen;
use holant_core::grid::{CspInstance, SignatureGrid};
use holant_core::{Scalar, Signature, SymmetricSignature};

/// The full triangulated `rows × cols` lattice with unit weights.
pub fn lattice(rows: usize, cols: usize) -> PlanarGraph {
    gen::lattice_subgraph(rows, cols, |_| true).weighted(|_| Scalar::one()).expect("lattices are planar")
}

pub fn affine_instance(vars: usize, constraints: usize, seed: u64) -> CspInstance {
    gen::random_csp(&mut gen::rng(seed), vars, constraints, 3, gen::random_affine_signature).expect("valid instance")
}

pub fn product_instance(vars: usize, constraints: usize, seed: u64) -> CspInstance {
    let pool = gen::small_pool();
    gen::random_csp(&mut gen::rng(seed), vars, constraints, 3, |r, k| gen::random_product_signature(r, k, &pool))
        .expect("valid instance")
}

/// A library-realizable grid on a `rows × cols` lattice.
pub fn matchgate_grid(rows: usize, cols: usize, seed: u64) -> SignatureGrid {
    gen::random_matchgate_grid(&mut gen::rng(seed), rows, cols, usize::MAX).expect("valid grid")
}

/// A mixed signature set with members of every arity up to `max_arity`.
pub fn signature_set(max_arity: usize, seed: u64) -> Vec<Signature> {
    let mut r = gen::rng(seed);
    let mut set: Vec<Signature> = (1..=max_arity).map(|k| gen::random_affine_signature(&mut r, k)).collect();
    set.push(SymmetricSignature::from_ints(&[4, 2, 0, -2, -4]).expect("symmetric").to_signature());
    set
}
