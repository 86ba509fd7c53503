//! Signature grids: the data model, planarity, the brute-force Holant
//! oracle, gate signatures, #CSP conversions and the tractable evaluators.

mod affine_eval;
mod csp;
mod interpolate;
mod product_eval;
mod simplify;

pub use affine_eval::eval_affine_csp;
pub use csp::{brute_force_csp, csp_to_grid, Constraint, CspInstance, MAX_CSP_VARS};
pub use interpolate::vandermonde_interpolate;
pub use product_eval::eval_product_csp;
pub use simplify::merge_equalities;

use rayon::prelude::*;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transform::Side;

/// Brute-force cap on the number of summed edges.
pub const MAX_BRUTE_EDGES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridVertex {
    pub signature: Signature,
    /// Registry name the signature was loaded from, if any.
    pub name: Option<String>,
    /// Incident edge ids counterclockwise; entry `k` carries variable `k+1`.
    pub edges: Vec<usize>,
    pub side: Option<Side>,
}

impl GridVertex {
    pub fn new(signature: Signature, edges: Vec<usize>) -> Self {
        Self {
            signature,
            name: None,
            edges,
            side: None,
        }
    }

    pub fn on_side(mut self, side: Side) -> Self {
        self.side = Some(side);
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// A signature grid. Edge ids are `0..num_edges`; an internal edge occurs in
/// exactly two vertex slots, a dangling edge in exactly one. The order of
/// `dangling` fixes the variable order of the gate signature, and for planar
/// gates it is the counterclockwise order around the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureGrid {
    vertices: Vec<GridVertex>,
    num_edges: usize,
    dangling: Vec<usize>,
}

impl SignatureGrid {
    pub fn new(vertices: Vec<GridVertex>, num_edges: usize, dangling: Vec<usize>) -> Result<Self> {
        let mut count = vec![0usize; num_edges];
        for (v, vx) in vertices.iter().enumerate() {
            if vx.signature.arity() != vx.edges.len() {
                return Err(Error::InvalidGrid(format!(
                    "vertex {v} has {} edges but a signature of arity {}",
                    vx.edges.len(),
                    vx.signature.arity()
                )));
            }
            for &e in &vx.edges {
                if e >= num_edges {
                    return Err(Error::InvalidGrid(format!("vertex {v} uses unknown edge {e}")));
                }
                count[e] += 1;
            }
        }
        let mut is_dangling = vec![false; num_edges];
        for &e in &dangling {
            if e >= num_edges || std::mem::replace(&mut is_dangling[e], true) {
                return Err(Error::InvalidGrid(format!("bad dangling edge {e}")));
            }
        }
        for e in 0..num_edges {
            let want = if is_dangling[e] { 1 } else { 2 };
            if count[e] != want {
                return Err(Error::InvalidGrid(format!(
                    "edge {e} has {} endpoints, expected {want}",
                    count[e]
                )));
            }
        }
        Ok(Self {
            vertices,
            num_edges,
            dangling,
        })
    }

    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    pub fn num_internal_edges(&self) -> usize {
        self.num_edges - self.dangling.len()
    }

    /// Replaces every vertex signature via `f(index, vertex)`; arities must
    /// be preserved.
    pub fn map_signatures(&self, mut f: impl FnMut(usize, &GridVertex) -> Result<Signature>) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let s = f(i, v)?;
                if s.arity() != v.signature.arity() {
                    return Err(Error::ArityMismatch(format!("vertex {i} changed arity")));
                }
                Ok(GridVertex { signature: s, ..v.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices, ..self.clone() })
    }

    /// The rotation system; dangling edges end at one extra vertex placed in
    /// the outer face, where they appear in reverse order.
    pub fn embedding(&self) -> Result<Embedding> {
        let mut rot: Vec<Vec<usize>> = self.vertices.iter().map(|v| v.edges.clone()).collect();
        if !self.dangling.is_empty() {
            rot.push(self.dangling.iter().rev().copied().collect());
        }
        Embedding::new(rot, self.num_edges)
    }

    pub fn check_planar(&self) -> Result<()> {
        self.embedding()?.check_planar()
    }

    pub fn is_planar(&self) -> bool {
        self.check_planar().is_ok()
    }

    /// Every internal edge joins a row vertex to a column vertex.
    pub fn check_bipartite(&self) -> Result<()> {
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); self.num_edges];
        for (v, vx) in self.vertices.iter().enumerate() {
            if vx.side.is_none() {
                return Err(Error::NotBipartite(format!("vertex {v} has no side label")));
            }
            for &e in &vx.edges {
                ends[e].push(v);
            }
        }
        for (e, vs) in ends.iter().enumerate() {
            if let [a, b] = vs[..] {
                if self.vertices[a].side == self.vertices[b].side {
                    return Err(Error::NotBipartite(format!("edge {e} joins two vertices on one side")));
                }
            }
        }
        Ok(())
    }

    /// `Σ_σ Π_v f_v(σ|E(v))` over all 0/1 assignments to the edges.
    pub fn brute_force_holant(&self) -> Result<Scalar> {
        self.brute_force_holant_blocks(None)
    }

    /// Brute force with the assignment space split into `2^block_bits`
    /// independent blocks (default: chosen from the edge count). The value
    /// does not depend on the split.
    pub fn brute_force_holant_blocks(&self, block_bits: Option<usize>) -> Result<Scalar> {
        if !self.dangling.is_empty() {
            return Err(Error::InvalidGrid(
                "grid has dangling edges; use gate_signature".into(),
            ));
        }
        self.check_brute_size()?;
        let order: Vec<usize> = (0..self.num_edges).collect();
        Ok(self.sum_with_fixed(&order, 0, &[], block_bits))
    }

    fn check_brute_size(&self) -> Result<()> {
        let e = self.num_internal_edges();
        if e > MAX_BRUTE_EDGES {
            return Err(Error::TooLarge(format!(
                "{e} internal edges exceed the brute-force cap of {MAX_BRUTE_EDGES}"
            )));
        }
        Ok(())
    }

    /// Sum over assignments of the `free` edges with the `fixed` edges held at
    /// the bits of `fixed_bits` (first listed = most significant).
    fn sum_with_fixed(&self, free: &[usize], fixed_bits: usize, fixed: &[usize], block_bits: Option<usize>) -> Scalar {
        let m = free.len();
        // position of every edge in the combined assignment word
        let mut base = 0u64;
        for (k, &e) in fixed.iter().enumerate() {
            if fixed_bits & (1 << (fixed.len() - 1 - k)) != 0 {
                base |= 1 << e;
            }
        }
        let total = 1u64 << m;
        let bb = block_bits.unwrap_or(if m >= 12 { 8 } else { 0 }).min(m);
        let blocks = 1u64 << bb;
        let per = total / blocks;
        let vertex_edges: Vec<&[usize]> = self.vertices.iter().map(|v| v.edges.as_slice()).collect();
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut acc = Scalar::zero();
                'assign: for a in b * per..(b + 1) * per {
                    let mut word = base;
                    for (k, &e) in free.iter().enumerate() {
                        if a & (1 << k) != 0 {
                            word |= 1 << e;
                        }
                    }
                    let mut prod = Scalar::one();
                    for (v, edges) in vertex_edges.iter().enumerate() {
                        let idx = edges.iter().fold(0usize, |i, &e| (i << 1) | ((word >> e) & 1) as usize);
                        let val = self.vertices[v].signature.value(idx);
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
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    }

    /// The signature of the gate on its dangling edges.
    pub fn gate_signature(&self) -> Result<Signature> {
        self.check_brute_size()?;
        let k = self.dangling.len();
        if k > crate::signature::MAX_ARITY {
            return Err(Error::ArityTooLarge(k));
        }
        let mut is_dangling = vec![false; self.num_edges];
        for &e in &self.dangling {
            is_dangling[e] = true;
        }
        let free: Vec<usize> = (0..self.num_edges).filter(|&e| !is_dangling[e]).collect();
        Signature::from_fn(k, |y| self.sum_with_fixed(&free, y, &self.dangling, None))
    }

    /// Inserts a `=₂` vertex on every internal edge. Original vertices go on
    /// the column side and the new ones on the row side.
    pub fn two_stretch(&self) -> SignatureGrid {
        let mut is_dangling = vec![false; self.num_edges];
        for &e in &self.dangling {
            is_dangling[e] = true;
        }
        let eq2 = Signature::equality(2).expect("arity 2");
        // each internal edge e keeps id e for its first endpoint and gets a
        // fresh id for its second one
        let mut fresh = vec![usize::MAX; self.num_edges];
        let mut next = self.num_edges;
        let mut seen = vec![false; self.num_edges];
        let mut vertices: Vec<GridVertex> = Vec::new();
        for v in &self.vertices {
            let edges = v
                .edges
                .iter()
                .map(|&e| {
                    if is_dangling[e] || !std::mem::replace(&mut seen[e], true) {
                        e
                    } else {
                        fresh[e] = next;
                        next += 1;
                        fresh[e]
                    }
                })
                .collect();
            vertices.push(GridVertex {
                edges,
                side: Some(Side::Column),
                ..v.clone()
            });
        }
        for e in 0..self.num_edges {
            if !is_dangling[e] {
                vertices.push(GridVertex::new(eq2.clone(), vec![e, fresh[e]]).on_side(Side::Row));
            }
        }
        SignatureGrid::new(vertices, next, self.dangling.clone()).expect("stretch preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::SymmetricSignature;

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    fn triangle_eq2() -> SignatureGrid {
        let eq2 = sym(&[1, 0, 1]);
        SignatureGrid::new(
            vec![
                GridVertex::new(eq2.clone(), vec![0, 2]),
                GridVertex::new(eq2.clone(), vec![1, 0]),
                GridVertex::new(eq2, vec![2, 1]),
            ],
            3,
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let g = triangle_eq2();
        assert!(g.is_planar());
        assert_eq!(g.brute_force_holant().unwrap(), Scalar::from_int(2));
        let u = sym(&[1, 2]);
        let e = SignatureGrid::new(
            vec![GridVertex::new(u.clone(), vec![0]), GridVertex::new(u, vec![0])],
            1,
            vec![],
        )
        .unwrap();
        assert_eq!(e.brute_force_holant().unwrap(), Scalar::from_int(5));
        assert_eq!(g.two_stretch().brute_force_holant().unwrap(), Scalar::from_int(2));
        assert!(g.two_stretch().check_bipartite().is_ok());
    }

    #[test]
    fn partition_independent() {
        let f = Signature::from_fn(3, |x| Scalar::from_int(x as i64 - 2) + Scalar::i()).unwrap();
        let g = SignatureGrid::new(
            vec![
                GridVertex::new(f.clone(), vec![0, 1, 2]),
                GridVertex::new(f.clone(), vec![2, 3, 4]),
                GridVertex::new(f, vec![4, 1, 0]),
                GridVertex::new(sym(&[1, -1]), vec![3]),
            ],
            5,
            vec![],
        )
        .unwrap();
        let v = g.brute_force_holant_blocks(Some(0)).unwrap();
        for b in 1..=5 {
            assert_eq!(g.brute_force_holant_blocks(Some(b)).unwrap(), v);
        }
    }

    #[test]
    fn gates() {
        // [1,0,1,0] with one edge to [0,1]
        let g = SignatureGrid::new(
            vec![
                GridVertex::new(sym(&[1, 0, 1, 0]), vec![0, 1, 2]),
                GridVertex::new(sym(&[0, 1]), vec![0]),
            ],
            3,
            vec![1, 2],
        )
        .unwrap();
        assert_eq!(g.gate_signature().unwrap(), sym(&[0, 1, 0]));
        assert!(g.is_planar());
        let eq2 = sym(&[1, 0, 1]);
        let chain = SignatureGrid::new(
            vec![GridVertex::new(eq2.clone(), vec![0, 1]), GridVertex::new(eq2.clone(), vec![1, 2])],
            3,
            vec![0, 2],
        )
        .unwrap();
        assert_eq!(chain.gate_signature().unwrap(), eq2);
        let f = Signature::from_fn(3, |x| Scalar::from_int(x as i64)).unwrap();
        let single = SignatureGrid::new(vec![GridVertex::new(f.clone(), vec![0, 1, 2])], 3, vec![0, 1, 2]).unwrap();
        assert_eq!(single.gate_signature().unwrap(), f);
        assert!(single.brute_force_holant().is_err());
    }

    #[test]
    fn gate_planarity_uses_dangling_order() {
        // One vertex of arity 3 with dangling edges in its own ccw order is
        // planar in any rotation of that order; a transposition is not.
        let f = Signature::zero(4).unwrap();
        let ok = SignatureGrid::new(vec![GridVertex::new(f.clone(), vec![0, 1, 2, 3])], 4, vec![1, 2, 3, 0]).unwrap();
        assert!(ok.is_planar());
        let bad = SignatureGrid::new(vec![GridVertex::new(f, vec![0, 1, 2, 3])], 4, vec![0, 2, 1, 3]).unwrap();
        assert!(!bad.is_planar());
    }

    #[test]
    fn validation() {
        let eq2 = sym(&[1, 0, 1]);
        assert!(SignatureGrid::new(vec![GridVertex::new(eq2.clone(), vec![0])], 1, vec![]).is_err());
        assert!(SignatureGrid::new(vec![GridVertex::new(eq2.clone(), vec![0, 1])], 2, vec![]).is_err());
        assert!(SignatureGrid::new(vec![GridVertex::new(eq2, vec![0, 0])], 1, vec![]).is_ok());
    }

    #[test]
    fn brute_force_cap() {
        let eq2 = sym(&[1, 0, 1]);
        let n = MAX_BRUTE_EDGES + 1;
        let vs = (0..n).map(|i| GridVertex::new(eq2.clone(), vec![i, (i + 1) % n])).collect();
        let g = SignatureGrid::new(vs, n, vec![]).unwrap();
        assert!(matches!(g.brute_force_holant(), Err(Error::TooLarge(_))));
    }
}
