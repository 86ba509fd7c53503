//! Seeded generators for randomized testing and experiments.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fkt::{realize, PlanarGraph, WeightedEdge};
use crate::grid::{Constraint, CspInstance, GridVertex, SignatureGrid};
use crate::scalar::Scalar;
use crate::signature::{Signature, SymmetricSignature};
use crate::transform::Transform2x2;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{0, ±1, ±i, ±2}`.
pub fn small_pool() -> Vec<Scalar> {
    let mut pool = vec![Scalar::zero()];
    for v in [Scalar::one(), Scalar::i(), Scalar::from_int(2)] {
        pool.push(-v.clone());
        pool.push(v);
    }
    pool
}

/// Nonzero entries including `1 ± i`.
pub fn weight_pool() -> Vec<Scalar> {
    let mut pool: Vec<Scalar> = small_pool().into_iter().filter(|s| !s.is_zero()).collect();
    pool.push(Scalar::one() + Scalar::i());
    pool.push(Scalar::one() - Scalar::i());
    pool
}

pub fn pick(rng: &mut GenRng, pool: &[Scalar]) -> Scalar {
    pool.choose(rng).expect("nonempty pool").clone()
}

fn pick_nonzero(rng: &mut GenRng, pool: &[Scalar]) -> Scalar {
    loop {
        let s = pick(rng, pool);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_signature(rng: &mut GenRng, arity: usize, pool: &[Scalar]) -> Signature {
    Signature::from_fn(arity, |_| pick(rng, pool)).expect("arity within range")
}

pub fn random_symmetric(rng: &mut GenRng, arity: usize, pool: &[Scalar]) -> Signature {
    let entries = (0..=arity).map(|_| pick(rng, pool)).collect();
    SymmetricSignature::new(entries).expect("arity within range").to_signature()
}

/// `λ·i^{Q(x)}` on a random affine support: free variables are chosen at
/// random, every other variable is a random affine function of them, and
/// `Q` has random linear coefficients in ℤ₄ and even cross terms.
pub fn random_affine_signature(rng: &mut GenRng, arity: usize) -> Signature {
    let free: Vec<usize> = (0..arity).filter(|_| rng.random_bool(0.6)).collect();
    let dependent: Vec<(usize, Vec<bool>, bool)> = (0..arity)
        .filter(|v| !free.contains(v))
        .map(|v| (v, free.iter().map(|_| rng.random_bool(0.5)).collect(), rng.random_bool(0.5)))
        .collect();
    let r = free.len();
    let lin: Vec<u32> = (0..r).map(|_| rng.random_range(0..4)).collect();
    let cross: Vec<Vec<bool>> = (0..r).map(|_| (0..r).map(|_| rng.random_bool(0.5)).collect()).collect();
    let lambda = pick_nonzero(rng, &weight_pool());
    let mut values = vec![Scalar::zero(); 1 << arity];
    for y in 0..1usize << r {
        let bit = |j: usize| y >> j & 1 == 1;
        let mut x = 0usize;
        for (j, &v) in free.iter().enumerate() {
            if bit(j) {
                x |= 1 << (arity - 1 - v);
            }
        }
        for (v, mask, c) in &dependent {
            let val = (0..r).filter(|&j| mask[j] && bit(j)).count() % 2 == 1;
            if val ^ c {
                x |= 1 << (arity - 1 - v);
            }
        }
        let mut q = 0u32;
        for j in (0..r).filter(|&j| bit(j)) {
            q += lin[j];
            q += (j + 1..r).filter(|&k| bit(k) && cross[j][k]).count() as u32 * 2;
        }
        values[x] = lambda.mul_i_pow(q as i64 % 4);
    }
    Signature::new(arity, values).expect("arity within range")
}

/// A tensor product of unaries and two-point-support blocks on a random
/// partition of the variables.
pub fn random_product_signature(rng: &mut GenRng, arity: usize, pool: &[Scalar]) -> Signature {
    let mut order: Vec<usize> = (0..arity).collect();
    order.shuffle(rng);
    // each block: its variables and the values at its chosen point and at
    // the complement of that point
    let mut blocks: Vec<(Vec<usize>, usize, Scalar, Scalar)> = Vec::new();
    let mut rest = &order[..];
    while !rest.is_empty() {
        let size = rng.random_range(1..=rest.len().min(3));
        let (vars, tail) = rest.split_at(size);
        rest = tail;
        let point = rng.random_range(0..1usize << size);
        let (a, b) = loop {
            let (a, b) = (pick(rng, pool), pick(rng, pool));
            if !(a.is_zero() && b.is_zero()) {
                break (a, b);
            }
        };
        blocks.push((vars.to_vec(), point, a, b));
    }
    Signature::from_fn(arity, |x| {
        let mut acc = Scalar::one();
        for (vars, point, a, b) in &blocks {
            let k = vars.len();
            let local = vars
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, &v)| acc | ((x >> (arity - 1 - v) & 1) << (k - 1 - j)));
            if local == *point {
                acc = acc * a.clone();
            } else if local == !point & ((1 << k) - 1) {
                acc = acc * b.clone();
            } else {
                return Scalar::zero();
            }
        }
        acc
    })
    .expect("arity within range")
}

/// A random invertible matrix with entries in `ℤ[i]`.
pub fn random_invertible_transform(rng: &mut GenRng) -> Transform2x2 {
    let mut pool = weight_pool();
    pool.push(Scalar::zero());
    loop {
        let t = Transform2x2::new(pick(rng, &pool), pick(rng, &pool), pick(rng, &pool), pick(rng, &pool));
        if !t.det().is_zero() {
            return t;
        }
    }
}

/// A subgraph of the triangulated `rows × cols` lattice. Vertex `(r, c)` has
/// id `r·cols + c`; rotations list edges by direction E, NE, N, W, SW, S,
/// which is counterclockwise in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<usize>>,
}

/// Every edge of the triangulated lattice with its directions at both ends.
fn lattice_candidates(rows: usize, cols: usize) -> Vec<(usize, usize, usize, usize)> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                out.push((id(r, c), id(r, c + 1), 0, 3));
            }
            if r + 1 < rows && c + 1 < cols {
                out.push((id(r, c), id(r + 1, c + 1), 1, 4));
            }
            if r + 1 < rows {
                out.push((id(r, c), id(r + 1, c), 2, 5));
            }
        }
    }
    out
}

pub fn lattice_edge_count(rows: usize, cols: usize) -> usize {
    lattice_candidates(rows, cols).len()
}

/// The lattice subgraph keeping candidate edge `k` iff `keep(k)`.
pub fn lattice_subgraph(rows: usize, cols: usize, mut keep: impl FnMut(usize) -> bool) -> LatticeGraph {
    let n = rows * cols;
    let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (k, (u, v, du, dv)) in lattice_candidates(rows, cols).into_iter().enumerate() {
        if keep(k) {
            slots[u].push((du, edges.len()));
            slots[v].push((dv, edges.len()));
            edges.push((u, v));
        }
    }
    let rotation = slots
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    LatticeGraph {
        num_vertices: n,
        edges,
        rotation,
    }
}

pub fn random_lattice_graph(rng: &mut GenRng, rows: usize, cols: usize, p: f64) -> LatticeGraph {
    lattice_subgraph(rows, cols, |_| rng.random_bool(p))
}

impl LatticeGraph {
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.rotation[v] {
                let (a, b) = self.edges[e];
                let w = if a == v { b } else { a };
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// The graph with weight `w(e)` on edge `e`.
    pub fn weighted(&self, mut w: impl FnMut(usize) -> Scalar) -> Result<PlanarGraph> {
        let edges = self.edges.iter().enumerate().map(|(e, &(u, v))| WeightedEdge::new(u, v, w(e))).collect();
        PlanarGraph::new(self.num_vertices, edges, self.rotation.clone())
    }

    /// A grid on the non-isolated vertices with signature `sig(degree)` at
    /// each one.
    pub fn to_grid(&self, mut sig: impl FnMut(usize) -> Signature) -> Result<SignatureGrid> {
        let vertices = (0..self.num_vertices)
            .filter(|&v| self.degree(v) > 0)
            .map(|v| GridVertex::new(sig(self.degree(v)), self.rotation[v].clone()))
            .collect();
        SignatureGrid::new(vertices, self.edges.len(), vec![])
    }
}

/// A bipartite planar grid: a random lattice graph with at most
/// `max_edges / 2` edges, 2-stretched, with random signatures on both sides.
pub fn random_bipartite_grid(rng: &mut GenRng, max_edges: usize, pool: &[Scalar]) -> Result<SignatureGrid> {
    let g = loop {
        let g = random_lattice_graph(rng, 2, 3, 0.4);
        if !g.edges.is_empty() && 2 * g.edges.len() <= max_edges {
            break g;
        }
    };
    let base = g.to_grid(|d| random_signature(rng, d, pool))?;
    base.two_stretch().map_signatures(|_, v| {
        Ok(if v.side == Some(crate::transform::Side::Row) {
            random_signature(rng, 2, pool)
        } else {
            v.signature.clone()
        })
    })
}

/// A signature of arity `d` with a builtin matchgate realization: a scaled
/// `Exact-One`, `𝓔𝓠̂`, or generalized equality with a zero end.
pub fn random_realizable_signature(rng: &mut GenRng, d: usize) -> Signature {
    let c = pick_nonzero(rng, &weight_pool());
    let f = match rng.random_range(0..4) {
        0 => Signature::exact_one(d),
        1 => Signature::even_parity(d),
        2 => {
            let mut e = vec![Scalar::zero(); d + 1];
            e[if rng.random_bool(0.5) { 0 } else { d }] = Scalar::one();
            SymmetricSignature::new(e).map(|s| s.to_signature())
        }
        _ if d == 2 => SymmetricSignature::new(vec![pick_nonzero(rng, &weight_pool()), Scalar::zero(), Scalar::one()]).map(|s| s.to_signature()),
        _ => Signature::even_parity(d),
    }
    .expect("small arity");
    f.scale(&c)
}

/// A planar grid on a random lattice graph whose vertex signatures all have
/// builtin realizations.
pub fn random_matchgate_grid(rng: &mut GenRng, rows: usize, cols: usize, max_edges: usize) -> Result<SignatureGrid> {
    let g = loop {
        let g = random_lattice_graph(rng, rows, cols, 0.5);
        if !g.edges.is_empty() && g.edges.len() <= max_edges {
            break g;
        }
    };
    let grid = g.to_grid(|d| random_realizable_signature(rng, d))?;
    debug_assert!(grid.vertices().iter().all(|v| realize(&v.signature).ok().flatten().is_some()));
    Ok(grid)
}

/// `m` constraints of arity `1..=max_arity` on distinct random variables,
/// with signatures from `sig(rng, arity)`.
pub fn random_csp(
    rng: &mut GenRng,
    num_vars: usize,
    m: usize,
    max_arity: usize,
    mut sig: impl FnMut(&mut GenRng, usize) -> Signature,
) -> Result<CspInstance> {
    let constraints = (0..m)
        .map(|_| {
            let k = rng.random_range(1..=max_arity.min(num_vars));
            let vars = rand::seq::index::sample(rng, num_vars, k).into_vec();
            Constraint::new(sig(rng, k), vars)
        })
        .collect();
    CspInstance::new(num_vars, constraints)
}

/// Up to `max_constraints` constraints drawn from `set` on distinct random
/// variables among `vars`, where `vars` is at least the largest arity.
pub fn random_csp_from_set(rng: &mut GenRng, set: &[Signature], vars: usize, max_constraints: usize) -> Result<CspInstance> {
    let vars = vars.max(set.iter().map(Signature::arity).max().unwrap_or(0));
    let m = if set.is_empty() { 0 } else { rng.random_range(1..=max_constraints.max(1)) };
    let constraints = (0..m)
        .map(|_| {
            let f = set.choose(rng).expect("nonempty set").clone();
            let on = rand::seq::index::sample(rng, vars, f.arity()).into_vec();
            Constraint::new(f, on)
        })
        .collect();
    CspInstance::new(vars, constraints)
}
