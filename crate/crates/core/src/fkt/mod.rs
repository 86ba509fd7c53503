//! Perfect-matching counts on planar graphs by the FKT method, matchgate
//! fragments, and evaluation of grids built from them.

mod fragment;
mod kasteleyn;
mod library;
mod pfaffian;
mod stitch;

pub use fragment::{fragment_signature, MatchgateFragment};
pub use kasteleyn::{is_kasteleyn, kasteleyn_orient};
pub use library::{connect_adjacent, generate_library, library, realize, scaled, LibraryEntry, LIBRARY_JSON, LIBRARY_MAX_ARITY};
pub use pfaffian::pfaffian;
pub use stitch::{evaluate_matchgate_grid, realize_grid, stitch};

use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Vertex cap for [`enumerate_pm`].
pub const MAX_ENUMERATE_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub w: Scalar,
}

impl WeightedEdge {
    pub fn new(u: usize, v: usize, w: Scalar) -> Self {
        Self { u, v, w }
    }

    pub fn unit(u: usize, v: usize) -> Self {
        Self::new(u, v, Scalar::one())
    }
}

/// A weighted graph with a rotation system: `rotation[v]` lists the edge ids
/// at `v` counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct PlanarGraph {
    edges: Vec<WeightedEdge>,
    embedding: Embedding,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<WeightedEdge>,
    rotation: Vec<Vec<usize>>,
}

impl TryFrom<RawGraph> for PlanarGraph {
    type Error = Error;

    fn try_from(r: RawGraph) -> Result<Self> {
        Self::new(r.vertices, r.edges, r.rotation)
    }
}

impl From<PlanarGraph> for RawGraph {
    fn from(g: PlanarGraph) -> Self {
        Self {
            vertices: g.num_vertices(),
            rotation: g.rotation(),
            edges: g.edges,
        }
    }
}

impl PlanarGraph {
    /// Validates that each edge sits in the rotations of its two endpoints,
    /// that weights are nonzero, and that the embedding is planar.
    pub fn new(num_vertices: usize, edges: Vec<WeightedEdge>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != num_vertices {
            return Err(Error::InvalidEmbedding(format!(
                "{} rotations for {num_vertices} vertices",
                rotation.len()
            )));
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.u >= num_vertices || edge.v >= num_vertices {
                return Err(Error::InvalidEmbedding(format!("edge {e} has an endpoint out of range")));
            }
            if edge.u == edge.v {
                return Err(Error::InvalidEmbedding(format!("edge {e} is a loop")));
            }
            if edge.w.is_zero() {
                return Err(Error::InvalidEmbedding(format!("edge {e} has weight 0")));
            }
        }
        let embedding = Embedding::new(rotation, edges.len())?;
        for (e, edge) in edges.iter().enumerate() {
            let [a, b] = embedding.endpoints(e);
            let mut ends = [a.vertex, b.vertex];
            ends.sort_unstable();
            if ends != [edge.u.min(edge.v), edge.u.max(edge.v)] {
                return Err(Error::InvalidEmbedding(format!("rotation places edge {e} at the wrong vertices")));
            }
        }
        embedding.check_planar()?;
        Ok(Self { edges, embedding })
    }

    pub fn num_vertices(&self) -> usize {
        self.embedding.num_vertices()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn rotation(&self) -> Vec<Vec<usize>> {
        (0..self.num_vertices()).map(|v| self.embedding.rotation(v).to_vec()).collect()
    }
}

/// `Σ_M Π_{e ∈ M} w_e` over the perfect matchings of any graph with at most
/// [`MAX_ENUMERATE_VERTICES`] vertices. Loops are never matched.
pub fn enumerate_pm(num_vertices: usize, edges: &[WeightedEdge]) -> Result<Scalar> {
    enumerate_pm_excluding(num_vertices, edges, 0)
}

/// [`enumerate_pm`] on the subgraph without the vertices in `excluded`.
pub(crate) fn enumerate_pm_excluding(num_vertices: usize, edges: &[WeightedEdge], excluded: u64) -> Result<Scalar> {
    if num_vertices > MAX_ENUMERATE_VERTICES {
        return Err(Error::TooLarge(format!(
            "{num_vertices} vertices exceed the enumeration cap of {MAX_ENUMERATE_VERTICES}"
        )));
    }
    let full = (1u64 << num_vertices) - 1;
    if (full & !excluded).count_ones() % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let mut adj: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); num_vertices];
    for e in edges {
        if e.u != e.v {
            adj[e.u].push((e.v, &e.w));
            adj[e.v].push((e.u, &e.w));
        }
    }
    fn go(matched: u64, full: u64, adj: &[Vec<(usize, &Scalar)>]) -> Scalar {
        if matched == full {
            return Scalar::one();
        }
        let v = (!matched).trailing_zeros() as usize;
        let mut total = Scalar::zero();
        for &(u, w) in &adj[v] {
            if matched & (1 << u) == 0 {
                let rest = go(matched | (1 << v) | (1 << u), full, adj);
                if !rest.is_zero() {
                    total += &(w * &rest);
                }
            }
        }
        total
    }
    Ok(go(excluded & full, full, &adj))
}

fn permutation_sign(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        odd ^= len % 2 == 0;
    }
    odd
}

/// Weighted perfect-matching count of a planar graph: per connected
/// component, the Pfaffian of the Kasteleyn matrix, with its global sign
/// fixed by one perfect matching of that component.
pub fn count_pm_fkt(g: &PlanarGraph) -> Result<Scalar> {
    let forward = kasteleyn_orient(g)?;
    let comp = g.embedding.components();
    let k = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in comp.iter().enumerate() {
        members[c].push(v);
    }
    let mut local = vec![0usize; g.num_vertices()];
    let mut total = Scalar::one();
    for verts in &members {
        if verts.len() % 2 == 1 {
            return Ok(Scalar::zero());
        }
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let n = verts.len();
        let mut m = vec![vec![Scalar::zero(); n]; n];
        let mut pg = UnGraph::<(), usize>::with_capacity(n, 0);
        for _ in 0..n {
            pg.add_node(());
        }
        for (e, edge) in g.edges.iter().enumerate() {
            if comp[edge.u] != comp[verts[0]] {
                continue;
            }
            let (a, b) = if forward[e] { (edge.u, edge.v) } else { (edge.v, edge.u) };
            let (a, b) = (local[a], local[b]);
            m[a][b] = &m[a][b] + &edge.w;
            m[b][a] = &m[b][a] - &edge.w;
            pg.add_edge(NodeIndex::new(a), NodeIndex::new(b), e);
        }
        let pf = pfaffian(&m)?;
        let matching = petgraph::algo::maximum_matching(&pg);
        if !matching.is_perfect() {
            if !pf.is_zero() {
                return Err(Error::Internal("Pfaffian is nonzero without a perfect matching".into()));
            }
            return Ok(Scalar::zero());
        }
        // the Pfaffian term of this matching has sign sgn(π)·Π orientation
        let mut perm = Vec::with_capacity(n);
        let mut negative = false;
        for (a, b) in matching.edges() {
            let (a, b) = (a.index(), b.index());
            perm.push(a);
            perm.push(b);
            let e = *pg.edge_weight(pg.find_edge(NodeIndex::new(a), NodeIndex::new(b)).expect("matched edge")).expect("edge id");
            let tail = if forward[e] { g.edges[e].u } else { g.edges[e].v };
            negative ^= local[tail] != a;
        }
        negative ^= permutation_sign(&perm);
        total = &total * &(if negative { -pf } else { pf });
        if total.is_zero() {
            break;
        }
    }
    Ok(total)
}
