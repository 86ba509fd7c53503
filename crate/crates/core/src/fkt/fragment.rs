use serde::{Deserialize, Serialize};

use super::{enumerate_pm_excluding, WeightedEdge};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{Signature, MAX_ARITY};

/// A planar matchgate: a weighted graph plus dangling edges. Rotation
/// entries below `edges.len()` are internal edges; larger ids are dangling
/// stubs, each used once. `dangling` lists the stubs counterclockwise along
/// the outer face and fixes the variable order of the signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFragment", into = "RawFragment")]
pub struct MatchgateFragment {
    num_vertices: usize,
    edges: Vec<WeightedEdge>,
    rotation: Vec<Vec<usize>>,
    dangling: Vec<usize>,
    anchors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawFragment {
    vertices: usize,
    edges: Vec<WeightedEdge>,
    rotation: Vec<Vec<usize>>,
    dangling: Vec<usize>,
}

impl TryFrom<RawFragment> for MatchgateFragment {
    type Error = Error;

    fn try_from(r: RawFragment) -> Result<Self> {
        Self::new(r.vertices, r.edges, r.rotation, r.dangling)
    }
}

impl From<MatchgateFragment> for RawFragment {
    fn from(f: MatchgateFragment) -> Self {
        Self {
            vertices: f.num_vertices,
            edges: f.edges,
            rotation: f.rotation,
            dangling: f.dangling,
        }
    }
}

impl MatchgateFragment {
    pub fn new(num_vertices: usize, edges: Vec<WeightedEdge>, rotation: Vec<Vec<usize>>, dangling: Vec<usize>) -> Result<Self> {
        let m = edges.len();
        if rotation.len() != num_vertices {
            return Err(Error::InvalidEmbedding(format!(
                "{} rotations for {num_vertices} vertices",
                rotation.len()
            )));
        }
        if dangling.len() > MAX_ARITY {
            return Err(Error::ArityTooLarge(dangling.len()));
        }
        let total = m + dangling.len();
        let mut anchors = vec![usize::MAX; dangling.len()];
        let mut stub_index = vec![usize::MAX; total];
        for (j, &s) in dangling.iter().enumerate() {
            if s < m || s >= total || stub_index[s] != usize::MAX {
                return Err(Error::InvalidEmbedding(format!(
                    "dangling ids must be distinct and in {m}..{total}, got {s}"
                )));
            }
            stub_index[s] = j;
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &s in rot.iter().filter(|&&s| s >= m) {
                if s >= total || anchors[stub_index[s]] != usize::MAX {
                    return Err(Error::InvalidEmbedding(format!("stub {s} is unknown or used twice")));
                }
                anchors[stub_index[s]] = v;
            }
        }
        if let Some(j) = anchors.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidEmbedding(format!("dangling edge {j} is not attached")));
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.u >= num_vertices || edge.v >= num_vertices || edge.u == edge.v {
                return Err(Error::InvalidEmbedding(format!("edge {e} has bad endpoints")));
            }
            if edge.w.is_zero() {
                return Err(Error::InvalidEmbedding(format!("edge {e} has weight 0")));
            }
        }
        let frag = Self {
            num_vertices,
            edges,
            rotation,
            dangling,
            anchors,
        };
        let emb = frag.embedding()?;
        for (e, edge) in frag.edges.iter().enumerate() {
            let [a, b] = emb.endpoints(e);
            let mut ends = [a.vertex, b.vertex];
            ends.sort_unstable();
            if ends != [edge.u.min(edge.v), edge.u.max(edge.v)] {
                return Err(Error::InvalidEmbedding(format!("rotation places edge {e} at the wrong vertices")));
            }
        }
        emb.check_planar()?;
        Ok(frag)
    }

    /// The rotation system with one extra vertex in the outer face holding
    /// the stubs in reverse order.
    fn embedding(&self) -> Result<Embedding> {
        let mut rot = self.rotation.clone();
        if !self.dangling.is_empty() {
            rot.push(self.dangling.iter().rev().copied().collect());
        }
        Embedding::new(rot, self.edges.len() + self.dangling.len())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    pub fn arity(&self) -> usize {
        self.dangling.len()
    }

    /// Vertex carrying dangling edge `j`.
    pub fn anchor(&self, j: usize) -> usize {
        self.anchors[j]
    }

    /// Side-by-side union: `other`'s vertices, edges and stubs are shifted
    /// after ours and its dangling edges follow ours.
    pub fn disjoint_union(&self, other: &MatchgateFragment) -> Result<Self> {
        let (n, m, k) = (self.num_vertices, self.edges.len(), self.dangling.len());
        let (m2, k2) = (other.edges.len(), other.dangling.len());
        let map_self = |s: usize| if s < m { s } else { s + m2 };
        let map_other = |s: usize| if s < m2 { s + m } else { s - m2 + m + m2 + k };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| WeightedEdge::new(e.u + n, e.v + n, e.w.clone())));
        let mut rotation: Vec<Vec<usize>> = self.rotation.iter().map(|r| r.iter().map(|&s| map_self(s)).collect()).collect();
        rotation.extend(other.rotation.iter().map(|r| r.iter().map(|&s| map_other(s)).collect()));
        let mut dangling: Vec<usize> = self.dangling.iter().map(|&s| map_self(s)).collect();
        dangling.extend(other.dangling.iter().map(|&s| map_other(s)));
        debug_assert_eq!(dangling.len(), k + k2);
        Self::new(n + other.num_vertices, edges, rotation, dangling)
    }
}

/// The fragment's signature: entry `y` is the weighted perfect-matching
/// count after deleting the anchors of the dangling edges with `y_j = 1`
/// (an anchor hit twice gives 0).
pub fn fragment_signature(frag: &MatchgateFragment) -> Result<Signature> {
    let k = frag.arity();
    let values = (0..1usize << k)
        .map(|y| {
            let mut removed = 0u64;
            for j in 0..k {
                if y & (1 << (k - 1 - j)) != 0 {
                    let bit = 1u64 << frag.anchor(j);
                    if removed & bit != 0 {
                        return Ok(Scalar::zero());
                    }
                    removed |= bit;
                }
            }
            enumerate_pm_excluding(frag.num_vertices, &frag.edges, removed)
        })
        .collect::<Result<Vec<_>>>()?;
    Signature::new(k, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::is_matchgate;
    use crate::signature::SymmetricSignature;

    fn sym(e: &[Scalar]) -> Signature {
        SymmetricSignature::new(e.to_vec()).unwrap().to_signature()
    }

    #[test]
    fn examples() {
        let star = MatchgateFragment::new(1, vec![], vec![vec![0, 1, 2]], vec![0, 1, 2]).unwrap();
        assert_eq!(fragment_signature(&star).unwrap(), Signature::exact_one(3).unwrap());
        let w = Scalar::from_int(5) + Scalar::i();
        // 0 -- 1 by edge 0; stub 1 at vertex 0, stub 2 at vertex 1
        let pair = MatchgateFragment::new(2, vec![WeightedEdge::new(0, 1, w.clone())], vec![vec![0, 1], vec![2, 0]], vec![1, 2]).unwrap();
        let f = fragment_signature(&pair).unwrap();
        assert_eq!(f, sym(&[w, Scalar::zero(), Scalar::one()]));
        assert!(is_matchgate(&f));
        let empty = MatchgateFragment::new(0, vec![], vec![], vec![]).unwrap();
        assert_eq!(fragment_signature(&empty).unwrap(), Signature::constant(Scalar::one()));
    }

    #[test]
    fn serde_shape() {
        let pair = MatchgateFragment::new(2, vec![WeightedEdge::unit(0, 1)], vec![vec![0, 1], vec![2, 0]], vec![1, 2]).unwrap();
        let json = serde_json::to_value(&pair).unwrap();
        assert_eq!(json["vertices"], 2);
        assert_eq!(json["dangling"], serde_json::json!([1, 2]));
        let back: MatchgateFragment = serde_json::from_value(json).unwrap();
        assert_eq!(back, pair);
        let bad = serde_json::json!({"vertices": 1, "edges": [], "rotation": [[0]], "dangling": [0, 0]});
        assert!(serde_json::from_value::<MatchgateFragment>(bad).is_err());
    }

    #[test]
    fn dangling_order_must_follow_the_outer_face() {
        // a 4-cycle with one stub per vertex: listing the stubs out of
        // cyclic order forces them to cross
        let edges = (0..4).map(|i| WeightedEdge::unit(i, (i + 1) % 4)).collect::<Vec<_>>();
        let rot = vec![vec![0, 3, 4], vec![1, 0, 5], vec![6, 2, 1], vec![2, 7, 3]];
        assert!(MatchgateFragment::new(4, edges.clone(), rot.clone(), vec![4, 5, 6, 7]).is_ok());
        assert!(MatchgateFragment::new(4, edges, rot, vec![4, 6, 5, 7]).is_err());
    }

    #[test]
    fn union_multiplies() {
        let star = MatchgateFragment::new(1, vec![], vec![vec![0, 1]], vec![0, 1]).unwrap();
        let pair = MatchgateFragment::new(2, vec![WeightedEdge::unit(0, 1)], vec![vec![0, 1], vec![2, 0]], vec![1, 2]).unwrap();
        let u = star.disjoint_union(&pair).unwrap();
        let f = fragment_signature(&star).unwrap();
        let g = fragment_signature(&pair).unwrap();
        assert_eq!(fragment_signature(&u).unwrap(), f.tensor_concat(&g).unwrap());
    }
}
