//! Combinatorial embeddings (rotation systems) and face tracing.
//!
//! Each vertex lists its incident edge ids counterclockwise. A dart is an
//! edge leaving a vertex through one of its slots. Following a dart to its
//! head and turning to the previous slot there walks a face; bounded faces
//! come out counterclockwise.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
    /// The two (vertex, slot) occurrences of every edge.
    ends: Vec<[Dart; 2]>,
}

impl Embedding {
    /// Every edge id in `0..num_edges` must occur exactly twice in total
    /// (twice at one vertex for a self-loop).
    pub fn new(rotation: Vec<Vec<usize>>, num_edges: usize) -> Result<Self> {
        let mut seen: Vec<Vec<Dart>> = vec![Vec::new(); num_edges];
        for (v, rot) in rotation.iter().enumerate() {
            for (slot, &e) in rot.iter().enumerate() {
                if e >= num_edges {
                    return Err(Error::InvalidEmbedding(format!("vertex {v} lists unknown edge {e}")));
                }
                seen[e].push(Dart { vertex: v, slot });
            }
        }
        let ends = seen
            .into_iter()
            .enumerate()
            .map(|(e, d)| {
                <[Dart; 2]>::try_from(d).map_err(|d| {
                    Error::InvalidEmbedding(format!("edge {e} has {} endpoints, expected 2", d.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rotation, ends })
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn edge(&self, d: Dart) -> usize {
        self.rotation[d.vertex][d.slot]
    }

    /// The dart of the same edge leaving the other end.
    pub fn reverse(&self, d: Dart) -> Dart {
        let [a, b] = self.ends[self.edge(d)];
        if a == d {
            b
        } else {
            a
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.reverse(d).vertex
    }

    pub fn endpoints(&self, e: usize) -> [Dart; 2] {
        self.ends[e]
    }

    /// The next dart along the face to the left of `d`.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let r = self.reverse(d);
        let deg = self.rotation[r.vertex].len();
        Dart {
            vertex: r.vertex,
            slot: (r.slot + deg - 1) % deg,
        }
    }

    /// All faces as dart cycles, in order of their smallest dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut visited: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..self.rotation.len() {
            for slot in 0..self.rotation[v].len() {
                if visited[v][slot] {
                    continue;
                }
                let start = Dart { vertex: v, slot };
                let mut face = Vec::new();
                let mut d = start;
                loop {
                    visited[d.vertex][d.slot] = true;
                    face.push(d);
                    d = self.next_in_face(d);
                    if d == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected component id of every vertex (ids in order of first vertex).
    pub fn components(&self) -> Vec<usize> {
        let n = self.rotation.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for slot in 0..self.rotation[v].len() {
                    let w = self.head(Dart { vertex: v, slot });
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Checks `V - E + F = 2` on every connected component.
    pub fn check_planar(&self) -> Result<()> {
        let comp = self.components();
        let k = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; k];
        let mut e = vec![0i64; k];
        let mut f = vec![0i64; k];
        for (x, &c) in comp.iter().enumerate() {
            v[c] += 1;
            e[c] += self.rotation[x].len() as i64;
        }
        for face in self.faces() {
            f[comp[face[0].vertex]] += 1;
        }
        for c in 0..k {
            let edges = e[c] / 2;
            // an isolated vertex has no darts but one face
            let faces = f[c].max(1);
            let chi = v[c] - edges + faces;
            if chi != 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "component {c} has Euler characteristic {chi} (V={}, E={edges}, F={faces})",
                    v[c]
                )));
            }
        }
        Ok(())
    }

    pub fn is_planar(&self) -> bool {
        self.check_planar().is_ok()
    }
}
