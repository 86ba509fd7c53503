use std::collections::VecDeque;

use super::PlanarGraph;
use crate::embedding::Dart;
use crate::error::{Error, Result};

/// Number of darts of `face` that run against the orientation, i.e. the
/// clockwise edges of a face traced counterclockwise. A bridge walked in
/// both directions counts once.
fn clockwise(g: &PlanarGraph, forward: &[bool], face: &[Dart]) -> usize {
    face.iter()
        .filter(|d| {
            let e = g.embedding().edge(**d);
            let from_u = d.vertex == g.edges()[e].u;
            from_u != forward[e]
        })
        .count()
}

/// Whether every face but at most one per connected component has an odd
/// number of clockwise edges. The exempt face plays the outer face.
pub fn is_kasteleyn(g: &PlanarGraph, forward: &[bool]) -> bool {
    if forward.len() != g.edges().len() {
        return false;
    }
    let comp = g.embedding().components();
    let mut even = vec![0usize; g.num_vertices()];
    for face in g.embedding().faces() {
        if clockwise(g, forward, &face).is_multiple_of(2) {
            even[comp[face[0].vertex]] += 1;
        }
    }
    even.iter().all(|&c| c <= 1)
}

/// A Kasteleyn orientation: `forward[e]` orients edge `e` from `u` to `v`.
/// Spanning-tree edges point away from the root; each remaining edge is the
/// dual-tree link of a face to its parent and is fixed leaves first so that
/// the face gets an odd clockwise count. In every component the face with
/// the most darts is the dual root, and so the outer face.
pub fn kasteleyn_orient(g: &PlanarGraph) -> Result<Vec<bool>> {
    let emb = g.embedding();
    let n = g.num_vertices();
    let m = g.edges().len();
    let mut forward = vec![true; m];
    let mut in_tree = vec![false; m];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for slot in 0..emb.rotation(v).len() {
                let d = Dart { vertex: v, slot };
                let w = emb.head(d);
                if !seen[w] {
                    seen[w] = true;
                    let e = emb.edge(d);
                    in_tree[e] = true;
                    forward[e] = g.edges()[e].u == v;
                    queue.push_back(w);
                }
            }
        }
    }

    let faces = emb.faces();
    let mut face_of: Vec<Vec<usize>> = (0..n).map(|v| vec![0; emb.rotation(v).len()]).collect();
    for (f, face) in faces.iter().enumerate() {
        for d in face {
            face_of[d.vertex][d.slot] = f;
        }
    }
    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.len()];
    for e in 0..m {
        if in_tree[e] {
            continue;
        }
        let [a, b] = emb.endpoints(e);
        let (fa, fb) = (face_of[a.vertex][a.slot], face_of[b.vertex][b.slot]);
        if fa == fb {
            return Err(Error::InvalidEmbedding(format!("non-tree edge {e} borders a single face")));
        }
        dual[fa].push((e, fb));
        dual[fb].push((e, fa));
    }

    let comp = emb.components();
    let mut root_of = vec![usize::MAX; n];
    for (f, face) in faces.iter().enumerate() {
        let c = comp[face[0].vertex];
        if root_of[c] == usize::MAX || face.len() > faces[root_of[c]].len() {
            root_of[c] = f;
        }
    }
    let mut parent_edge = vec![usize::MAX; faces.len()];
    let mut visited = vec![false; faces.len()];
    let mut order = Vec::with_capacity(faces.len());
    for &r in root_of.iter().filter(|&&r| r != usize::MAX) {
        visited[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &(e, h) in &dual[f] {
                if !visited[h] {
                    visited[h] = true;
                    parent_edge[h] = e;
                    queue.push_back(h);
                }
            }
        }
    }
    if order.len() != faces.len() {
        return Err(Error::InvalidEmbedding("dual graph is disconnected".into()));
    }
    for &f in order.iter().rev() {
        let e = parent_edge[f];
        if e == usize::MAX {
            continue;
        }
        if clockwise(g, &forward, &faces[f]).is_multiple_of(2) {
            forward[e] = !forward[e];
        }
    }
    if !is_kasteleyn(g, &forward) {
        return Err(Error::Internal("orientation fails the clockwise-odd check".into()));
    }
    Ok(forward)
}
