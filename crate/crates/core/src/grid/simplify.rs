use super::{GridVertex, SignatureGrid};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::signature::Signature;

fn is_equality(f: &Signature) -> bool {
    f.arity() >= 1 && Signature::equality(f.arity()).is_ok_and(|e| &e == f)
}

/// The edges not in `shared`, in cyclic order from just after the last
/// shared slot.
fn rotate_after(edges: &[usize], shared: &[usize]) -> Vec<usize> {
    let n = edges.len();
    let last = (0..n).rev().find(|&k| shared.contains(&edges[k])).unwrap_or(n - 1);
    (1..=n)
        .map(|d| edges[(last + d) % n])
        .filter(|e| !shared.contains(e))
        .collect()
}

/// Contracts internal edges between `=` vertices. Adjacent `=_n`, `=_m`
/// joined by `k` edges merge into `=_{n+m-2k}`, or vanish for a factor 2 when
/// `n = m = k`; a self-loop on `=_n` leaves `=_{n-2}`. Returns the smaller
/// grid and the factor `c` with `Holant(grid) = c · Holant(result)`.
pub fn merge_equalities(grid: &SignatureGrid) -> Result<(SignatureGrid, Scalar)> {
    let mut verts: Vec<Option<GridVertex>> = grid.vertices().iter().cloned().map(Some).collect();
    let mut factor = Scalar::one();
    let two = Scalar::from_int(2);
    loop {
        let mut owner: Vec<Vec<usize>> = vec![Vec::new(); grid.num_edges()];
        for (v, vx) in verts.iter().enumerate() {
            if let Some(vx) = vx {
                for &e in &vx.edges {
                    owner[e].push(v);
                }
            }
        }
        let is_eq = |v: usize, verts: &[Option<GridVertex>]| verts[v].as_ref().is_some_and(|x| is_equality(&x.signature));
        let Some((a, b)) = owner.iter().find_map(|o| match o[..] {
            [a, b] if is_eq(a, &verts) && is_eq(b, &verts) => Some((a, b)),
            _ => None,
        }) else {
            break;
        };
        let va = verts[a].take().expect("live vertex");
        if a == b {
            let loops: Vec<usize> = va.edges.iter().copied().filter(|&e| owner[e] == [a, a]).collect();
            let rest = rotate_after(&va.edges, &loops);
            if rest.is_empty() {
                // =_n with every edge a loop sums to 2
                factor = &factor * &two;
            } else {
                verts[a] = Some(GridVertex {
                    signature: Signature::equality(rest.len())?,
                    edges: rest,
                    ..va
                });
            }
            continue;
        }
        let vb = verts[b].take().expect("live vertex");
        let shared: Vec<usize> = va.edges.iter().copied().filter(|e| vb.edges.contains(e)).collect();
        let mut edges = rotate_after(&va.edges, &shared);
        edges.extend(rotate_after(&vb.edges, &shared));
        if edges.is_empty() {
            factor = &factor * &two;
        } else {
            verts[a] = Some(GridVertex {
                signature: Signature::equality(edges.len())?,
                edges,
                ..va
            });
        }
    }

    // compact edge ids
    let mut used = vec![false; grid.num_edges()];
    for vx in verts.iter().flatten() {
        for &e in &vx.edges {
            used[e] = true;
        }
    }
    let mut new_id = vec![usize::MAX; grid.num_edges()];
    let mut next = 0;
    for e in 0..grid.num_edges() {
        if used[e] {
            new_id[e] = next;
            next += 1;
        }
    }
    let vertices = verts
        .into_iter()
        .flatten()
        .map(|vx| GridVertex {
            edges: vx.edges.iter().map(|&e| new_id[e]).collect(),
            ..vx
        })
        .collect();
    let dangling = grid.dangling().iter().map(|&e| new_id[e]).collect();
    Ok((SignatureGrid::new(vertices, next, dangling)?, factor))
}
