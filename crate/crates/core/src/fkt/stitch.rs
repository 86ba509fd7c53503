use super::{count_pm_fkt, fragment_signature, realize, MatchgateFragment, PlanarGraph, WeightedEdge};
use crate::error::{Error, Result};
use crate::grid::SignatureGrid;
use crate::scalar::Scalar;

fn check_realizations(grid: &SignatureGrid, realizations: &[Option<MatchgateFragment>]) -> Result<()> {
    if realizations.len() != grid.vertices().len() {
        return Err(Error::InvalidGrid(format!(
            "{} realizations for {} vertices",
            realizations.len(),
            grid.vertices().len()
        )));
    }
    for (v, (vx, r)) in grid.vertices().iter().zip(realizations).enumerate() {
        let r = r.as_ref().ok_or(Error::MissingRealization(v))?;
        let got = fragment_signature(r)?;
        if got != vx.signature {
            return Err(Error::RealizationMismatch {
                vertex: v,
                reason: format!("fragment realizes {got:?}, vertex carries {:?}", vx.signature),
            });
        }
    }
    Ok(())
}

/// Glues the fragments into one planar graph: fragment vertices are
/// renumbered consecutively and every grid edge becomes a unit edge between
/// the anchors of its two stubs. A grid loop whose stubs share an anchor can
/// never be matched and is dropped.
pub fn stitch(grid: &SignatureGrid, realizations: &[Option<MatchgateFragment>]) -> Result<PlanarGraph> {
    if !grid.dangling().is_empty() {
        return Err(Error::InvalidGrid("stitching needs a grid without dangling edges".into()));
    }
    check_realizations(grid, realizations)?;
    let frags: Vec<&MatchgateFragment> = realizations.iter().map(|r| r.as_ref().expect("checked")).collect();

    // global anchor of every (grid vertex, slot)
    let mut offset = 0;
    let mut anchor_of: Vec<Vec<usize>> = Vec::with_capacity(frags.len());
    let mut offsets = Vec::with_capacity(frags.len());
    for f in &frags {
        offsets.push(offset);
        anchor_of.push((0..f.arity()).map(|j| offset + f.anchor(j)).collect());
        offset += f.num_vertices();
    }
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); grid.num_edges()];
    for (v, vx) in grid.vertices().iter().enumerate() {
        for (slot, &e) in vx.edges.iter().enumerate() {
            ends[e].push(anchor_of[v][slot]);
        }
    }

    let mut edges = Vec::new();
    let mut grid_edge_id = vec![None; grid.num_edges()];
    for (e, a) in ends.iter().enumerate() {
        if a[0] != a[1] {
            grid_edge_id[e] = Some(edges.len());
            edges.push(WeightedEdge::unit(a[0], a[1]));
        }
    }
    let mut rotation = Vec::with_capacity(offset);
    for (v, f) in frags.iter().enumerate() {
        let base = edges.len();
        let m = f.edges().len();
        edges.extend(f.edges().iter().map(|x| WeightedEdge::new(x.u + offsets[v], x.v + offsets[v], x.w.clone())));
        for r in f.rotation() {
            rotation.push(
                r.iter()
                    .filter_map(|&s| {
                        if s < m {
                            return Some(base + s);
                        }
                        let j = f.dangling().iter().position(|&d| d == s).expect("stub");
                        grid_edge_id[grid.vertices()[v].edges[j]]
                    })
                    .collect(),
            );
        }
    }
    PlanarGraph::new(offset, edges, rotation)
}

/// Holant value of a planar grid by FKT on the stitched matchgates.
pub fn evaluate_matchgate_grid(grid: &SignatureGrid, realizations: &[Option<MatchgateFragment>]) -> Result<Scalar> {
    grid.check_planar()?;
    count_pm_fkt(&stitch(grid, realizations)?)
}

/// Realizations of every vertex signature from the builtin library.
pub fn realize_grid(grid: &SignatureGrid) -> Result<Vec<Option<MatchgateFragment>>> {
    grid.vertices().iter().map(|v| realize(&v.signature)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridVertex;
    use crate::signature::{Signature, SymmetricSignature};

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    fn eval(grid: &SignatureGrid) -> Scalar {
        evaluate_matchgate_grid(grid, &realize_grid(grid).unwrap()).unwrap()
    }

    #[test]
    fn two_cycle_of_equalities() {
        let g = SignatureGrid::new(
            vec![GridVertex::new(sym(&[1, 0, 1]), vec![0, 1]), GridVertex::new(sym(&[1, 0, 1]), vec![1, 0])],
            2,
            vec![],
        )
        .unwrap();
        assert_eq!(eval(&g), Scalar::from_int(2));
        assert_eq!(g.brute_force_holant().unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn exact_one_path_is_a_matching_count() {
        // Exact-One vertices on a 6-cycle: the perfect matchings of C6
        let eo2 = Signature::exact_one(2).unwrap();
        let g = SignatureGrid::new((0..6).map(|i| GridVertex::new(eo2.clone(), vec![i, (i + 5) % 6])).collect(), 6, vec![]).unwrap();
        assert_eq!(eval(&g), Scalar::from_int(2));
        assert_eq!(g.brute_force_holant().unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn mixed_grid_matches_brute_force() {
        // hub =̂₄ with a loop, joined to Exact-One₃ and a weighted pair
        let g = SignatureGrid::new(
            vec![
                GridVertex::new(sym(&[1, 0, 1, 0, 1]), vec![0, 1, 1, 2]),
                GridVertex::new(Signature::exact_one(3).unwrap(), vec![2, 3, 0]),
                GridVertex::new(sym(&[3, 0, -1]), vec![3, 4]),
                GridVertex::new(sym(&[0, 1]), vec![4]),
            ],
            5,
            vec![],
        )
        .unwrap();
        assert!(g.is_planar());
        assert_eq!(eval(&g), g.brute_force_holant().unwrap());
    }

    #[test]
    fn realization_errors() {
        let g = SignatureGrid::new(
            vec![GridVertex::new(sym(&[0, 0]), vec![0]), GridVertex::new(sym(&[1, 0]), vec![0])],
            1,
            vec![],
        )
        .unwrap();
        let r = realize_grid(&g).unwrap();
        assert_eq!(evaluate_matchgate_grid(&g, &r), Err(Error::MissingRealization(0)));
        let g = SignatureGrid::new(
            vec![GridVertex::new(sym(&[0, 1]), vec![0]), GridVertex::new(sym(&[1, 0]), vec![0])],
            1,
            vec![],
        )
        .unwrap();
        let wrong = vec![realize(&sym(&[0, 1])).unwrap(), realize(&sym(&[0, 1])).unwrap()];
        assert!(matches!(evaluate_matchgate_grid(&g, &wrong), Err(Error::RealizationMismatch { vertex: 1, .. })));
    }
}
