use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{fragment_signature, MatchgateFragment, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::{Signature, SymmetricSignature};

/// Builtin realizations, checked against their signatures on first use.
pub const LIBRARY_JSON: &str = include_str!("../../data/matchgates.json");

/// Largest arity of the builtin `Exact-One` and `𝓔𝓠̂` entries.
pub const LIBRARY_MAX_ARITY: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEntry", into = "RawEntry")]
pub struct LibraryEntry {
    pub name: String,
    pub signature: Signature,
    pub fragment: MatchgateFragment,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    name: String,
    symmetric: Vec<Scalar>,
    fragment: MatchgateFragment,
}

impl TryFrom<RawEntry> for LibraryEntry {
    type Error = Error;

    fn try_from(r: RawEntry) -> Result<Self> {
        Ok(Self {
            name: r.name,
            signature: SymmetricSignature::new(r.symmetric)?.to_signature(),
            fragment: r.fragment,
        })
    }
}

impl From<LibraryEntry> for RawEntry {
    fn from(e: LibraryEntry) -> Self {
        let symmetric = e.signature.as_symmetric().expect("library signatures are symmetric").entries().to_vec();
        Self {
            name: e.name,
            symmetric,
            fragment: e.fragment,
        }
    }
}

/// The parsed and verified builtin library.
pub fn library() -> Result<&'static [LibraryEntry]> {
    static LIB: OnceLock<Result<Vec<LibraryEntry>>> = OnceLock::new();
    LIB.get_or_init(|| {
        let entries: Vec<LibraryEntry> = serde_json::from_str(LIBRARY_JSON).map_err(|e| Error::Parse(e.to_string()))?;
        for (i, e) in entries.iter().enumerate() {
            let got = fragment_signature(&e.fragment)?;
            if got != e.signature {
                return Err(Error::RealizationMismatch {
                    vertex: i,
                    reason: format!("library entry {} realizes {got:?}", e.name),
                });
            }
        }
        Ok(entries)
    })
    .as_ref()
    .map(Vec::as_slice)
    .map_err(Clone::clone)
}

fn frag(n: usize, edges: &[(usize, usize)], rotation: &[&[usize]], dangling: &[usize]) -> Result<MatchgateFragment> {
    MatchgateFragment::new(
        n,
        edges.iter().map(|&(u, v)| WeightedEdge::unit(u, v)).collect(),
        rotation.iter().map(|r| r.to_vec()).collect(),
        dangling.to_vec(),
    )
}

/// One vertex with `k` dangling edges: `Exact-One_k`.
fn star(k: usize) -> Result<MatchgateFragment> {
    let stubs: Vec<usize> = (0..k).collect();
    frag(1, &[], &[&stubs], &stubs)
}

/// `[1, 0]`: a matched pair whose first vertex carries the dangling edge.
fn pinned_zero() -> Result<MatchgateFragment> {
    frag(2, &[(0, 1)], &[&[0, 1], &[0]], &[1])
}

/// `[w, 0, 1]`: two vertices joined by an edge of weight `w`.
fn weighted_pair(w: Scalar) -> Result<MatchgateFragment> {
    MatchgateFragment::new(2, vec![WeightedEdge::new(0, 1, w)], vec![vec![0, 1], vec![2, 0]], vec![1, 2])
}

/// `[1, 0, 1, 0]`: anchors 0, 1, 2 around a center 3 joined to all of them,
/// plus the edge 1–2.
fn even_parity_3() -> Result<MatchgateFragment> {
    frag(4, &[(3, 0), (3, 1), (3, 2), (1, 2)], &[&[4, 0], &[3, 1, 5], &[2, 3, 6], &[0, 1, 2]], &[4, 5, 6])
}

/// Joins dangling edges `p` and `p + 1` (adjacent on the outer face) into one
/// internal edge of weight 1, which sums out their shared variable.
pub fn connect_adjacent(f: &MatchgateFragment, p: usize) -> Result<MatchgateFragment> {
    let k = f.arity();
    if p + 1 >= k {
        return Err(Error::VariableOutOfRange { index: p + 1, arity: k });
    }
    let (u, v) = (f.anchor(p), f.anchor(p + 1));
    if u == v {
        return Err(Error::InvalidEmbedding("joining two stubs of one vertex makes a loop".into()));
    }
    let m = f.edges().len();
    let (sp, sq) = (f.dangling()[p], f.dangling()[p + 1]);
    // the new internal edge takes id m and the remaining stubs follow it
    let rest: Vec<usize> = f.dangling().iter().copied().filter(|&s| s != sp && s != sq).collect();
    let map = |s: usize| {
        if s < m {
            s
        } else if s == sp || s == sq {
            m
        } else {
            m + 1 + rest.iter().position(|&r| r == s).expect("stub")
        }
    };
    let mut edges = f.edges().to_vec();
    edges.push(WeightedEdge::unit(u, v));
    let rotation = f.rotation().iter().map(|r| r.iter().map(|&s| map(s)).collect()).collect();
    let dangling = (m + 1..m + 1 + rest.len()).collect();
    MatchgateFragment::new(f.num_vertices(), edges, rotation, dangling)
}

/// `c · f` by adding a separate edge of weight `c`.
pub fn scaled(f: &MatchgateFragment, c: &Scalar) -> Result<MatchgateFragment> {
    if c.is_one() {
        return Ok(f.clone());
    }
    let unit = MatchgateFragment::new(2, vec![WeightedEdge::new(0, 1, c.clone())], vec![vec![0], vec![0]], vec![])?;
    f.disjoint_union(&unit)
}

/// `[1, 0, 1, 0, …]` of arity `k`: arity-3 parity gadgets chained along
/// their outer faces.
fn even_parity(k: usize) -> Result<MatchgateFragment> {
    match k {
        1 => pinned_zero(),
        2 => weighted_pair(Scalar::one()),
        _ => {
            let mut f = even_parity_3()?;
            for _ in 3..k {
                let joined = f.disjoint_union(&even_parity_3()?)?;
                f = connect_adjacent(&joined, f.arity() - 1)?;
            }
            Ok(f)
        }
    }
}

/// Builds the entries stored in the library file.
pub fn generate_library() -> Result<Vec<LibraryEntry>> {
    let mut out = Vec::new();
    for k in 1..=LIBRARY_MAX_ARITY {
        out.push(LibraryEntry {
            name: format!("exact_one_{k}"),
            signature: Signature::exact_one(k)?,
            fragment: star(k)?,
        });
    }
    for k in 1..=LIBRARY_MAX_ARITY {
        let entries = (0..=k).map(|w| Scalar::from_int((w % 2 == 0) as i64)).collect();
        out.push(LibraryEntry {
            name: format!("eq_hat_{k}"),
            signature: SymmetricSignature::new(entries)?.to_signature(),
            fragment: even_parity(k)?,
        });
    }
    Ok(out)
}

/// A realization of `f`, if it is a nonzero multiple of a library entry or
/// of the form `[a, 0, …, 0, b]` with a matchgate realization.
pub fn realize(f: &Signature) -> Result<Option<MatchgateFragment>> {
    if f.is_zero() {
        return Ok(None);
    }
    let k = f.arity();
    if k == 0 {
        let empty = MatchgateFragment::new(0, vec![], vec![], vec![])?;
        return scaled(&empty, f.value(0)).map(Some);
    }
    for e in library()?.iter().filter(|e| e.signature.arity() == k) {
        let i = e.signature.values().iter().position(|v| !v.is_zero()).expect("nonzero entry");
        let c = f.value(i).checked_div(e.signature.value(i))?;
        if !c.is_zero() && e.signature.scale(&c) == *f {
            return scaled(&e.fragment, &c).map(Some);
        }
    }
    let Some(s) = f.as_symmetric() else {
        return Ok(None);
    };
    let entries = s.entries();
    if entries[1..k].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let (a, b) = (&entries[0], &entries[k]);
    let frag = if b.is_zero() {
        let mut g = pinned_zero()?;
        for _ in 1..k {
            g = g.disjoint_union(&pinned_zero()?)?;
        }
        scaled(&g, a)?
    } else if a.is_zero() {
        let mut g = star(1)?;
        for _ in 1..k {
            g = g.disjoint_union(&star(1)?)?;
        }
        scaled(&g, b)?
    } else if k == 2 {
        scaled(&weighted_pair(a.checked_div(b)?)?, b)?
    } else {
        return Ok(None);
    };
    Ok(Some(frag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::is_matchgate;

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    #[test]
    fn stored_data_matches_generator() {
        let lib = library().unwrap();
        let generated = generate_library().unwrap();
        assert_eq!(lib, generated.as_slice(), "run the ignored test write_library_data to refresh the file");
    }

    #[test]
    #[ignore = "rewrites data/matchgates.json"]
    fn write_library_data() {
        let json = serde_json::to_string_pretty(&generate_library().unwrap()).unwrap();
        std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/matchgates.json"), json + "\n").unwrap();
    }

    #[test]
    fn every_entry_is_a_matchgate() {
        for e in library().unwrap() {
            assert!(is_matchgate(&e.signature), "{}", e.name);
        }
    }

    #[test]
    fn realizations() {
        let z = Scalar::zeta8();
        let cases = [
            sym(&[1, 0]),
            sym(&[0, 1]),
            sym(&[1, 0, 1]),
            sym(&[0, 1, 0]),
            sym(&[3, 0, -2]),
            sym(&[0, 0, 0, 5]),
            sym(&[7, 0, 0, 0]),
            sym(&[0, 2, 0, 0, 0, 0]),
            sym(&[2, 0, 2, 0, 2, 0, 2]),
            Signature::constant(z.clone()),
            sym(&[1, 0, 1]).scale(&z),
        ];
        for f in &cases {
            let r = realize(f).unwrap().unwrap_or_else(|| panic!("no realization for {f:?}"));
            assert_eq!(&fragment_signature(&r).unwrap(), f);
        }
        for f in [sym(&[1, 1]), sym(&[1, 0, 0, 1]), sym(&[0, 0]), sym(&[1, 0, 1, 1])] {
            assert!(realize(&f).unwrap().is_none());
        }
    }

    #[test]
    fn connect_rejects_loops() {
        let s = star(3).unwrap();
        assert!(connect_adjacent(&s, 0).is_err());
        assert!(connect_adjacent(&s, 2).is_err());
    }
}
