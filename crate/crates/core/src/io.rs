//! JSON file formats: signature tables, grids, #CSP instances and signature
//! sets. Signatures are referenced by name through a [`SignatureTable`] or
//! written inline.

use std::collections::{BTreeMap, HashMap};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{Constraint, CspInstance, GridVertex, SignatureGrid};
use crate::signature::{Signature, SymmetricSignature};
use crate::transform::Side;

/// Deserializes `text`, reporting the path of the offending field.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse(format!("{path}: {}", e.into_inner()))
    })
}

/// Signatures known without a table: `eq_k`, `neq`, `exact_one_k`,
/// `eq_hat_k` (even parity) and `crossover`.
pub fn builtin_signature(name: &str) -> Option<Signature> {
    let arity = |prefix: &str| name.strip_prefix(prefix)?.parse::<usize>().ok();
    if name == "crossover" {
        return Some(Signature::crossover());
    }
    if name == "neq" {
        return SymmetricSignature::from_ints(&[0, 1, 0]).ok().map(|s| s.to_signature());
    }
    if let Some(k) = arity("eq_") {
        return Signature::equality(k).ok();
    }
    if let Some(k) = arity("exact_one_") {
        return Signature::exact_one(k).ok();
    }
    if let Some(k) = arity("eq_hat_") {
        return Signature::even_parity(k).ok();
    }
    None
}

/// Named signatures. Lookups fall back to [`builtin_signature`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignatureTable {
    entries: BTreeMap<String, Signature>,
}

impl SignatureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, f: Signature) -> Option<Signature> {
        self.entries.insert(name.into(), f)
    }

    pub fn get(&self, name: &str) -> Option<Signature> {
        self.entries.get(name).cloned().or_else(|| builtin_signature(name))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Signature)> {
        self.entries.iter()
    }

    /// Hex SHA-256 of the canonical JSON (keys sorted, full value lists).
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(&self.entries).expect("tables serialize");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// `self` overlaid with `other`; names in `other` win.
    pub fn merged(&self, other: &SignatureTable) -> SignatureTable {
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }
}

/// A signature given by name or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigRef {
    Name(String),
    Inline(Signature),
}

impl SigRef {
    fn resolve(&self, table: &SignatureTable, path: &str) -> Result<(Signature, Option<String>)> {
        match self {
            SigRef::Inline(f) => Ok((f.clone(), None)),
            SigRef::Name(n) => table
                .get(n)
                .map(|f| (f, Some(n.clone())))
                .ok_or_else(|| Error::Parse(format!("{path}: unknown signature name {n:?}"))),
        }
    }
}

fn sig_ref(f: &Signature, name: &Option<String>, table: &mut SignatureTable) -> SigRef {
    match name {
        Some(n) => {
            if builtin_signature(n).as_ref() != Some(f) {
                table.insert(n.clone(), f.clone());
            }
            SigRef::Name(n.clone())
        }
        None => SigRef::Inline(f.clone()),
    }
}

/// Checks the file's recorded hash against the external table if one was
/// supplied, else against the file's own table.
fn check_hash(expected: &Option<String>, external: &SignatureTable, inline: &SignatureTable) -> Result<()> {
    let Some(expected) = expected else {
        return Ok(());
    };
    let actual = if external.is_empty() { inline.hash() } else { external.hash() };
    if &actual != expected {
        return Err(Error::TableHashMismatch {
            expected: expected.clone(),
            actual,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub sig: SigRef,
    /// Edge labels counterclockwise.
    pub edges: Vec<u64>,
    /// Label the variable order starts from; the list is rotated to it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    #[serde(default, skip_serializing_if = "SignatureTable::is_empty")]
    pub table: SignatureTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_hash: Option<String>,
    pub vertices: Vec<VertexDoc>,
    /// Edge labels in id order; defaults to the sorted labels in use.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<u64>>,
    #[serde(default)]
    pub dangling: Vec<u64>,
}

impl GridDoc {
    pub fn to_grid(&self, external: &SignatureTable) -> Result<SignatureGrid> {
        check_hash(&self.table_hash, external, &self.table)?;
        let table = external.merged(&self.table);
        let labels = match &self.edges {
            Some(l) => l.clone(),
            None => {
                let mut l: Vec<u64> = self.vertices.iter().flat_map(|v| v.edges.iter().copied()).collect();
                l.sort_unstable();
                l.dedup();
                l
            }
        };
        let mut id = HashMap::with_capacity(labels.len());
        for (i, &l) in labels.iter().enumerate() {
            if id.insert(l, i).is_some() {
                return Err(Error::Parse(format!("edges[{i}]: duplicate edge label {l}")));
            }
        }
        let lookup = |l: u64, path: String| id.get(&l).copied().ok_or_else(|| Error::Parse(format!("{path}: unknown edge label {l}")));
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (v, doc) in self.vertices.iter().enumerate() {
            let (signature, name) = doc.sig.resolve(&table, &format!("vertices[{v}].sig"))?;
            let mut edges = doc
                .edges
                .iter()
                .enumerate()
                .map(|(k, &l)| lookup(l, format!("vertices[{v}].edges[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = doc.first {
                let at = doc
                    .edges
                    .iter()
                    .position(|&l| l == first)
                    .ok_or_else(|| Error::Parse(format!("vertices[{v}].first: label {first} is not incident")))?;
                edges.rotate_left(at);
            }
            vertices.push(GridVertex {
                signature,
                name,
                edges,
                side: doc.side,
            });
        }
        let dangling = self
            .dangling
            .iter()
            .enumerate()
            .map(|(k, &l)| lookup(l, format!("dangling[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        SignatureGrid::new(vertices, labels.len(), dangling)
    }

    /// Edge ids become labels; named signatures outside the builtins go into
    /// the inline table.
    pub fn from_grid(grid: &SignatureGrid) -> Self {
        let mut table = SignatureTable::new();
        let vertices = grid
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                sig: sig_ref(&v.signature, &v.name, &mut table),
                edges: v.edges.iter().map(|&e| e as u64).collect(),
                first: None,
                side: v.side,
            })
            .collect();
        Self {
            table,
            table_hash: None,
            vertices,
            edges: Some((0..grid.num_edges() as u64).collect()),
            dangling: grid.dangling().iter().map(|&e| e as u64).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub sig: SigRef,
    pub on: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CspDoc {
    #[serde(default, skip_serializing_if = "SignatureTable::is_empty")]
    pub table: SignatureTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_hash: Option<String>,
    pub vars: usize,
    pub constraints: Vec<ConstraintDoc>,
}

impl CspDoc {
    pub fn to_instance(&self, external: &SignatureTable) -> Result<CspInstance> {
        check_hash(&self.table_hash, external, &self.table)?;
        let table = external.merged(&self.table);
        let constraints = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (signature, name) = c.sig.resolve(&table, &format!("constraints[{i}].sig"))?;
                Ok(Constraint {
                    signature,
                    name,
                    vars: c.on.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CspInstance::new(self.vars, constraints)
    }

    pub fn from_instance(inst: &CspInstance) -> Self {
        let mut table = SignatureTable::new();
        let constraints = inst
            .constraints
            .iter()
            .map(|c| ConstraintDoc {
                sig: sig_ref(&c.signature, &c.name, &mut table),
                on: c.vars.clone(),
            })
            .collect();
        Self {
            table,
            table_hash: None,
            vars: inst.num_vars,
            constraints,
        }
    }
}

/// A finite signature set: a bare list or `{"signatures": [...], "table": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignatureSetDoc {
    List(Vec<SigRef>),
    Document {
        #[serde(default)]
        table: SignatureTable,
        #[serde(default)]
        table_hash: Option<String>,
        signatures: Vec<SigRef>,
    },
}

impl SignatureSetDoc {
    pub fn to_signatures(&self, external: &SignatureTable) -> Result<Vec<Signature>> {
        let empty = SignatureTable::new();
        let (inline, hash, refs) = match self {
            SignatureSetDoc::List(r) => (&empty, &None, r),
            SignatureSetDoc::Document {
                table,
                table_hash,
                signatures,
            } => (table, table_hash, signatures),
        };
        check_hash(hash, external, inline)?;
        let table = external.merged(inline);
        refs.iter()
            .enumerate()
            .map(|(i, r)| r.resolve(&table, &format!("signatures[{i}]")).map(|(f, _)| f))
            .collect()
    }
}

pub fn parse_grid(text: &str, table: &SignatureTable) -> Result<SignatureGrid> {
    from_json::<GridDoc>(text)?.to_grid(table)
}

pub fn parse_csp(text: &str, table: &SignatureTable) -> Result<CspInstance> {
    from_json::<CspDoc>(text)?.to_instance(table)
}

pub fn parse_signature_set(text: &str, table: &SignatureTable) -> Result<Vec<Signature>> {
    from_json::<SignatureSetDoc>(text)?.to_signatures(table)
}

pub fn grid_to_json(grid: &SignatureGrid) -> String {
    serde_json::to_string(&GridDoc::from_grid(grid)).expect("grids serialize")
}

pub fn csp_to_json(inst: &CspInstance) -> String {
    serde_json::to_string(&CspDoc::from_instance(inst)).expect("instances serialize")
}
