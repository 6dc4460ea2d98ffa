//! Corpus manifests: lists of groups to scan.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "caps": { "max_order": 256, "max_degree": 32 },
//!   "entries": [
//!     { "name": "S3", "kind": "permutation", "generators": ["(1 2 3)", "(1 2)"], "degree": 3 },
//!     { "expand": { "id": "D", "params": [ { "from": 3, "to": 16 } ] } },
//!     { "expand": { "id": "UT", "params": [ { "from": 2, "to": 5 }, [2, 3] ] } }
//!   ]
//! }
//! ```
//!
//! An `expand` entry takes the cartesian product of its parameter ranges and
//! names each group after its family (`D3`, `UT(4,2)`, ...).

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::spec::{Caps, FamilySpec, GroupSpec};
use crate::group::{FiniteGroup, GroupError};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that replaces the built-in manifest.
pub const CORPUS_ENV: &str = "HALLBOUND_CORPUS";

const DEFAULT_MANIFEST: &str = include_str!("../corpus/default.json");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("manifest does not parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}")]
    Schema(u32),
    #[error("duplicate group name {0:?}")]
    Duplicate(String),
    #[error("entry {index}: {source}")]
    Entry { index: usize, source: GroupError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamRange {
    Values(Vec<usize>),
    Range { from: usize, to: usize },
}

impl ParamRange {
    fn values(&self) -> Vec<usize> {
        match self {
            ParamRange::Values(v) => v.clone(),
            ParamRange::Range { from, to } => (*from..=*to).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub id: String,
    pub params: Vec<ParamRange>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Expand { expand: Expansion },
    Group(GroupSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    #[serde(default)]
    pub caps: Caps,
    pub entries: Vec<Entry>,
}

/// A corpus entry that was not materialised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapSkip {
    pub name: String,
    pub reason: String,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        let manifest: Manifest = serde_json::from_str(text)?;
        if manifest.schema_version != SCHEMA_VERSION {
            return Err(CorpusError::Schema(manifest.schema_version));
        }
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// The built-in corpus, unless `HALLBOUND_CORPUS` names another file.
    pub fn default_corpus() -> Result<Self, CorpusError> {
        match std::env::var_os(CORPUS_ENV) {
            Some(path) => Self::load(Path::new(&path)),
            None => Self::builtin(),
        }
    }

    pub fn builtin() -> Result<Self, CorpusError> {
        Self::from_json(DEFAULT_MANIFEST)
    }

    /// Flattens expansions into group specs, rejecting duplicate names.
    pub fn expand(&self) -> Result<Vec<GroupSpec>, CorpusError> {
        let mut specs = Vec::new();
        for (index, entry) in self.entries.iter().enumerate() {
            match entry {
                Entry::Group(spec) => specs.push(spec.clone()),
                Entry::Expand { expand } => {
                    let mut combos: Vec<Vec<usize>> = vec![vec![]];
                    for range in &expand.params {
                        let values = range.values();
                        combos = combos
                            .iter()
                            .flat_map(|c| values.iter().map(move |&v| [c.as_slice(), &[v]].concat()))
                            .collect();
                    }
                    for params in combos {
                        let fs = FamilySpec { id: expand.id.clone(), params, factors: vec![] };
                        let family = fs.to_family().map_err(|source| CorpusError::Entry { index, source })?;
                        specs.push(GroupSpec::from_family(&family));
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        for spec in &specs {
            if !seen.insert(spec.name.as_str()) {
                return Err(CorpusError::Duplicate(spec.name.clone()));
            }
        }
        Ok(specs)
    }
}

/// Builds one spec, turning cap violations into a [`CapSkip`].
pub fn materialise(spec: &GroupSpec, caps: Caps) -> Result<Result<FiniteGroup, CapSkip>, GroupError> {
    match spec.build(caps) {
        Ok(g) => Ok(Ok(g)),
        Err(err @ (GroupError::TooLarge { .. } | GroupError::DegreeTooLarge { .. })) => {
            Ok(Err(CapSkip { name: spec.name.clone(), reason: err.to_string() }))
        }
        Err(err) => Err(err),
    }
}
