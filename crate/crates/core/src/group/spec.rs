//! JSON group descriptions.
//!
//! ```json
//! { "name": "S3", "kind": "permutation", "generators": ["(1 2 3)", "(1 2)"], "degree": 3 }
//! { "name": "C3", "kind": "table", "table": [[0,1,2],[1,2,0],[2,0,1]] }
//! { "name": "UT(4,2)", "kind": "family", "family": { "id": "UT", "params": [4, 2] } }
//! { "name": "C2xD4", "kind": "family",
//!   "family": { "id": "product", "factors": [ { "id": "C", "params": [2] }, { "id": "D", "params": [4] } ] } }
//! ```

use serde::{Deserialize, Serialize};

use super::families::Family;
use super::{FiniteGroup, GroupError, Perm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    Permutation,
    Table,
    Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FamilySpec>,
}

impl FamilySpec {
    pub fn to_family(&self) -> Result<Family, GroupError> {
        let p = &self.params;
        let want = |k: usize| -> Result<(), GroupError> {
            if p.len() == k {
                Ok(())
            } else {
                Err(GroupError::Input(format!("family {:?} takes {k} parameter(s), got {}", self.id, p.len())))
            }
        };
        Ok(match self.id.as_str() {
            "C" | "cyclic" => {
                want(1)?;
                Family::Cyclic(p[0])
            }
            "D" | "dihedral" => {
                want(1)?;
                Family::Dihedral(p[0])
            }
            "Q" | "quaternion" => {
                want(1)?;
                Family::Quaternion(p[0])
            }
            "Q8" | "Q16" => {
                want(0)?;
                Family::Quaternion(self.id[1..].parse().expect("literal"))
            }
            "Heis" | "heisenberg" => {
                want(1)?;
                Family::Heisenberg(p[0])
            }
            "UT" | "unitriangular" => {
                want(2)?;
                Family::Unitriangular { n: p[0], p: p[1] }
            }
            "product" | "x" => {
                let factors = self.factors.iter().map(FamilySpec::to_family).collect::<Result<Vec<_>, _>>()?;
                if factors.is_empty() {
                    return Err(GroupError::Input("product needs at least one factor".into()));
                }
                Family::Product(factors)
            }
            other => return Err(GroupError::Input(format!("unknown family id {other:?}"))),
        })
    }
}

impl From<&Family> for FamilySpec {
    fn from(f: &Family) -> Self {
        let simple = |id: &str, params: Vec<usize>| FamilySpec { id: id.to_owned(), params, factors: vec![] };
        match f {
            Family::Cyclic(n) => simple("C", vec![*n]),
            Family::Dihedral(n) => simple("D", vec![*n]),
            Family::Quaternion(n) => simple("Q", vec![*n]),
            Family::Heisenberg(p) => simple("Heis", vec![*p]),
            Family::Unitriangular { n, p } => simple("UT", vec![*n, *p]),
            Family::Product(fs) => {
                FamilySpec { id: "product".into(), params: vec![], factors: fs.iter().map(Into::into).collect() }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
}

/// Limits applied when materialising a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_order: usize,
    pub max_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_order: super::DEFAULT_ORDER_CAP, max_degree: super::DEFAULT_DEGREE_CAP }
    }
}

impl GroupSpec {
    pub fn from_family(family: &Family) -> Self {
        Self {
            name: family.to_string(),
            kind: SpecKind::Family,
            generators: vec![],
            degree: None,
            table: None,
            family: Some(family.into()),
        }
    }

    pub fn build(&self, caps: Caps) -> Result<FiniteGroup, GroupError> {
        match self.kind {
            SpecKind::Permutation => {
                let degree = match self.degree {
                    Some(d) => d,
                    None => return Err(GroupError::Input(format!("{}: permutation spec needs a degree", self.name))),
                };
                if degree > caps.max_degree {
                    return Err(GroupError::DegreeTooLarge { degree, cap: caps.max_degree });
                }
                let gens =
                    self.generators.iter().map(|g| Perm::parse_cycles(g, degree)).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_generators(&gens, degree, caps.max_order)
            }
            SpecKind::Table => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| GroupError::Input(format!("{}: table spec needs a table", self.name)))?;
                if table.len() > caps.max_order {
                    return Err(GroupError::TooLarge { cap: caps.max_order });
                }
                FiniteGroup::from_table(table)
            }
            SpecKind::Family => self
                .family
                .as_ref()
                .ok_or_else(|| GroupError::Input(format!("{}: family spec needs a family", self.name)))?
                .to_family()?
                .build_with_caps(caps.max_order, caps.max_degree),
        }
    }

    /// Resolves element descriptions against a built group: cycle notation
    /// for permutation groups, decimal indices (optionally `g`-prefixed) otherwise.
    pub fn resolve_elements(group: &FiniteGroup, items: &[String]) -> Result<Vec<usize>, GroupError> {
        items
            .iter()
            .map(|item| match group.degree() {
                Some(degree) => {
                    let p = Perm::parse_cycles(item, degree)?;
                    group
                        .find_perm(&p)
                        .ok_or_else(|| GroupError::Input(format!("{item} is not an element of the group")))
                }
                None => {
                    let digits = item.trim().trim_start_matches('g');
                    let idx: usize =
                        digits.parse().map_err(|_| GroupError::Input(format!("bad element index {item:?}")))?;
                    if idx < group.order() {
                        Ok(idx)
                    } else {
                        Err(GroupError::Input(format!("element index {idx} out of range")))
                    }
                }
            })
            .collect()
    }
}
