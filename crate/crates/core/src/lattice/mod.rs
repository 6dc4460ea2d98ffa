//! Finite commutator semilattices stored as explicit operation tables.
//!
//! A [`CommutatorSemilattice`] keeps a join table and a dot (commutator)
//! table over dense element ids `0..n`. The order is never stored: `a <= b`
//! is read off the join table as `join(a, b) == b`.

mod axioms;
mod random;

pub use axioms::{
    check_commutator_axioms, check_derivation, check_jacobi, check_join_semilattice, inner_derivation, Axiom,
    AxiomChecker, AxiomReport, Checks, Derivation, DerivationError, DEFAULT_WITNESS_CAP,
};
pub use random::{random_commutator_semilattice, GenerationError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("element id {id} out of range for carrier of size {size}")]
    OutOfRange { id: usize, size: usize },
    #[error("malformed {table} table: {detail}")]
    Malformed { table: &'static str, detail: String },
    #[error("carrier must be non-empty")]
    Empty,
}

/// A finite carrier with a join table and a dot table, both row-major `n x n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorSemilattice {
    size: usize,
    names: Vec<String>,
    join: Vec<usize>,
    dot: Vec<usize>,
}

impl CommutatorSemilattice {
    /// Builds a lattice from row-major tables. Only shape and range are
    /// validated here; the algebraic axioms are the checkers' business.
    pub fn new(names: Option<Vec<String>>, join: Vec<Vec<usize>>, dot: Vec<Vec<usize>>) -> Result<Self, LatticeError> {
        let size = join.len();
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let join = flatten("join", size, join)?;
        let dot = flatten("dot", size, dot)?;
        let names = match names {
            Some(names) if names.len() != size => {
                return Err(LatticeError::Malformed {
                    table: "names",
                    detail: format!("{} names for {} elements", names.len(), size),
                })
            }
            Some(names) => names,
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        Ok(Self { size, names, join, dot })
    }

    pub(crate) fn from_flat(names: Vec<String>, join: Vec<usize>, dot: Vec<usize>) -> Self {
        let size = names.len();
        debug_assert_eq!(join.len(), size * size);
        debug_assert_eq!(dot.len(), size * size);
        Self { size, names, join, dot }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn dot(&self, a: usize, b: usize) -> usize {
        self.dot[a * self.size + b]
    }

    /// `a <= b` read from the join table, without range checks.
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    /// Checked version of [`le`](Self::le).
    pub fn leq(&self, a: usize, b: usize) -> Result<bool, LatticeError> {
        self.check_id(a)?;
        self.check_id(b)?;
        Ok(self.le(a, b))
    }

    pub fn check_id(&self, a: usize) -> Result<(), LatticeError> {
        if a < self.size {
            Ok(())
        } else {
            Err(LatticeError::OutOfRange { id: a, size: self.size })
        }
    }

    /// The element below every other element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.le(a, b)))
    }

    /// The element above every other element, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|a| self.le(a, b)))
    }

    /// Join of an iterator of elements; `None` for an empty iterator.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|acc, x| self.join(acc, x))
    }

    pub fn join_rows(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn dot_rows(&self) -> Vec<Vec<usize>> {
        self.dot.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn to_fixture(&self) -> LatticeFixture {
        LatticeFixture {
            carrier: self.size,
            names: Some(self.names.clone()),
            join: self.join_rows(),
            dot: self.dot_rows(),
        }
    }
}

fn flatten(table: &'static str, size: usize, rows: Vec<Vec<usize>>) -> Result<Vec<usize>, LatticeError> {
    if rows.len() != size {
        return Err(LatticeError::Malformed { table, detail: format!("{} rows, expected {}", rows.len(), size) });
    }
    let mut flat = Vec::with_capacity(size * size);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != size {
            return Err(LatticeError::Malformed {
                table,
                detail: format!("row {} has {} entries, expected {}", i, row.len(), size),
            });
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= size) {
            return Err(LatticeError::OutOfRange { id: bad, size });
        }
        flat.extend(row);
    }
    Ok(flat)
}

/// On-disk lattice description: `{ "carrier": n, "names": [...], "join": [[...]], "dot": [[...]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFixture {
    pub carrier: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub join: Vec<Vec<usize>>,
    pub dot: Vec<Vec<usize>>,
}

impl TryFrom<LatticeFixture> for CommutatorSemilattice {
    type Error = LatticeError;

    fn try_from(fixture: LatticeFixture) -> Result<Self, Self::Error> {
        if fixture.join.len() != fixture.carrier {
            return Err(LatticeError::Malformed {
                table: "join",
                detail: format!("carrier is {} but join has {} rows", fixture.carrier, fixture.join.len()),
            });
        }
        CommutatorSemilattice::new(fixture.names, fixture.join, fixture.dot)
    }
}
