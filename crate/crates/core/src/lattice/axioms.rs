use serde::{Deserialize, Serialize};

use super::{CommutatorSemilattice, LatticeError};

/// Default number of violating tuples kept per axiom.
pub const DEFAULT_WITNESS_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    OrderAntisymmetric,
    DotCommutative,
    DotBelowRight,
    DotDistributes,
    Jacobi,
    PreservesJoins,
    Leibniz,
    /// `g^i(x) . g^j(x) <= g^(i+j+1)(x)` for the inner derivation `g = x . -`.
    InnerPowerProduct,
    /// `f^n(a . b) <= join_i f^i(a) . f^(n-i)(b)`.
    LeibnizExpansion,
}

/// Outcome of checking one axiom. `holds` is true exactly when `witnesses` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witnesses: Vec<Vec<usize>>,
}

impl AxiomReport {
    pub(crate) fn from_witnesses(axiom: Axiom, witnesses: Vec<Vec<usize>>) -> Self {
        Self { axiom, holds: witnesses.is_empty(), witnesses }
    }
}

/// A group of axiom reports produced by one checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Checks(pub Vec<AxiomReport>);

impl Checks {
    pub fn all_hold(&self) -> bool {
        self.0.iter().all(|r| r.holds)
    }

    pub fn first_failure(&self) -> Option<&AxiomReport> {
        self.0.iter().find(|r| !r.holds)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.0.iter().find(|r| r.axiom == axiom)
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = &AxiomReport> {
        self.0.iter()
    }
}

struct Collector {
    cap: usize,
    found: Vec<Vec<usize>>,
}

impl Collector {
    fn new(cap: usize) -> Self {
        Self { cap, found: Vec::new() }
    }

    /// Returns false once the cap is reached so loops can stop early.
    fn push(&mut self, w: Vec<usize>) -> bool {
        if self.found.len() < self.cap {
            self.found.push(w);
        }
        self.found.len() < self.cap
    }

    fn full(&self) -> bool {
        self.found.len() >= self.cap
    }

    fn finish(self, axiom: Axiom) -> AxiomReport {
        AxiomReport::from_witnesses(axiom, self.found)
    }
}

/// Exhaustive axiom checks. Witnesses are collected in lexicographic order of
/// element ids, up to `witness_cap` per axiom.
#[derive(Debug, Clone, Copy)]
pub struct AxiomChecker {
    pub witness_cap: usize,
}

impl Default for AxiomChecker {
    fn default() -> Self {
        Self { witness_cap: DEFAULT_WITNESS_CAP }
    }
}

impl AxiomChecker {
    pub fn with_cap(witness_cap: usize) -> Self {
        Self { witness_cap: witness_cap.max(1) }
    }

    pub fn join_semilattice(&self, l: &CommutatorSemilattice) -> Checks {
        let n = l.size();
        let mut idem = Collector::new(self.witness_cap);
        for a in 0..n {
            if l.join(a, a) != a && !idem.push(vec![a]) {
                break;
            }
        }
        let mut comm = Collector::new(self.witness_cap);
        'comm: for a in 0..n {
            for b in 0..n {
                if l.join(a, b) != l.join(b, a) && !comm.push(vec![a, b]) {
                    break 'comm;
                }
            }
        }
        let mut assoc = Collector::new(self.witness_cap);
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = l.join(a, b);
                for c in 0..n {
                    if l.join(ab, c) != l.join(a, l.join(b, c)) && !assoc.push(vec![a, b, c]) {
                        break 'assoc;
                    }
                }
            }
        }
        let mut anti = Collector::new(self.witness_cap);
        'anti: for a in 0..n {
            for b in 0..n {
                if a != b && l.le(a, b) && l.le(b, a) && !anti.push(vec![a, b]) {
                    break 'anti;
                }
            }
        }
        Checks(vec![
            idem.finish(Axiom::JoinIdempotent),
            comm.finish(Axiom::JoinCommutative),
            assoc.finish(Axiom::JoinAssociative),
            anti.finish(Axiom::OrderAntisymmetric),
        ])
    }

    pub fn commutator_axioms(&self, l: &CommutatorSemilattice) -> Checks {
        let n = l.size();
        let mut comm = Collector::new(self.witness_cap);
        let mut below = Collector::new(self.witness_cap);
        for a in 0..n {
            for b in 0..n {
                if !comm.full() && l.dot(a, b) != l.dot(b, a) {
                    comm.push(vec![a, b]);
                }
                if !below.full() && !l.le(l.dot(a, b), b) {
                    below.push(vec![a, b]);
                }
            }
        }
        let mut dist = Collector::new(self.witness_cap);
        'dist: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = l.dot(a, l.join(b, c));
                    let rhs = l.join(l.dot(a, b), l.dot(a, c));
                    if lhs != rhs && !dist.push(vec![a, b, c]) {
                        break 'dist;
                    }
                }
            }
        }
        Checks(vec![
            comm.finish(Axiom::DotCommutative),
            below.finish(Axiom::DotBelowRight),
            dist.finish(Axiom::DotDistributes),
        ])
    }

    pub fn jacobi(&self, l: &CommutatorSemilattice) -> AxiomReport {
        let n = l.size();
        let mut jac = Collector::new(self.witness_cap);
        'jac: for a in 0..n {
            for b in 0..n {
                let ab = l.dot(a, b);
                for c in 0..n {
                    let lhs = l.dot(a, l.dot(b, c));
                    let rhs = l.join(l.dot(ab, c), l.dot(b, l.dot(a, c)));
                    if !l.le(lhs, rhs) && !jac.push(vec![a, b, c]) {
                        break 'jac;
                    }
                }
            }
        }
        jac.finish(Axiom::Jacobi)
    }

    /// Join preservation and the Leibniz inequality for an arbitrary self-map.
    pub fn derivation(&self, l: &CommutatorSemilattice, f: &[usize]) -> Checks {
        let n = l.size();
        let mut joins = Collector::new(self.witness_cap);
        let mut leibniz = Collector::new(self.witness_cap);
        for a in 0..n {
            for b in 0..n {
                if !joins.full() && f[l.join(a, b)] != l.join(f[a], f[b]) {
                    joins.push(vec![a, b]);
                }
                if !leibniz.full() {
                    let rhs = l.join(l.dot(f[a], b), l.dot(a, f[b]));
                    if !l.le(f[l.dot(a, b)], rhs) {
                        leibniz.push(vec![a, b]);
                    }
                }
            }
        }
        Checks(vec![joins.finish(Axiom::PreservesJoins), leibniz.finish(Axiom::Leibniz)])
    }
}

pub fn check_join_semilattice(l: &CommutatorSemilattice) -> Checks {
    AxiomChecker::default().join_semilattice(l)
}

pub fn check_commutator_axioms(l: &CommutatorSemilattice) -> Checks {
    AxiomChecker::default().commutator_axioms(l)
}

pub fn check_jacobi(l: &CommutatorSemilattice) -> AxiomReport {
    AxiomChecker::default().jacobi(l)
}

/// Checks `f` against the derivation axioms. `f` must have one entry per
/// carrier element, each in range.
pub fn check_derivation(l: &CommutatorSemilattice, f: &[usize]) -> Result<Checks, LatticeError> {
    validate_map(l, f)?;
    Ok(AxiomChecker::default().derivation(l, f))
}

fn validate_map(l: &CommutatorSemilattice, f: &[usize]) -> Result<(), LatticeError> {
    if f.len() != l.size() {
        return Err(LatticeError::Malformed {
            table: "map",
            detail: format!("{} entries for {} elements", f.len(), l.size()),
        });
    }
    f.iter().try_for_each(|&v| l.check_id(v))
}

/// A self-map of a lattice that has passed the derivation checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation<'a> {
    lattice: &'a CommutatorSemilattice,
    table: Vec<usize>,
}

impl<'a> Derivation<'a> {
    /// Verifies `table` and wraps it. On failure the full check results are
    /// returned so callers can see the witnesses.
    pub fn new(lattice: &'a CommutatorSemilattice, table: Vec<usize>) -> Result<Self, DerivationError> {
        let checks = check_derivation(lattice, &table)?;
        if checks.all_hold() {
            Ok(Self { lattice, table })
        } else {
            Err(DerivationError::Axioms(checks))
        }
    }

    pub fn identity(lattice: &'a CommutatorSemilattice) -> Self {
        Self { lattice, table: (0..lattice.size()).collect() }
    }

    pub fn lattice(&self) -> &'a CommutatorSemilattice {
        self.lattice
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// True when `f(a) <= a` for every element.
    pub fn is_below_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(a, &fa)| self.lattice.le(fa, a))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error(transparent)]
    Input(#[from] LatticeError),
    #[error("map is not a derivation: {:?} fails", .0.first_failure().map(|r| r.axiom))]
    Axioms(Checks),
}

/// The map `s -> x . s`, verified as a derivation.
pub fn inner_derivation(l: &CommutatorSemilattice, x: usize) -> Result<Derivation<'_>, DerivationError> {
    l.check_id(x)?;
    let table = (0..l.size()).map(|s| l.dot(x, s)).collect();
    Derivation::new(l, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(join: Vec<Vec<usize>>, dot: Vec<Vec<usize>>) -> CommutatorSemilattice {
        CommutatorSemilattice::new(None, join, dot).unwrap()
    }

    /// Subsets of {1,2} as bitmasks 0..4 with union as join.
    fn powerset2(dot: impl Fn(usize, usize) -> usize) -> CommutatorSemilattice {
        let join = (0..4).map(|a| (0..4).map(|b| a | b).collect()).collect();
        let dot = (0..4).map(|a| (0..4).map(|b| dot(a, b)).collect()).collect();
        lattice(join, dot)
    }

    #[test]
    fn union_powerset_is_a_semilattice() {
        let l = powerset2(|_, _| 0);
        let checks = check_join_semilattice(&l);
        assert_eq!(checks.0.len(), 4);
        assert!(checks.all_hold());
    }

    #[test]
    fn asymmetric_join_gives_commutativity_witness() {
        let l = lattice(vec![vec![0, 1], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]);
        let checks = check_join_semilattice(&l);
        let comm = checks.get(Axiom::JoinCommutative).unwrap();
        assert!(!comm.holds);
        assert_eq!(comm.witnesses[0], vec![0, 1]);
    }

    #[test]
    fn zero_dot_satisfies_commutator_axioms_and_jacobi() {
        let l = powerset2(|_, _| 0);
        assert!(check_commutator_axioms(&l).all_hold());
        assert!(check_jacobi(&l).holds);
    }

    #[test]
    fn dot_equal_to_join_breaks_below_right() {
        let l = lattice(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 1]]);
        let checks = check_commutator_axioms(&l);
        let below = checks.get(Axiom::DotBelowRight).unwrap();
        assert!(!below.holds);
        assert_eq!(below.witnesses[0], vec![1, 0]);
        assert!(checks.get(Axiom::DotCommutative).unwrap().holds);
    }

    #[test]
    fn witness_cap_is_respected() {
        let join = (0..4).map(|a| (0..4).map(|b| a | b).collect()).collect();
        let dot = (0..4).map(|a| (0..4).map(|b| a | b).collect()).collect();
        let l = lattice(join, dot);
        let report = AxiomChecker::with_cap(2).commutator_axioms(&l);
        let below = report.get(Axiom::DotBelowRight).unwrap();
        assert_eq!(below.witnesses.len(), 2);
        assert_eq!(below.witnesses, vec![vec![1, 0], vec![1, 2]]);
        let default = check_commutator_axioms(&l);
        assert!(default.get(Axiom::DotBelowRight).unwrap().witnesses.len() <= DEFAULT_WITNESS_CAP);
    }

    #[test]
    fn identity_and_zero_maps_are_derivations() {
        let l = powerset2(|a, b| if a == 3 && b == 3 { 1 } else { 0 });
        let id: Vec<usize> = (0..4).collect();
        assert!(check_derivation(&l, &id).unwrap().all_hold());
        assert!(check_derivation(&l, &[0, 0, 0, 0]).unwrap().all_hold());
    }

    #[test]
    fn non_join_preserving_map_rejected() {
        let l = powerset2(|_, _| 0);
        // 1 -> 1, 2 -> 2 but 3 -> 0: f(1 v 2) != f(1) v f(2)
        let err = Derivation::new(&l, vec![0, 1, 2, 0]).unwrap_err();
        let DerivationError::Axioms(checks) = err else { panic!("expected axiom failure") };
        assert!(!checks.get(Axiom::PreservesJoins).unwrap().holds);
    }

    #[test]
    fn inner_derivation_by_bottom_is_zero() {
        let l = powerset2(|_, _| 0);
        let g = inner_derivation(&l, 0).unwrap();
        assert_eq!(g.table(), &[0, 0, 0, 0]);
        assert!(g.is_below_identity());
    }

    #[test]
    fn map_length_mismatch_is_input_error() {
        let l = powerset2(|_, _| 0);
        assert!(matches!(check_derivation(&l, &[0, 1]), Err(LatticeError::Malformed { .. })));
        assert!(matches!(check_derivation(&l, &[0, 1, 2, 9]), Err(LatticeError::OutOfRange { .. })));
    }

    #[test]
    fn checkers_are_pure() {
        let l = powerset2(|a, b| a & b);
        let before = l.clone();
        let first = (check_join_semilattice(&l), check_commutator_axioms(&l), check_jacobi(&l));
        let second = (check_join_semilattice(&l), check_commutator_axioms(&l), check_jacobi(&l));
        assert_eq!(first, second);
        assert_eq!(l, before);
    }
}
