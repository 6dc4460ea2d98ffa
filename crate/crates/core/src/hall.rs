//! The normal-subgroup lattice of a finite group and the nilpotency bound.
//!
//! For a group `E`, normal subgroups form a Jacobi commutator semilattice
//! with `M v N = MN` and `M . N = [M, N]`. On that lattice the maps
//! `f(K) = [E, K]` and `g(K) = [N, K]` are derivations, and the bound
//!
//! ```text
//! class(E) <= cd + (c - 1)(d - 1),   c = class(N),  d = class(E / [N, N])
//! ```
//!
//! follows from the descent chain `f^(t(k, d))(E) <= g^k(N)` at `k = c`.
//! [`hall_instances`] checks the bound and the chain for every normal
//! subgroup of a group.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{self, iteration_bound, ChainReport};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::lattice::{
    inner_derivation, AxiomChecker, AxiomReport, Checks, CommutatorSemilattice, Derivation, DerivationError,
};

#[derive(Debug, Error)]
pub enum HallError {
    #[error(transparent)]
    Group(#[from] GroupError),
    /// A computed object failed a property that holds for every finite
    /// group. Always a bug in this crate.
    #[error("internal consistency failure in {group}: {detail}")]
    Inconsistent { group: String, detail: String, witness: Option<Checks> },
    /// The requested `(E, N)` pair does not satisfy the bound's hypotheses.
    #[error("instance out of scope: {0}")]
    OutOfScope(String),
}

/// `NSub(E)` as a commutator semilattice, with the subgroup behind each id.
///
/// Ids follow [`FiniteGroup::all_normal_subgroups`] order, so the trivial
/// subgroup is `0` and `E` itself is the last id.
#[derive(Debug, Clone)]
pub struct NsubLattice {
    pub lattice: CommutatorSemilattice,
    pub subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, usize>,
}

impl NsubLattice {
    /// Builds the tables without checking any axioms.
    pub fn build(e: &FiniteGroup) -> Self {
        let subgroups = e.all_normal_subgroups();
        let n = subgroups.len();
        let index: HashMap<Vec<usize>, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.key().to_vec(), i)).collect();
        let lookup = |s: &Subgroup| index[s.key()];
        let mut join = vec![0; n * n];
        let mut dot = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let j = e.product_subgroup(&subgroups[a], &subgroups[b]).expect("normal subgroups permute");
                join[a * n + b] = lookup(&j);
                dot[a * n + b] = lookup(&e.commutator_subgroup(&subgroups[a], &subgroups[b]));
            }
        }
        let names = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| match i {
                0 => "1".to_owned(),
                _ if i == n - 1 => "E".to_owned(),
                _ => s.describe(e),
            })
            .collect();
        Self { lattice: CommutatorSemilattice::from_flat(names, join, dot), subgroups, index }
    }

    pub fn id_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.key()).copied()
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn trivial_id(&self) -> usize {
        0
    }

    pub fn whole_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn size(&self) -> usize {
        self.subgroups.len()
    }

    /// Every join-semilattice, commutator and Jacobi check on the tables.
    pub fn check_axioms(&self) -> Checks {
        let checker = AxiomChecker::default();
        let mut checks = checker.join_semilattice(&self.lattice);
        checks.extend(checker.commutator_axioms(&self.lattice));
        checks.0.push(checker.jacobi(&self.lattice));
        checks
    }

    /// `K -> [x, K]` as a verified derivation.
    pub fn inner(&self, x: usize) -> Result<Derivation<'_>, DerivationError> {
        inner_derivation(&self.lattice, x)
    }
}

/// Builds `NSub(E)` and verifies it is a Jacobi commutator semilattice.
pub fn nsub_semilattice(e: &FiniteGroup, group_name: &str) -> Result<NsubLattice, HallError> {
    let ns = NsubLattice::build(e);
    let checks = ns.check_axioms();
    if let Some(failed) = checks.first_failure() {
        return Err(HallError::Inconsistent {
            group: group_name.to_owned(),
            detail: format!("normal subgroup lattice fails {:?}", failed.axiom),
            witness: Some(checks),
        });
    }
    Ok(ns)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallInstance {
    pub group_name: String,
    #[serde(rename = "E_order")]
    pub e_order: usize,
    #[serde(rename = "N_key")]
    pub n_key: Vec<usize>,
    #[serde(rename = "N_name")]
    pub n_name: String,
    #[serde(rename = "N_order")]
    pub n_order: usize,
    pub c: usize,
    pub d: usize,
    #[serde(rename = "class_E")]
    pub class_e: usize,
    /// `cd + (c-1)(d-1)`; absent for the degenerate `c = 0` case.
    pub bound: Option<usize>,
    pub tight: bool,
    pub violation: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainReport>,
}

impl HallInstance {
    fn chain_holds(&self) -> bool {
        self.chain.as_ref().is_none_or(|c| c.holds() && c.ends_at_bottom == Some(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub group: String,
    #[serde(rename = "N_key")]
    pub n_key: Vec<usize>,
    #[serde(rename = "N_name")]
    pub n_name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub c: usize,
    pub d: usize,
    pub bound: Option<usize>,
    pub instances: usize,
    #[serde(rename = "max_class_E")]
    pub max_class_e: usize,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group_name: String,
    pub order: usize,
    #[serde(rename = "class_E")]
    pub class_e: Option<usize>,
    pub lattice_size: usize,
    pub instances: Vec<HallInstance>,
    pub skipped: Vec<Skipped>,
    pub violations: usize,
    pub chain_failures: usize,
    pub summary: Vec<SummaryRow>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.chain_failures == 0
    }

    fn summarise(&mut self) {
        let mut rows: BTreeMap<(usize, usize), SummaryRow> = BTreeMap::new();
        for inst in &self.instances {
            let row = rows.entry((inst.c, inst.d)).or_insert(SummaryRow {
                c: inst.c,
                d: inst.d,
                bound: inst.bound,
                instances: 0,
                max_class_e: 0,
                tight: false,
            });
            row.instances += 1;
            row.max_class_e = row.max_class_e.max(inst.class_e);
            row.tight |= inst.tight;
        }
        self.summary = rows.into_values().collect();
        self.violations = self.instances.iter().filter(|i| i.violation).count();
        self.chain_failures = self.instances.iter().filter(|i| !i.chain_holds()).count();
    }
}

/// `cd + (c-1)(d-1)` for `c, d >= 1`.
pub fn hall_bound(c: usize, d: usize) -> Option<usize> {
    iteration_bound(c as u64, d as u64).ok().map(|t| t as usize)
}

enum Classified {
    Instance { c: usize, d: usize },
    Skip(&'static str),
}

fn classify(e: &FiniteGroup, n: &Subgroup) -> Result<Classified, GroupError> {
    let Some(c) = e.nilpotency_class_of(n) else {
        return Ok(Classified::Skip("normal subgroup not nilpotent"));
    };
    let derived = e.commutator_subgroup(n, n);
    let quotient = e.quotient(&derived)?;
    match quotient.nilpotency_class() {
        Some(d) => Ok(Classified::Instance { c, d }),
        None => Ok(Classified::Skip("quotient not nilpotent")),
    }
}

/// Runs the descent chain for `(E, N)` on a prebuilt lattice, with
/// `f = [E, -]`, `g = [N, -]`, `m = d` and `k` up to `c`.
fn chain_on(ns: &NsubLattice, group_name: &str, n_id: usize, c: usize, d: usize) -> Result<ChainReport, HallError> {
    let inconsistent = |detail: String, witness: Option<Checks>| HallError::Inconsistent {
        group: group_name.to_owned(),
        detail,
        witness,
    };
    let derivation_err = |what: &str, err: DerivationError| match err {
        DerivationError::Axioms(checks) => inconsistent(format!("{what} is not a derivation"), Some(checks)),
        other => inconsistent(format!("{what}: {other}"), None),
    };
    let e_id = ns.whole_id();
    let f = ns.inner(e_id).map_err(|err| derivation_err("[E, -]", err))?;
    let g = ns.inner(n_id).map_err(|err| derivation_err("[N, -]", err))?;
    if d == 0 || c == 0 {
        return Err(HallError::OutOfScope(format!("descent chain needs c, d >= 1 (c = {c}, d = {d})")));
    }
    let mut report = calculus::descent_chain(f.table(), g.table(), &ns.lattice, n_id, e_id, d as u64, c as u64);
    let last = *report.g_iterates.values.last().expect("chain has a base value");
    report.ends_at_bottom = Some(last == ns.trivial_id());
    Ok(report)
}

/// Checks the bound for every normal subgroup `N` of `E`.
///
/// `N` is skipped when it or `E/[N, N]` is not nilpotent. Trivial `N` is
/// recorded with `c = 0` and no bound. Otherwise the bound is checked and the
/// descent chain is attached.
pub fn hall_instances(e: &FiniteGroup, group_name: &str) -> Result<BoundReport, HallError> {
    let ns = nsub_semilattice(e, group_name)?;
    hall_instances_on(e, group_name, &ns)
}

pub fn hall_instances_on(e: &FiniteGroup, group_name: &str, ns: &NsubLattice) -> Result<BoundReport, HallError> {
    instances_for(e, group_name, ns, 0..ns.size())
}

/// [`hall_instances`] restricted to a single normal subgroup `N`.
pub fn hall_instance(e: &FiniteGroup, n: &Subgroup, group_name: &str) -> Result<BoundReport, HallError> {
    if let Some(err) = e.not_normal_error(n) {
        return Err(err.into());
    }
    let ns = nsub_semilattice(e, group_name)?;
    let n_id = ns.id_of(n).expect("normal subgroups are all in the lattice");
    instances_for(e, group_name, &ns, n_id..n_id + 1)
}

fn instances_for(
    e: &FiniteGroup,
    group_name: &str,
    ns: &NsubLattice,
    ids: std::ops::Range<usize>,
) -> Result<BoundReport, HallError> {
    let class_e = e.nilpotency_class();
    let mut report = BoundReport {
        group_name: group_name.to_owned(),
        order: e.order(),
        class_e,
        lattice_size: ns.size(),
        instances: Vec::new(),
        skipped: Vec::new(),
        violations: 0,
        chain_failures: 0,
        summary: Vec::new(),
    };
    for n_id in ids {
        let n = &ns.subgroups[n_id];
        let n_name = ns.lattice.name(n_id).to_owned();
        let (c, d) = match classify(e, n)? {
            Classified::Skip(reason) => {
                report.skipped.push(Skipped {
                    group: group_name.to_owned(),
                    n_key: n.key().to_vec(),
                    n_name,
                    reason: reason.to_owned(),
                });
                continue;
            }
            Classified::Instance { c, d } => (c, d),
        };
        let Some(class_e) = class_e else {
            return Err(HallError::Inconsistent {
                group: group_name.to_owned(),
                detail: format!("N = {n_name} has class {c} and E/[N,N] class {d}, but E is not nilpotent"),
                witness: None,
            });
        };
        let (bound, chain) = if c == 0 {
            if class_e != d {
                return Err(HallError::Inconsistent {
                    group: group_name.to_owned(),
                    detail: format!("trivial N but class(E) = {class_e} differs from class(E/1) = {d}"),
                    witness: None,
                });
            }
            (None, None)
        } else {
            (hall_bound(c, d), Some(chain_on(ns, group_name, n_id, c, d)?))
        };
        report.instances.push(HallInstance {
            group_name: group_name.to_owned(),
            e_order: e.order(),
            n_key: n.key().to_vec(),
            n_name,
            n_order: n.order(),
            c,
            d,
            class_e,
            bound,
            tight: bound == Some(class_e),
            violation: bound.is_some_and(|b| class_e > b),
            chain,
        });
    }
    report.summarise();
    Ok(report)
}

/// The descent chain for one normal subgroup `N` of `E`.
pub fn verify_chain(e: &FiniteGroup, n: &Subgroup, group_name: &str) -> Result<ChainReport, HallError> {
    if let Some(err) = e.not_normal_error(n) {
        return Err(err.into());
    }
    let ns = nsub_semilattice(e, group_name)?;
    let n_id = ns.id_of(n).expect("normal subgroups are all in the lattice");
    match classify(e, n)? {
        Classified::Skip(reason) => Err(HallError::OutOfScope(reason.to_owned())),
        Classified::Instance { c: 0, .. } => Err(HallError::OutOfScope("N is trivial (c = 0)".into())),
        Classified::Instance { c, d } => chain_on(&ns, group_name, n_id, c, d),
    }
}

/// Outcome of checking the derivation inequalities on `NSub(E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub group_name: String,
    pub lattice_size: usize,
    /// Number of `x` checked for the inner power product inequality.
    pub inner_power_checked: usize,
    pub inner_power_failures: Vec<(usize, AxiomReport)>,
    /// Number of `(a, b)` pairs checked for the iterated Leibniz rule with `f = [E, -]`.
    pub leibniz_checked: usize,
    pub leibniz_failures: Vec<(usize, usize, AxiomReport)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.inner_power_failures.is_empty() && self.leibniz_failures.is_empty()
    }
}

/// Inner power products for every `x` with `i, j <= max`, and the iterated
/// Leibniz rule for `f = [E, -]` over every pair with `n <= max`.
pub fn derivation_suite(ns: &NsubLattice, group_name: &str, max: usize) -> Result<SuiteReport, HallError> {
    let l = &ns.lattice;
    let mut inner_power_failures = Vec::new();
    for x in 0..l.size() {
        let r = calculus::inner_power_products(l, x, max, max, usize::MAX);
        if !r.holds {
            inner_power_failures.push((x, r));
        }
    }
    let f = ns.inner(ns.whole_id()).map_err(|err| HallError::Inconsistent {
        group: group_name.to_owned(),
        detail: format!("[E, -] is not a derivation: {err}"),
        witness: None,
    })?;
    let mut leibniz_failures = Vec::new();
    for a in 0..l.size() {
        for b in 0..l.size() {
            let r = calculus::verify_leibniz_expansion(&f, a, b, max as u64).expect("ids in range");
            if !r.holds {
                leibniz_failures.push((a, b, r));
            }
        }
    }
    Ok(SuiteReport {
        group_name: group_name.to_owned(),
        lattice_size: l.size(),
        inner_power_checked: l.size(),
        inner_power_failures,
        leibniz_checked: l.size() * l.size(),
        leibniz_failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: String,
    pub normal: String,
    pub normal_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub c: usize,
    pub d: usize,
    pub bound: usize,
    #[serde(rename = "max_class_E")]
    pub max_class_e: usize,
    pub tight: bool,
    pub witnesses: Vec<Witness>,
}

/// Best class achieved per `(c, d)` over a set of reports, with the `(E, N)`
/// pairs that meet the bound exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessSummary {
    pub rows: Vec<SharpnessRow>,
}

impl SharpnessSummary {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a BoundReport>) -> Self {
        let mut rows: BTreeMap<(usize, usize), SharpnessRow> = BTreeMap::new();
        for report in reports {
            for inst in &report.instances {
                let Some(bound) = inst.bound else { continue };
                let row = rows.entry((inst.c, inst.d)).or_insert(SharpnessRow {
                    c: inst.c,
                    d: inst.d,
                    bound,
                    max_class_e: 0,
                    tight: false,
                    witnesses: Vec::new(),
                });
                row.max_class_e = row.max_class_e.max(inst.class_e);
                if inst.tight {
                    row.tight = true;
                    row.witnesses.push(Witness {
                        group: inst.group_name.clone(),
                        normal: inst.n_name.clone(),
                        normal_order: inst.n_order,
                    });
                }
            }
        }
        Self { rows: rows.into_values().collect() }
    }

    pub fn row(&self, c: usize, d: usize) -> Option<&SharpnessRow> {
        self.rows.iter().find(|r| r.c == c && r.d == d)
    }
}

/// Runs [`hall_instances`] over a corpus and summarises tightness.
pub fn sharpness_scan(corpus: &[(String, FiniteGroup)]) -> Result<SharpnessSummary, HallError> {
    let reports = corpus.iter().map(|(name, g)| hall_instances(g, name)).collect::<Result<Vec<_>, _>>()?;
    Ok(SharpnessSummary::from_reports(&reports))
}
