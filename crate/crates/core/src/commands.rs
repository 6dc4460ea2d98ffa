//! The batch commands behind the `hallbound` binary.
//!
//! Every command returns an [`Outcome`]: an exit status plus a JSON report
//! carrying `schema_version`. Exit status is `0` when every check passed,
//! `1` when a checked property failed and `2` on bad input.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::calculus::{self, ChainReport};
use crate::corpus::{self, CapSkip, CorpusError, Manifest, SCHEMA_VERSION};
use crate::group::spec::{Caps, GroupSpec};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::hall::{self, BoundReport, HallError, NsubLattice, SharpnessSummary};
use crate::lattice::{random_commutator_semilattice, AxiomChecker, Checks, CommutatorSemilattice, LatticeFixture};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Usage,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Usage => 2,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    text: String,
}

impl Outcome {
    fn new(status: Status, mut report: Value, text: String) -> Self {
        if let Value::Object(map) = &mut report {
            map.insert("schema_version".into(), json!(SCHEMA_VERSION));
            map.insert("status".into(), json!(status));
        }
        Self { status, report, text }
    }

    fn usage(message: impl ToString) -> Self {
        let message = message.to_string();
        Self::new(Status::Usage, json!({ "error": message }), format!("error: {message}\n"))
    }

    pub fn code(&self) -> i32 {
        self.status.code()
    }

    /// Compact JSON, one line. Field order is fixed, so equal reports give equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.report).expect("reports serialise")
    }

    /// Human-readable rendering of the same report.
    pub fn to_pretty(&self) -> String {
        self.text.clone()
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

fn read_input(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if text.trim().is_empty() {
        return Err(format!("{} is empty", path.display()));
    }
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_group(path: &Path, caps: Caps) -> Result<(GroupSpec, FiniteGroup), String> {
    let spec: GroupSpec = serde_json::from_value(read_input(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let group = spec.build(caps).map_err(|e| format!("{}: {e}", spec.name))?;
    Ok((spec, group))
}

fn resolve_normal(group: &FiniteGroup, normal: &[String]) -> Result<Subgroup, String> {
    let elems = GroupSpec::resolve_elements(group, normal).map_err(|e| e.to_string())?;
    Ok(group.subgroup_generated(&elems))
}

fn render_checks(out: &mut String, checks: &Checks) {
    for r in checks.iter() {
        let mark = if r.holds { "ok  " } else { "FAIL" };
        let _ = write!(out, "  {mark} {:?}", r.axiom);
        if !r.holds {
            let _ = write!(out, "  witnesses {:?}", r.witnesses);
        }
        out.push('\n');
    }
}

/// Axiom checks on a lattice fixture, or on `NSub(E)` for a group spec.
pub fn cmd_axioms(input: &Path, caps: Caps) -> Outcome {
    let value = match read_input(input) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let (kind, name, lattice) = if value.get("carrier").is_some() {
        let fixture: LatticeFixture = match serde_json::from_value(value) {
            Ok(f) => f,
            Err(e) => return Outcome::usage(format!("{}: {e}", input.display())),
        };
        match CommutatorSemilattice::try_from(fixture) {
            Ok(l) => ("lattice", input.display().to_string(), l),
            Err(e) => return Outcome::usage(e),
        }
    } else {
        let (spec, group) = match load_group(input, caps) {
            Ok(x) => x,
            Err(e) => return Outcome::usage(e),
        };
        ("group", spec.name, NsubLattice::build(&group).lattice)
    };
    let checker = AxiomChecker::default();
    let mut checks = checker.join_semilattice(&lattice);
    checks.extend(checker.commutator_axioms(&lattice));
    checks.0.push(checker.jacobi(&lattice));
    let ok = checks.all_hold();
    let mut text = format!("{kind} {name}: {} elements\n", lattice.size());
    render_checks(&mut text, &checks);
    Outcome::new(
        Status::from_ok(ok),
        json!({ "command": "axioms", "input": kind, "name": name, "size": lattice.size(),
                "elements": lattice.names(), "holds": ok, "checks": checks }),
        text,
    )
}

fn render_report(out: &mut String, r: &BoundReport) {
    let class = r.class_e.map_or("not nilpotent".to_owned(), |c| format!("class {c}"));
    let _ = writeln!(out, "{} (order {}, {class}, {} normal subgroups)", r.group_name, r.order, r.lattice_size);
    for i in &r.instances {
        let bound = i.bound.map_or("-".to_owned(), |b| b.to_string());
        let flag = if i.violation {
            "  VIOLATION"
        } else if i.tight {
            "  tight"
        } else {
            ""
        };
        let _ = writeln!(out, "  N = {:<24} c={} d={} class(E)={} bound={bound}{flag}", i.n_name, i.c, i.d, i.class_e);
    }
    for s in &r.skipped {
        let _ = writeln!(out, "  N = {:<24} skipped: {}", s.n_name, s.reason);
    }
}

fn hall_failure(err: HallError) -> Outcome {
    let status = match &err {
        HallError::Group(GroupError::NotNormal { .. }) | HallError::Inconsistent { .. } | HallError::OutOfScope(_) => {
            Status::Fail
        }
        HallError::Group(_) => Status::Usage,
    };
    let witness = match &err {
        HallError::Group(GroupError::NotNormal { element, conjugator }) => {
            json!({ "element": element, "conjugator": conjugator })
        }
        HallError::Inconsistent { witness: Some(checks), .. } => to_value(checks),
        _ => Value::Null,
    };
    let message = err.to_string();
    Outcome::new(status, json!({ "error": message, "witness": witness }), format!("error: {message}\n"))
}

/// The bound for every normal subgroup of a group, or for one given by generators.
pub fn cmd_verify(spec: &Path, normal: Option<&[String]>, caps: Caps) -> Outcome {
    let (spec, group) = match load_group(spec, caps) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let result = match normal {
        Some(gens) => match resolve_normal(&group, gens) {
            Ok(n) => hall::hall_instance(&group, &n, &spec.name),
            Err(e) => return Outcome::usage(e),
        },
        None => hall::hall_instances(&group, &spec.name),
    };
    match result {
        Ok(report) => {
            let mut text = String::new();
            render_report(&mut text, &report);
            let mut value = to_value(&report);
            value["command"] = json!("verify");
            Outcome::new(Status::from_ok(report.passed()), value, text)
        }
        Err(err) => hall_failure(err),
    }
}

#[derive(Debug, Clone, Serialize)]
struct GroupFailure {
    group: String,
    error: String,
}

/// Options for [`cmd_scan`].
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub jobs: usize,
    /// Overrides the manifest's order cap when set.
    pub max_order: Option<usize>,
    /// Also run the derivation suite on groups up to this order.
    pub suite_max_order: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { jobs: 1, max_order: None, suite_max_order: 0 }
    }
}

enum Scanned {
    Report(BoundReport, Option<hall::SuiteReport>),
    CapSkip(CapSkip),
    Failure(GroupFailure),
}

fn scan_one(spec: &GroupSpec, caps: Caps, suite_max_order: usize) -> Scanned {
    let fail = |error: String| Scanned::Failure(GroupFailure { group: spec.name.clone(), error });
    let group = match corpus::materialise(spec, caps) {
        Ok(Ok(g)) => g,
        Ok(Err(skip)) => return Scanned::CapSkip(skip),
        Err(e) => return fail(e.to_string()),
    };
    let ns = match hall::nsub_semilattice(&group, &spec.name) {
        Ok(ns) => ns,
        Err(e) => return fail(e.to_string()),
    };
    let report = match hall::hall_instances_on(&group, &spec.name, &ns) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let suite = if group.order() <= suite_max_order {
        match hall::derivation_suite(&ns, &spec.name, 6) {
            Ok(s) => Some(s),
            Err(e) => return fail(e.to_string()),
        }
    } else {
        None
    };
    Scanned::Report(report, suite)
}

/// Aggregate result of a corpus scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub entries: usize,
    pub scanned: usize,
    pub instances: usize,
    pub violations: usize,
    pub chain_failures: usize,
    pub suite_failures: usize,
    pub cap_skipped: Vec<CapSkip>,
    pub failures: Vec<String>,
    pub groups: Vec<BoundReport>,
    pub suites: Vec<hall::SuiteReport>,
    pub sharpness: SharpnessSummary,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.chain_failures == 0 && self.suite_failures == 0 && self.failures.is_empty()
    }
}

/// Runs the bound check over a whole manifest. Groups are processed in
/// parallel and merged in name order, so output does not depend on `jobs`.
pub fn scan_manifest(manifest: &Manifest, opts: ScanOptions) -> Result<ScanReport, CorpusError> {
    let specs = manifest.expand()?;
    let mut caps = manifest.caps;
    if let Some(max) = opts.max_order {
        caps.max_order = max;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    let mut scanned: Vec<(String, Scanned)> =
        pool.install(|| specs.par_iter().map(|s| (s.name.clone(), scan_one(s, caps, opts.suite_max_order))).collect());
    scanned.sort_by(|a, b| a.0.cmp(&b.0));

    let mut report = ScanReport {
        entries: specs.len(),
        scanned: 0,
        instances: 0,
        violations: 0,
        chain_failures: 0,
        suite_failures: 0,
        cap_skipped: Vec::new(),
        failures: Vec::new(),
        groups: Vec::new(),
        suites: Vec::new(),
        sharpness: SharpnessSummary::default(),
    };
    for (_, s) in scanned {
        match s {
            Scanned::Report(r, suite) => {
                report.scanned += 1;
                report.instances += r.instances.len();
                report.violations += r.violations;
                report.chain_failures += r.chain_failures;
                report.groups.push(r);
                if let Some(suite) = suite {
                    report.suite_failures += usize::from(!suite.passed());
                    report.suites.push(suite);
                }
            }
            Scanned::CapSkip(skip) => report.cap_skipped.push(skip),
            Scanned::Failure(f) => report.failures.push(format!("{}: {}", f.group, f.error)),
        }
    }
    report.sharpness = SharpnessSummary::from_reports(&report.groups);
    Ok(report)
}

pub fn cmd_scan(manifest: Option<&Path>, opts: ScanOptions) -> Outcome {
    let manifest = match manifest {
        Some(path) => Manifest::load(path),
        None => Manifest::default_corpus(),
    };
    let report = match manifest.and_then(|m| scan_manifest(&m, opts)) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let mut text = format!(
        "{} groups scanned ({} skipped by caps), {} instances, {} violations, {} chain failures\n",
        report.scanned,
        report.cap_skipped.len(),
        report.instances,
        report.violations,
        report.chain_failures
    );
    for f in &report.failures {
        let _ = writeln!(text, "  failure: {f}");
    }
    text.push_str("\n  c  d  bound  max class(E)  tight  witness\n");
    for row in &report.sharpness.rows {
        let witness = row.witnesses.first().map_or(String::new(), |w| format!("{} with N = {}", w.group, w.normal));
        let _ = writeln!(
            text,
            "  {:<2} {:<2} {:<6} {:<13} {:<6} {witness}",
            row.c,
            row.d,
            row.bound,
            row.max_class_e,
            if row.tight { "yes" } else { "no" }
        );
    }
    let mut value = to_value(&report);
    value["command"] = json!("scan");
    Outcome::new(Status::from_ok(report.passed()), value, text)
}

fn render_chain(out: &mut String, chain: &ChainReport) {
    let _ = writeln!(out, "x = N = {}, y = E = {}, m = d = {}", chain.x_name, chain.y_name, chain.m);
    let _ = writeln!(out, "f-iterates of E: {}", chain.f_iterates.names.join(" > "));
    let _ = writeln!(out, "g-iterates of N: {}", chain.g_iterates.names.join(" > "));
    for s in &chain.steps {
        let rel = if s.holds { "<=" } else { "NOT <=" };
        let _ = writeln!(
            out,
            "  k={} t_k={}: f^{}(E) = {} {rel} g^{}(N) = {}",
            s.k, s.t_k, s.t_k, s.lhs_name, s.k, s.rhs_name
        );
    }
}

/// The full descent chain for one `(E, N)`.
pub fn cmd_trace(spec: &Path, normal: &[String], caps: Caps) -> Outcome {
    let (spec, group) = match load_group(spec, caps) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let n = match resolve_normal(&group, normal) {
        Ok(n) => n,
        Err(e) => return Outcome::usage(e),
    };
    match hall::verify_chain(&group, &n, &spec.name) {
        Ok(chain) => {
            let mut text = String::new();
            render_chain(&mut text, &chain);
            let ok = chain.holds() && chain.ends_at_bottom == Some(true);
            let failed_hypothesis = chain.hypotheses.first_failure();
            if let Some(h) = failed_hypothesis {
                let _ = writeln!(text, "hypothesis fails: {h}");
            }
            Outcome::new(
                Status::from_ok(ok),
                json!({ "command": "trace", "group": spec.name, "failed_hypothesis": failed_hypothesis, "chain": chain }),
                text,
            )
        }
        Err(err) => hall_failure(err),
    }
}

/// Options for [`cmd_search`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub seed: u64,
    pub size: usize,
    pub iters: u64,
    pub drop_jacobi: bool,
    /// Maximum number of findings kept in the report.
    pub cap: usize,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub seed: u64,
    pub property: &'static str,
    pub x: usize,
    pub witnesses: Vec<Vec<usize>>,
    pub lattice: LatticeFixture,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub size: usize,
    pub iters: u64,
    pub enforce_jacobi: bool,
    pub generated: u64,
    pub generation_failures: u64,
    pub lattices_with_findings: u64,
    pub findings: Vec<Finding>,
}

const SEARCH_POWER: usize = 6;

/// Inner power products for every `x`, and the descent chain for
/// `f = top . -`, `g = x . -`, `m <= 3` whenever `f` is a derivation and the
/// chain's hypotheses hold.
pub fn probe_lattice(l: &CommutatorSemilattice, seed: u64) -> Vec<Finding> {
    let mut found = Vec::new();
    let mut record =
        |property, x, witnesses| found.push(Finding { seed, property, x, witnesses, lattice: l.to_fixture() });
    for x in 0..l.size() {
        let r = calculus::inner_power_products(l, x, SEARCH_POWER, SEARCH_POWER, 4);
        if !r.holds {
            record("inner_power_product", x, r.witnesses);
        }
    }
    let Some(top) = l.top() else { return found };
    let f: Vec<usize> = (0..l.size()).map(|a| l.dot(top, a)).collect();
    if !AxiomChecker::default().derivation(l, &f).all_hold() {
        return found;
    }
    for x in 0..l.size() {
        let g: Vec<usize> = (0..l.size()).map(|a| l.dot(x, a)).collect();
        for m in 1..=3 {
            let chain = calculus::descent_chain(&f, &g, l, x, top, m, 3);
            if chain.valid && !chain.holds() {
                let bad = chain.steps.iter().filter(|s| !s.holds).map(|s| vec![m as usize, s.k as usize]).collect();
                record("descent_chain", x, bad);
                break;
            }
        }
    }
    found
}

pub fn search(opts: SearchOptions) -> SearchReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    let results: Vec<Option<Vec<Finding>>> = pool.install(|| {
        (0..opts.iters)
            .into_par_iter()
            .map(|i| {
                let seed = opts.seed.wrapping_add(i);
                random_commutator_semilattice(seed, opts.size, !opts.drop_jacobi).ok().map(|l| probe_lattice(&l, seed))
            })
            .collect()
    });
    let mut report = SearchReport {
        seed: opts.seed,
        size: opts.size,
        iters: opts.iters,
        enforce_jacobi: !opts.drop_jacobi,
        generated: 0,
        generation_failures: 0,
        lattices_with_findings: 0,
        findings: Vec::new(),
    };
    for r in results {
        match r {
            None => report.generation_failures += 1,
            Some(findings) => {
                report.generated += 1;
                report.lattices_with_findings += u64::from(!findings.is_empty());
                let room = opts.cap.saturating_sub(report.findings.len());
                report.findings.extend(findings.into_iter().take(room));
            }
        }
    }
    report
}

/// Random lattice search. With Jacobi enforced every probed inequality
/// should hold, so any finding fails the command. With it dropped, findings
/// are the point.
pub fn cmd_search(opts: SearchOptions) -> Outcome {
    if opts.size == 0 {
        return Outcome::usage("size must be at least 1");
    }
    let report = search(opts);
    let ok = opts.drop_jacobi || report.lattices_with_findings == 0;
    let mut text = format!(
        "{} lattices of size {} ({}), {} with findings\n",
        report.generated,
        opts.size,
        if opts.drop_jacobi { "Jacobi dropped" } else { "Jacobi enforced" },
        report.lattices_with_findings
    );
    for f in &report.findings {
        let _ = writeln!(text, "  seed {}: {} fails at x = {} {:?}", f.seed, f.property, f.x, f.witnesses);
    }
    let mut value = to_value(&report);
    value["command"] = json!("search");
    Outcome::new(Status::from_ok(ok), value, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn axioms_on_s3_spec() {
        let f = write_tmp(r#"{"name":"S3","kind":"permutation","generators":["(1 2 3)","(1 2)"],"degree":3}"#);
        let out = cmd_axioms(f.path(), Caps::default());
        assert_eq!(out.code(), 0);
        assert_eq!(out.report["size"], 3);
    }

    #[test]
    fn empty_file_is_usage_error() {
        let f = write_tmp("");
        assert_eq!(cmd_axioms(f.path(), Caps::default()).code(), 2);
        assert_eq!(cmd_verify(f.path(), None, Caps::default()).code(), 2);
    }

    #[test]
    fn verify_non_normal() {
        let f = write_tmp(r#"{"name":"D4","kind":"family","family":{"id":"D","params":[4]}}"#);
        let out = cmd_verify(f.path(), Some(&["(2 4)".to_owned()]), Caps::default());
        assert_eq!(out.code(), 1);
        assert!(out.report["witness"]["conjugator"].is_string());
    }

    #[test]
    fn search_size_one_finds_nothing() {
        let opts = SearchOptions { seed: 3, size: 1, iters: 20, drop_jacobi: true, cap: 8, jobs: 1 };
        let out = cmd_search(opts);
        assert_eq!(out.code(), 0);
        assert_eq!(out.report["findings"].as_array().unwrap().len(), 0);
    }
}
