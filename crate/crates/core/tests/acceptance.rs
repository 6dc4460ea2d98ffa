//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::Instant;

use hallbound::calculus::{self, iteration_bound};
use hallbound::commands::{scan_manifest, search, ScanOptions, ScanReport, SearchOptions};
use hallbound::corpus::{materialise, Manifest};
use hallbound::group::FiniteGroup;
use hallbound::lattice::{
    check_commutator_axioms, check_jacobi, check_join_semilattice, random_commutator_semilattice,
    CommutatorSemilattice, LatticeFixture,
};

type Outcome = Result<String, String>;

fn corpus_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let manifest = Manifest::builtin().unwrap();
    manifest
        .expand()
        .unwrap()
        .iter()
        .filter_map(|spec| match materialise(spec, manifest.caps).unwrap() {
            Ok(g) if g.order() <= max_order => Some((spec.name.clone(), g)),
            _ => None,
        })
        .collect()
}

fn main_bound(scan: &ScanReport) -> Outcome {
    if !scan.failures.is_empty() {
        return Err(format!("{} groups errored: {:?}", scan.failures.len(), scan.failures));
    }
    if scan.violations != 0 {
        let bad: Vec<_> = scan
            .groups
            .iter()
            .flat_map(|g| g.instances.iter().filter(|i| i.violation))
            .map(|i| format!("{} N={}", i.group_name, i.n_name))
            .collect();
        return Err(format!("{} violations: {bad:?}", scan.violations));
    }
    let max_order = scan.groups.iter().map(|g| g.order).max().unwrap_or(0);
    Ok(format!(
        "{} groups up to order {max_order}, {} instances, 0 violations ({} entries over caps)",
        scan.scanned,
        scan.instances,
        scan.cap_skipped.len()
    ))
}

fn nsub_axioms(scan: &ScanReport) -> Outcome {
    // The scan builds every lattice through the checked constructor and
    // reports any axiom failure as a group failure.
    if !scan.failures.is_empty() || scan.scanned + scan.cap_skipped.len() != scan.entries {
        return Err(format!("failures: {:?}", scan.failures));
    }
    let largest = scan.groups.iter().map(|g| g.lattice_size).max().unwrap_or(0);
    Ok(format!("{} normal subgroup lattices pass every axiom (largest has {largest} elements)", scan.scanned))
}

fn derivation_suite(scan: &ScanReport) -> Outcome {
    let expected = scan.groups.iter().filter(|g| g.order <= 128).count();
    if scan.suites.len() != expected {
        return Err(format!("suite ran on {} groups, expected {expected}", scan.suites.len()));
    }
    let failing: Vec<&str> = scan.suites.iter().filter(|s| !s.passed()).map(|s| s.group_name.as_str()).collect();
    if !failing.is_empty() {
        return Err(format!("derivation inequalities fail on {failing:?}"));
    }
    let mut chains = 0;
    for g in scan.groups.iter().filter(|g| g.order <= 128) {
        for inst in &g.instances {
            let Some(chain) = &inst.chain else { continue };
            chains += 1;
            if !chain.valid || !chain.holds() || chain.ends_at_bottom != Some(true) {
                return Err(format!("descent chain fails for {} N={}", g.group_name, inst.n_name));
            }
        }
    }
    let pairs: usize = scan.suites.iter().map(|s| s.leibniz_checked).sum();
    Ok(format!(
        "{} lattices: inner powers i,j <= 6 and {pairs} Leibniz pairs n <= 6 hold; {chains} descent chains hold",
        scan.suites.len()
    ))
}

fn tightness(scan: &ScanReport) -> Outcome {
    let s = &scan.sharpness;
    let row = |c, d| s.row(c, d).ok_or(format!("no instance with (c,d) = ({c},{d})"));
    let has_witness = |c, d, groups: &[&str]| -> Result<String, String> {
        let r = row(c, d)?;
        let w = r
            .witnesses
            .iter()
            .find(|w| groups.contains(&w.group.as_str()) && w.normal == "E")
            .ok_or(format!("({c},{d}) has no tight witness among {groups:?} with N = E"))?;
        Ok(w.group.clone())
    };
    let r11 = row(1, 1)?;
    if !(r11.tight && r11.bound == 1) {
        return Err("(1,1) not tight".into());
    }
    let w21 = has_witness(2, 1, &["D4", "Q8"])?;
    let w31 = has_witness(3, 1, &["UT(4,2)", "Q16"])?;
    let mut classes = 0;
    for g in &scan.groups {
        let Some(d) = g.class_e.filter(|&d| d >= 1) else { continue };
        classes += 1;
        let tight = g.instances.iter().any(|i| i.c == 1 && i.d == d && i.tight && i.bound == Some(d));
        if !tight {
            return Err(format!("{} has class {d} but no tight (1,{d}) instance", g.group_name));
        }
    }
    let ds: Vec<usize> = s.rows.iter().filter(|r| r.c == 1 && r.tight).map(|r| r.d).collect();
    Ok(format!(
        "(1,1) tight; (2,1) by {w21}; (3,1) by {w31}; (1,d) tight in all {classes} nilpotent groups, d in {ds:?}"
    ))
}

fn oracles() -> Outcome {
    let small = corpus_groups(24);
    for (name, g) in &small {
        let engine: Vec<u32> = {
            let mut v: Vec<u32> =
                g.all_normal_subgroups().iter().map(|s| s.key().iter().fold(0u32, |m, &x| m | 1 << x)).collect();
            v.sort_unstable();
            v
        };
        if engine != common::normal_subgroups_by_subsets(g) {
            return Err(format!("normal subgroups of {name} disagree with subset enumeration"));
        }
    }
    let medium = corpus_groups(64);
    for (name, g) in &medium {
        if g.nilpotency_class() != common::class_oracle(g) {
            return Err(format!("class of {name} disagrees with the element-wise oracle"));
        }
    }
    Ok(format!(
        "normal subgroups match subset enumeration on {} groups of order <= 24; class matches on {} groups of order <= 64",
        small.len(),
        medium.len()
    ))
}

fn bound_table() -> Outcome {
    let t = |k, m| iteration_bound(k, m).map_err(|e| e.to_string());
    for m in 1..=20 {
        if t(1, m)? != m {
            return Err(format!("t(1,{m}) != {m}"));
        }
    }
    for k in 1..=20 {
        if t(k, 1)? != k {
            return Err(format!("t({k},1) != {k}"));
        }
    }
    for (k, m, want) in [(2, 2, 5), (2, 3, 8), (3, 2, 8)] {
        if t(k, m)? != want {
            return Err(format!("t({k},{m}) = {}, expected {want}", t(k, m)?));
        }
    }
    for k in 1..=20u64 {
        for m in 1..=20u64 {
            if t(k, m)? != 2 * k * m + 1 - k - m {
                return Err(format!("t({k},{m}) differs from 2km-k-m+1"));
            }
            if k > 1 && t(k, m)? - t(k - 1, m)? != 2 * m - 1 {
                return Err(format!("t({k},{m}) - t({},{m}) != 2m-1", k - 1));
            }
        }
    }
    Ok("t(1,m)=m, t(k,1)=k, t(2,2)=5, t(2,3)=8, t(3,2)=8; closed form and step 2m-1 hold for k,m <= 20".into())
}

fn jacobi_necessity() -> Outcome {
    let (mut generated, mut rejected) = (0, 0);
    for size in 2..=12 {
        let report = search(SearchOptions {
            seed: 7_000 + size as u64,
            size,
            iters: 1_000,
            drop_jacobi: false,
            cap: 4,
            jobs: 4,
        });
        rejected += report.generation_failures;
        if let Some(f) = report.findings.iter().find(|f| f.property == "inner_power_product") {
            return Err(format!("Jacobi lattice seed {} size {size} fails inner power products", f.seed));
        }
        generated += report.generated;
    }
    if generated < 10_000 {
        return Err(format!("only {generated} lattices generated"));
    }

    #[derive(serde::Deserialize)]
    struct Fixture {
        seed: u64,
        size: usize,
        x: usize,
        lattice: LatticeFixture,
    }
    let fixture: Fixture = serde_json::from_str(include_str!("fixtures/non_jacobi.json")).unwrap();
    let l = CommutatorSemilattice::try_from(fixture.lattice).map_err(|e| e.to_string())?;
    let regenerated = random_commutator_semilattice(fixture.seed, fixture.size, false).map_err(|e| e.to_string())?;
    if regenerated != l {
        return Err(format!("seed {} no longer reproduces the fixture", fixture.seed));
    }
    if !check_join_semilattice(&l).all_hold() || !check_commutator_axioms(&l).all_hold() {
        return Err("fixture is not a commutator semilattice".into());
    }
    if check_jacobi(&l).holds {
        return Err("fixture satisfies Jacobi".into());
    }
    let r = calculus::inner_power_products(&l, fixture.x, 6, 6, 8);
    if r.holds {
        return Err("fixture does not break inner power products".into());
    }
    Ok(format!(
        "{generated} Jacobi lattices of sizes 2..=12 ({rejected} seeds exhausted the sampler) with no inner power failure; fixture seed {} fails at x={} (i,j)={:?}",
        fixture.seed, fixture.x, r.witnesses[0]
    ))
}

fn main() {
    let start = Instant::now();
    let manifest = Manifest::builtin().expect("built-in corpus parses");
    let scan = scan_manifest(&manifest, ScanOptions { jobs: 4, max_order: None, suite_max_order: 128 })
        .expect("built-in corpus expands");

    let criteria: [(&str, &dyn Fn() -> Outcome); 7] = [
        ("main bound over the corpus", &|| main_bound(&scan)),
        ("normal subgroup lattices are Jacobi commutator semilattices", &|| nsub_axioms(&scan)),
        ("derivation inequalities and descent chains", &|| derivation_suite(&scan)),
        ("tightness witnesses", &|| tightness(&scan)),
        ("oracle equivalence", &oracles),
        ("iteration bound table", &bound_table),
        ("Jacobi necessity", &jacobi_necessity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
