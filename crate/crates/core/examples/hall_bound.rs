//! The class bound cd + (c-1)(d-1) for every normal subgroup of a few groups.
//!
//! cargo run --example hall_bound

use hallbound::group::families::Family;
use hallbound::hall::hall_instances;

fn main() {
    let groups = [
        Family::Dihedral(4),
        Family::Quaternion(16),
        Family::Product(vec![Family::Cyclic(2), Family::Dihedral(8)]),
        Family::Dihedral(6),
    ];
    for f in groups {
        let name = f.to_string();
        let report = hall_instances(&f.build(256).unwrap(), &name).unwrap();
        let class = report.class_e.map_or("not nilpotent".into(), |c| format!("class {c}"));
        println!("{name} ({class}): {} instances, {} skipped", report.instances.len(), report.skipped.len());
        for row in &report.summary {
            let bound = row.bound.map_or("-".into(), |b| b.to_string());
            println!(
                "  (c, d) = ({}, {}): bound {bound:>2}, {} instance(s), tight: {}",
                row.c, row.d, row.instances, row.tight
            );
        }
        for s in report.skipped.iter().take(3) {
            println!("  skipped N = {}: {}", s.n_name, s.reason);
        }
        assert!(report.passed());
    }
}
