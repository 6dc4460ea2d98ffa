//! Normal subgroups of S3 and D4 as commutator semilattices, with their
//! join and commutator tables and the axiom checks.
//!
//! cargo run --example normal_subgroup_lattice

use hallbound::group::families::Family;
use hallbound::hall::nsub_semilattice;

fn main() {
    for family in [Family::Dihedral(3), Family::Dihedral(4)] {
        let name = if family == Family::Dihedral(3) { "S3".to_owned() } else { family.to_string() };
        let group = family.build(64).unwrap();
        let ns = nsub_semilattice(&group, &name).expect("normal subgroups form a Jacobi commutator semilattice");
        let l = &ns.lattice;
        println!("{name}: {} normal subgroups", l.size());
        for (id, s) in ns.subgroups.iter().enumerate() {
            println!("  {id}: {:<28} order {}", l.name(id), s.order());
        }
        println!("  join (MN) and dot ([M,N]) tables:");
        for a in 0..l.size() {
            let join: Vec<String> = (0..l.size()).map(|b| l.join(a, b).to_string()).collect();
            let dot: Vec<String> = (0..l.size()).map(|b| l.dot(a, b).to_string()).collect();
            println!("    {}    {}", join.join(" "), dot.join(" "));
        }
        for check in ns.check_axioms().iter() {
            println!("  {:?}: {}", check.axiom, if check.holds { "holds" } else { "fails" });
        }
        println!();
    }
}
