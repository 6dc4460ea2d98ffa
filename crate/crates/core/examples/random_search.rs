//! Random commutator semilattices with and without the Jacobi inequality,
//! probing for failures of the inner power product inequality.
//!
//! cargo run --release --example random_search

use hallbound::calculus::inner_power_products;
use hallbound::commands::{search, SearchOptions};
use hallbound::lattice::{check_jacobi, random_commutator_semilattice};

fn main() {
    for drop_jacobi in [false, true] {
        let report = search(SearchOptions { seed: 0, size: 5, iters: 3000, drop_jacobi, cap: 3, jobs: 2 });
        println!(
            "Jacobi {}: {} lattices, {} with a failing inequality",
            if drop_jacobi { "dropped " } else { "enforced" },
            report.generated,
            report.lattices_with_findings
        );
        for f in &report.findings {
            println!("  seed {}: {} at x = {}, witnesses {:?}", f.seed, f.property, f.x, f.witnesses);
        }
    }

    let l = random_commutator_semilattice(505, 4, false).unwrap();
    println!("\nseed 505, size 4: elements {:?}", l.names());
    println!("Jacobi witnesses: {:?}", check_jacobi(&l).witnesses);
    for x in 0..l.size() {
        let r = inner_power_products(&l, x, 3, 3, 4);
        if !r.holds {
            println!("x = {}: (x^i).(x^j) <= x^(i+j+1) fails at (i, j) in {:?}", l.name(x), r.witnesses);
        }
    }
}
