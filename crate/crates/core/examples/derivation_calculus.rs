//! Iterating the derivation f(K) = [E, K] on the normal subgroups of D8
//! and checking the inequalities iterated derivations obey.
//!
//! cargo run --example derivation_calculus

use hallbound::calculus::{iterate, iteration_bound, leibniz_expansion, verify_inner_power_products, IterationChain};
use hallbound::group::families::Family;
use hallbound::hall::nsub_semilattice;

fn main() {
    let group = Family::Dihedral(8).build(64).unwrap();
    let ns = nsub_semilattice(&group, "D8").unwrap();
    let l = &ns.lattice;
    let top = ns.whole_id();
    let f = ns.inner(top).unwrap();

    let chain = IterationChain::new(l, f.table(), "f", top, 4);
    println!("f-iterates of D8: {}", chain.names.join(" > "));
    println!("f is below the identity: {}", f.is_below_identity());

    for x in 0..l.size() {
        let report = verify_inner_power_products(l, x, 6, 6).unwrap();
        println!("inner powers of {:<24} i, j <= 6: {}", l.name(x), if report.holds { "hold" } else { "fail" });
    }

    // f^n(a . b) <= join_i f^i(a) . f^(n-i)(b)
    let (a, b) = (top, top);
    for n in 0..4 {
        let lhs = iterate(&f, n, l.dot(a, b));
        let rhs = leibniz_expansion(&f, a, b, n);
        println!("n = {n}: f^n([E,E]) = {} <= {} : {}", l.name(lhs), l.name(rhs), l.le(lhs, rhs));
    }

    println!("iteration bound t(k, m) = km + (k-1)(m-1):");
    for k in 1..=4 {
        let row: Vec<String> = (1..=4).map(|m| format!("{:>3}", iteration_bound(k, m).unwrap())).collect();
        println!("  k = {k}: {}", row.join(""));
    }
}
