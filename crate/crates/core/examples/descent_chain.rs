//! The descent chain f^(t_k)(E) <= g^k(N) for UT(4,2) and Heis(3).
//!
//! cargo run --example descent_chain

use hallbound::group::families::Family;
use hallbound::hall::verify_chain;

fn main() {
    for f in [Family::Unitriangular { n: 4, p: 2 }, Family::Heisenberg(3), Family::Quaternion(16)] {
        let group = f.build(256).unwrap();
        let whole = group.whole();
        let chain = verify_chain(&group, &whole, &f.to_string()).unwrap();
        println!("{f}, N = E, m = {}", chain.m);
        println!("  f-iterates: {}", chain.f_iterates.names.join(" > "));
        println!("  g-iterates: {}", chain.g_iterates.names.join(" > "));
        for s in &chain.steps {
            println!("  k = {}, t_k = {}: {} <= {} ({})", s.k, s.t_k, s.lhs_name, s.rhs_name, s.holds);
        }
    }

    // A proper normal subgroup: the index-2 cyclic subgroup of Q16.
    let q16 = Family::Quaternion(16).build(64).unwrap();
    let cyclic = q16.subgroup_generated(&[q16.generators()[0]]);
    let chain = verify_chain(&q16, &cyclic, "Q16").unwrap();
    println!("Q16, N = {} (order {}), m = {}", chain.x_name, cyclic.order(), chain.m);
    for s in &chain.steps {
        println!("  k = {}, t_k = {}: {} <= {} ({})", s.k, s.t_k, s.lhs_name, s.rhs_name, s.holds);
    }
}
