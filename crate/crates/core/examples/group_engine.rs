//! Building groups from families, permutations and tables, then taking
//! normal subgroups, quotients and lower central series.
//!
//! cargo run --example group_engine

use hallbound::group::families::Family;
use hallbound::group::{FiniteGroup, Perm};

fn show_series(name: &str, g: &FiniteGroup) {
    let orders: Vec<usize> = g.lower_central_series().terms.iter().map(|t| t.order()).collect();
    match g.nilpotency_class() {
        Some(c) => println!("{name}: order {}, lower central series orders {orders:?}, class {c}", g.order()),
        None => println!("{name}: order {}, series stalls at {orders:?}, not nilpotent", g.order()),
    }
}

fn main() {
    for f in [Family::Quaternion(16), Family::Unitriangular { n: 4, p: 2 }, Family::Heisenberg(5), Family::Dihedral(12)]
    {
        show_series(&f.to_string(), &f.build(2048).unwrap());
    }

    let s4 = FiniteGroup::from_generators(
        &[Perm::parse_cycles("(1 2 3 4)", 4).unwrap(), Perm::parse_cycles("(1 2)", 4).unwrap()],
        4,
        2048,
    )
    .unwrap();
    show_series("S4", &s4);
    println!("S4 normal subgroups:");
    for n in s4.all_normal_subgroups() {
        println!("  order {:>2}: {}", n.order(), n.describe(&s4));
    }
    println!("S4 conjugacy class sizes: {:?}", s4.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>());

    let v4 = &s4.all_normal_subgroups()[1];
    let quotient = s4.quotient(v4).unwrap();
    println!("S4 / V4 has order {} and is abelian: {}", quotient.order(), quotient.is_abelian());

    let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
    let c3 = FiniteGroup::from_table(&table).unwrap();
    show_series("C3 from a table", &c3);
    let product = c3.direct_product(&s4);
    show_series("C3 x S4", &product);
}
