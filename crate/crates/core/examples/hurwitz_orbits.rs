//! Connected components of Hurwitz spaces of covers of a torus, as orbits of
//! tuples under braid, handle and conjugation moves.

use torus_severi::hurwitz::{enumerate_tuples, invariant_census, orbits, MoveSet};
use torus_severi::lattices::hurwitz_component_count;

fn main() {
    for (d, g) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let tuples = enumerate_tuples(d, g).unwrap();
        let report = orbits(&tuples, &MoveSet::standard(d)).unwrap();
        println!(
            "d={d} g={g}: {} tuples, {} orbits (predicted {})",
            report.tuples,
            report.orbit_count,
            hurwitz_component_count(d as i64).unwrap()
        );
        for o in &report.orbits {
            println!("  lattice {} size {}", o.lattice, o.size);
        }
    }

    let census = invariant_census(&enumerate_tuples(4, 2).unwrap()).unwrap();
    println!("\ncensus d=4 g=2:");
    for (l, n) in census {
        println!("  {l}: {n}");
    }
}
