//! Monodromy of simply branched covers of a torus: one imprimitive tuple in
//! detail, then exhaustive scans.

use torus_severi::monodromy::{analyze, factorize, scan, HurwitzTuple};

fn main() {
    let t = HurwitzTuple::parse(4, "(1 3)(2 4)", "()", &["(1 2)", "(1 2)"]).unwrap();
    let f = factorize(&t).unwrap();
    let report = analyze(&t, 1_000_000).unwrap();
    println!("tuple {}", serde_json::to_string(&t).unwrap());
    println!("  lattice {} (index {}), blocks {:?}", f.lattice, f.lattice.index(), f.blocks);
    println!("  primitive {}, full monodromy {}", report.primitive, report.full_monodromy);
    println!("  kernel {:?}", report.kernel);

    println!();
    for (d, b) in [(2, 2), (3, 2), (4, 2), (4, 4)] {
        let r = scan(d, b);
        println!(
            "d={d} b={b}: {} tuples, indices {:?}, failures {}/{}/{}",
            r.tuples, r.index_counts, r.equivalence_failures, r.kernel_failures, r.block_pair_failures
        );
    }
}
