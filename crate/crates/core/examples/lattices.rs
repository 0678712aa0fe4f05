//! Sublattices of Z^2: counts, Smith forms, the (Lhat, v) construction and
//! the component counts that follow from them.

use torus_severi::lattices::{
    construct_hat, global_component_pairs, hnf, hurwitz_component_count, sigma, snf, sublattices, HatOutcome,
};

fn main() {
    for e in 1..=8 {
        println!("index {e}: {} sublattices (sigma = {})", sublattices(e).unwrap().len(), sigma(e));
    }

    let l = hnf(&[(4, 2), (2, 6)]).unwrap();
    println!("\nspan of (4,2),(2,6): {l}, index {}, Smith form {:?}", l.index(), snf(&l));

    for (rows, dd) in [(vec![(1, 0), (0, 2)], 2), (vec![(2, 0), (0, 2)], 2), (vec![(2, 0), (0, 2)], 3)] {
        let lt = hnf(&rows).unwrap();
        match construct_hat(&lt, dd).unwrap() {
            HatOutcome::Feasible(h) => println!("Ltilde={lt} D={dd}: Lhat={} v={:?}", h.lhat, h.v),
            HatOutcome::Infeasible { m, gcd } => println!("Ltilde={lt} D={dd}: none (m={m}, gcd={gcd})"),
        }
    }

    println!();
    for d in [2, 4, 6, 12] {
        println!(
            "d={d}: {} Hurwitz components, {} global pairs",
            hurwitz_component_count(d).unwrap(),
            global_component_pairs(d, false).len()
        );
    }
}
