//! Tangency profiles: enumeration and the sub-multiset operations used by the
//! degeneration enumerators.

use torus_severi::profiles::{enumerate_profiles, partitions_with_at_most};
use torus_severi::TangencyProfile;

fn main() {
    for m in 1..=6 {
        let all = enumerate_profiles(m);
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        println!("m={m}: {} profiles  {}", all.len(), shown.join(" "));
    }

    let p = TangencyProfile::new(vec![1, 3, 2, 1]).unwrap();
    println!("\n{p}: size {}, m = {}", p.size(), p.multiplicity());
    for s in p.subprofiles() {
        let c = p.complement(&s).unwrap();
        println!("  {s} + {c}");
    }
    let removed: Vec<String> = p.remove_one_entry().unwrap().iter().map(|q| q.to_string()).collect();
    println!("remove one entry: {}", removed.join(", "));
    println!("partitions of 6 into at most 2 parts: {}", partitions_with_at_most(6, 2).len());
}
