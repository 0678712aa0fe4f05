//! Components of a hyperplane section of V(a, b): both enumerators, their
//! difference, and the limit stable map of each Type II term.

use torus_severi::degeneration::{compare_theorems, limit_stable_map, successors_general, successors_simple};
use torus_severi::SeveriState;

fn main() {
    let s = SeveriState::simple(3, 2, 2, 1, 2);
    println!("parent: d={} N={} g={} a=1 b=2, dimension {}", s.d, s.n, s.g, s.dimension().unwrap());

    println!("\nsimple theorem:");
    for t in successors_simple(&s).unwrap() {
        println!("  {:<14} m={} tau={:<6} dim {}  {}", t.kind.as_str(), t.m, t.tau.to_string(), t.child.dimension().unwrap(), t.coefficient);
    }

    println!("\ngeneral theorem:");
    for t in successors_general(&s).unwrap() {
        let shape = limit_stable_map(&t).ok();
        let shape = shape.map(|m| format!("E-part degree {}, {} nodes", m.e_degree, m.node_count)).unwrap_or_default();
        println!("  {:<14} m={} tau={:<6} dim {}  {shape}", t.kind.as_str(), t.m, t.tau.to_string(), t.child.dimension().unwrap());
    }

    let cmp = compare_theorems(&s).unwrap();
    println!("\ncommon {}, only simple {:?}, only general {:?}", cmp.common, cmp.only_simple, cmp.only_general);
}
