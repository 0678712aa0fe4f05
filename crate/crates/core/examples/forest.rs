//! Iterated degenerations from V(0, 2) with d = N = g = 2, down to
//! dimension 0. Prints the DOT graph on stdout.

use torus_severi::{build_forest, SeveriState, StopRule};

fn main() {
    let root = SeveriState::simple(2, 2, 2, 0, 2);
    let forest = build_forest(&[root], StopRule::default()).unwrap();
    eprintln!("{} nodes, {} edges, truncated: {}", forest.nodes.len(), forest.edges.len(), forest.truncated);
    for (id, node) in forest.nodes.iter().enumerate() {
        let children = forest.children(id).count();
        eprintln!("  depth {} dim {:>2}  {} children  {}", node.depth, node.dimension, children, node.key);
    }
    print!("{}", forest.to_dot());
}
