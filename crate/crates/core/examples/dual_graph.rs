//! The genus bound p_a(X) + T <= g on central fibers, with the slack terms
//! and the equality conditions.

use torus_severi::dual_graph::{arithmetic_genus, genus_bound_check, CentralFiberGraph};

fn main() {
    let graphs = [
        r#"{"x_genus":2,"e_components":[{"genus":1,"degree":1}],"z_components":[0],"edges":[["X","Z1"],["Z1","E1"]]}"#,
        r#"{"x_genus":1,"e_components":[{"genus":1,"degree":2}],"z_components":[0,0],"edges":[["X","E1"],["X","Z1"],["Z1","Z2"],["Z2","E1"]]}"#,
        r#"{"x_genus":0,"e_components":[{"genus":2,"degree":1}],"z_components":[1],"edges":[["X","E1"],["X","Z1"]]}"#,
        r#"{"x_genus":1,"e_components":[{"genus":1,"degree":1}],"z_components":[0],"edges":[["X","E1"],["X","Z1"],["Z1","X"]]}"#,
    ];
    for text in graphs {
        let gr: CentralFiberGraph = serde_json::from_str(text).unwrap();
        let g = arithmetic_genus(&gr).unwrap();
        let r = genus_bound_check(&gr, g).unwrap();
        println!(
            "g={g} p_a(X)={} T={} equality={} slack={} conditions={:?}",
            r.x_genus,
            r.t,
            r.equality,
            r.slack.total(),
            r.conditions
        );
    }
}
