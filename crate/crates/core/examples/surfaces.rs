//! The dimension bound g - 1 + gamma on the built-in surface models, and the
//! numerical formulas around Severi varieties on E x P1.

use torus_severi::surfaces::{
    adjunction_genus, branch_count, dim_bound, dim_v_ab, prim_fiber_dim, severi_expected_dim, SurfaceModel,
};

fn main() {
    let s = SurfaceModel::elliptic_ruled();
    let e = s.class(&[("e", 1)]).unwrap();
    let tau = s.class(&[("f", 4), ("e", 2)]).unwrap();
    let gamma = s.gamma(&e, &tau, 0).unwrap();
    println!("ExP1, D = e, tau = 4f+2e: gamma = {gamma}, bound for g=3: {:?}", dim_bound(3, gamma));

    let bl = SurfaceModel::builtin("Bl_P1xP1").unwrap();
    let bl2 = SurfaceModel::builtin("Bl_P2").unwrap();
    for (n, g) in [(1, 2), (3, 5)] {
        let tau = bl.class(&[("f1", n), ("f2", 1), ("e", -1)]).unwrap();
        let d = bl.class(&[("f2", 4)]).unwrap();
        let g1 = bl.gamma(&d, &tau, 2 * n + g + 1).unwrap();
        let tau2 = bl2.class(&[("h", n), ("e", -1)]).unwrap();
        let d2 = bl2.class(&[("h", 6)]).unwrap();
        let g2 = bl2.gamma(&d2, &tau2, 3 * n + g + 2).unwrap();
        println!("N={n} g={g}: Bl(P1xP1) gamma = {g1}, Bl(P2) gamma = {g2}");
    }

    println!();
    for (d, n) in [(2, 1), (3, 2), (4, 3)] {
        println!("class {d}f+{n}e: arithmetic genus {}", adjunction_genus(d, n));
    }
    let ex = severi_expected_dim(3, 2, 2);
    println!("expected dim (d=3, g=2): {} = dim V(0,3) + 1 = {} + 1", ex.expected, dim_v_ab(3, 2, 3));
    println!("branch points, degree 3 covers of a torus by genus 4: {}", branch_count(3, 4, 1).unwrap());
    println!("primitive fiber dimension (d=5, g=2): {}", prim_fiber_dim(5, 2).unwrap());
}
