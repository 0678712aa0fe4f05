#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use torus_severi::dual_graph::{CentralFiberGraph, EComponent, Vertex};
use torus_severi::monodromy::{HurwitzTuple, Permutation};
use torus_severi::profiles::TangencyProfile;
use torus_severi::severi::{FixedPoint, LineBundle, MovingGroup, SeveriState};

/// Random normalized state with `d ≤ max_d`, `0 ≤ N ≤ 6`, `|g| ≤ 6` and at
/// most three moving groups, each with at least two entries.
pub fn random_state<R: Rng>(rng: &mut R, max_d: u32) -> SeveriState {
    let d = rng.gen_range(1..=max_d);
    let mut entries = Vec::new();
    let mut left = d;
    while left > 0 {
        let k = if rng.gen_bool(0.6) { 1 } else { rng.gen_range(1..=left.min(3)) };
        entries.push(k);
        left -= k;
    }
    entries.shuffle(rng);
    let groups = rng.gen_range(1..=3usize);
    let mut alpha = Vec::new();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); groups];
    for k in entries {
        match rng.gen_range(0..=groups) {
            0 => alpha.push(k),
            j => buckets[j - 1].push(k),
        }
    }
    let mut betas = Vec::new();
    for bucket in buckets {
        if bucket.len() < 2 {
            alpha.extend(bucket);
            continue;
        }
        let degree: i64 = bucket.iter().map(|&k| i64::from(k)).sum();
        let name = format!("L{}", betas.len() + 1);
        betas.push(MovingGroup {
            profile: TangencyProfile::new(bucket).unwrap(),
            bundle: LineBundle::named(&name, degree),
        });
    }
    let alpha = alpha
        .into_iter()
        .enumerate()
        .map(|(i, mult)| FixedPoint { mult, point: format!("p{}", i + 1) })
        .collect();
    SeveriState { d, n: rng.gen_range(0..=6), g: rng.gen_range(-6..=6), alpha, betas }
}

/// `d + g + Σ|β| − 1 − ℓ`, straight from the fields.
pub fn dimension_oracle(s: &SeveriState) -> i64 {
    let sizes: usize = s.betas.iter().map(|b| b.profile.entries().len()).sum();
    i64::from(s.d) + s.g + sizes as i64 - 1 - s.betas.len() as i64
}

/// Random valid central-fiber graph. About half of the draws are built as
/// equality cases: elliptic components of `Ẽ`, direct `X–Ẽ` nodes and
/// chains of rational bridges.
pub fn random_graph<R: Rng>(rng: &mut R) -> CentralFiberGraph {
    loop {
        let gr = if rng.gen_bool(0.5) { equality_shaped(rng) } else { arbitrary(rng) };
        if gr.validate().is_ok() {
            return gr;
        }
    }
}

fn equality_shaped<R: Rng>(rng: &mut R) -> CentralFiberGraph {
    let ne = rng.gen_range(1..=3);
    let e_components: Vec<EComponent> = (0..ne)
        .map(|_| EComponent { genus: if rng.gen_bool(0.8) { 1 } else { 2 }, degree: rng.gen_range(1..=3) })
        .collect();
    let mut z_components = Vec::new();
    let mut edges = Vec::new();
    for k in 0..ne {
        edges.push((Vertex::X, Vertex::E(k)));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let target = Vertex::E(rng.gen_range(0..ne));
        let len = rng.gen_range(1..=3);
        let start = z_components.len();
        for i in 0..len {
            z_components.push(if rng.gen_bool(0.9) { 0 } else { 1 });
            let prev = if i == 0 { Vertex::X } else { Vertex::Z(start + i - 1) };
            edges.push((prev, Vertex::Z(start + i)));
        }
        edges.push((Vertex::Z(start + len - 1), target));
    }
    if rng.gen_bool(0.2) {
        let v = Vertex::Z(z_components.len());
        z_components.push(0);
        edges.push((Vertex::X, v));
        edges.push((v, Vertex::X));
    }
    if rng.gen_bool(0.2) {
        edges.push((Vertex::X, Vertex::E(rng.gen_range(0..ne))));
    }
    edges.shuffle(rng);
    CentralFiberGraph { x_genus: rng.gen_range(0..=3), e_components, z_components, edges }
}

fn arbitrary<R: Rng>(rng: &mut R) -> CentralFiberGraph {
    let ne = rng.gen_range(1..=3);
    let nz = rng.gen_range(0..=4);
    let e_components = (0..ne)
        .map(|_| EComponent { genus: rng.gen_range(1..=3), degree: rng.gen_range(1..=3) })
        .collect();
    let z_components = (0..nz).map(|_| rng.gen_range(0..=2)).collect();
    let pick = |rng: &mut R| match rng.gen_range(0..3) {
        0 => Vertex::X,
        1 => Vertex::E(rng.gen_range(0..ne)),
        _ if nz > 0 => Vertex::Z(rng.gen_range(0..nz)),
        _ => Vertex::E(rng.gen_range(0..ne)),
    };
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(1..=9) {
        let a = pick(rng);
        let b = pick(rng);
        if matches!((a, b), (Vertex::X, Vertex::X) | (Vertex::E(_), Vertex::E(_))) {
            continue;
        }
        edges.push((a, b));
    }
    CentralFiberGraph { x_genus: rng.gen_range(0..=3), e_components, z_components, edges }
}

/// `Σ_v genus(v) + b₁(graph)` for a connected graph: the genus of a nodal
/// curve with the given components and one node per edge.
pub fn nodal_genus_oracle(gr: &CentralFiberGraph) -> i64 {
    let genera: i64 = gr.x_genus + gr.e_components.iter().map(|c| c.genus).sum::<i64>() + gr.z_components.iter().sum::<i64>();
    let vertices = 1 + gr.e_components.len() + gr.z_components.len();
    genera + gr.edges.len() as i64 - vertices as i64 + 1
}

/// Random valid Hurwitz tuple: rejection sampling over transposition lists
/// closed up with the commutator.
pub fn random_tuple<R: Rng>(rng: &mut R, d: usize, b: usize) -> HurwitzTuple {
    loop {
        let mut images: Vec<usize> = (0..d).collect();
        images.shuffle(rng);
        let a = Permutation::from_images(&images).unwrap();
        images.shuffle(rng);
        let bb = Permutation::from_images(&images).unwrap();
        let mut t: Vec<Permutation> = (0..b.saturating_sub(1))
            .map(|_| {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d);
                while j == i {
                    j = rng.gen_range(0..d);
                }
                Permutation::transposition(d, i, j)
            })
            .collect();
        if b > 0 {
            // Last transposition is forced by the relation.
            let partial = Permutation::product(d, t.iter());
            let last = partial.inverse().then(&Permutation::commutator(&a, &bb));
            t.push(last);
        }
        let tuple = HurwitzTuple::new(a, bb, t);
        if tuple.is_valid() {
            return tuple;
        }
    }
}
