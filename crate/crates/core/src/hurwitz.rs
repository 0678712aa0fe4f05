//! Hurwitz tuples over a torus and their orbits under branch-point moves.
//!
//! The move set consists of the braid moves `σᵢ`, two global conjugations
//! generating `S_d`, and four handle moves pushing the first or the last
//! branch point around the two loops of the torus. Each handle move is an
//! automorphism of the free group on `A, B, T₁, …, T_b` fixing the relator
//! `[A, B](T₁⋯T_b)⁻¹` and inducing the identity on `H₁` of the torus, so it
//! preserves the invariant lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::lattices::Lattice2;
use crate::monodromy::{invariant_lattice, scan_tuples, HurwitzTuple, MonodromyError, Permutation};

pub const MAX_DEGREE: usize = 5;
pub const MAX_BRANCH_POINTS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("resource-guard: enumeration needs 1 <= d <= {MAX_DEGREE} and b = 2g-2 <= {MAX_BRANCH_POINTS} (d = {d}, g = {g})")]
    Guard { d: usize, g: i64 },
    #[error("genus: a simply branched cover of a torus needs g >= 2 here, got {0}")]
    Genus(i64),
    #[error("braid-index: move index {i} outside 1..{b}")]
    BraidIndex { i: usize, b: usize },
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

/// Every valid tuple with `d` sheets over a torus, for covers of genus `g`
/// (so `b = 2g − 2`), sorted.
pub fn enumerate_tuples(d: usize, g: i64) -> Result<Vec<HurwitzTuple>, HurwitzError> {
    if g < 2 {
        return Err(HurwitzError::Genus(g));
    }
    let b = (2 * g - 2) as usize;
    if d == 0 || d > MAX_DEGREE || b > MAX_BRANCH_POINTS {
        return Err(HurwitzError::Guard { d, g });
    }
    let mut out = scan_tuples(
        d,
        b,
        Vec::new,
        |acc: &mut Vec<HurwitzTuple>, t| acc.push(t.clone()),
        |mut x, y| {
            x.extend(y);
            x
        },
    );
    out.sort();
    Ok(out)
}

/// `(Tᵢ, Tᵢ₊₁) ↦ (Tᵢ·Tᵢ₊₁·Tᵢ⁻¹, Tᵢ)`, with `i` 1-based.
pub fn braid_move(t: &HurwitzTuple, i: usize) -> Result<HurwitzTuple, HurwitzError> {
    let b = t.t.len();
    if i < 1 || i >= b {
        return Err(HurwitzError::BraidIndex { i, b });
    }
    let mut out = t.clone();
    let (x, y) = (t.t[i - 1], t.t[i]);
    out.t[i - 1] = x.then(&y).then(&x.inverse());
    out.t[i] = x;
    Ok(out)
}

/// Inverse of [`braid_move`]: `(Tᵢ, Tᵢ₊₁) ↦ (Tᵢ₊₁, Tᵢ₊₁⁻¹·Tᵢ·Tᵢ₊₁)`.
pub fn braid_move_inverse(t: &HurwitzTuple, i: usize) -> Result<HurwitzTuple, HurwitzError> {
    let b = t.t.len();
    if i < 1 || i >= b {
        return Err(HurwitzError::BraidIndex { i, b });
    }
    let mut out = t.clone();
    let (x, y) = (t.t[i - 1], t.t[i]);
    out.t[i - 1] = y;
    out.t[i] = y.inverse().then(&x).then(&y);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HandleMove {
    /// Push `T₁` around `A`.
    H1,
    /// Push `T₁` around `B`.
    H2,
    /// Push `T_b` around `A`.
    H3,
    /// Push `T_b` around `B`.
    H4,
}

impl HandleMove {
    pub const ALL: [HandleMove; 4] = [HandleMove::H1, HandleMove::H2, HandleMove::H3, HandleMove::H4];

    /// Applies the move; tuples without branch points are returned unchanged.
    pub fn apply(self, t: &HurwitzTuple) -> HurwitzTuple {
        let b = t.t.len();
        if b == 0 {
            return t.clone();
        }
        let d = t.d;
        let mut out = t.clone();
        let (a, bb) = (t.a, t.b);
        match self {
            HandleMove::H1 => {
                let t1 = t.t[0];
                let rest = Permutation::product(d, &t.t[1..]);
                out.a = t1.inverse().then(&a);
                out.t[0] = rest.then(&bb).then(&t1).then(&bb.inverse()).then(&rest.inverse());
            }
            HandleMove::H2 => {
                let t1 = t.t[0];
                out.b = t1.then(&bb);
                out.t[0] = a.then(&t1).then(&a.inverse());
                for k in 1..b {
                    out.t[k] = t1.then(&t.t[k]).then(&t1.inverse());
                }
            }
            HandleMove::H3 => {
                let tb = t.t[b - 1];
                out.a = tb.inverse().then(&a);
                out.t[b - 1] = bb.then(&tb).then(&bb.inverse());
                for k in 0..b - 1 {
                    out.t[k] = tb.inverse().then(&t.t[k]).then(&tb);
                }
            }
            HandleMove::H4 => {
                let tb = t.t[b - 1];
                let head = Permutation::product(d, &t.t[..b - 1]);
                out.b = tb.then(&bb);
                out.t[b - 1] = head.inverse().then(&a).then(&tb).then(&a.inverse()).then(&head);
            }
        }
        out
    }
}

/// The four handle moves applied to `t`.
pub fn handle_moves(t: &HurwitzTuple) -> Vec<(HandleMove, HurwitzTuple)> {
    HandleMove::ALL.iter().map(|&m| (m, m.apply(t))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Move {
    Braid(usize),
    Handle(HandleMove),
    Conjugate(Permutation),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Braid(i) => write!(f, "s{i}"),
            Move::Handle(h) => write!(f, "{h:?}"),
            Move::Conjugate(g) => write!(f, "conj{g}"),
        }
    }
}

impl Move {
    pub fn apply(&self, t: &HurwitzTuple) -> HurwitzTuple {
        match self {
            Move::Braid(i) => braid_move(t, *i).expect("index checked by the move set"),
            Move::Handle(h) => h.apply(t),
            Move::Conjugate(g) => t.conjugate_by(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSet {
    pub braids: bool,
    pub handles: Vec<HandleMove>,
    pub conjugators: Vec<Permutation>,
}

impl MoveSet {
    /// Braid moves, all four handle moves, and conjugation by `(1 2)` and
    /// `(1 2 … d)`.
    pub fn standard(d: usize) -> MoveSet {
        let conjugators = if d >= 2 {
            vec![Permutation::transposition(d, 0, 1), Permutation::cycle(d, &(0..d).collect::<Vec<_>>())]
        } else {
            Vec::new()
        };
        MoveSet { braids: true, handles: HandleMove::ALL.to_vec(), conjugators }
    }

    pub fn moves(&self, b: usize) -> Vec<Move> {
        let mut out = Vec::new();
        if self.braids {
            out.extend((1..b).map(Move::Braid));
        }
        if b > 0 {
            out.extend(self.handles.iter().map(|&h| Move::Handle(h)));
        }
        out.extend(self.conjugators.iter().map(|&g| Move::Conjugate(g)));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: usize,
    pub lattice: Lattice2,
    pub representative: HurwitzTuple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub tuples: usize,
    pub orbit_count: usize,
    pub orbits: Vec<Orbit>,
    /// Move applications whose output was invalid, outside the input set,
    /// changed the branch cycle types, or changed the invariant lattice.
    pub contract_violations: Vec<String>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of `tuples` under `moves`. Every move application is checked
/// against the move contract.
pub fn orbits(tuples: &[HurwitzTuple], moves: &MoveSet) -> Result<OrbitReport, HurwitzError> {
    let index: HashMap<&HurwitzTuple, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let lattices: Vec<Lattice2> = tuples.iter().map(invariant_lattice).collect::<Result<_, _>>()?;
    let mut uf = UnionFind((0..tuples.len()).collect());
    let mut violations = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        for mv in moves.moves(t.t.len()) {
            let image = mv.apply(t);
            let Some(&j) = index.get(&image) else {
                violations.push(format!("{mv} maps {t} outside the tuple set"));
                continue;
            };
            if lattices[j] != lattices[i] {
                violations.push(format!("{mv} changes the invariant lattice of {t}"));
            }
            if !t.t.iter().zip(&image.t).all(|(x, y)| x.cycle_type() == y.cycle_type()) {
                violations.push(format!("{mv} changes branch cycle types of {t}"));
            }
            uf.union(i, j);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..tuples.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let orbits: Vec<Orbit> = groups
        .values()
        .map(|members| Orbit { size: members.len(), lattice: lattices[members[0]], representative: tuples[members[0]].clone() })
        .collect();
    Ok(OrbitReport { tuples: tuples.len(), orbit_count: orbits.len(), orbits, contract_violations: violations })
}

/// Number of tuples per invariant lattice.
pub fn invariant_census(tuples: &[HurwitzTuple]) -> Result<BTreeMap<Lattice2, u64>, HurwitzError> {
    let mut out = BTreeMap::new();
    for t in tuples {
        *out.entry(invariant_lattice(t)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// DOT digraph of the move graph, without self-loops.
pub fn move_graph_dot(tuples: &[HurwitzTuple], moves: &MoveSet) -> String {
    let index: HashMap<&HurwitzTuple, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut out = String::from("digraph moves {\n");
    for (i, t) in tuples.iter().enumerate() {
        let _ = writeln!(out, "  t{i} [label=\"{t}\"];");
    }
    let mut edges = BTreeSet::new();
    for (i, t) in tuples.iter().enumerate() {
        for mv in moves.moves(t.t.len()) {
            if let Some(&j) = index.get(&mv.apply(t)) {
                if i != j {
                    edges.insert((i, j, mv.to_string()));
                }
            }
        }
    }
    for (i, j, label) in edges {
        let _ = writeln!(out, "  t{i} -> t{j} [label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{hurwitz_component_count, sublattices};
    use crate::monodromy::transpositions;

    fn naive_count(d: usize, b: usize) -> usize {
        let perms = crate::monodromy::all_permutations(d);
        let trans = transpositions(d);
        let mut count = 0;
        for a in &perms {
            for bb in &perms {
                let c = Permutation::commutator(a, bb);
                let mut idx = vec![0usize; b];
                loop {
                    let ts: Vec<Permutation> = idx.iter().map(|&k| trans[k]).collect();
                    let t = HurwitzTuple::new(*a, *bb, ts);
                    if t.branch_product() == c && t.is_transitive() {
                        count += 1;
                    }
                    let Some(pos) = (0..b).find(|&k| idx[k] + 1 < trans.len()) else { break };
                    for k in 0..pos {
                        idx[k] = 0;
                    }
                    idx[pos] += 1;
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tuples(2, 2).unwrap().len(), 4);
        assert_eq!(enumerate_tuples(2, 3).unwrap().len(), 4);
        assert_eq!(enumerate_tuples(3, 2).unwrap().len(), naive_count(3, 2));
        assert_eq!(enumerate_tuples(3, 3).unwrap().len(), naive_count(3, 4));
        assert!(enumerate_tuples(6, 2).is_err());
        assert!(enumerate_tuples(2, 5).is_err());
        assert!(enumerate_tuples(2, 1).is_err());
    }

    #[test]
    fn braid_examples() {
        let t = HurwitzTuple::parse(3, "()", "()", &["(1 2)", "(2 3)"]).unwrap();
        let moved = braid_move(&t, 1).unwrap();
        assert_eq!(moved.t[0].to_string(), "(1 3)");
        assert_eq!(moved.t[1].to_string(), "(1 2)");
        assert_eq!(braid_move_inverse(&moved, 1).unwrap(), t);
        let same = HurwitzTuple::parse(2, "()", "()", &["(1 2)", "(1 2)"]).unwrap();
        assert_eq!(braid_move(&same, 1).unwrap(), same);
        assert!(braid_move(&same, 2).is_err());
        assert!(braid_move(&same, 0).is_err());
    }

    #[test]
    fn handle_moves_keep_the_contract() {
        for (d, g) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            for t in enumerate_tuples(d, g).unwrap() {
                let l = invariant_lattice(&t).unwrap();
                for (_, image) in handle_moves(&t) {
                    assert!(image.is_valid(), "{image}");
                    assert_eq!(invariant_lattice(&image).unwrap(), l);
                }
            }
        }
        let id = HurwitzTuple::parse(2, "()", "()", &["(1 2)", "(1 2)"]).unwrap();
        assert!(handle_moves(&id).iter().any(|(_, x)| !x.a.is_identity() || !x.b.is_identity()));
    }

    #[test]
    fn handle_moves_commute_with_conjugation() {
        let g = Permutation::cycle(4, &[0, 1, 2, 3]);
        for t in enumerate_tuples(4, 2).unwrap().iter().step_by(11) {
            for h in HandleMove::ALL {
                assert_eq!(h.apply(&t.conjugate_by(&g)), h.apply(t).conjugate_by(&g));
            }
        }
    }

    #[test]
    fn calibration() {
        for (d, g, want) in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (4, 2, 4)] {
            let tuples = enumerate_tuples(d, g).unwrap();
            let report = orbits(&tuples, &MoveSet::standard(d)).unwrap();
            assert!(report.contract_violations.is_empty(), "{:?}", report.contract_violations);
            assert_eq!(report.orbit_count, want, "d={d} g={g}");
            assert_eq!(report.orbit_count as i64, hurwitz_component_count(d as i64).unwrap());

            let census = invariant_census(&tuples).unwrap();
            let expected: BTreeSet<Lattice2> = (1..d as i64)
                .filter(|e| d as i64 % e == 0)
                .flat_map(|e| sublattices(e).unwrap())
                .collect();
            assert_eq!(census.keys().copied().collect::<BTreeSet<_>>(), expected);
            let orbit_lattices: BTreeSet<Lattice2> = report.orbits.iter().map(|o| o.lattice).collect();
            assert_eq!(orbit_lattices.len(), report.orbit_count);
        }
    }

    #[test]
    fn move_graph_export() {
        let tuples = enumerate_tuples(2, 2).unwrap();
        let dot = move_graph_dot(&tuples, &MoveSet::standard(2));
        assert!(dot.starts_with("digraph moves {"));
        assert!(dot.contains("->"));
    }
}
