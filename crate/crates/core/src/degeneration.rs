//! Components of a hyperplane section `H_p ∩ Ṽ°` and their iterated closure.
//!
//! Two enumerators are provided: one for the simple states `Ṽ°(a, b)` with
//! `α = 1^a` and a single group `1^b`, and one for arbitrary normalized
//! states. Both only list candidate components; multiplicities are not
//! computed and every term carries an opaque coefficient symbol.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profiles::{enumerate_profiles, partitions_with_at_most, TangencyProfile};
use crate::severi::{FixedPoint, FormalSum, KeyMode, LineBundle, MovingGroup, SeveriState, StateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TermKind {
    TypeI,
    TypeIIa,
    TypeIIb,
    #[serde(rename = "TypeII-general")]
    TypeIIGeneral,
}

impl TermKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TermKind::TypeI => "TypeI",
            TermKind::TypeIIa => "TypeIIa",
            TermKind::TypeIIb => "TypeIIb",
            TermKind::TypeIIGeneral => "TypeII-general",
        }
    }

    pub fn splits_fiber(self) -> bool {
        self != TermKind::TypeI
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DroppedEntry {
    pub group: usize,
    pub entry: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationTerm {
    pub kind: TermKind,
    pub child: SeveriState,
    /// Multiplicity with which `E₀` splits off; 0 for Type I.
    pub m: i64,
    pub tau: TangencyProfile,
    /// Groups of the parent kept intact (general theorem only).
    #[serde(rename = "J")]
    pub kept_groups: Vec<usize>,
    pub dropped_entries: Vec<DroppedEntry>,
    /// Label of the new fixed point (Type I only).
    pub new_point: Option<String>,
    /// Unknown multiplicity of the component, as a symbol.
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("out-of-theorem-range: the simple enumerator needs g >= 2, got g = {0}")]
    GenusOutOfRange(i64),
    #[error("simple-shape: expected alpha = 1^a and a single moving group 1^b")]
    NotSimple,
    #[error("normalized: group {0} is a singleton; normalize the state first")]
    NotNormalized(usize),
    #[error("type-ii-required: limit stable maps are only described for Type II terms")]
    NotTypeII,
}

fn coefficient_symbol(kind: TermKind, m: i64, tau: &TangencyProfile, key: &str) -> String {
    // Short stable digest so the symbol stays readable in DOT labels.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in key.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("c[{};m={};tau={};{:08x}]", kind.as_str(), m, tau, h & 0xffff_ffff)
}

fn make_term(
    kind: TermKind,
    child: SeveriState,
    m: i64,
    tau: TangencyProfile,
    kept_groups: Vec<usize>,
    dropped_entries: Vec<DroppedEntry>,
    new_point: Option<String>,
) -> DegenerationTerm {
    let coefficient = coefficient_symbol(kind, m, &tau, &child.canonical_key(KeyMode::Symbolic));
    DegenerationTerm { kind, child, m, tau, kept_groups, dropped_entries, new_point, coefficient }
}

fn dedup_terms(terms: Vec<DegenerationTerm>, mode: KeyMode) -> Vec<DegenerationTerm> {
    let mut seen = BTreeSet::new();
    terms
        .into_iter()
        .filter(|t| seen.insert((t.kind, t.m, t.tau.clone(), t.child.canonical_key(mode))))
        .collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 24, "too many fixed points to enumerate subsets");
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

/// Fixed points not in `kept`, as a formal sum `Σ αᵢ pᵢ`.
fn dropped_points(alpha: &[FixedPoint], kept: &[usize]) -> FormalSum {
    alpha
        .iter()
        .enumerate()
        .filter(|(i, _)| !kept.contains(i))
        .fold(FormalSum::zero(), |acc, (_, p)| acc.plus(&FormalSum::point(&p.point).scaled(i64::from(p.mult))))
}

/// Terms of the simple theorem for `Ṽ°(a, b)[p₁..p_a, L]`.
pub fn successors_simple(s: &SeveriState) -> Result<Vec<DegenerationTerm>, DegenerationError> {
    s.ensure_valid()?;
    if s.g < 2 {
        return Err(DegenerationError::GenusOutOfRange(s.g));
    }
    if s.betas.len() != 1 || !s.betas[0].profile.is_all_ones() || s.alpha.iter().any(|p| p.mult != 1) {
        return Err(DegenerationError::NotSimple);
    }
    let group = &s.betas[0];
    let b = group.profile.size();
    let d = i64::from(s.d);
    let mut terms = Vec::new();

    if b >= 2 {
        let p = s.fresh_point();
        let mut alpha = s.alpha.clone();
        alpha.push(FixedPoint { mult: 1, point: p.clone() });
        let bundle = LineBundle::from_expr(group.bundle.expr.minus(&FormalSum::point(&p)));
        let child = SeveriState {
            alpha,
            betas: vec![MovingGroup { profile: TangencyProfile::ones(b - 1), bundle }],
            ..s.clone()
        };
        terms.push(make_term(TermKind::TypeI, child, 0, TangencyProfile::empty(), vec![], vec![], Some(p)));
    }

    let max_tau = (d - (b as i64 - 1)).max(0) as u32;
    for m in 1..=s.n {
        for weight in 1..=max_tau {
            for tau in enumerate_profiles(weight) {
                if tau.entries() == [1] {
                    continue;
                }
                let g_bar = s.g - tau.size() as i64;
                // Type II-a: one group 1^(b-1) + τ.
                let a_bar = d - (b as i64 - 1 + i64::from(weight));
                if a_bar >= 0 {
                    for kept in subsets(s.alpha.len()).filter(|k| k.len() as i64 == a_bar) {
                        let bundle = LineBundle::from_expr(group.bundle.expr.plus(&dropped_points(&s.alpha, &kept)));
                        let child = SeveriState {
                            d: s.d,
                            n: s.n - m,
                            g: g_bar,
                            alpha: kept.iter().map(|&i| s.alpha[i].clone()).collect(),
                            betas: vec![MovingGroup { profile: TangencyProfile::ones(b - 1).sum(&tau), bundle }],
                        };
                        terms.push(make_term(TermKind::TypeIIa, child, m, tau.clone(), vec![], vec![], None));
                    }
                }
                // Type II-b: groups 1^b (with L) and τ (with L̄).
                let a_bar = d - (b as i64 + i64::from(weight));
                if a_bar >= 0 {
                    for kept in subsets(s.alpha.len()).filter(|k| k.len() as i64 == a_bar) {
                        let l_bar = LineBundle::from_expr(dropped_points(&s.alpha, &kept));
                        let child = SeveriState {
                            d: s.d,
                            n: s.n - m,
                            g: g_bar,
                            alpha: kept.iter().map(|&i| s.alpha[i].clone()).collect(),
                            betas: vec![group.clone(), MovingGroup { profile: tau.clone(), bundle: l_bar }],
                        };
                        terms.push(make_term(TermKind::TypeIIb, child, m, tau.clone(), vec![0], vec![], None));
                    }
                }
            }
        }
    }
    Ok(dedup_terms(terms, KeyMode::Symbolic))
}

/// Terms of the general theorem. The state must be normalized.
pub fn successors_general(s: &SeveriState) -> Result<Vec<DegenerationTerm>, DegenerationError> {
    s.ensure_valid()?;
    if let Some(j) = s.betas.iter().position(|b| b.profile.size() < 2) {
        return Err(DegenerationError::NotNormalized(j));
    }
    let d = i64::from(s.d);
    let ell = s.betas.len();
    let mut terms = Vec::new();

    for (j, group) in s.betas.iter().enumerate() {
        for n in group.profile.distinct_entries() {
            let p = s.fresh_point();
            let mut alpha = s.alpha.clone();
            alpha.push(FixedPoint { mult: n, point: p.clone() });
            let mut betas = s.betas.clone();
            betas[j] = MovingGroup {
                profile: group.profile.without_entry(n).expect("entry present"),
                bundle: LineBundle::from_expr(group.bundle.expr.minus(&FormalSum::point(&p).scaled(i64::from(n)))),
            };
            let child = SeveriState { alpha, betas, ..s.clone() };
            let dropped = vec![DroppedEntry { group: j, entry: n }];
            terms.push(make_term(TermKind::TypeI, child, 0, TangencyProfile::empty(), vec![], dropped, Some(p)));
        }
    }

    for m in 1..=s.n {
        for kept_groups in subsets(ell) {
            let others: Vec<usize> = (0..ell).filter(|j| !kept_groups.contains(j)).collect();
            for drops in dropped_choices(s, &others) {
                for kept_alpha in subsets(s.alpha.len()) {
                    let alpha_mult: i64 = kept_alpha.iter().map(|&i| i64::from(s.alpha[i].mult)).sum();
                    let kept_mult: i64 = kept_groups.iter().map(|&j| s.betas[j].profile.multiplicity() as i64).sum();
                    let hat_mult: i64 = drops
                        .iter()
                        .map(|e| s.betas[e.group].profile.multiplicity() as i64 - i64::from(e.entry))
                        .sum();
                    let weight = d - alpha_mult - kept_mult - hat_mult;
                    if weight < 2 {
                        continue;
                    }
                    let hats = drops.iter().fold(TangencyProfile::empty(), |acc, e| {
                        acc.sum(&s.betas[e.group].profile.without_entry(e.entry).expect("entry present"))
                    });
                    let bundle = others
                        .iter()
                        .fold(dropped_points(&s.alpha, &kept_alpha), |acc, &j| acc.plus(&s.betas[j].bundle.expr));
                    for tau in enumerate_profiles(weight as u32).into_iter().filter(|t| t.size() >= 2) {
                        let mut betas: Vec<MovingGroup> = kept_groups.iter().map(|&j| s.betas[j].clone()).collect();
                        betas.push(MovingGroup {
                            profile: tau.sum(&hats),
                            bundle: LineBundle::from_expr(bundle.clone()),
                        });
                        let child = SeveriState {
                            d: s.d,
                            n: s.n - m,
                            g: s.g - tau.size() as i64,
                            alpha: kept_alpha.iter().map(|&i| s.alpha[i].clone()).collect(),
                            betas,
                        };
                        terms.push(make_term(
                            TermKind::TypeIIGeneral,
                            child,
                            m,
                            tau,
                            kept_groups.clone(),
                            drops.clone(),
                            None,
                        ));
                    }
                }
            }
        }
    }
    Ok(dedup_terms(terms, KeyMode::Symbolic))
}

fn dropped_choices(s: &SeveriState, groups: &[usize]) -> Vec<Vec<DroppedEntry>> {
    let mut out = vec![Vec::new()];
    for &j in groups {
        let mut next = Vec::new();
        for prefix in &out {
            for n in s.betas[j].profile.distinct_entries() {
                let mut v = prefix.clone();
                v.push(DroppedEntry { group: j, entry: n });
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// How the two theorems differ on a simple state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremComparison {
    pub common: usize,
    pub only_simple: Vec<String>,
    pub only_general: Vec<String>,
}

/// Compares [`successors_simple`] with [`successors_general`] on a simple,
/// normalized state. Terms are matched by splitting type, `m`, `τ` and the
/// symbolic key of the child.
pub fn compare_theorems(s: &SeveriState) -> Result<TheoremComparison, DegenerationError> {
    let signature = |t: &DegenerationTerm| {
        format!(
            "{}|m={}|tau={}|{}",
            if t.kind.splits_fiber() { "II" } else { "I" },
            t.m,
            t.tau,
            t.child.canonical_key(KeyMode::Symbolic)
        )
    };
    let simple: BTreeSet<String> = successors_simple(s)?.iter().map(signature).collect();
    let general: BTreeSet<String> = successors_general(s)?.iter().map(signature).collect();
    Ok(TheoremComparison {
        common: simple.intersection(&general).count(),
        only_simple: simple.difference(&general).cloned().collect(),
        only_general: general.difference(&simple).cloned().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StopRule {
    /// Nodes at or below this dimension are not expanded.
    pub floor: Option<i64>,
    /// Nodes at this depth are not expanded.
    pub max_depth: Option<usize>,
    /// Maximum number of nodes; exceeding it truncates the forest.
    pub node_budget: usize,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { floor: Some(0), max_depth: None, node_budget: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestNode {
    pub key: String,
    pub state: SeveriState,
    pub dimension: i64,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestEdge {
    pub from: usize,
    pub to: usize,
    pub term: DegenerationTerm,
    /// Splitting factor from normalizing the child.
    pub factor: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationForest {
    pub nodes: Vec<ForestNode>,
    pub edges: Vec<ForestEdge>,
    pub roots: Vec<usize>,
    pub truncated: bool,
}

/// Breadth-first closure of `roots` under [`successors_general`], with nodes
/// identified by their symbolic key. Every state is normalized before use.
pub fn build_forest(roots: &[SeveriState], stop: StopRule) -> Result<DegenerationForest, DegenerationError> {
    let mut forest = DegenerationForest { nodes: Vec::new(), edges: Vec::new(), roots: Vec::new(), truncated: false };
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();

    for root in roots {
        let state = root.normalize()?.state;
        let key = state.canonical_key(KeyMode::Symbolic);
        let id = match index.get(&key) {
            Some(&id) => id,
            None => {
                if forest.nodes.len() >= stop.node_budget {
                    forest.truncated = true;
                    break;
                }
                let id = forest.nodes.len();
                let dimension = state.dimension_unchecked();
                forest.nodes.push(ForestNode { key: key.clone(), state, dimension, depth: 0 });
                index.insert(key, id);
                queue.push_back(id);
                id
            }
        };
        if !forest.roots.contains(&id) {
            forest.roots.push(id);
        }
    }

    while !queue.is_empty() && !forest.truncated {
        let frontier: Vec<usize> = queue.drain(..).collect();
        let expanded: Vec<(usize, Vec<DegenerationTerm>)> = frontier
            .par_iter()
            .map(|&id| {
                let node = &forest.nodes[id];
                let stop_here = stop.floor.is_some_and(|f| node.dimension <= f)
                    || stop.max_depth.is_some_and(|m| node.depth >= m);
                let terms = if stop_here { Ok(Vec::new()) } else { successors_general(&node.state) };
                terms.map(|t| (id, t))
            })
            .collect::<Result<_, _>>()?;

        'outer: for (from, terms) in expanded {
            let depth = forest.nodes[from].depth + 1;
            for term in terms {
                let normalized = term.child.normalize()?;
                let key = normalized.state.canonical_key(KeyMode::Symbolic);
                let to = match index.get(&key) {
                    Some(&to) => to,
                    None => {
                        if forest.nodes.len() >= stop.node_budget {
                            forest.truncated = true;
                            break 'outer;
                        }
                        let to = forest.nodes.len();
                        let dimension = normalized.state.dimension_unchecked();
                        forest.nodes.push(ForestNode { key: key.clone(), state: normalized.state, dimension, depth });
                        index.insert(key, to);
                        queue.push_back(to);
                        to
                    }
                };
                forest.edges.push(ForestEdge { from, to, term, factor: normalized.factor });
            }
        }
    }
    Ok(forest)
}

impl DegenerationForest {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &ForestEdge> {
        self.edges.iter().filter(move |e| e.from == id)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph forest {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\\ndim {}\"];", escape(&n.state.to_string()), n.dimension);
        }
        for e in &self.edges {
            let mut label = e.term.kind.as_str().to_string();
            if e.term.kind.splits_fiber() {
                let _ = write!(label, " m={} tau={}", e.term.m, e.term.tau);
            }
            if e.factor != 1 {
                let _ = write!(label, " x{}", e.factor);
            }
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, escape(&label));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Shape of the limiting stable map attached to a Type II term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableMapShape {
    pub residual: SeveriState,
    /// Degree of the cover `Ẽ → E₀`.
    pub e_degree: i64,
    /// Possible component degrees of `Ẽ`: partitions of `m` into at most
    /// `|τ|` parts, since each component needs a node.
    pub e_component_degrees: Vec<TangencyProfile>,
    /// Contact orders at the nodes joining `Ẽ` to the residual curve.
    pub node_contacts: TangencyProfile,
    pub node_count: usize,
    pub feasible: bool,
}

pub fn limit_stable_map(t: &DegenerationTerm) -> Result<StableMapShape, DegenerationError> {
    if !t.kind.splits_fiber() {
        return Err(DegenerationError::NotTypeII);
    }
    let parts = partitions_with_at_most(t.m.max(0) as u32, t.tau.size());
    Ok(StableMapShape {
        residual: t.child.clone(),
        e_degree: t.m,
        feasible: !parts.is_empty(),
        e_component_degrees: parts,
        node_contacts: t.tau.clone(),
        node_count: t.tau.size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(v: &[u32]) -> TangencyProfile {
        TangencyProfile::new(v.to_vec()).unwrap()
    }

    fn group(v: &[u32], name: &str) -> MovingGroup {
        let p = prof(v);
        let m = p.multiplicity() as i64;
        MovingGroup { profile: p, bundle: LineBundle::named(name, m) }
    }

    fn check_drop(s: &SeveriState, terms: &[DegenerationTerm]) {
        let dim = s.dimension().unwrap();
        for t in terms {
            assert!(t.child.validate().is_ok(), "{t:?}");
            assert_eq!(t.child.dimension().unwrap(), dim - 1, "{}", t.child);
            assert_eq!(t.child.d, s.d);
            assert_eq!(t.child.n, s.n - t.m);
            assert_ne!(t.tau.entries(), [1]);
            if t.kind == TermKind::TypeI {
                assert_eq!(t.m, 0);
                assert!(t.tau.is_empty());
            }
        }
    }

    #[test]
    fn simple_d2_b2() {
        let s = SeveriState::simple(2, 2, 2, 0, 2);
        let terms = successors_simple(&s).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].kind, TermKind::TypeI);
        assert_eq!(terms[0].child.alpha.len(), 1);
        assert_eq!(terms[0].child.betas[0].profile, TangencyProfile::ones(1));
        assert_eq!(terms[0].child.betas[0].bundle.to_string(), "L - p1");
        check_drop(&s, &terms);
    }

    #[test]
    fn simple_d3_b3() {
        let s = SeveriState::simple(3, 2, 2, 0, 3);
        let terms = successors_simple(&s).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].kind, TermKind::TypeI);
        check_drop(&s, &terms);
    }

    #[test]
    fn simple_d4_a2_b2() {
        let s = SeveriState::simple(4, 2, 3, 2, 2);
        let terms = successors_simple(&s).unwrap();
        check_drop(&s, &terms);
        let two: Vec<_> = terms
            .iter()
            .filter(|t| t.kind == TermKind::TypeIIa && t.tau == prof(&[2]))
            .collect();
        assert_eq!(two.iter().map(|t| t.m).collect::<Vec<_>>(), vec![1, 2]);
        for t in two {
            assert_eq!(t.child.alpha.len(), 1);
            assert_eq!(t.child.g, 2);
            assert_eq!(t.child.betas[0].profile, prof(&[2, 1]));
        }
    }

    #[test]
    fn simple_rejects() {
        assert_eq!(
            successors_simple(&SeveriState::simple(2, 2, 1, 0, 2)).unwrap_err(),
            DegenerationError::GenusOutOfRange(1)
        );
        let s = SeveriState { betas: vec![group(&[2], "L")], ..SeveriState::simple(2, 2, 2, 0, 0) };
        assert_eq!(successors_simple(&s).unwrap_err(), DegenerationError::NotSimple);
        let bad = SeveriState::simple(3, 2, 2, 0, 2);
        assert!(matches!(successors_simple(&bad), Err(DegenerationError::State(_))));
    }

    #[test]
    fn general_type_one_counts() {
        let s = SeveriState { d: 5, n: 0, g: 1, alpha: vec![], betas: vec![group(&[2, 1], "L1"), group(&[1, 1], "L2")] };
        let terms = successors_general(&s).unwrap();
        assert_eq!(terms.iter().filter(|t| t.kind == TermKind::TypeI).count(), 3);
        check_drop(&s, &terms);
        let unnormalized = SeveriState { betas: vec![group(&[3], "L1")], d: 3, ..s };
        assert_eq!(successors_general(&unnormalized).unwrap_err(), DegenerationError::NotNormalized(0));
    }

    #[test]
    fn general_bundle_degrees() {
        let s = SeveriState {
            d: 6,
            n: 2,
            g: 3,
            alpha: vec![FixedPoint { mult: 2, point: "p1".into() }],
            betas: vec![group(&[1, 1], "L1"), group(&[1, 1], "L2")],
        };
        let terms = successors_general(&s).unwrap();
        assert!(terms.iter().any(|t| t.kind == TermKind::TypeIIGeneral));
        check_drop(&s, &terms);
        for t in terms.iter().filter(|t| t.kind == TermKind::TypeIIGeneral) {
            let last = t.child.betas.last().unwrap();
            let kept: i64 = t.kept_groups.iter().map(|&j| s.betas[j].bundle.degree).sum();
            let alpha: i64 = t.child.alpha.iter().map(|p| i64::from(p.mult)).sum();
            assert_eq!(last.bundle.degree, 6 - alpha - kept);
            assert!(t.tau.size() >= 2);
        }
    }

    #[test]
    fn theorems_differ_exactly_by_singleton_tau() {
        for (d, n, g, a, b) in [(4, 2, 3, 2, 2), (5, 3, 4, 2, 3), (3, 2, 2, 1, 2), (6, 1, 2, 3, 3)] {
            let s = SeveriState::simple(d, n, g, a, b);
            let cmp = compare_theorems(&s).unwrap();
            assert!(cmp.only_general.is_empty(), "{cmp:?}");
            let singles = successors_simple(&s).unwrap().iter().filter(|t| t.tau.size() == 1).count();
            assert_eq!(cmp.only_simple.len(), singles);
        }
    }

    #[test]
    fn forest_from_d2() {
        let s = SeveriState::simple(2, 2, 2, 0, 2);
        let forest = build_forest(&[s], StopRule::default()).unwrap();
        assert!(!forest.truncated);
        for e in &forest.edges {
            assert_eq!(forest.nodes[e.to].dimension, forest.nodes[e.from].dimension - 1);
        }
        // The root has a single Type I child, which is normalized into α.
        let first: Vec<_> = forest.children(0).collect();
        assert_eq!(first.len(), 1);
        assert_eq!(first[0].term.kind, TermKind::TypeI);
        assert_eq!(forest.nodes[first[0].to].state.betas.len(), 0);
        assert!(forest.nodes.iter().any(|n| n.dimension == 0));
        let again = build_forest(&[SeveriState::simple(2, 2, 2, 0, 2)], StopRule::default()).unwrap();
        assert_eq!(forest, again);
    }

    #[test]
    fn forest_keeps_negative_genus() {
        let s = SeveriState::simple(4, 2, 1, 0, 4);
        let forest = build_forest(&[s], StopRule { floor: None, ..StopRule::default() }).unwrap();
        assert!(forest.nodes.iter().any(|n| n.state.g < 0));
    }

    #[test]
    fn forest_empty_and_budget() {
        let f = build_forest(&[], StopRule::default()).unwrap();
        assert!(f.is_empty());
        let s = SeveriState::simple(5, 3, 3, 0, 5);
        let f = build_forest(&[s], StopRule { node_budget: 3, ..StopRule::default() }).unwrap();
        assert!(f.truncated);
        assert_eq!(f.nodes.len(), 3);
        assert!(f.to_dot().starts_with("digraph"));
    }

    #[test]
    fn stable_map_shapes() {
        let s = SeveriState::simple(4, 3, 3, 2, 2);
        let terms = successors_simple(&s).unwrap();
        let find = |m: i64, tau: &[u32]| {
            terms.iter().find(|t| t.m == m && t.tau == prof(tau) && t.kind.splits_fiber()).unwrap()
        };
        let shape = limit_stable_map(find(1, &[2])).unwrap();
        assert_eq!(shape.e_component_degrees, vec![prof(&[1])]);
        assert_eq!(shape.node_count, 1);
        let shape = limit_stable_map(find(2, &[1, 1])).unwrap();
        assert_eq!(shape.e_component_degrees, vec![prof(&[2]), prof(&[1, 1])]);
        assert_eq!(shape.node_count, 2);
        let shape = limit_stable_map(find(3, &[2])).unwrap();
        assert_eq!(shape.e_component_degrees, vec![prof(&[3])]);
        let type_one = terms.iter().find(|t| t.kind == TermKind::TypeI).unwrap();
        assert_eq!(limit_stable_map(type_one).unwrap_err(), DegenerationError::NotTypeII);
    }
}
