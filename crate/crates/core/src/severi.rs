//! Symbolic descriptors of generalized Severi varieties on `E × P¹`.
//!
//! A [`SeveriState`] names the variety of curves of class `df + Ne` and
//! geometric genus `g` meeting the fiber `E₀` in fixed points with
//! multiplicities `α` and in moving groups `β¹, …, β^ℓ`, where the points of
//! group `j` sum to a line bundle class `L_j`. Line bundles are formal sums of
//! named bundle symbols (with a degree) and point symbols (degree one); only
//! degrees and syntactic identity are tracked.
//!
//! The total class restricted to `E₀` is determined by the class equation
//! `Lc = Σ αᵢ pᵢ + Σ L_j`, so it is never stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::profiles::TangencyProfile;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Bundle { name: String, degree: i64 },
    Point(String),
}

impl Symbol {
    pub fn degree(&self) -> i64 {
        match self {
            Symbol::Bundle { degree, .. } => *degree,
            Symbol::Point(_) => 1,
        }
    }
}

/// A formal integer combination of symbols. Zero coefficients are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum(BTreeMap<Symbol, i64>);

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn bundle(name: impl Into<String>, degree: i64) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(Symbol::Bundle { name: name.into(), degree }, 1);
        s
    }

    pub fn point(label: impl Into<String>) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(Symbol::Point(label.into()), 1);
        s
    }

    pub fn add_term(&mut self, symbol: Symbol, coef: i64) {
        let entry = self.0.entry(symbol).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.0.retain(|_, c| *c != 0);
        }
    }

    pub fn plus(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (s, c) in &other.0 {
            out.add_term(s.clone(), *c);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> FormalSum {
        if k == 0 {
            return FormalSum::zero();
        }
        FormalSum(self.0.iter().map(|(s, c)| (s.clone(), c * k)).collect())
    }

    pub fn minus(&self, other: &FormalSum) -> FormalSum {
        self.plus(&other.scaled(-1))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(s, c)| s.degree() * c).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, i64)> {
        self.0.iter().map(|(s, c)| (s, *c))
    }

    pub fn points(&self) -> impl Iterator<Item = &str> {
        self.0.keys().filter_map(|s| match s {
            Symbol::Point(p) => Some(p.as_str()),
            Symbol::Bundle { .. } => None,
        })
    }

    fn relabel(&self, map: &BTreeMap<&str, String>) -> FormalSum {
        let mut out = FormalSum::zero();
        for (s, c) in &self.0 {
            let s = match s {
                Symbol::Point(p) => Symbol::Point(map.get(p.as_str()).cloned().unwrap_or_else(|| p.clone())),
                b => b.clone(),
            };
            out.add_term(s, *c);
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.0.iter().enumerate() {
            let name = match s {
                Symbol::Bundle { name, .. } => name,
                Symbol::Point(p) => p,
            };
            let sign = if *c < 0 { "-" } else { "+" };
            match (i, c.abs()) {
                (0, 1) if *c > 0 => write!(f, "{name}")?,
                (0, k) if *c > 0 => write!(f, "{k}{name}")?,
                (0, 1) => write!(f, "-{name}")?,
                (0, k) => write!(f, "-{k}{name}")?,
                (_, 1) => write!(f, " {sign} {name}")?,
                (_, k) => write!(f, " {sign} {k}{name}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    bundle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    point: Option<String>,
    coef: i64,
}

impl Serialize for FormalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .0
            .iter()
            .map(|(s, c)| match s {
                Symbol::Bundle { name, degree } => TermRepr {
                    bundle: Some(name.clone()),
                    degree: Some(*degree),
                    point: None,
                    coef: *c,
                },
                Symbol::Point(p) => TermRepr { bundle: None, degree: None, point: Some(p.clone()), coef: *c },
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = FormalSum::zero();
        for t in terms {
            let symbol = match (t.bundle, t.degree, t.point) {
                (Some(name), Some(degree), None) => Symbol::Bundle { name, degree },
                (None, None, Some(p)) => Symbol::Point(p),
                _ => {
                    return Err(D::Error::custom(
                        "each term needs either {bundle, degree} or {point}",
                    ))
                }
            };
            out.add_term(symbol, t.coef);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineBundle {
    pub degree: i64,
    pub expr: FormalSum,
}

impl LineBundle {
    pub fn from_expr(expr: FormalSum) -> Self {
        LineBundle { degree: expr.degree(), expr }
    }

    /// A fresh named bundle of the given degree.
    pub fn named(name: &str, degree: i64) -> Self {
        Self::from_expr(FormalSum::bundle(name, degree))
    }
}

impl fmt::Display for LineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedPoint {
    pub mult: u32,
    pub point: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MovingGroup {
    pub profile: TangencyProfile,
    #[serde(rename = "L")]
    pub bundle: LineBundle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeveriState {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: i64,
    pub g: i64,
    pub alpha: Vec<FixedPoint>,
    pub betas: Vec<MovingGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "invariant")]
pub enum Violation {
    #[error("class-equation: d = {d} but m(alpha) + sum m(beta) = {total}")]
    ClassEquation { d: u32, total: u64 },
    #[error("positive-degree: d must be at least 1")]
    NonPositiveDegree,
    #[error("bundle-degree: group {group} has deg L = {degree} but m(beta) = {multiplicity}")]
    BundleDegree { group: usize, degree: i64, multiplicity: u64 },
    #[error("expression-degree: group {group} declares degree {declared} but its expression has degree {computed}")]
    ExpressionDegree { group: usize, declared: i64, computed: i64 },
    #[error("nonempty-group: group {group} has an empty profile")]
    EmptyGroup { group: usize },
    #[error("positive-multiplicity: fixed point {point} has multiplicity 0")]
    ZeroMultiplicity { point: String },
    #[error("distinct-points: fixed point label {point} is used twice")]
    DuplicatePoint { point: String },
    #[error("symbol-degree: bundle symbol {name} is used with different degrees")]
    InconsistentSymbol { name: String },
}

impl Violation {
    /// Name of the violated invariant.
    pub fn name(&self) -> &'static str {
        match self {
            Violation::ClassEquation { .. } => "class-equation",
            Violation::NonPositiveDegree => "positive-degree",
            Violation::BundleDegree { .. } => "bundle-degree",
            Violation::ExpressionDegree { .. } => "expression-degree",
            Violation::EmptyGroup { .. } => "nonempty-group",
            Violation::ZeroMultiplicity { .. } => "positive-multiplicity",
            Violation::DuplicatePoint { .. } => "distinct-points",
            Violation::InconsistentSymbol { .. } => "symbol-degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("invalid state: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("state is not normalized: group {group} is a singleton")]
    NotNormalized { group: usize },
}

impl StateError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            StateError::Invalid(v) => v,
            StateError::NotNormalized { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyMode {
    /// Profiles and degrees only; bundle expressions are ignored.
    DegreeOnly,
    /// Also compares bundle expressions, up to renaming of points.
    #[default]
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conversion {
    pub group: usize,
    pub mult: u32,
    pub point: String,
    /// The point is a `mult`-th root of this class.
    pub root_of: LineBundle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub state: SeveriState,
    /// Number of varieties the input splits into: `Π b²` over converted
    /// singleton groups `(b)`.
    pub factor: u64,
    pub conversions: Vec<Conversion>,
}

const RELABEL_LIMIT: usize = 40_320;

impl SeveriState {
    /// The state `Ṽ(a, b)[p1..pa, L]`: `a` fixed simple points and one moving
    /// group `1^b` summing to a bundle `L` of degree `b`. Requires `a + b = d`
    /// for validity.
    pub fn simple(d: u32, n: i64, g: i64, a: usize, b: usize) -> SeveriState {
        let alpha = (1..=a).map(|i| FixedPoint { mult: 1, point: format!("p{i}") }).collect();
        let betas = if b == 0 {
            Vec::new()
        } else {
            vec![MovingGroup { profile: TangencyProfile::ones(b), bundle: LineBundle::named("L", b as i64) }]
        };
        SeveriState { d, n, g, alpha, betas }
    }

    pub fn alpha_profile(&self) -> TangencyProfile {
        TangencyProfile::new(self.alpha.iter().map(|p| p.mult).collect())
            .unwrap_or_else(|_| TangencyProfile::empty())
    }

    pub fn group_count(&self) -> usize {
        self.betas.len()
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.d == 0 {
            violations.push(Violation::NonPositiveDegree);
        }
        let mut seen = BTreeSet::new();
        for p in &self.alpha {
            if p.mult == 0 {
                violations.push(Violation::ZeroMultiplicity { point: p.point.clone() });
            }
            if !seen.insert(p.point.as_str()) {
                violations.push(Violation::DuplicatePoint { point: p.point.clone() });
            }
        }
        let alpha_mult: u64 = self.alpha.iter().map(|p| u64::from(p.mult)).sum();
        let beta_mult: u64 = self.betas.iter().map(|b| b.profile.multiplicity()).sum();
        if alpha_mult + beta_mult != u64::from(self.d) {
            violations.push(Violation::ClassEquation { d: self.d, total: alpha_mult + beta_mult });
        }
        let mut symbol_degrees: BTreeMap<&str, i64> = BTreeMap::new();
        let mut inconsistent = BTreeSet::new();
        for (j, group) in self.betas.iter().enumerate() {
            if group.profile.is_empty() {
                violations.push(Violation::EmptyGroup { group: j });
            }
            let m = group.profile.multiplicity();
            if group.bundle.degree != m as i64 {
                violations.push(Violation::BundleDegree { group: j, degree: group.bundle.degree, multiplicity: m });
            }
            let computed = group.bundle.expr.degree();
            if computed != group.bundle.degree {
                violations.push(Violation::ExpressionDegree { group: j, declared: group.bundle.degree, computed });
            }
            for (s, _) in group.bundle.expr.terms() {
                if let Symbol::Bundle { name, degree } = s {
                    match symbol_degrees.get(name.as_str()) {
                        Some(d) if d != degree => {
                            inconsistent.insert(name.clone());
                        }
                        _ => {
                            symbol_degrees.insert(name, *degree);
                        }
                    }
                }
            }
        }
        violations.extend(inconsistent.into_iter().map(|name| Violation::InconsistentSymbol { name }));
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn ensure_valid(&self) -> Result<(), StateError> {
        self.validate().map_err(StateError::Invalid)
    }

    /// `d + g + Σ|β^j| − 1 − ℓ`.
    pub fn dimension(&self) -> Result<i64, StateError> {
        self.ensure_valid()?;
        Ok(self.dimension_unchecked())
    }

    pub(crate) fn dimension_unchecked(&self) -> i64 {
        let sizes: i64 = self.betas.iter().map(|b| b.profile.size() as i64).sum();
        i64::from(self.d) + self.g + sizes - 1 - self.betas.len() as i64
    }

    pub fn is_normalized(&self) -> bool {
        self.betas.iter().all(|b| b.profile.size() >= 2)
    }

    pub fn point_labels(&self) -> BTreeSet<String> {
        let mut labels: BTreeSet<String> = self.alpha.iter().map(|p| p.point.clone()).collect();
        for b in &self.betas {
            labels.extend(b.bundle.expr.points().map(str::to_string));
        }
        labels
    }

    /// Smallest `p{k}` not yet used as a point label.
    pub fn fresh_point(&self) -> String {
        let used = self.point_labels();
        (1..)
            .map(|k| format!("p{k}"))
            .find(|l| !used.contains(l))
            .expect("unbounded label supply")
    }

    /// Replaces every singleton group `(b)` by a fixed point of multiplicity
    /// `b` (a `b`-th root of the group's bundle). Each replacement splits the
    /// variety into `b²` pieces, recorded in `factor`.
    pub fn normalize(&self) -> Result<Normalized, StateError> {
        self.ensure_valid()?;
        let mut state = SeveriState { betas: Vec::new(), ..self.clone() };
        let mut factor = 1u64;
        let mut conversions = Vec::new();
        for (j, group) in self.betas.iter().enumerate() {
            if group.profile.size() == 1 {
                let b = group.profile.entries()[0];
                let point = state.fresh_point_avoiding(self);
                state.alpha.push(FixedPoint { mult: b, point: point.clone() });
                factor *= u64::from(b) * u64::from(b);
                conversions.push(Conversion { group: j, mult: b, point, root_of: group.bundle.clone() });
            } else {
                state.betas.push(group.clone());
            }
        }
        Ok(Normalized { state, factor, conversions })
    }

    fn fresh_point_avoiding(&self, other: &SeveriState) -> String {
        let mut used = self.point_labels();
        used.extend(other.point_labels());
        (1..)
            .map(|k| format!("p{k}"))
            .find(|l| !used.contains(l))
            .expect("unbounded label supply")
    }

    /// Deterministic identifier, invariant under reordering of the moving
    /// groups and under renaming of point labels.
    pub fn canonical_key(&self, mode: KeyMode) -> String {
        let header = format!("d={};N={};g={}", self.d, self.n, self.g);
        match mode {
            KeyMode::DegreeOnly => {
                let mut groups: Vec<String> =
                    self.betas.iter().map(|b| format!("{}:{}", b.profile, b.bundle.degree)).collect();
                groups.sort();
                format!("{header};alpha={};betas=[{}]", self.alpha_profile(), groups.join("|"))
            }
            KeyMode::Symbolic => self.symbolic_key(&header),
        }
    }

    fn symbolic_key(&self, header: &str) -> String {
        // Points are renamed block by block: α points grouped by multiplicity,
        // then points that only occur inside bundle expressions.
        let mut blocks: Vec<Vec<&str>> = Vec::new();
        let mut by_mult: BTreeMap<std::cmp::Reverse<u32>, Vec<&str>> = BTreeMap::new();
        for p in &self.alpha {
            by_mult.entry(std::cmp::Reverse(p.mult)).or_default().push(&p.point);
        }
        blocks.extend(by_mult.into_values());
        let in_alpha: BTreeSet<&str> = self.alpha.iter().map(|p| p.point.as_str()).collect();
        let extra: BTreeSet<&str> = self
            .betas
            .iter()
            .flat_map(|b| b.bundle.expr.points())
            .filter(|p| !in_alpha.contains(p))
            .collect();
        if !extra.is_empty() {
            blocks.push(extra.into_iter().collect());
        }

        let count: usize = blocks.iter().map(|b| factorial_capped(b.len())).fold(1usize, |a, b| a.saturating_mul(b));
        let render = |order: &[Vec<&str>]| -> String {
            let mut map: BTreeMap<&str, String> = BTreeMap::new();
            for (i, p) in order.iter().flatten().enumerate() {
                map.insert(p, format!("x{i}"));
            }
            let mut alpha: Vec<(std::cmp::Reverse<u32>, String)> = self
                .alpha
                .iter()
                .map(|p| (std::cmp::Reverse(p.mult), map[p.point.as_str()].clone()))
                .collect();
            alpha.sort();
            let alpha: Vec<String> = alpha.into_iter().map(|(m, l)| format!("{}@{}", m.0, l)).collect();
            let mut groups: Vec<String> = self
                .betas
                .iter()
                .map(|b| format!("{}:{}:{}", b.profile, b.bundle.degree, b.bundle.expr.relabel(&map)))
                .collect();
            groups.sort();
            format!("{header};alpha=[{}];betas=[{}]", alpha.join(","), groups.join("|"))
        };

        if count > RELABEL_LIMIT {
            return render(&blocks);
        }
        let mut best: Option<String> = None;
        let mut order = blocks.clone();
        permute_blocks(&blocks, 0, &mut order, &mut |o| {
            let key = render(o);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_else(|| render(&blocks))
    }
}

fn factorial_capped(n: usize) -> usize {
    (1..=n).fold(1usize, |a, b| a.saturating_mul(b))
}

fn permute_blocks<'a>(
    blocks: &[Vec<&'a str>],
    index: usize,
    order: &mut Vec<Vec<&'a str>>,
    visit: &mut dyn FnMut(&[Vec<&'a str>]),
) {
    if index == blocks.len() {
        visit(order);
        return;
    }
    let mut items = blocks[index].clone();
    let k = items.len();
    heap_permutations(&mut items, k, &mut |perm| {
        order[index] = perm.to_vec();
        permute_blocks(blocks, index + 1, order, visit);
    });
}

fn heap_permutations<'a>(items: &mut Vec<&'a str>, k: usize, visit: &mut dyn FnMut(&[&'a str])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

impl fmt::Display for SeveriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V[{}f+{}e, g={}](", self.d, self.n, self.g)?;
        let alpha: Vec<String> = self.alpha.iter().map(|p| format!("{}{}", p.mult, p.point)).collect();
        write!(f, "alpha={{{}}}", alpha.join(","))?;
        for b in &self.betas {
            write!(f, "; {}[{}]", b.profile, b.bundle)?;
        }
        write!(f, ")")
    }
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

    #[test]
    fn validate_examples() {
        let ok = SeveriState {
            d: 3,
            n: 2,
            g: 1,
            alpha: vec![FixedPoint { mult: 1, point: "p1".into() }],
            betas: vec![group(&[1, 1], "L1")],
        };
        assert!(ok.validate().is_ok());

        let bad = SeveriState { betas: vec![group(&[1, 1, 1], "L1")], ..ok.clone() };
        let v = bad.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].name(), "class-equation");

        let mut wrong_degree = ok.clone();
        wrong_degree.betas[0].bundle = LineBundle::named("L1", 3);
        let v = wrong_degree.validate().unwrap_err();
        assert!(v.iter().any(|x| x.name() == "bundle-degree"));

        let mut mismatch = ok.clone();
        mismatch.betas[0].bundle.degree = 5;
        let names: Vec<_> = mismatch.validate().unwrap_err().iter().map(|v| v.name()).collect();
        assert!(names.contains(&"expression-degree"));

        let dup = SeveriState {
            d: 2,
            alpha: vec![FixedPoint { mult: 1, point: "p".into() }, FixedPoint { mult: 1, point: "p".into() }],
            betas: vec![],
            ..ok.clone()
        };
        assert_eq!(dup.validate().unwrap_err()[0].name(), "distinct-points");
    }

    #[test]
    fn negative_genus_is_valid() {
        let s = SeveriState::simple(2, 1, -3, 0, 2);
        assert!(s.validate().is_ok());
        assert_eq!(s.dimension().unwrap(), 2 - 3 + 2 - 1 - 1);
    }

    #[test]
    fn dimension_examples() {
        let s = SeveriState::simple(3, 2, 2, 0, 3);
        assert_eq!(s.dimension().unwrap(), 6);
        assert_eq!(s.dimension().unwrap(), crate::surfaces::dim_v_ab(3, 2, 3));
        let s = SeveriState::simple(2, 2, 2, 0, 2);
        assert_eq!(s.dimension().unwrap(), 4);

        let split = SeveriState { d: 4, n: 1, g: 0, alpha: vec![], betas: vec![group(&[1, 1], "L1"), group(&[1, 1], "L2")] };
        let merged = SeveriState { betas: vec![group(&[1, 1, 1, 1], "L")], ..split.clone() };
        assert_eq!(split.dimension().unwrap(), merged.dimension().unwrap() - 1);
        assert!(SeveriState::simple(3, 1, 0, 0, 2).dimension().is_err());
    }

    #[test]
    fn simple_states_match_moving_point_formula() {
        for d in 1..7u32 {
            for b in 1..=d as usize {
                for g in -3..7 {
                    let s = SeveriState::simple(d, 3, g, d as usize - b, b);
                    assert_eq!(s.dimension().unwrap(), crate::surfaces::dim_v_ab(d as i64, g, b as i64));
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let s = SeveriState { d: 4, n: 2, g: 1, alpha: vec![FixedPoint { mult: 1, point: "p1".into() }], betas: vec![group(&[3], "L1")] };
        let n = s.normalize().unwrap();
        assert_eq!(n.factor, 9);
        assert!(n.state.betas.is_empty());
        assert_eq!(n.state.alpha_profile(), prof(&[3, 1]));
        assert_eq!(n.state.dimension().unwrap(), s.dimension().unwrap());

        let plain = SeveriState::simple(3, 2, 2, 0, 3);
        let n = plain.normalize().unwrap();
        assert_eq!(n.factor, 1);
        assert_eq!(n.state, plain);

        let two = SeveriState { d: 5, n: 2, g: 0, alpha: vec![], betas: vec![group(&[2], "L1"), group(&[3], "L2")] };
        let n = two.normalize().unwrap();
        assert_eq!(n.factor, 36);
        assert_eq!(n.state.alpha.len(), 2);
        assert_ne!(n.state.alpha[0].point, n.state.alpha[1].point);
        assert_eq!(n.state.dimension().unwrap(), two.dimension().unwrap());
    }

    #[test]
    fn key_invariances() {
        let a = SeveriState { d: 5, n: 2, g: 1, alpha: vec![FixedPoint { mult: 1, point: "p1".into() }], betas: vec![group(&[2], "L1"), group(&[1, 1], "L2")] };
        let swapped = SeveriState { betas: vec![a.betas[1].clone(), a.betas[0].clone()], ..a.clone() };
        for mode in [KeyMode::DegreeOnly, KeyMode::Symbolic] {
            assert_eq!(a.canonical_key(mode), swapped.canonical_key(mode));
            let other_g = SeveriState { g: 2, ..a.clone() };
            assert_ne!(a.canonical_key(mode), other_g.canonical_key(mode));
        }

        let renamed = SeveriState { alpha: vec![FixedPoint { mult: 1, point: "q7".into() }], ..a.clone() };
        assert_eq!(a.canonical_key(KeyMode::Symbolic), renamed.canonical_key(KeyMode::Symbolic));

        let mut other_bundle = a.clone();
        other_bundle.betas[1].bundle = LineBundle::from_expr(FormalSum::bundle("M", 1).plus(&FormalSum::point("p1")));
        assert_eq!(a.canonical_key(KeyMode::DegreeOnly), other_bundle.canonical_key(KeyMode::DegreeOnly));
        assert_ne!(a.canonical_key(KeyMode::Symbolic), other_bundle.canonical_key(KeyMode::Symbolic));
    }

    #[test]
    fn symbolic_key_sees_through_point_renaming_inside_bundles() {
        // Two fixed points, one of which also appears in the bundle of a group.
        let mk = |x: &str, y: &str| SeveriState {
            d: 4,
            n: 1,
            g: 0,
            alpha: vec![FixedPoint { mult: 1, point: x.into() }, FixedPoint { mult: 1, point: y.into() }],
            betas: vec![MovingGroup {
                profile: prof(&[1, 1]),
                bundle: LineBundle::from_expr(FormalSum::bundle("L", 1).plus(&FormalSum::point(x))),
            }],
        };
        assert_eq!(mk("a", "b").canonical_key(KeyMode::Symbolic), mk("b", "a").canonical_key(KeyMode::Symbolic));
    }

    #[test]
    fn json_schema_round_trip() {
        let json = r#"{"d":3,"N":2,"g":2,"alpha":[{"mult":1,"point":"p1"}],
            "betas":[{"profile":[1,1],"L":{"degree":2,"expr":[{"bundle":"L","degree":3,"coef":1},{"point":"p1","coef":-1}]}}]}"#;
        let s: SeveriState = serde_json::from_str(json).unwrap();
        assert!(s.validate().is_ok());
        assert_eq!(s.betas[0].bundle.to_string(), "L - p1");
        let back: SeveriState = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SeveriState>(r#"{"d":1,"N":0,"g":0,"alpha":[],"betas":[{"profile":[1],"L":{"degree":1,"expr":[{"coef":1}]}}]}"#).is_err());
    }
}
