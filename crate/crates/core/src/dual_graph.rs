//! Dual graph of a central fiber after collapsing the residual part `X`.
//!
//! Vertices are `X` (one vertex, carrying the arithmetic genus of the whole
//! residual curve), the components `E1, E2, …` of the curve `Ẽ` dominating
//! `E₀`, and the contracted components `Z1, Z2, …`. Edges are the external
//! nodes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    X,
    E(usize),
    Z(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X => write!(f, "X"),
            Vertex::E(k) => write!(f, "E{}", k + 1),
            Vertex::Z(k) => write!(f, "Z{}", k + 1),
        }
    }
}

impl FromStr for Vertex {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::BadVertex(s.to_string());
        if s == "X" {
            return Ok(Vertex::X);
        }
        let (kind, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: usize = rest.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match kind {
            "E" => Ok(Vertex::E(k - 1)),
            "Z" => Ok(Vertex::Z(k - 1)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EComponent {
    pub genus: i64,
    /// Degree of the component over `E₀`.
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralFiberGraph {
    pub x_genus: i64,
    pub e_components: Vec<EComponent>,
    pub z_components: Vec<i64>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("bad vertex name {0:?}; expected X, E<k> or Z<k> with k >= 1")]
    BadVertex(String),
    #[error("vertex-exists: edge endpoint {0} does not exist")]
    MissingVertex(Vertex),
    #[error("collapsed-internal-nodes: edge {0}-{1} joins two components of X or two of E")]
    InternalEdge(Vertex, Vertex),
    #[error("e-genus: component {0} has genus {1}, but components over E0 have genus >= 1")]
    EGenus(Vertex, i64),
    #[error("e-degree: component {0} has degree {1} over E0")]
    EDegree(Vertex, i64),
    #[error("z-genus: component {0} has negative genus")]
    ZGenus(Vertex),
    #[error("z-degree: component {0} has degree {1}; contracted components need degree >= 1, and >= 2 when rational")]
    ZDegree(Vertex, usize),
    #[error("connected: vertex {0} is not connected to X")]
    Disconnected(Vertex),
    #[error("handshake: total degree {0} is odd")]
    Parity(usize),
    #[error("genus-mismatch: graph has genus {actual}, expected {expected}")]
    GenusMismatch { actual: i64, expected: i64 },
}

impl GraphError {
    pub fn name(&self) -> &'static str {
        match self {
            GraphError::BadVertex(_) => "vertex-name",
            GraphError::MissingVertex(_) => "vertex-exists",
            GraphError::InternalEdge(..) => "collapsed-internal-nodes",
            GraphError::EGenus(..) => "e-genus",
            GraphError::EDegree(..) => "e-degree",
            GraphError::ZGenus(_) => "z-genus",
            GraphError::ZDegree(..) => "z-degree",
            GraphError::Disconnected(_) => "connected",
            GraphError::Parity(_) => "handshake",
            GraphError::GenusMismatch { .. } => "genus-mismatch",
        }
    }
}

impl CentralFiberGraph {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = vec![Vertex::X];
        v.extend((0..self.e_components.len()).map(Vertex::E));
        v.extend((0..self.z_components.len()).map(Vertex::Z));
        v
    }

    fn exists(&self, v: Vertex) -> bool {
        match v {
            Vertex::X => true,
            Vertex::E(k) => k < self.e_components.len(),
            Vertex::Z(k) => k < self.z_components.len(),
        }
    }

    /// Number of edge ends at `v`; loops count twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    /// `d_X`.
    pub fn x_degree(&self) -> usize {
        self.degree(Vertex::X)
    }

    /// `d_Ẽ`: edge ends on any component of `Ẽ`.
    pub fn e_degree(&self) -> usize {
        (0..self.e_components.len()).map(|k| self.degree(Vertex::E(k))).sum()
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for &(a, b) in &self.edges {
            for v in [a, b] {
                if !self.exists(v) {
                    return Err(GraphError::MissingVertex(v));
                }
            }
            if matches!((a, b), (Vertex::X, Vertex::X) | (Vertex::E(_), Vertex::E(_))) {
                return Err(GraphError::InternalEdge(a, b));
            }
        }
        for (k, c) in self.e_components.iter().enumerate() {
            if c.genus < 1 {
                return Err(GraphError::EGenus(Vertex::E(k), c.genus));
            }
            if c.degree < 1 {
                return Err(GraphError::EDegree(Vertex::E(k), c.degree));
            }
        }
        for (k, &genus) in self.z_components.iter().enumerate() {
            let v = Vertex::Z(k);
            if genus < 0 {
                return Err(GraphError::ZGenus(v));
            }
            let deg = self.degree(v);
            if deg < 1 || (genus == 0 && deg < 2) {
                return Err(GraphError::ZDegree(v, deg));
            }
        }
        let reached = self.reachable_from(Vertex::X, |_| true);
        if let Some(v) = self.vertices().into_iter().find(|v| !reached.contains(v)) {
            return Err(GraphError::Disconnected(v));
        }
        Ok(())
    }

    fn reachable_from(&self, start: Vertex, allowed: impl Fn(Vertex) -> bool) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if allowed(next) && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen
    }

    /// Connected components of the subgraph spanned by the `Z` vertices.
    pub fn z_chains(&self) -> Vec<BTreeSet<Vertex>> {
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for k in 0..self.z_components.len() {
            let v = Vertex::Z(k);
            if done.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(v, |w| matches!(w, Vertex::Z(_)));
            done.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Edges from a set of `Z` vertices to `X` and to `Ẽ`.
    fn chain_contacts(&self, chain: &BTreeSet<Vertex>) -> (usize, usize) {
        let mut to_x = 0;
        let mut to_e = 0;
        for &(a, b) in &self.edges {
            for (inside, outside) in [(a, b), (b, a)] {
                if chain.contains(&inside) {
                    match outside {
                        Vertex::X => to_x += 1,
                        Vertex::E(_) => to_e += 1,
                        Vertex::Z(_) => {}
                    }
                }
            }
        }
        (to_x, to_e)
    }

    /// `p_a(Ẽ) = Σ genus − #components + 1`.
    pub fn e_arithmetic_genus(&self) -> i64 {
        self.e_components.iter().map(|c| c.genus).sum::<i64>() - self.e_components.len() as i64 + 1
    }
}

/// Number of connected components of `Z` meeting both `X` and `Ẽ`, plus the
/// number of nodes between `X` and `Ẽ`.
pub fn compute_t(gr: &CentralFiberGraph) -> Result<usize, GraphError> {
    gr.validate()?;
    Ok(t_unchecked(gr))
}

fn t_unchecked(gr: &CentralFiberGraph) -> usize {
    let bridges = gr
        .z_chains()
        .iter()
        .filter(|c| {
            let (x, e) = gr.chain_contacts(c);
            x > 0 && e > 0
        })
        .count();
    let direct = gr
        .edges
        .iter()
        .filter(|&&(a, b)| matches!((a, b), (Vertex::X, Vertex::E(_)) | (Vertex::E(_), Vertex::X)))
        .count();
    bridges + direct
}

/// Genus from `g − 1 = p_a(X) − 1 + p_a(Ẽ) − 1 + (d_Ẽ + d_X)/2 + Σ(g(Zᵢ) − 1 + d_{Zᵢ}/2)`.
pub fn arithmetic_genus(gr: &CentralFiberGraph) -> Result<i64, GraphError> {
    let total: usize = gr.vertices().into_iter().map(|v| gr.degree(v)).sum();
    if !total.is_multiple_of(2) {
        return Err(GraphError::Parity(total));
    }
    let half = |n: usize| Ratio::new(n as i64, 2);
    let mut g_minus_one = Ratio::from_integer(gr.x_genus - 1 + gr.e_arithmetic_genus() - 1)
        + half(gr.e_degree() + gr.x_degree());
    for (k, &genus) in gr.z_components.iter().enumerate() {
        g_minus_one += Ratio::from_integer(genus - 1) + half(gr.degree(Vertex::Z(k)));
    }
    assert!(g_minus_one.is_integer(), "handshake guarantees an integral genus");
    Ok(g_minus_one.to_integer() + 1)
}

/// The nonnegative terms whose sum is `g − p_a(X) − T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSlack {
    /// `p_a(Ẽ) − 1`.
    pub e_genus: i64,
    /// `(d_Ẽ − T)/2`.
    pub e_degree: Ratio<i64>,
    /// `(d_X − T)/2`.
    pub x_degree: Ratio<i64>,
    /// `Σ (g(Zᵢ) − 1 + d_{Zᵢ}/2)`.
    pub z: Ratio<i64>,
}

impl BoundSlack {
    pub fn total(&self) -> Ratio<i64> {
        Ratio::from_integer(self.e_genus) + self.e_degree + self.x_degree + self.z
    }
}

/// The three conditions characterizing equality in `p_a(X) + T ≤ g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityConditions {
    pub e_components_elliptic: bool,
    pub z_rational_with_two_nodes: bool,
    pub z_chains_meet_x_and_e_once: bool,
}

impl EqualityConditions {
    pub fn all(&self) -> bool {
        self.e_components_elliptic && self.z_rational_with_two_nodes && self.z_chains_meet_x_and_e_once
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusBoundReport {
    pub g: i64,
    pub x_genus: i64,
    #[serde(rename = "T")]
    pub t: usize,
    pub d_x: usize,
    pub d_e: usize,
    pub bound_holds: bool,
    pub equality: bool,
    pub slack: BoundSlack,
    pub conditions: EqualityConditions,
    /// Equality holds exactly when all conditions hold.
    pub characterization_matches: bool,
}

pub fn genus_bound_check(gr: &CentralFiberGraph, g: i64) -> Result<GenusBoundReport, GraphError> {
    gr.validate()?;
    let actual = arithmetic_genus(gr)?;
    if actual != g {
        return Err(GraphError::GenusMismatch { actual, expected: g });
    }
    let t = t_unchecked(gr);
    let (d_x, d_e) = (gr.x_degree(), gr.e_degree());
    let half_diff = |d: usize| Ratio::new(d as i64 - t as i64, 2);
    let z = gr
        .z_components
        .iter()
        .enumerate()
        .map(|(k, &genus)| Ratio::new(2 * genus - 2 + gr.degree(Vertex::Z(k)) as i64, 2))
        .sum();
    let slack = BoundSlack { e_genus: gr.e_arithmetic_genus() - 1, e_degree: half_diff(d_e), x_degree: half_diff(d_x), z };
    debug_assert_eq!(slack.total(), Ratio::from_integer(g - gr.x_genus - t as i64));

    let conditions = EqualityConditions {
        e_components_elliptic: gr.e_components.iter().all(|c| c.genus == 1),
        z_rational_with_two_nodes: gr
            .z_components
            .iter()
            .enumerate()
            .all(|(k, &genus)| genus == 0 && gr.degree(Vertex::Z(k)) == 2),
        z_chains_meet_x_and_e_once: gr.z_chains().iter().all(|c| gr.chain_contacts(c) == (1, 1)),
    };
    let equality = gr.x_genus + t as i64 == g;
    Ok(GenusBoundReport {
        g,
        x_genus: gr.x_genus,
        t,
        d_x,
        d_e,
        bound_holds: gr.x_genus + t as i64 <= g,
        equality,
        slack,
        conditions,
        characterization_matches: equality == conditions.all(),
    })
}
