//! Permutation monodromy of simply branched covers of a torus.
//!
//! Permutations compose left to right: `p.then(q)` applies `p` first. The
//! commutator is `[A, B] = A·B·A⁻¹·B⁻¹` and a Hurwitz tuple satisfies
//! `[A, B] = T₁·T₂⋯T_b`. Sheets are `0..d` internally and `1..=d` in cycle
//! notation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lattices::{hnf, Lattice2};

pub const MAX_DEGREE: usize = 16;
/// Largest degree with a precomputed multiplication table.
const TABLE_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("cycle-notation: cannot parse {0:?}")]
    BadCycle(String),
    #[error("degree-limit: degree {0} exceeds {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("degree: permutations of different degrees")]
    DegreeMismatch,
    #[error("budget: needs at least {needed} elements, budget is {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("invalid tuple: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTuple(Vec<TupleViolation>),
    #[error("inapplicable: {0}")]
    Inapplicable(&'static str),
}

impl MonodromyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, MonodromyError::Budget { .. })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    d: u8,
    img: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        assert!(d <= MAX_DEGREE);
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Permutation { d: d as u8, img }
    }

    /// From 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, MonodromyError> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(MonodromyError::DegreeTooLarge(d));
        }
        let mut p = Permutation::identity(d);
        let mut seen = [false; MAX_DEGREE];
        for (i, &x) in images.iter().enumerate() {
            if x >= d || seen[x] {
                return Err(MonodromyError::BadCycle(format!("{images:?}")));
            }
            seen[x] = true;
            p.img[i] = x as u8;
        }
        Ok(p)
    }

    /// The cycle through the given 0-based sheets.
    pub fn cycle(d: usize, sheets: &[usize]) -> Self {
        let mut p = Permutation::identity(d);
        for (k, &s) in sheets.iter().enumerate() {
            p.img[s] = sheets[(k + 1) % sheets.len()] as u8;
        }
        p
    }

    pub fn transposition(d: usize, i: usize, j: usize) -> Self {
        Self::cycle(d, &[i, j])
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse(s: &str, d: usize) -> Result<Self, MonodromyError> {
        if d > MAX_DEGREE {
            return Err(MonodromyError::DegreeTooLarge(d));
        }
        let bad = || MonodromyError::BadCycle(s.to_string());
        let mut p = Permutation::identity(d);
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = rest.find(')').ok_or_else(bad)?;
            let sheets: Vec<usize> = rest[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().ok().filter(|&k| k >= 1 && k <= d).map(|k| k - 1).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            let mut distinct = sheets.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != sheets.len() {
                return Err(bad());
            }
            if sheets.len() > 1 {
                p = p.then(&Permutation::cycle(d, &sheets));
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        usize::from(self.d)
    }

    pub fn apply(&self, i: usize) -> usize {
        usize::from(self.img[i])
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.degree()]
    }

    /// `self` first, then `q`.
    pub fn then(&self, q: &Permutation) -> Permutation {
        debug_assert_eq!(self.d, q.d);
        let mut out = *self;
        for i in 0..self.degree() {
            out.img[i] = q.img[usize::from(self.img[i])];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for i in 0..self.degree() {
            out.img[usize::from(self.img[i])] = i as u8;
        }
        out
    }

    /// `g⁻¹·self·g`: relabels sheet `i` as `g(i)`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b).then(&a.inverse()).then(&b.inverse())
    }

    pub fn product<'a>(d: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Permutation {
        perms.into_iter().fold(Permutation::identity(d), |acc, p| acc.then(p))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|i| self.apply(i) == i)
    }

    pub fn moved_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.apply(i) != i).count()
    }

    pub fn is_transposition(&self) -> bool {
        self.moved_points() == 2 && self.then(self).is_identity()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = [false; MAX_DEGREE];
        let mut count = 0;
        for i in 0..self.degree() {
            if !seen[i] {
                count += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.apply(j);
                }
            }
        }
        count
    }

    /// Nontrivial cycles, each starting at its smallest sheet.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for i in 0..self.degree() {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            let mut c = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    /// Cycle type as a sorted list of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.degree() - lens.iter().sum::<usize>()));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct SymTable {
    n: usize,
    perms: Vec<Permutation>,
    mul: Vec<u16>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn lehmer_rank(p: &Permutation) -> usize {
    let d = p.degree();
    let mut rank = 0;
    for i in 0..d {
        let smaller = (i + 1..d).filter(|&j| p.img[j] < p.img[i]).count();
        rank = rank * (d - i) + smaller;
    }
    rank
}

fn table(d: usize) -> &'static SymTable {
    static TABLES: [OnceLock<SymTable>; TABLE_DEGREE + 1] = [const { OnceLock::new() }; TABLE_DEGREE + 1];
    TABLES[d].get_or_init(|| {
        let mut perms = all_permutations(d);
        perms.sort_by_key(lehmer_rank);
        let n = perms.len();
        let mut mul = vec![0u16; n * n];
        for (r, p) in perms.iter().enumerate() {
            for (s, q) in perms.iter().enumerate() {
                mul[r * n + s] = lehmer_rank(&p.then(q)) as u16;
            }
        }
        SymTable { n, perms, mul }
    })
}

/// All permutations of degree `d` in lexicographic order of images.
pub fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..d).collect();
    loop {
        out.push(Permutation::from_images(&images).expect("valid images"));
        // Next lexicographic permutation.
        let Some(i) = (1..d).rev().find(|&i| images[i - 1] < images[i]) else { break };
        let j = (i..d).rev().find(|&j| images[j] > images[i - 1]).expect("exists");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
    out
}

/// All transpositions of degree `d`.
pub fn transpositions(d: usize) -> Vec<Permutation> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| Permutation::transposition(d, i, j))).collect()
}

fn common_degree(gens: &[Permutation]) -> Result<usize, MonodromyError> {
    let d = gens.first().map_or(0, Permutation::degree);
    if gens.iter().any(|g| g.degree() != d) {
        return Err(MonodromyError::DegreeMismatch);
    }
    Ok(d)
}

/// The subgroup generated by `gens`, sorted. Fails once more than `budget`
/// elements have been found.
pub fn group_closure(gens: &[Permutation], budget: u64) -> Result<Vec<Permutation>, MonodromyError> {
    let d = common_degree(gens)?;
    let mut seen = std::collections::HashSet::new();
    let id = Permutation::identity(d);
    seen.insert(id);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y) {
                if seen.len() as u64 > budget {
                    return Err(MonodromyError::Budget { needed: seen.len() as u64, budget });
                }
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Order of the generated subgroup. Uses a multiplication table for small
/// degrees.
pub fn group_order(gens: &[Permutation], budget: u64) -> Result<u64, MonodromyError> {
    let d = common_degree(gens)?;
    if d > TABLE_DEGREE {
        return group_closure(gens, budget).map(|g| g.len() as u64);
    }
    let t = table(d);
    let gen_ranks: Vec<usize> = gens.iter().map(lehmer_rank).collect();
    let mut seen = vec![false; t.n];
    seen[0] = true;
    let mut queue = vec![0usize];
    let mut count = 1u64;
    while let Some(x) = queue.pop() {
        for &g in &gen_ranks {
            let y = usize::from(t.mul[x * t.n + g]);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    if count > budget {
        return Err(MonodromyError::Budget { needed: count, budget });
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "invariant")]
pub enum TupleViolation {
    #[error("degree: every permutation must have degree {d}")]
    Degree { d: usize },
    #[error("transposition: T{index} = {perm} is not a transposition")]
    NotTransposition { index: usize, perm: String },
    #[error("relation: [A,B] = {commutator} but T1...Tb = {product}")]
    Relation { commutator: String, product: String },
    #[error("transitive: the generated group is not transitive on sheets")]
    NotTransitive,
}

impl TupleViolation {
    pub fn name(&self) -> &'static str {
        match self {
            TupleViolation::Degree { .. } => "degree",
            TupleViolation::NotTransposition { .. } => "transposition",
            TupleViolation::Relation { .. } => "relation",
            TupleViolation::NotTransitive => "transitive",
        }
    }
}

/// Monodromy `(A, B, T₁, …, T_b)` of a simply branched cover of a torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzTuple {
    pub d: usize,
    pub a: Permutation,
    pub b: Permutation,
    pub t: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct TupleRepr {
    d: usize,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "T")]
    t: Vec<String>,
}

impl Serialize for HurwitzTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TupleRepr {
            d: self.d,
            a: self.a.to_string(),
            b: self.b.to_string(),
            t: self.t.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HurwitzTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = TupleRepr::deserialize(deserializer)?;
        let parse = |s: &str| Permutation::parse(s, r.d).map_err(serde::de::Error::custom);
        Ok(HurwitzTuple {
            d: r.d,
            a: parse(&r.a)?,
            b: parse(&r.b)?,
            t: r.t.iter().map(|s| parse(s)).collect::<Result<_, _>>()?,
        })
    }
}

impl fmt::Display for HurwitzTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(ToString::to_string).collect();
        write!(f, "A={} B={} T=[{}]", self.a, self.b, t.join(","))
    }
}

/// Abelianized letter: `A ↦ (1,0)`, `B ↦ (0,1)`, `Tᵢ ↦ 0`.
type Letter = (Permutation, (i64, i64));

impl HurwitzTuple {
    pub fn new(a: Permutation, b: Permutation, t: Vec<Permutation>) -> Self {
        HurwitzTuple { d: a.degree(), a, b, t }
    }

    pub fn parse(d: usize, a: &str, b: &str, t: &[&str]) -> Result<Self, MonodromyError> {
        Ok(HurwitzTuple {
            d,
            a: Permutation::parse(a, d)?,
            b: Permutation::parse(b, d)?,
            t: t.iter().map(|s| Permutation::parse(s, d)).collect::<Result<_, _>>()?,
        })
    }

    pub fn branch_count(&self) -> usize {
        self.t.len()
    }

    pub fn generators(&self) -> Vec<Permutation> {
        let mut g = vec![self.a, self.b];
        g.extend(self.t.iter().copied());
        g
    }

    fn letters(&self) -> Vec<Letter> {
        let mut l = vec![(self.a, (1, 0)), (self.b, (0, 1))];
        l.extend(self.t.iter().map(|&p| (p, (0, 0))));
        l
    }

    pub fn commutator(&self) -> Permutation {
        Permutation::commutator(&self.a, &self.b)
    }

    pub fn branch_product(&self) -> Permutation {
        Permutation::product(self.d, &self.t)
    }

    pub fn is_transitive(&self) -> bool {
        let gens = self.generators();
        let mut seen = vec![false; self.d];
        if self.d == 0 {
            return true;
        }
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(s) = stack.pop() {
            for g in &gens {
                let x = g.apply(s);
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        seen.iter().all(|&x| x)
    }

    pub fn check(&self) -> Vec<TupleViolation> {
        if self.generators().iter().any(|p| p.degree() != self.d) || self.d == 0 {
            return vec![TupleViolation::Degree { d: self.d }];
        }
        let mut out = Vec::new();
        for (i, p) in self.t.iter().enumerate() {
            if !p.is_transposition() {
                out.push(TupleViolation::NotTransposition { index: i + 1, perm: p.to_string() });
            }
        }
        let (c, prod) = (self.commutator(), self.branch_product());
        if c != prod {
            out.push(TupleViolation::Relation { commutator: c.to_string(), product: prod.to_string() });
        }
        if !self.is_transitive() {
            out.push(TupleViolation::NotTransitive);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<(), MonodromyError> {
        let v = self.check();
        if v.is_empty() {
            Ok(())
        } else {
            Err(MonodromyError::InvalidTuple(v))
        }
    }

    /// Conjugates every entry: sheet `i` is relabeled `g(i)`.
    pub fn conjugate_by(&self, g: &Permutation) -> HurwitzTuple {
        HurwitzTuple {
            d: self.d,
            a: self.a.conjugate_by(g),
            b: self.b.conjugate_by(g),
            t: self.t.iter().map(|p| p.conjugate_by(g)).collect(),
        }
    }
}

/// Spanning-tree potentials `φ(s)` from `base` and the lattice generated by
/// the abelianized Schreier generators `φ(s) + ab(x) − φ(s·x)`.
fn schreier(t: &HurwitzTuple, base: usize) -> (Lattice2, Vec<(i64, i64)>) {
    let letters = t.letters();
    let mut phi: Vec<Option<(i64, i64)>> = vec![None; t.d];
    phi[base] = Some((0, 0));
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(s) = queue.pop_front() {
        let p = phi[s].expect("visited");
        for (x, ab) in &letters {
            let y = x.apply(s);
            if phi[y].is_none() {
                phi[y] = Some((p.0 + ab.0, p.1 + ab.1));
                queue.push_back(y);
            }
        }
    }
    let phi: Vec<(i64, i64)> = phi.into_iter().map(|p| p.expect("transitive")).collect();
    let mut rows = Vec::new();
    for s in 0..t.d {
        for (x, ab) in &letters {
            let y = x.apply(s);
            let v = (phi[s].0 + ab.0 - phi[y].0, phi[s].1 + ab.1 - phi[y].1);
            if v != (0, 0) {
                rows.push(v);
            }
        }
    }
    (hnf(&rows).expect("loops around A and B give rank 2"), phi)
}

/// The image of the cover's fundamental group in `Z²`, from sheet 1.
pub fn invariant_lattice(t: &HurwitzTuple) -> Result<Lattice2, MonodromyError> {
    invariant_lattice_from(t, 0)
}

/// As [`invariant_lattice`], with the stabilizer of another sheet.
pub fn invariant_lattice_from(t: &HurwitzTuple, base: usize) -> Result<Lattice2, MonodromyError> {
    t.ensure_valid()?;
    if base >= t.d {
        return Err(MonodromyError::Inapplicable("base sheet out of range"));
    }
    Ok(schreier(t, base).0)
}

pub fn is_primitive(t: &HurwitzTuple) -> Result<bool, MonodromyError> {
    Ok(invariant_lattice(t)?.is_full())
}

/// Whether `⟨A, B, T⟩` is the full symmetric group.
pub fn is_full_monodromy(t: &HurwitzTuple, budget: u64) -> Result<bool, MonodromyError> {
    t.ensure_valid()?;
    Ok(group_order(&t.generators(), budget)? == factorial(t.d))
}

/// The factorization of a cover through the isogeny given by its invariant
/// lattice `L`: sheets are grouped by the coset of `φ(s)` in `Z²/L`, and the
/// quotient cover has `A`, `B` acting by translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lattice: Lattice2,
    /// Blocks of sheets (0-based), indexed like the lattice's coset
    /// representatives.
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
    pub quotient_a: Permutation,
    pub quotient_b: Permutation,
}

impl Factorization {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `d̃`, the degree of the primitive part.
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            lattice: &'a Lattice2,
            index: i64,
            block_size: usize,
            blocks: Vec<Vec<usize>>,
            quotient_a: &'a Permutation,
            quotient_b: &'a Permutation,
        }
        Repr {
            lattice: &self.lattice,
            index: self.lattice.index(),
            block_size: self.block_size(),
            blocks: self.blocks.iter().map(|b| b.iter().map(|s| s + 1).collect()).collect(),
            quotient_a: &self.quotient_a,
            quotient_b: &self.quotient_b,
        }
        .serialize(serializer)
    }
}

pub fn factorize(t: &HurwitzTuple) -> Result<Factorization, MonodromyError> {
    t.ensure_valid()?;
    Ok(factorize_unchecked(t))
}

fn factorize_unchecked(t: &HurwitzTuple) -> Factorization {
    let (lattice, phi) = schreier(t, 0);
    let e = lattice.index() as usize;
    let mut blocks = vec![Vec::new(); e];
    let block_of: Vec<usize> = phi.iter().map(|&p| lattice.coset_index(p)).collect();
    for (s, &blk) in block_of.iter().enumerate() {
        blocks[blk].push(s);
    }
    let reps = lattice.coset_representatives();
    let shift = |dv: (i64, i64)| {
        let images: Vec<usize> = reps.iter().map(|r| lattice.coset_index((r.0 + dv.0, r.1 + dv.1))).collect();
        Permutation::from_images(&images).expect("translation permutes cosets")
    };
    Factorization { lattice, blocks, block_of, quotient_a: shift((1, 0)), quotient_b: shift((0, 1)) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub order: u64,
    pub block_size: usize,
    pub block_count: usize,
    pub quotient_order: u64,
    /// `(d̃!)^e · |Ḡ|`.
    pub predicted: u64,
    pub holds: bool,
}

/// Checks `|G| = (d̃!)^e · |Ḡ|` for the monodromy group `G` and the group
/// `Ḡ` induced on blocks.
pub fn kernel_order_check(t: &HurwitzTuple, budget: u64) -> Result<KernelReport, MonodromyError> {
    t.ensure_valid()?;
    if t.t.is_empty() {
        return Err(MonodromyError::Inapplicable("unramified tuple (no branch points)"));
    }
    let f = factorize_unchecked(t);
    kernel_report(t, &f, budget)
}

fn kernel_report(t: &HurwitzTuple, f: &Factorization, budget: u64) -> Result<KernelReport, MonodromyError> {
    let quotient_order = group_order(&[f.quotient_a, f.quotient_b], budget)?;
    let (dt, e) = (f.block_size(), f.block_count());
    let predicted = factorial(dt)
        .checked_pow(e as u32)
        .and_then(|k| k.checked_mul(quotient_order))
        .filter(|&p| p <= budget)
        .ok_or(MonodromyError::Budget { needed: u64::MAX, budget })?;
    let order = group_order(&t.generators(), budget)?;
    Ok(KernelReport { order, block_size: dt, block_count: e, quotient_order, predicted, holds: order == predicted })
}

/// Whether `G` is transitive on `{(x, y) : x ∈ Sᵢ, y ∈ Sⱼ, x ≠ y}` for every
/// ordered pair of blocks.
pub fn transitive_on_block_pairs(t: &HurwitzTuple) -> Result<bool, MonodromyError> {
    t.ensure_valid()?;
    Ok(block_pairs_unchecked(t, &factorize_unchecked(t)))
}

fn block_pairs_unchecked(t: &HurwitzTuple, f: &Factorization) -> bool {
    let d = t.d;
    let mut parent: Vec<usize> = (0..d * d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in t.generators() {
        for x in 0..d {
            for y in (0..d).filter(|&y| y != x) {
                let (u, v) = (find(&mut parent, x * d + y), find(&mut parent, g.apply(x) * d + g.apply(y)));
                parent[u] = v;
            }
        }
    }
    let mut root_of_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for x in 0..d {
        for y in (0..d).filter(|&y| y != x) {
            let r = find(&mut parent, x * d + y);
            let key = (f.block_of[x], f.block_of[y]);
            if *root_of_pair.entry(key).or_insert(r) != r {
                return false;
            }
        }
    }
    true
}

/// Per-tuple verification of the structural statements about simply
/// branched covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleReport {
    pub lattice: Lattice2,
    pub primitive: bool,
    pub full_monodromy: bool,
    pub kernel: Option<KernelReport>,
    pub block_pairs_transitive: bool,
}

pub fn analyze(t: &HurwitzTuple, budget: u64) -> Result<TupleReport, MonodromyError> {
    t.ensure_valid()?;
    analyze_unchecked(t, budget)
}

fn analyze_unchecked(t: &HurwitzTuple, budget: u64) -> Result<TupleReport, MonodromyError> {
    let f = factorize_unchecked(t);
    let order = group_order(&t.generators(), budget)?;
    let kernel = if t.t.is_empty() { None } else { Some(kernel_report(t, &f, budget)?) };
    Ok(TupleReport {
        lattice: f.lattice,
        primitive: f.lattice.is_full(),
        full_monodromy: order == factorial(t.d),
        kernel,
        block_pairs_transitive: block_pairs_unchecked(t, &f),
    })
}

/// Visits every valid tuple with `d` sheets and `b` branch points, in
/// parallel over `A`. Each worker folds into its own accumulator.
pub fn scan_tuples<R, I, F, M>(d: usize, b: usize, init: I, visit: F, merge: M) -> R
where
    R: Send,
    I: Fn() -> R + Sync + Send,
    F: Fn(&mut R, &HurwitzTuple) + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    assert!((1..=TABLE_DEGREE).contains(&d), "exhaustive scans need 1 <= d <= {TABLE_DEGREE}");
    let perms = &table(d).perms;
    let trans = transpositions(d);
    perms
        .par_iter()
        .fold(&init, |mut acc, a| {
            let mut branch = Vec::with_capacity(b);
            for bb in perms {
                let c = Permutation::commutator(a, bb);
                factor_into(&c, b, &trans, &mut branch, &mut |ts| {
                    let t = HurwitzTuple { d, a: *a, b: *bb, t: ts.to_vec() };
                    if t.is_transitive() {
                        visit(&mut acc, &t);
                    }
                });
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Calls `emit` on every sequence of `k` transpositions with product `target`.
fn factor_into(
    target: &Permutation,
    k: usize,
    trans: &[Permutation],
    prefix: &mut Vec<Permutation>,
    emit: &mut dyn FnMut(&[Permutation]),
) {
    let needed = target.degree() - target.cycle_count();
    if k < needed || !(k - needed).is_multiple_of(2) {
        return;
    }
    if k == 0 {
        emit(prefix);
        return;
    }
    for t in trans {
        // T·rest = target, so rest = T⁻¹·target = T·target.
        let rest = t.then(target);
        prefix.push(*t);
        factor_into(&rest, k - 1, trans, prefix, emit);
        prefix.pop();
    }
}

/// All valid tuples, sorted.
pub fn valid_tuples(d: usize, b: usize) -> Vec<HurwitzTuple> {
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
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub d: usize,
    pub b: usize,
    pub tuples: u64,
    pub primitive: u64,
    pub full_monodromy: u64,
    /// Tuples where primitivity and full monodromy disagree.
    pub equivalence_failures: u64,
    pub kernel_failures: u64,
    pub block_pair_failures: u64,
    /// Invariant-lattice index to number of tuples.
    pub index_counts: BTreeMap<i64, u64>,
}

impl ScanReport {
    fn merge(mut self, other: ScanReport) -> ScanReport {
        self.tuples += other.tuples;
        self.primitive += other.primitive;
        self.full_monodromy += other.full_monodromy;
        self.equivalence_failures += other.equivalence_failures;
        self.kernel_failures += other.kernel_failures;
        self.block_pair_failures += other.block_pair_failures;
        for (k, v) in other.index_counts {
            *self.index_counts.entry(k).or_default() += v;
        }
        self
    }
}

/// Exhaustive check over all valid tuples with the given `d` and `b`.
pub fn scan(d: usize, b: usize) -> ScanReport {
    let budget = u64::MAX;
    let init = || ScanReport { d, b, ..ScanReport::default() };
    scan_tuples(
        d,
        b,
        init,
        |acc, t| {
            let r = analyze_unchecked(t, budget).expect("small degree");
            acc.tuples += 1;
            acc.primitive += u64::from(r.primitive);
            acc.full_monodromy += u64::from(r.full_monodromy);
            acc.equivalence_failures += u64::from(r.primitive != r.full_monodromy);
            acc.kernel_failures += u64::from(r.kernel.as_ref().is_some_and(|k| !k.holds));
            acc.block_pair_failures += u64::from(!r.block_pairs_transitive);
            *acc.index_counts.entry(r.lattice.index()).or_default() += 1;
        },
        ScanReport::merge,
    )
}
