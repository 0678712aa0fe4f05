//! Finite-index sublattices of `Z²`, read as isogenies onto a genus-one curve.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank-deficient: the rows do not span a finite-index sublattice")]
    RankDeficient,
    #[error("hat-degree: D must be at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("positive-index: index must be at least 1, got {0}")]
    NonPositiveIndex(i64),
    #[error("cover-degree: d must be at least 2, got {0}")]
    CoverDegree(i64),
}

/// A sublattice in Hermite normal form: rows `(a, b)` and `(0, c)` with
/// `a, c ≥ 1` and `0 ≤ b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice2 {
    a: i64,
    b: i64,
    c: i64,
}

impl Lattice2 {
    pub fn full() -> Self {
        Lattice2 { a: 1, b: 0, c: 1 }
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [0, self.c]]
    }

    pub fn index(&self) -> i64 {
        self.a * self.c
    }

    pub fn is_full(&self) -> bool {
        self.index() == 1
    }

    pub fn contains(&self, v: (i64, i64)) -> bool {
        if v.0 % self.a != 0 {
            return false;
        }
        (v.1 - (v.0 / self.a) * self.b) % self.c == 0
    }

    /// Canonical representative of `v + L`, with `0 ≤ x < a` and `0 ≤ y < c`.
    pub fn reduce(&self, v: (i64, i64)) -> (i64, i64) {
        let x = v.0.mod_floor(&self.a);
        let k = (v.0 - x) / self.a;
        (x, (v.1 - k * self.b).mod_floor(&self.c))
    }

    pub fn coset_representatives(&self) -> Vec<(i64, i64)> {
        (0..self.a).flat_map(|x| (0..self.c).map(move |y| (x, y))).collect()
    }

    /// Position of a reduced coset in [`Lattice2::coset_representatives`].
    pub fn coset_index(&self, v: (i64, i64)) -> usize {
        let (x, y) = self.reduce(v);
        (x * self.c + y) as usize
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[0,{}]]", self.a, self.b, self.c)
    }
}

impl Serialize for Lattice2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lattice2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<[i64; 2]>::deserialize(deserializer)?;
        let rows: Vec<(i64, i64)> = rows.into_iter().map(|[x, y]| (x, y)).collect();
        hnf(&rows).map_err(serde::de::Error::custom)
    }
}

/// Hermite normal form of the lattice spanned by `rows`.
pub fn hnf(rows: &[(i64, i64)]) -> Result<Lattice2, LatticeError> {
    let mut top = (0i64, 0i64);
    let mut second = 0i64;
    for &row in rows {
        if row.0 == 0 {
            second = second.gcd(&row.1);
            continue;
        }
        if top.0 == 0 {
            second = second.gcd(&top.1);
            top = row;
            continue;
        }
        let e = top.0.extended_gcd(&row.0);
        let new_top = (e.x * top.0 + e.y * row.0, e.x * top.1 + e.y * row.1);
        let (p, q) = (row.0 / e.gcd, top.0 / e.gcd);
        second = second.gcd(&(p * top.1 - q * row.1));
        top = new_top;
    }
    if top.0 == 0 || second == 0 {
        return Err(LatticeError::RankDeficient);
    }
    if top.0 < 0 {
        top = (-top.0, -top.1);
    }
    let c = second.abs();
    Ok(Lattice2 { a: top.0, b: top.1.mod_floor(&c), c })
}

/// Smith form `(d₁, d₂)` with `d₁ | d₂` and `d₁d₂ = index`.
pub fn snf(l: &Lattice2) -> (i64, i64) {
    let d1 = m_invariant(l);
    (d1, l.index() / d1)
}

/// Largest `m` with `L ⊂ mZ²`.
pub fn m_invariant(l: &Lattice2) -> i64 {
    l.a.gcd(&l.b).gcd(&l.c)
}

pub fn is_reduced(l: &Lattice2) -> bool {
    m_invariant(l) == 1
}

/// The cokernel `Z²/L ≅ C_m ⊕ C_n`.
pub fn cokernel_invariant(l: &Lattice2) -> (i64, i64) {
    snf(l)
}

pub fn lattice_sum(l1: &Lattice2, l2: &Lattice2) -> Lattice2 {
    let [r1, r2] = l1.rows();
    let [r3, r4] = l2.rows();
    hnf(&[(r1[0], r1[1]), (r2[0], r2[1]), (r3[0], r3[1]), (r4[0], r4[1])]).expect("sum of full-rank lattices")
}

/// `L + Zv`.
pub fn add_vector(l: &Lattice2, v: (i64, i64)) -> Lattice2 {
    let [r1, r2] = l.rows();
    hnf(&[(r1[0], r1[1]), (r2[0], r2[1]), v]).expect("contains a full-rank lattice")
}

/// All sublattices of index `e`, in HNF order.
pub fn sublattices(e: i64) -> Result<Vec<Lattice2>, LatticeError> {
    if e < 1 {
        return Err(LatticeError::NonPositiveIndex(e));
    }
    let mut out = Vec::new();
    for a in (1..=e).filter(|a| e % a == 0) {
        let c = e / a;
        out.extend((0..c).map(|b| Lattice2 { a, b, c }));
    }
    Ok(out)
}

/// Sum of the positive divisors of `n`.
pub fn sigma(n: i64) -> i64 {
    let mut total = 0;
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            total += k;
            if k * k != n {
                total += n / k;
            }
        }
        k += 1;
    }
    total
}

/// A vector `(am, bm) ∈ L` with `gcd(a, b) = 1` and `m = m_invariant(L)`.
///
/// Divides by `m`, takes the HNF rows `(a, b)` and `(0, d)` of `L/m`, and
/// shifts `b` by a multiple of `d` chosen by the Chinese remainder theorem
/// so that no prime divisor of `a` divides `b + nd`.
pub fn primitive_vector(l: &Lattice2) -> (i64, i64, i64) {
    let m = m_invariant(l);
    let (a, b, d) = (l.a / m, l.b / m, l.c / m);
    let mut n = 0i64;
    let mut modulus = 1i64;
    for p in prime_factors(a) {
        let target = if b % p == 0 { 1 } else { 0 };
        while n.mod_floor(&p) != target {
            n += modulus;
        }
        modulus *= p;
    }
    (a, b + n * d, m)
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HatConstruction {
    #[serde(rename = "Lhat")]
    pub lhat: Lattice2,
    pub v: (i64, i64),
    /// `(a', b')` with `ab' − a'b = 1`.
    pub complement: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HatOutcome {
    Feasible(HatConstruction),
    Infeasible { m: i64, gcd: i64 },
}

/// The conditions a pair `(Λ̂, v)` must satisfy over `Λ̃`.
pub fn hat_conditions_hold(ltilde: &Lattice2, dd: i64, lhat: &Lattice2, v: (i64, i64)) -> bool {
    lhat.index() == dd && lattice_sum(lhat, ltilde).is_full() && add_vector(lhat, v).is_full()
}

/// Builds `Λ̂ = Z(a′, b′) ⊕ Z(Da, Db)` and `v = (a, b)` from a primitive
/// vector of `Λ̃`; impossible exactly when `gcd(D, m) > 1`.
pub fn construct_hat(ltilde: &Lattice2, dd: i64) -> Result<HatOutcome, LatticeError> {
    if dd < 2 {
        return Err(LatticeError::DegreeTooSmall(dd));
    }
    let m = m_invariant(ltilde);
    let g = dd.gcd(&m);
    if g > 1 {
        return Ok(HatOutcome::Infeasible { m, gcd: g });
    }
    let (a, b, _) = primitive_vector(ltilde);
    let e = a.extended_gcd(&b);
    debug_assert_eq!(e.gcd, 1);
    let complement = (-e.y, e.x);
    let lhat = hnf(&[complement, (dd * a, dd * b)])?;
    Ok(HatOutcome::Feasible(HatConstruction { lhat, v: (a, b), complement }))
}

/// Components of the Hurwitz space of degree `d` simply branched covers of a
/// fixed genus-one curve: `Σ σ(e)` over divisors `e ≠ d` of `d`.
pub fn hurwitz_component_count(d: i64) -> Result<i64, LatticeError> {
    if d < 2 {
        return Err(LatticeError::CoverDegree(d));
    }
    Ok((1..d).filter(|e| d % e == 0).map(sigma).sum())
}

/// Pairs `(d̃, m)` with `m² | d̃ | d`. In strict mode `d̃ = d` is excluded.
pub fn global_component_pairs(d: i64, strict: bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for dt in (1..=d).filter(|x| d % x == 0) {
        if strict && dt == d {
            continue;
        }
        for m in (1..=dt).take_while(|m| m * m <= dt) {
            if dt % (m * m) == 0 {
                out.push((dt, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(a: i64, b: i64, c: i64) -> Lattice2 {
        hnf(&[(a, b), (0, c)]).unwrap()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&[(2, 0), (0, 2)]).unwrap().rows(), [[2, 0], [0, 2]]);
        assert_eq!(hnf(&[(1, 1), (0, 2), (2, 0)]).unwrap().rows(), [[1, 1], [0, 2]]);
        assert_eq!(hnf(&[(1, 0)]), Err(LatticeError::RankDeficient));
        assert_eq!(hnf(&[(0, 1), (2, 0)]).unwrap().rows(), [[2, 0], [0, 1]]);
        assert_eq!(hnf(&[(-3, 5), (6, -1)]).unwrap().index(), 27);
    }

    #[test]
    fn normal_forms() {
        assert_eq!(snf(&lat(2, 0, 4)), (2, 4));
        assert_eq!(snf(&lat(1, 1, 2)), (1, 2));
        assert_eq!(snf(&lat(6, 0, 6)), (6, 6));
        assert_eq!(m_invariant(&lat(2, 0, 2)), 2);
        assert!(is_reduced(&lat(1, 1, 2)));
        assert_eq!(m_invariant(&lat(2, 2, 4)), 2);
        assert_eq!(cokernel_invariant(&lat(2, 0, 2)), (2, 2));
        assert_eq!(cokernel_invariant(&lat(1, 0, 6)), (1, 6));
        assert_eq!(cokernel_invariant(&lat(2, 2, 4)), (2, 4));
    }

    #[test]
    fn sums() {
        assert!(lattice_sum(&lat(2, 0, 1), &lat(1, 0, 2)).is_full());
        let l = lat(2, 1, 3);
        assert_eq!(lattice_sum(&l, &l), l);
        assert!(!lattice_sum(&lat(2, 0, 2), &lat(2, 2, 4)).is_full());
    }

    #[test]
    fn sublattice_counts() {
        assert_eq!(sublattices(1).unwrap(), vec![Lattice2::full()]);
        assert_eq!(sublattices(2).unwrap().len(), 3);
        assert_eq!(sublattices(6).unwrap().len(), 12);
        for e in 1..=60 {
            let naive: i64 = (1..=e).filter(|k| e % k == 0).sum();
            assert_eq!(sublattices(e).unwrap().len() as i64, naive);
            assert_eq!(sigma(e), naive);
        }
    }

    #[test]
    fn primitive_vectors() {
        for (l, want_m) in [(lat(1, 1, 2), 1), (lat(2, 0, 2), 2), (lat(3, 0, 1), 1)] {
            let (a, b, m) = primitive_vector(&l);
            assert_eq!(m, want_m);
            assert_eq!(a.gcd(&b), 1);
            assert!(l.contains((a * m, b * m)));
        }
        assert_eq!(primitive_vector(&lat(1, 1, 2)), (1, 1, 1));
        assert_eq!(primitive_vector(&lat(2, 0, 2)), (1, 0, 2));
        for e in 1..=40 {
            for l in sublattices(e).unwrap() {
                let (a, b, m) = primitive_vector(&l);
                assert_eq!(a.gcd(&b), 1, "{l}");
                assert!(l.contains((a * m, b * m)));
            }
        }
    }

    #[test]
    fn hat_examples() {
        let HatOutcome::Feasible(h) = construct_hat(&lat(1, 0, 2), 2).unwrap() else { panic!() };
        assert_eq!(h.lhat.rows(), [[2, 0], [0, 1]]);
        assert_eq!(h.v, (1, 0));
        assert!(hat_conditions_hold(&lat(1, 0, 2), 2, &h.lhat, h.v));

        assert!(matches!(construct_hat(&lat(2, 0, 2), 2).unwrap(), HatOutcome::Infeasible { m: 2, gcd: 2 }));
        let HatOutcome::Feasible(h) = construct_hat(&lat(2, 0, 2), 3).unwrap() else { panic!() };
        assert!(hat_conditions_hold(&lat(2, 0, 2), 3, &h.lhat, h.v));
        assert_eq!(construct_hat(&lat(1, 0, 1), 1), Err(LatticeError::DegreeTooSmall(1)));
    }

    #[test]
    fn component_counts() {
        assert_eq!(hurwitz_component_count(2).unwrap(), 1);
        assert_eq!(hurwitz_component_count(4).unwrap(), 4);
        assert_eq!(hurwitz_component_count(6).unwrap(), 8);
        assert!(hurwitz_component_count(1).is_err());
        assert_eq!(global_component_pairs(4, false), vec![(1, 1), (2, 1), (4, 1), (4, 2)]);
        assert_eq!(global_component_pairs(1, false), vec![(1, 1)]);
        assert_eq!(global_component_pairs(12, false).len(), 8);
        assert_eq!(global_component_pairs(12, true).len(), 6);
    }

    #[test]
    fn cosets() {
        let l = lat(2, 1, 3);
        let reps = l.coset_representatives();
        assert_eq!(reps.len(), 6);
        for (i, &r) in reps.iter().enumerate() {
            assert_eq!(l.coset_index(r), i);
            assert_eq!(l.reduce((r.0 + 2, r.1 + 1)), r);
            assert_eq!(l.reduce((r.0, r.1 - 3)), r);
        }
    }

    proptest! {
        #[test]
        fn hnf_is_canonical(rows in proptest::collection::vec((-12i64..12, -12i64..12), 2..5), seed in 0usize..24) {
            if let Ok(l) = hnf(&rows) {
                let mut shuffled = rows.clone();
                shuffled.rotate_left(seed % rows.len());
                shuffled.reverse();
                prop_assert_eq!(hnf(&shuffled).unwrap(), l);
                let [r1, r2] = l.rows();
                prop_assert_eq!(hnf(&[(r1[0], r1[1]), (r2[0], r2[1])]).unwrap(), l);
                for &r in &rows {
                    prop_assert!(l.contains(r));
                }
                let (d1, d2) = snf(&l);
                prop_assert_eq!(d2 % d1, 0);
                prop_assert_eq!(d1 * d2, l.index());
            }
        }
    }
}
