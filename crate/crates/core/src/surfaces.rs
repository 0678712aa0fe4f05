//! Divisor-class intersection arithmetic and the numeric dimension formulas
//! for curves on `E × P¹` and the auxiliary rational surfaces.
//!
//! A [`SurfaceModel`] is a finite basis of curve classes with a symmetric
//! intersection matrix and a canonical class. Blow-ups are derived from a
//! base model by [`SurfaceModel::blow_up`], which appends an exceptional
//! class `e` with `e² = −1`, orthogonal to the pulled-back classes, and
//! replaces `K` by `K + e`.
//!
//! `γ = −(K + D)·τ + b` bounds the dimension of a family of genus `g` curves
//! of class `τ` by `g − 1 + γ` whenever `γ ≥ 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("class has {found} coefficients but the model basis has {expected}")]
    BasisMismatch { expected: usize, found: usize },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("unknown surface model `{0}`")]
    UnknownModel(String),
    #[error("intersection matrix is not symmetric")]
    NotSymmetric,
    #[error("number of branch points must be non-negative, got {0}")]
    NegativeBranchCount(i64),
    #[error("no simply branched cover: branch count 2g-2-d(2h-2) = {0} is negative")]
    NoSimplyBranchedCover(i64),
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("fiber-dimension formula needs d >= 2g-1 (non-special range), got d={d}, g={g}")]
    SpecialRange { d: i64, g: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub coefficients: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        DivisorClass { coefficients }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass::new(self.coefficients.iter().map(|a| k * a).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub name: String,
    pub basis: Vec<String>,
    pub intersection_matrix: Vec<Vec<i64>>,
    pub canonical_class: Vec<i64>,
}

impl SurfaceModel {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        intersection_matrix: Vec<Vec<i64>>,
        canonical_class: Vec<i64>,
    ) -> Result<Self, SurfaceError> {
        let n = basis.len();
        if intersection_matrix.len() != n {
            return Err(SurfaceError::BasisMismatch {
                expected: n,
                found: intersection_matrix.len(),
            });
        }
        for row in &intersection_matrix {
            if row.len() != n {
                return Err(SurfaceError::BasisMismatch { expected: n, found: row.len() });
            }
        }
        if canonical_class.len() != n {
            return Err(SurfaceError::BasisMismatch { expected: n, found: canonical_class.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if intersection_matrix[i][j] != intersection_matrix[j][i] {
                    return Err(SurfaceError::NotSymmetric);
                }
            }
        }
        Ok(SurfaceModel { name: name.into(), basis, intersection_matrix, canonical_class })
    }

    /// `E × P¹` with basis `(f, e)`: `f` the class of `{pt} × P¹`, `e` the
    /// class of `E × {pt}`; `f² = e² = 0`, `f·e = 1`, `K = −2e`.
    pub fn elliptic_ruled() -> Self {
        SurfaceModel::new(
            "ExP1",
            vec!["f".into(), "e".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![0, -2],
        )
        .expect("built-in model is well formed")
    }

    /// `P¹ × P¹` with rulings `f1, f2`; `K = −2f1 − 2f2`.
    pub fn quadric() -> Self {
        SurfaceModel::new(
            "P1xP1",
            vec!["f1".into(), "f2".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![-2, -2],
        )
        .expect("built-in model is well formed")
    }

    /// The (dual) projective plane with hyperplane class `h`; `K = −3h`.
    pub fn plane() -> Self {
        SurfaceModel::new("P2", vec!["h".into()], vec![vec![1]], vec![-3])
            .expect("built-in model is well formed")
    }

    /// Blow-up at one point.
    pub fn blow_up(&self, exceptional: &str) -> SurfaceModel {
        let n = self.basis.len();
        let mut basis = self.basis.clone();
        basis.push(exceptional.to_string());
        let mut matrix: Vec<Vec<i64>> = self
            .intersection_matrix
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0);
                r
            })
            .collect();
        let mut last = vec![0; n + 1];
        last[n] = -1;
        matrix.push(last);
        let mut canonical = self.canonical_class.clone();
        canonical.push(1);
        SurfaceModel {
            name: format!("Bl_{}", self.name),
            basis,
            intersection_matrix: matrix,
            canonical_class: canonical,
        }
    }

    /// Built-in models by name: `ExP1`, `P1xP1`, `P2`, `Bl_P1xP1`, `Bl_P2`.
    pub fn builtin(name: &str) -> Result<SurfaceModel, SurfaceError> {
        match name {
            "ExP1" => Ok(Self::elliptic_ruled()),
            "P1xP1" => Ok(Self::quadric()),
            "P2" => Ok(Self::plane()),
            "Bl_P1xP1" => Ok(Self::quadric().blow_up("e")),
            "Bl_P2" => Ok(Self::plane().blow_up("e")),
            other => Err(SurfaceError::UnknownModel(other.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::new(self.canonical_class.clone())
    }

    /// Builds a class from `(label, coefficient)` pairs.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, SurfaceError> {
        let mut coefficients = vec![0; self.rank()];
        for (label, k) in terms {
            let i = self
                .basis
                .iter()
                .position(|b| b == label)
                .ok_or_else(|| SurfaceError::UnknownLabel(label.to_string()))?;
            coefficients[i] += k;
        }
        Ok(DivisorClass::new(coefficients))
    }

    fn check(&self, c: &DivisorClass) -> Result<(), SurfaceError> {
        if c.coefficients.len() != self.rank() {
            return Err(SurfaceError::BasisMismatch {
                expected: self.rank(),
                found: c.coefficients.len(),
            });
        }
        Ok(())
    }

    pub fn intersect(&self, c1: &DivisorClass, c2: &DivisorClass) -> Result<i64, SurfaceError> {
        self.check(c1)?;
        self.check(c2)?;
        let mut total = 0;
        for (i, x) in c1.coefficients.iter().enumerate() {
            for (j, y) in c2.coefficients.iter().enumerate() {
                total += x * self.intersection_matrix[i][j] * y;
            }
        }
        Ok(total)
    }

    /// `γ = −(K + D)·τ + b`.
    pub fn gamma(
        &self,
        divisor: &DivisorClass,
        tau: &DivisorClass,
        b: i64,
    ) -> Result<i64, SurfaceError> {
        if b < 0 {
            return Err(SurfaceError::NegativeBranchCount(b));
        }
        self.check(divisor)?;
        let k_plus_d = self.canonical().add(divisor);
        Ok(-self.intersect(&k_plus_d, tau)? + b)
    }
}

/// `g − 1 + γ`, or `None` when `γ < 1` and the bound does not apply.
pub fn dim_bound(g: i64, gamma: i64) -> Option<i64> {
    (gamma >= 1).then_some(g - 1 + gamma)
}

/// Arithmetic genus `Nd − d + 1` of a curve of class `df + Ne` on `E × P¹`.
pub fn adjunction_genus(d: i64, n: i64) -> i64 {
    n * d - d + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDimension {
    pub expected: i64,
    /// Actual dimension where it is known to differ from `expected`.
    pub actual: Option<i64>,
    pub exceptional: bool,
}

/// Expected dimension `2d + g − 1` of the Severi variety of class `df + Ne`
/// with moving line-bundle class. The one exception is the class of `E`
/// itself (`d = 0`, `N = g = 1`): its translates form a one-dimensional
/// family.
pub fn severi_expected_dim(d: i64, n: i64, g: i64) -> ExpectedDimension {
    let expected = 2 * d + g - 1;
    if d == 0 && n == 1 && g == 1 {
        ExpectedDimension { expected, actual: Some(1), exceptional: true }
    } else {
        ExpectedDimension { expected, actual: None, exceptional: false }
    }
}

/// Dimension `d + g − 2 + b` with `a` fixed and `b` moving points.
pub fn dim_v_ab(d: i64, g: i64, b: i64) -> i64 {
    d + g - 2 + b
}

/// Riemann–Hurwitz branch count `2g − 2 − d(2h − 2)` of a degree `d` cover of
/// a genus `h` curve by a genus `g` curve.
pub fn branch_count(d: i64, g: i64, g_target: i64) -> Result<i64, SurfaceError> {
    if d < 1 {
        return Err(SurfaceError::NonPositiveDegree);
    }
    let b = 2 * g - 2 - d * (2 * g_target - 2);
    if b < 0 {
        return Err(SurfaceError::NoSimplyBranchedCover(b));
    }
    Ok(b)
}

/// Dimension `2(d − g + 1)` of the fibers over the space of primitive
/// covers, valid in the non-special range `d ≥ 2g − 1`.
pub fn prim_fiber_dim(d: i64, g: i64) -> Result<i64, SurfaceError> {
    if d < 2 * g - 1 {
        return Err(SurfaceError::SpecialRange { d, g });
    }
    Ok(2 * (d - g + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(s: &SurfaceModel, d: i64, n: i64) -> DivisorClass {
        s.class(&[("f", d), ("e", n)]).unwrap()
    }

    #[test]
    fn elliptic_ruled_pairings() {
        let s = SurfaceModel::elliptic_ruled();
        let f = s.class(&[("f", 1)]).unwrap();
        let e = s.class(&[("e", 1)]).unwrap();
        assert_eq!(s.intersect(&f, &f).unwrap(), 0);
        assert_eq!(s.intersect(&e, &e).unwrap(), 0);
        assert_eq!(s.intersect(&f, &e).unwrap(), 1);
        assert_eq!(s.canonical(), s.class(&[("e", -2)]).unwrap());
        for d in 0..5 {
            for n in 0..5 {
                assert_eq!(s.intersect(&curve(&s, d, n), &e).unwrap(), d);
                assert_eq!(
                    s.intersect(&curve(&s, d, n), &curve(&s, d, n - 2)).unwrap(),
                    2 * d * n - 2 * d
                );
            }
        }
    }

    #[test]
    fn basis_mismatch() {
        let s = SurfaceModel::elliptic_ruled();
        let bad = DivisorClass::new(vec![1, 2, 3]);
        assert!(matches!(
            s.intersect(&bad, &bad),
            Err(SurfaceError::BasisMismatch { expected: 2, found: 3 })
        ));
        assert!(s.class(&[("h", 1)]).is_err());
        assert!(SurfaceModel::new("x", vec!["a".into(), "b".into()], vec![vec![0, 1], vec![2, 0]], vec![0, 0]).is_err());
    }

    #[test]
    fn blow_up_structure() {
        let bl = SurfaceModel::builtin("Bl_P1xP1").unwrap();
        assert_eq!(bl.basis, vec!["f1", "f2", "e"]);
        let e = bl.class(&[("e", 1)]).unwrap();
        assert_eq!(bl.intersect(&e, &e).unwrap(), -1);
        assert_eq!(bl.canonical(), bl.class(&[("f1", -2), ("f2", -2), ("e", 1)]).unwrap());
        let bl2 = SurfaceModel::builtin("Bl_P2").unwrap();
        assert_eq!(bl2.canonical(), bl2.class(&[("h", -3), ("e", 1)]).unwrap());
        assert!(SurfaceModel::builtin("nope").is_err());
    }

    #[test]
    fn gamma_worked_examples() {
        let s = SurfaceModel::elliptic_ruled();
        let e = s.class(&[("e", 1)]).unwrap();
        for d in 1..6 {
            assert_eq!(s.gamma(&e, &curve(&s, d, 3), 0).unwrap(), d);
        }

        // Double cover of P¹×P¹ branched along four rulings.
        let bl = SurfaceModel::builtin("Bl_P1xP1").unwrap();
        for n in 1..5 {
            for g in 0..5 {
                let d = bl.class(&[("f2", 4)]).unwrap();
                let tau = bl.class(&[("f1", n), ("f2", 1), ("e", -1)]).unwrap();
                assert_eq!(bl.gamma(&d, &tau, 2 * n + g + 1).unwrap(), g + 2);
            }
        }

        // Lines through a fixed point of the dual plane, against the dual cubic.
        let bl2 = SurfaceModel::builtin("Bl_P2").unwrap();
        for n in 1..5 {
            for g in 0..5 {
                let d = bl2.class(&[("h", 6)]).unwrap();
                let tau = bl2.class(&[("h", n), ("e", -1)]).unwrap();
                assert_eq!(bl2.gamma(&d, &tau, 3 * n + g + 2).unwrap(), g + 1);
            }
        }
        assert!(matches!(s.gamma(&e, &e, -1), Err(SurfaceError::NegativeBranchCount(-1))));
    }

    #[test]
    fn dim_bound_examples() {
        for g in 0..5 {
            for d in 1..5 {
                assert_eq!(dim_bound(g, d), Some(d + g - 1));
            }
            assert_eq!(dim_bound(g, g + 2), Some(2 * g + 1));
        }
        assert_eq!(dim_bound(0, 1), Some(0));
        assert_eq!(dim_bound(3, 0), None);
    }

    #[test]
    fn formula_examples() {
        for n in 1..6 {
            assert_eq!(adjunction_genus(n, 1), 1);
            assert_eq!(adjunction_genus(1, n), n);
        }
        assert_eq!(adjunction_genus(2, 2), 3);
        assert_eq!(adjunction_genus(0, 1), 1);

        assert_eq!(severi_expected_dim(3, 2, 2).expected, 7);
        assert!(!severi_expected_dim(3, 2, 2).exceptional);
        let ex = severi_expected_dim(0, 1, 1);
        assert_eq!((ex.expected, ex.actual, ex.exceptional), (0, Some(1), true));
        assert_eq!(severi_expected_dim(1, 4, 1).expected, 2);

        assert_eq!(dim_v_ab(3, 2, 3), 6);
        assert_eq!(dim_v_ab(2, 2, 2), 4);

        for g in 1..6 {
            assert_eq!(branch_count(3, g, 1).unwrap(), 2 * g - 2);
        }
        assert_eq!(branch_count(4, 2, 1).unwrap(), 2);
        assert_eq!(branch_count(2, 3, 0).unwrap(), 8);
        assert!(matches!(branch_count(2, 0, 1), Err(SurfaceError::NoSimplyBranchedCover(-2))));
        assert!(branch_count(0, 2, 1).is_err());

        assert_eq!(prim_fiber_dim(3, 2).unwrap(), 4);
        for g in 1..6 {
            assert_eq!(prim_fiber_dim(2 * g - 1, g).unwrap(), 2 * g);
        }
        assert_eq!(prim_fiber_dim(1, 0).unwrap(), 4);
        assert!(prim_fiber_dim(2, 2).is_err());
    }

    #[test]
    fn adjunction_consistency() {
        let s = SurfaceModel::elliptic_ruled();
        for d in 1..=20 {
            for n in 1..=20 {
                let c = curve(&s, d, n);
                let ck = c.add(&s.canonical());
                assert_eq!(2 * adjunction_genus(d, n) - 2, s.intersect(&c, &ck).unwrap());
            }
        }
    }

    #[test]
    fn fixed_class_is_one_less_than_moving_class() {
        for d in 1..10 {
            for g in -3..10 {
                assert_eq!(dim_v_ab(d, g, d), severi_expected_dim(d, 2, g).expected - 1);
            }
        }
    }

    proptest! {
        #[test]
        fn gamma_linear_in_divisor(
            dv in prop::collection::vec(-5i64..5, 3),
            dv2 in prop::collection::vec(-5i64..5, 3),
            tv in prop::collection::vec(-5i64..5, 3),
            b in 0i64..20,
        ) {
            let s = SurfaceModel::builtin("Bl_P1xP1").unwrap();
            let d1 = DivisorClass::new(dv);
            let d2 = DivisorClass::new(dv2);
            let tau = DivisorClass::new(tv);
            let combined = s.gamma(&d1.add(&d2), &tau, b).unwrap();
            prop_assert_eq!(combined, s.gamma(&d1, &tau, b).unwrap() - s.intersect(&d2, &tau).unwrap());
            prop_assert_eq!(s.gamma(&d1, &tau, b + 1).unwrap(), s.gamma(&d1, &tau, b).unwrap() + 1);
        }
    }
}
