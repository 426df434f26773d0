//! Domain types shared by all modules.
//!
//! Everything is a plain immutable value. Distances are measured in units of
//! `sigma^(-1/3)`, so the Dziobek parameter `sigma` is always 1; signed areas
//! are *doubled* directed areas throughout (the same convention the coordinate
//! determinants produce), and masses follow as `m_j = S_j / A_j`.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::geometry::Vec2;

/// Relative tolerance used when testing input area values for exact symmetry.
pub const TOL_AREA_EQ: f64 = 1e-12;

/// Index pairs `(j, k)` with `j < k` for the six mutual distances, in the
/// field order of [`DistanceSet`].
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("weighted areas must be finite")]
    NonFinite,
    #[error("zero weighted area: asymptotic case, use the limits module")]
    ZeroArea,
    #[error("all four weighted areas share one sign: no planar configuration exists")]
    AllSameSign,
}

/// The four weighted directed areas `A_j = S_j / m_j`, the solver's inputs.
///
/// Construction normalizes the global sign (a solution is invariant under
/// flipping all four signs) so that positives are in the majority: exactly
/// one negative entry for concave configurations, exactly two for convex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedAreas {
    a: [f64; 4],
}

impl WeightedAreas {
    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self, ModelError> {
        Self::from_array([a1, a2, a3, a4])
    }

    pub fn from_array(mut a: [f64; 4]) -> Result<Self, ModelError> {
        if a.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::NonFinite);
        }
        if a.iter().any(|v| *v == 0.0) {
            return Err(ModelError::ZeroArea);
        }
        let negatives = a.iter().filter(|v| **v < 0.0).count();
        if negatives == 0 || negatives == 4 {
            return Err(ModelError::AllSameSign);
        }
        if negatives > 2 {
            for v in &mut a {
                *v = -*v;
            }
        }
        Ok(Self { a })
    }

    pub fn values(&self) -> [f64; 4] {
        self.a
    }

    pub fn get(&self, i: usize) -> f64 {
        self.a[i]
    }

    /// Product `A_j * A_k`.
    pub fn product(&self, j: usize, k: usize) -> f64 {
        self.a[j] * self.a[k]
    }

    pub fn negative_count(&self) -> usize {
        self.a.iter().filter(|v| **v < 0.0).count()
    }

    pub fn hull(&self) -> Hull {
        if self.negative_count() == 1 {
            Hull::Concave
        } else {
            Hull::Convex
        }
    }

    /// Indices of a pair of equal entries, if any (kite symmetry at the
    /// input level). Ties are resolved toward the lowest index pair.
    pub fn kite_pair(&self) -> Option<(usize, usize)> {
        for j in 0..4 {
            for k in (j + 1)..4 {
                if nearly_equal(self.a[j], self.a[k], TOL_AREA_EQ) {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Relabels particles: entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize; 4]) -> Self {
        Self {
            a: [
                self.a[perm[0]],
                self.a[perm[1]],
                self.a[perm[2]],
                self.a[perm[3]],
            ],
        }
    }

    pub fn scaled(&self, k: f64) -> Result<Self, ModelError> {
        Self::from_array([self.a[0] * k, self.a[1] * k, self.a[2] * k, self.a[3] * k])
    }

    pub fn classify(&self) -> Classification {
        let a = self.a;
        let mut symmetries = BTreeSet::new();

        let eq = |x: f64, y: f64| nearly_equal(x, y, TOL_AREA_EQ);

        if self.kite_pair().is_some() {
            symmetries.insert(Symmetry::Kite);
        }
        // three equal entries (necessarily the positive trio after orientation)
        for skip in 0..4 {
            let t: Vec<f64> = (0..4).filter(|i| *i != skip).map(|i| a[i]).collect();
            if eq(t[0], t[1]) && eq(t[1], t[2]) {
                symmetries.insert(Symmetry::EquilateralCenter);
            }
        }
        if self.negative_count() == 2 {
            let pos: Vec<f64> = a.iter().copied().filter(|v| *v > 0.0).collect();
            let neg: Vec<f64> = a.iter().copied().filter(|v| *v < 0.0).collect();
            let rhombus = eq(pos[0], pos[1]) && eq(neg[0], neg[1]);
            if rhombus {
                symmetries.insert(Symmetry::Rhombus);
                if eq(pos[0] * pos[1], neg[0] * neg[1]) {
                    symmetries.insert(Symmetry::Square);
                }
            }
            // perfect matching into two pairs with A_i = -A_j
            let trapezium = [(1usize, 2usize, 3usize), (2, 1, 3), (3, 1, 2)]
                .iter()
                .any(|&(p, q, r)| eq(a[0], -a[p]) && eq(a[q], -a[r]));
            if trapezium {
                symmetries.insert(Symmetry::IsoscelesTrapezium);
            }
        }
        Classification {
            hull: self.hull(),
            symmetries,
        }
    }
}

/// Classifies a raw set of four weighted areas: canonical orientation, hull
/// class and the symmetry tags implied by exact equalities among the values.
pub fn validate_areas(a: [f64; 4]) -> Result<Classification, ModelError> {
    Ok(WeightedAreas::from_array(a)?.classify())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Hull {
    Concave,
    Convex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Symmetry {
    Kite,
    EquilateralCenter,
    Rhombus,
    Square,
    IsoscelesTrapezium,
}

/// Hull class plus the set of symmetries detected; an empty set means a
/// generic (asymmetric) configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub hull: Hull,
    pub symmetries: BTreeSet<Symmetry>,
}

/// The six mutual distances, in units of `sigma^(-1/3)`.
///
/// Constructors only enforce positivity and finiteness; triangle inequalities
/// are checked where they matter (the solver rejects non-embeddable sets,
/// limit solutions are allowed to carry degenerate collinear triples).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSet {
    pub r12: f64,
    pub r13: f64,
    pub r14: f64,
    pub r23: f64,
    pub r24: f64,
    pub r34: f64,
}

impl DistanceSet {
    pub fn new(r12: f64, r13: f64, r14: f64, r23: f64, r24: f64, r34: f64) -> Result<Self, ModelError> {
        let d = Self { r12, r13, r14, r23, r24, r34 };
        if d.as_array().iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(ModelError::NonFinite);
        }
        Ok(d)
    }

    pub fn from_array(r: [f64; 6]) -> Result<Self, ModelError> {
        Self::new(r[0], r[1], r[2], r[3], r[4], r[5])
    }

    /// Distances in the order of [`PAIRS`].
    pub fn as_array(&self) -> [f64; 6] {
        [self.r12, self.r13, self.r14, self.r23, self.r24, self.r34]
    }

    /// Distance between particles `j` and `k` (0-based, `j != k`).
    pub fn get(&self, j: usize, k: usize) -> f64 {
        let (a, b) = if j < k { (j, k) } else { (k, j) };
        match (a, b) {
            (0, 1) => self.r12,
            (0, 2) => self.r13,
            (0, 3) => self.r14,
            (1, 2) => self.r23,
            (1, 3) => self.r24,
            (2, 3) => self.r34,
            _ => panic!("invalid particle pair ({j}, {k})"),
        }
    }

    /// Sides of the triangle formed by the three particles other than `i`.
    pub fn triangle_sides(&self, i: usize) -> [f64; 3] {
        let others: Vec<usize> = (0..4).filter(|j| *j != i).collect();
        [
            self.get(others[0], others[1]),
            self.get(others[0], others[2]),
            self.get(others[1], others[2]),
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().iter().copied().fold(0.0, f64::max)
    }

    pub fn permuted(&self, perm: &[usize; 4]) -> Self {
        Self {
            r12: self.get(perm[0], perm[1]),
            r13: self.get(perm[0], perm[2]),
            r14: self.get(perm[0], perm[3]),
            r23: self.get(perm[1], perm[2]),
            r24: self.get(perm[1], perm[3]),
            r34: self.get(perm[2], perm[3]),
        }
    }

    /// Strict triangle inequality over all four particle triples.
    pub fn triangles_valid(&self, tol: f64) -> bool {
        (0..4).all(|i| {
            let [a, b, c] = self.triangle_sides(i);
            a + b - c > -tol && b + c - a > -tol && c + a - b > -tol
        })
    }
}

/// Doubled directed areas `S_1..S_4` of the four triangles, signs inherited
/// from the generating weighted areas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedAreas {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
}

impl SignedAreas {
    pub fn new(s1: f64, s2: f64, s3: f64, s4: f64) -> Self {
        Self { s1, s2, s3, s4 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }

    pub fn get(&self, i: usize) -> f64 {
        self.as_array()[i]
    }

    pub fn sum(&self) -> f64 {
        self.s1 + self.s2 + self.s3 + self.s4
    }

    pub fn permuted(&self, perm: &[usize; 4]) -> Self {
        let s = self.as_array();
        Self::new(s[perm[0]], s[perm[1]], s[perm[2]], s[perm[3]])
    }
}

/// Relative residuals of the independent equations a solved configuration
/// must satisfy. All entries are nonnegative and dimensionless; see
/// `solver::verify` for the exact definitions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ResidualReport {
    /// `|S1+S2+S3+S4|` relative to the total unsigned area.
    pub plane_sum: f64,
    /// Quadratic flatness constraint `|sum_ij r_ij^2 S_i S_j|`, relative.
    pub quad_constraint: f64,
    /// Worst of the six pairwise central-configuration conditions.
    pub laura_andoyer: f64,
    /// Worst per-particle deviation from acceleration ∝ position.
    pub central_eq: f64,
    /// Worst deviation from 1 of the distance-only expressions for sigma.
    pub sigma_identity: f64,
}

impl ResidualReport {
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.plane_sum,
            self.quad_constraint,
            self.laura_andoyer,
            self.central_eq,
            self.sigma_identity,
        ]
    }

    pub fn max_entry(&self) -> f64 {
        self.as_array().iter().copied().fold(0.0, f64::max)
    }
}

/// A fully solved planar central configuration.
#[derive(Debug, Clone)]
pub struct CentralConfig {
    /// Canonically oriented input areas.
    pub areas_in: WeightedAreas,
    /// Dziobek multiplier; always negative for a physical solution.
    pub lambda: f64,
    /// Always 1 in normalized units.
    pub sigma: f64,
    pub distances: DistanceSet,
    pub signed_areas: SignedAreas,
    pub masses: [f64; 4],
    /// Planar coordinates with the center of mass at the origin.
    pub coords: [Vec2; 4],
    pub classification: Classification,
    pub diagnostics: ResidualReport,
    /// Other validated lambda roots found in the bracket, if any. The paper's
    /// uniqueness observation is empirical, so alternates are surfaced
    /// rather than dropped.
    pub other_roots: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum LimitKind {
    EulerConvex,
    LagrangeConcave,
    LagrangeConvex,
    Coorbital,
    GeneralLagrange,
    GeneralEulerCollinear,
    GeneralCoorbital,
    Maxwell1p3,
}

/// Output of an asymptotic-case solve. Distance sets may contain degenerate
/// (collinear) triples; `lambda_or_product` is the finite quantity that
/// survives the limit: lambda itself, or `lambda * A_k` when `A_k` blows up.
#[derive(Debug, Clone)]
pub struct LimitSolution {
    pub kind: LimitKind,
    pub distances: DistanceSet,
    pub lambda_or_product: f64,
    /// Named auxiliary scalars (angles, ratios, limiting masses).
    pub aux: BTreeMap<String, f64>,
}

impl LimitSolution {
    pub fn aux_value(&self, key: &str) -> Option<f64> {
        self.aux.get(key).copied()
    }
}

/// `|x - y| <= tol * max(|x|, |y|)`, with exact equality always accepted.
pub fn nearly_equal(x: f64, y: f64, tol: f64) -> bool {
    x == y || (x - y).abs() <= tol * x.abs().max(y.abs())
}
