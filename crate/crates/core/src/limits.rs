//! Asymptotic limiting configurations: the kite cases where one area
//! constant runs to zero or infinity, their general-mass analogues, and the
//! equal-mass coorbital (1+3) angles. Every case reduces to one bracketed
//! scalar root solve on an analytically justified interval.

use std::collections::BTreeMap;

use crate::geometry::heron_doubled_area_clamped;
use crate::model::{DistanceSet, LimitKind, LimitSolution, PAIRS};
use crate::root::{brent, scan_candidates, Candidate};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LimitError {
    #[error("no root of the limit equation in its bracket")]
    NoRoot,
    #[error("parameters outside the valid domain: {0}")]
    DomainError(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Sign of a weighted area running to infinity in a vanishing-mass limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaAtInfinity {
    Positive,
    Negative,
}

const ROOT_TOL: f64 = 1e-15;
const ROOT_ITERS: usize = 200;
const EDGE: f64 = 1e-8;

fn refine_all<F: FnMut(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, cells: usize) -> Vec<f64> {
    scan_candidates(f, lo, hi, cells)
        .into_iter()
        .filter_map(|c| match c {
            Candidate::Exact(x) => Some(x),
            Candidate::Bracket(a, b) => brent(f, a, b, ROOT_TOL, ROOT_ITERS),
        })
        .collect()
}

fn first_root<F: FnMut(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, cells: usize) -> Result<f64, LimitError> {
    refine_all(f, lo, hi, cells).into_iter().next().ok_or(LimitError::NoRoot)
}

fn require(cond: bool, msg: &str) -> Result<(), LimitError> {
    if cond {
        Ok(())
    } else {
        Err(LimitError::DomainError(msg.into()))
    }
}

fn dziobek_distance(lambda: f64, product: f64) -> f64 {
    (1.0 + lambda * product).cbrt().recip()
}

/// The boundary of the concave kite family where particles 1, 4, 3 become
/// collinear with 4 at the midpoint (`r41 = r31/2`), leaving an Euler
/// three-body configuration as the mass of particle 2 vanishes.
///
/// Returns the closed-form limiting `lambda = -7/(8 A1^2 - A1 A4)` and the
/// minimum admissible ratio `x = A2/A1` (in `aux["x"]`), the root of
/// `(8A1 - A4 - 7A1 x)^(-2/3) - (8A1 - A4 - 7A4 x)^(-2/3) = (8A1 - 8A4)^(-2/3)`.
pub fn euler_convex_limit(a1: f64, a4: f64) -> Result<LimitSolution, LimitError> {
    require(a1.is_finite() && a4.is_finite() && a1 > 0.0 && a4 < 0.0, "need a1 > 0 > a4")?;
    let lambda = -7.0 / (8.0 * a1 * a1 - a1 * a4);
    let rhs = (8.0 * a1 - 8.0 * a4).powf(-2.0 / 3.0);
    let f = |x: f64| {
        (8.0 * a1 - a4 - 7.0 * a1 * x).powf(-2.0 / 3.0)
            - (8.0 * a1 - a4 - 7.0 * a4 * x).powf(-2.0 / 3.0)
            - rhs
    };
    // f is monotone increasing from -rhs at 0+ to +infinity at x_max-
    let x_max = (8.0 * a1 - a4) / (7.0 * a1);
    let x = first_root(f, 1e-12 * x_max, x_max * (1.0 - 1e-12), 512)?;

    let a = [a1, x * a1, a1, a4];
    let mut r = [0.0f64; 6];
    for (idx, &(j, k)) in PAIRS.iter().enumerate() {
        r[idx] = dziobek_distance(lambda, a[j] * a[k]);
    }
    let distances = DistanceSet::from_array(r).expect("positive limit distances");
    let mut aux = BTreeMap::new();
    aux.insert("x".into(), x);
    aux.insert("lambda".into(), lambda);
    Ok(LimitSolution {
        kind: LimitKind::EulerConvex,
        distances,
        lambda_or_product: lambda,
        aux,
    })
}

/// Concave kite limit `A2 -> +infinity`: particles 1, 3, 4 settle into a unit
/// equilateral triangle while `m2 -> 0` beyond vertex 4. Solves
/// `A4/A1 = (r42^-3 - 1) / ((1 + r42^2 + r42 sqrt(3))^(-3/2) - 1)` for
/// `r42 in (0, 1)`; the finite product `lambda * A2 = (r42^-3 - 1)/A4 < 0`
/// is returned in `lambda_or_product`.
pub fn lagrange_concave_limit(a1: f64, a4: f64) -> Result<LimitSolution, LimitError> {
    require(a1.is_finite() && a4.is_finite() && a1 > 0.0 && a4 < 0.0, "need a1 > 0 > a4")?;
    let s3 = 3f64.sqrt();
    let target = a4 / a1;
    let f = |r: f64| {
        let r12sq = 1.0 + r * r + r * s3;
        (r.powi(-3) - 1.0) / (r12sq.powf(-1.5) - 1.0) - target
    };
    let r42 = first_root(f, EDGE, 1.0 - 1e-12, 512)?;
    let r12 = (1.0 + r42 * r42 + r42 * s3).sqrt();
    let product = (r42.powi(-3) - 1.0) / a4;

    let distances = DistanceSet::new(r12, 1.0, 1.0, r12, r42, 1.0).expect("positive");
    let mut aux = BTreeMap::new();
    aux.insert("r42".into(), r42);
    aux.insert("r12".into(), r12);
    Ok(LimitSolution {
        kind: LimitKind::LagrangeConcave,
        distances,
        lambda_or_product: product,
        aux,
    })
}

/// Convex kite limit `A4 -> -infinity`: particles 1, 2, 3 settle into a unit
/// equilateral triangle while `m4 -> 0` beyond the side 13. Solves
/// `A1/A2 = ((1 + r42^2 - r42 sqrt(3))^(-3/2) - 1) / (r42^-3 - 1)` for
/// `r42 in (1, sqrt(3))`; the finite product `lambda * A4 = (r42^-3 - 1)/A2 > 0`
/// is returned in `lambda_or_product`.
pub fn lagrange_convex_limit(a1: f64, a2: f64) -> Result<LimitSolution, LimitError> {
    require(a1.is_finite() && a2.is_finite() && a1 > 0.0 && a2 < 0.0, "need a1 > 0 > a2")?;
    let s3 = 3f64.sqrt();
    let target = a1 / a2;
    let f = |r: f64| {
        let r41sq = 1.0 + r * r - r * s3;
        (r41sq.powf(-1.5) - 1.0) / (r.powi(-3) - 1.0) - target
    };
    let r42 = first_root(f, 1.0 + 1e-12, s3 - 1e-12, 512)?;
    let r41 = (1.0 + r42 * r42 - r42 * s3).sqrt();
    let product = (r42.powi(-3) - 1.0) / a2;

    let distances = DistanceSet::new(1.0, 1.0, r41, 1.0, r42, r41).expect("positive");
    let mut aux = BTreeMap::new();
    aux.insert("r42".into(), r42);
    aux.insert("r41".into(), r41);
    Ok(LimitSolution {
        kind: LimitKind::LagrangeConvex,
        distances,
        lambda_or_product: product,
        aux,
    })
}

/// Kite limit `A4 -> 0^-`: the three satellites 1, 2, 3 land on a unit
/// circle centered on particle 4, whose mass diverges. With `theta` the
/// angle subtended at the center between particles 1 and 2 (`r12 = 2
/// sin(theta/2)`, `r31 = 2 sin(theta)`), solves
/// `A2/A3 = (r12^-3 - 1) / (r31^-3 - 1)`; `a2 < 0` selects the convex branch
/// `theta in (pi/6, pi/3)`, `a2 > 0` the concave branch `(pi/3, 5pi/6)`.
/// The limiting `lambda = (r12^-3 - 1)/(A1 A2)` sits in `lambda_or_product`;
/// `aux` carries `theta` and the limiting satellite masses.
pub fn coorbital_limit(a1: f64, a2: f64) -> Result<LimitSolution, LimitError> {
    require(a1.is_finite() && a2.is_finite() && a1 > 0.0, "need finite a1 > 0")?;
    if a2 == 0.0 {
        return Err(LimitError::InvalidInput("a2 must be nonzero".into()));
    }
    let q = a2 / a1;
    let f = |theta: f64| {
        let r12 = 2.0 * (theta / 2.0).sin();
        let r31 = 2.0 * theta.sin();
        (r12.powi(-3) - 1.0) / (r31.powi(-3) - 1.0) - q
    };
    use std::f64::consts::PI;
    let (lo, hi) = if q < 0.0 {
        (PI / 6.0, PI / 3.0)
    } else {
        (PI / 3.0, 5.0 * PI / 6.0)
    };
    let theta = first_root(f, lo + EDGE, hi - EDGE, 1024)?;
    let r12 = 2.0 * (theta / 2.0).sin();
    let r31 = 2.0 * theta.sin();
    if r12 >= 2.0 {
        return Err(LimitError::DomainError("satellite chord r12 >= 2".into()));
    }
    let lambda = (r12.powi(-3) - 1.0) / (a1 * a2);

    let distances = DistanceSet::new(r12, r31, 1.0, r12, 1.0, 1.0).expect("positive");
    // limiting satellite masses m_j = S_j / A_j (the central mass diverges)
    let s1 = heron_doubled_area_clamped(r12, 1.0, 1.0) * a1.signum();
    let s2 = heron_doubled_area_clamped(r31, 1.0, 1.0) * a2.signum();
    let mut aux = BTreeMap::new();
    aux.insert("theta".into(), theta);
    aux.insert("m1".into(), s1 / a1);
    aux.insert("m2".into(), s2 / a2);
    aux.insert("m3".into(), s1 / a1);
    Ok(LimitSolution {
        kind: LimitKind::Coorbital,
        distances,
        lambda_or_product: lambda,
        aux,
    })
}

/// The two non-trivial equal-mass coorbital angles: roots in `(0, pi)` of
/// `1 - 1/(8 |sin^3(theta/2)|) + 2 cos(theta) [1 - 1/(8 |sin^3 theta|)] = 0`,
/// excluding the evenly-spaced ring at `theta = 2 pi/3`.
pub fn maxwell_1p3_roots() -> (f64, f64) {
    use std::f64::consts::PI;
    let f = |theta: f64| {
        let sh = (theta / 2.0).sin().abs();
        let s = theta.sin().abs();
        1.0 - 1.0 / (8.0 * sh * sh * sh) + 2.0 * theta.cos() * (1.0 - 1.0 / (8.0 * s * s * s))
    };
    let trivial = 2.0 * PI / 3.0;
    let roots: Vec<f64> = refine_all(f, 0.05, PI - 0.05, 4096)
        .into_iter()
        .filter(|t| (t - trivial).abs() > 1e-6)
        .collect();
    assert!(
        roots.len() == 2,
        "expected exactly two non-trivial coorbital angles, found {roots:?}"
    );
    (roots[0], roots[1])
}

/// General vanishing-mass Lagrange limit: one weighted area runs to
/// `sign * infinity`, its particle's mass vanishes, and the retained three
/// particles settle into a unit equilateral triangle. The finite product
/// `p = lambda * A_vanishing` solves the flatness constraint; the three
/// distances from the vanishing particle are `(1 + p A_j)^(-1/3)`.
pub fn general_lagrange_limit(
    retained: [f64; 3],
    vanishing: AreaAtInfinity,
) -> Result<LimitSolution, LimitError> {
    if retained.iter().any(|a| !a.is_finite() || *a == 0.0) {
        return Err(LimitError::InvalidInput(
            "retained areas must be finite and nonzero".into(),
        ));
    }
    let s4_sign = match vanishing {
        AreaAtInfinity::Positive => 1.0,
        AreaAtInfinity::Negative => -1.0,
    };
    if retained.iter().all(|a| a.signum() == s4_sign) {
        return Err(LimitError::InvalidInput(
            "all four signs equal: no planar configuration".into(),
        ));
    }

    // the whole problem is invariant under flipping all four signs, with
    // p -> -p; reduce the positive-infinity case to the negative one
    if vanishing == AreaAtInfinity::Positive {
        let flipped = [-retained[0], -retained[1], -retained[2]];
        let mut sol = general_lagrange_limit(flipped, AreaAtInfinity::Negative)?;
        sol.lambda_or_product = -sol.lambda_or_product;
        return Ok(sol);
    }

    // lambda < 0 and the vanishing area is negative, so p > 0
    let g = |p: f64| general_lagrange_residual(&retained, s4_sign, p);
    let valid = |p: &f64| general_lagrange_valid(&retained, s4_sign, *p);
    let bound = retained
        .iter()
        .filter(|a| **a < 0.0)
        .fold(f64::INFINITY, |m, a| m.min(-1.0 / a));
    let p = if bound.is_finite() {
        refine_all(g, EDGE * EDGE, bound * (1.0 - EDGE), 2048)
            .into_iter()
            .find(valid)
    } else {
        // all retained positive: expand the scan until a valid root shows up
        let mut hi = 1.0;
        let mut found = None;
        while found.is_none() && hi < 1e7 {
            hi *= 4.0;
            found = refine_all(g, EDGE * EDGE, hi, 2048).into_iter().find(valid);
        }
        found
    };
    let p = p.ok_or(LimitError::NoRoot)?;

    let spokes: Vec<f64> = retained.iter().map(|a| dziobek_distance(1.0, p * a)).collect();
    let distances =
        DistanceSet::new(1.0, 1.0, spokes[0], 1.0, spokes[1], spokes[2]).expect("positive");
    let mut aux = BTreeMap::new();
    aux.insert("r14".into(), spokes[0]);
    aux.insert("r24".into(), spokes[1]);
    aux.insert("r34".into(), spokes[2]);
    for (i, a) in retained.iter().enumerate() {
        let [x, y, z] = distances.triangle_sides(i);
        let s = heron_doubled_area_clamped(x, y, z) * a.signum();
        aux.insert(format!("m{}", i + 1), s / a);
    }
    Ok(LimitSolution {
        kind: LimitKind::GeneralLagrange,
        distances,
        lambda_or_product: p,
        aux,
    })
}

fn general_lagrange_residual(retained: &[f64; 3], s4_sign: f64, p: f64) -> f64 {
    let mut spokes = [0.0f64; 3];
    for (i, a) in retained.iter().enumerate() {
        let v = 1.0 + p * a;
        if v <= 0.0 {
            return f64::NAN;
        }
        spokes[i] = v.cbrt().recip();
    }
    let d = DistanceSet {
        r12: 1.0,
        r13: 1.0,
        r14: spokes[0],
        r23: 1.0,
        r24: spokes[1],
        r34: spokes[2],
    };
    let mut s = [0.0f64; 4];
    for i in 0..3 {
        let [x, y, z] = d.triangle_sides(i);
        s[i] = heron_doubled_area_clamped(x, y, z) * retained[i].signum();
    }
    s[3] = heron_doubled_area_clamped(1.0, 1.0, 1.0) * s4_sign;
    let mut g = 0.0;
    for &(j, k) in PAIRS.iter() {
        let r = d.get(j, k);
        g += 2.0 * r * r * s[j] * s[k];
    }
    g
}

fn general_lagrange_valid(retained: &[f64; 3], s4_sign: f64, p: f64) -> bool {
    let mut spokes = [0.0f64; 3];
    for (i, a) in retained.iter().enumerate() {
        let v = 1.0 + p * a;
        if v <= 0.0 {
            return false;
        }
        spokes[i] = v.cbrt().recip();
    }
    let d = DistanceSet {
        r12: 1.0,
        r13: 1.0,
        r14: spokes[0],
        r23: 1.0,
        r24: spokes[1],
        r34: spokes[2],
    };
    // every triangle with the vanishing particle must be realizable
    let mut s = [0.0f64; 4];
    for i in 0..3 {
        let [x, y, z] = d.triangle_sides(i);
        s[i] = heron_doubled_area_clamped(x, y, z) * retained[i].signum();
        if s[i].abs() <= 1e-12 {
            return false;
        }
    }
    s[3] = heron_doubled_area_clamped(1.0, 1.0, 1.0) * s4_sign;
    // and the whole distance set must be realizable by coplanar points;
    // this rejects the spurious all-unit-distances zero of the quad form
    let areas = crate::model::SignedAreas::new(s[0], s[1], s[2], s[3]);
    crate::geometry::embed(&d, &areas, &[1.0; 4]).is_ok()
}

/// General vanishing-mass Euler limit: three particles with known weighted
/// areas become collinear (the middle one carries the odd sign) and the
/// fourth mass vanishes at finite weighted area. Stage one solves the
/// collinearity condition for lambda; stage two solves the flatness
/// constraint for the fourth area (`aux["a4"]`), which bounds how far that
/// constant can be pushed before the family terminates.
pub fn general_euler_limit(a_collinear: [f64; 3]) -> Result<LimitSolution, LimitError> {
    if a_collinear.iter().any(|a| !a.is_finite() || *a == 0.0) {
        return Err(LimitError::InvalidInput(
            "collinear areas must be finite and nonzero".into(),
        ));
    }
    let negatives = a_collinear.iter().filter(|a| **a < 0.0).count();
    if negatives == 0 || negatives == 3 {
        return Err(LimitError::InvalidInput(
            "collinear trio needs one odd sign (the middle particle)".into(),
        ));
    }
    // canonical orientation: outer pair positive, middle negative
    let flipped = negatives == 2;
    let mut a = a_collinear;
    if flipped {
        for v in &mut a {
            *v = -*v;
        }
    }
    let middle = (0..3).position(|i| a[i] < 0.0).expect("one negative");
    let outer: Vec<usize> = (0..3).filter(|i| *i != middle).collect();

    // stage one: r(outer0, middle) + r(middle, outer1) = r(outer0, outer1)
    let pmax = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(j, k)| a[j] * a[k])
        .filter(|p| *p > 0.0)
        .fold(f64::NEG_INFINITY, f64::max);
    require(pmax.is_finite() && pmax > 0.0, "no positive pair product")?;
    let g1 = |lambda: f64| {
        let ram = dziobek_distance(lambda, a[outer[0]] * a[middle]);
        let rmc = dziobek_distance(lambda, a[middle] * a[outer[1]]);
        let rac = dziobek_distance(lambda, a[outer[0]] * a[outer[1]]);
        ram + rmc - rac
    };
    let width = 1.0 / pmax;
    let lambda = first_root(g1, -width * (1.0 - EDGE), -EDGE * width, 2048)?;

    // stage two: with the trio frozen, the flatness constraint fixes a4.
    // S4 = 0 exactly in this limit, so only the trio's cross terms remain.
    let trio_r = |j: usize, k: usize| dziobek_distance(lambda, a[j] * a[k]);
    let r01 = trio_r(0, 1);
    let r02 = trio_r(0, 2);
    let r12 = trio_r(1, 2);
    let g2 = |av: f64| general_euler_stage2(&a, lambda, (r01, r02, r12), av);
    let pos_bound = a
        .iter()
        .filter(|v| **v > 0.0)
        .fold(f64::INFINITY, |m, v| m.min(1.0 / (lambda.abs() * v)));
    let neg_bound = a
        .iter()
        .filter(|v| **v < 0.0)
        .fold(f64::INFINITY, |m, v| m.min(1.0 / (lambda.abs() * -v)));
    let lo = -neg_bound * (1.0 - EDGE);
    let hi = pos_bound * (1.0 - EDGE);
    let mut roots = refine_all(g2, lo, hi, 4096);
    roots.retain(|av| av.abs() > 1e-10);
    // prefer the positive branch (the continuation of a concave family)
    let a4 = roots
        .iter()
        .copied()
        .find(|av| *av > 0.0)
        .or_else(|| roots.first().copied())
        .ok_or(LimitError::NoRoot)?;

    let spoke = |j: usize| dziobek_distance(lambda, a4 * a[j]);
    let distances = DistanceSet {
        r12: r01,
        r13: r02,
        r14: spoke(0),
        r23: r12,
        r24: spoke(1),
        r34: spoke(2),
    };
    let orient = if flipped { -1.0 } else { 1.0 };
    let mut aux = BTreeMap::new();
    aux.insert("lambda".into(), lambda);
    aux.insert("a4".into(), orient * a4);
    aux.insert(
        "x".into(),
        distances.get(middle, outer[1]) / distances.get(outer[0], middle),
    );
    for i in 0..3 {
        let [x, y, z] = distances.triangle_sides(i);
        let s = heron_doubled_area_clamped(x, y, z) * a[i].signum();
        aux.insert(format!("m{}", i + 1), s / a[i]);
    }
    Ok(LimitSolution {
        kind: LimitKind::GeneralEulerCollinear,
        distances,
        lambda_or_product: lambda,
        aux,
    })
}

fn general_euler_stage2(a: &[f64; 3], lambda: f64, trio: (f64, f64, f64), av: f64) -> f64 {
    let (r01, r02, r12) = trio;
    let mut spokes = [0.0f64; 3];
    for i in 0..3 {
        let v = 1.0 + lambda * av * a[i];
        if v <= 0.0 {
            return f64::NAN;
        }
        spokes[i] = v.cbrt().recip();
    }
    // S_i for trio members: triangle of the other two trio particles and the
    // vanishing one; the trio's own (collinear) triangle contributes S4 = 0.
    let s0 = heron_doubled_area_clamped(r12, spokes[1], spokes[2]) * a[0].signum();
    let s1 = heron_doubled_area_clamped(r02, spokes[0], spokes[2]) * a[1].signum();
    let s2 = heron_doubled_area_clamped(r01, spokes[0], spokes[1]) * a[2].signum();
    r01 * r01 * s0 * s1 + r02 * r02 * s0 * s2 + r12 * r12 * s1 * s2
}

/// General coorbital limit: one weighted area tends to zero, its mass
/// diverges, and the three satellites (given areas) sit on a unit circle
/// around it. Lambda solves the flatness constraint with all three spokes
/// frozen at 1; the satellite separation angles land in `aux`.
pub fn general_coorbital_limit(satellites: [f64; 3]) -> Result<LimitSolution, LimitError> {
    if satellites.iter().any(|a| !a.is_finite() || *a == 0.0) {
        return Err(LimitError::InvalidInput(
            "satellite areas must be finite and nonzero".into(),
        ));
    }
    let pmax = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(j, k)| satellites[j] * satellites[k])
        .filter(|p| *p > 0.0)
        .fold(f64::NEG_INFINITY, f64::max);
    require(pmax.is_finite() && pmax > 0.0, "no positive satellite pair product")?;
    let width = 1.0 / pmax;

    for s4_sign in [1.0f64, -1.0] {
        let g = |lambda: f64| general_coorbital_residual(&satellites, s4_sign, lambda);
        for lambda in refine_all(g, -width * (1.0 - EDGE), -EDGE * width, 2048) {
            if let Some(sol) = general_coorbital_package(&satellites, s4_sign, lambda) {
                return Ok(sol);
            }
        }
    }
    Err(LimitError::NoRoot)
}

fn general_coorbital_distances(satellites: &[f64; 3], lambda: f64) -> Option<DistanceSet> {
    let chord = |j: usize, k: usize| {
        let v = 1.0 + lambda * satellites[j] * satellites[k];
        (v > 0.0).then(|| v.cbrt().recip())
    };
    Some(DistanceSet {
        r12: chord(0, 1)?,
        r13: chord(0, 2)?,
        r14: 1.0,
        r23: chord(1, 2)?,
        r24: 1.0,
        r34: 1.0,
    })
}

fn general_coorbital_residual(satellites: &[f64; 3], s4_sign: f64, lambda: f64) -> f64 {
    let Some(d) = general_coorbital_distances(satellites, lambda) else {
        return f64::NAN;
    };
    let mut s = [0.0f64; 4];
    for i in 0..3 {
        let [x, y, z] = d.triangle_sides(i);
        s[i] = heron_doubled_area_clamped(x, y, z) * satellites[i].signum();
    }
    let [x, y, z] = d.triangle_sides(3);
    s[3] = heron_doubled_area_clamped(x, y, z) * s4_sign;
    let mut g = 0.0;
    for &(j, k) in PAIRS.iter() {
        let r = d.get(j, k);
        g += 2.0 * r * r * s[j] * s[k];
    }
    g
}

fn general_coorbital_package(
    satellites: &[f64; 3],
    s4_sign: f64,
    lambda: f64,
) -> Option<LimitSolution> {
    let d = general_coorbital_distances(satellites, lambda)?;
    // every chord must be a real chord of the unit circle and every triangle
    // non-degenerate
    if d.r12 >= 2.0 || d.r13 >= 2.0 || d.r23 >= 2.0 {
        return None;
    }
    for i in 0..4 {
        let [x, y, z] = d.triangle_sides(i);
        if heron_doubled_area_clamped(x, y, z) <= 1e-10 {
            return None;
        }
    }
    // angle consistency: the three satellites must fit on one circle, i.e.
    // one central angle is the sum of the other two (massive center outside
    // the satellite triangle) or the three sum to a full turn (center inside).
    let th12 = 2.0 * (d.r12 / 2.0).asin();
    let th13 = 2.0 * (d.r13 / 2.0).asin();
    let th23 = 2.0 * (d.r23 / 2.0).asin();
    let full = std::f64::consts::TAU;
    let combos = [
        (th12 + th23 - th13).abs(),
        (th12 + th13 - th23).abs(),
        (th13 + th23 - th12).abs(),
        (th12 + th23 + th13 - full).abs(),
    ];
    let best = combos.iter().cloned().fold(f64::INFINITY, f64::min);
    if best > 1e-7 {
        return None;
    }
    let mut aux = BTreeMap::new();
    aux.insert("theta12".into(), th12);
    aux.insert("theta13".into(), th13);
    aux.insert("theta23".into(), th23);
    aux.insert("s4_sign".into(), s4_sign);
    Some(LimitSolution {
        kind: LimitKind::GeneralCoorbital,
        distances: d,
        lambda_or_product: lambda,
        aux,
    })
}
