//! The core algorithm: given four weighted directed areas, every mutual
//! distance is an explicit function of one unknown `lambda` through
//! `r_jk^-3 = 1 + lambda A_j A_k`. A flatness residual is scanned over the
//! admissible `lambda` bracket, each sign change is refined by Brent's
//! method, and every candidate is validated by actually embedding it in the
//! plane and checking the defining central-configuration equation from
//! coordinates and masses alone.

use crate::geometry::{
    self, distances_from_coords, embed, heron_signed_area, kite_residual_clamped,
    plane_sum_residual_rel, quad_planarity_residual, quad_planarity_residual_rel,
    signed_areas_from_coords, Vec2,
};
use crate::model::{
    CentralConfig, DistanceSet, Hull, ModelError, ResidualReport, SignedAreas, WeightedAreas,
    PAIRS,
};
use crate::root::{brent, scan_candidates, Candidate};

/// Grid cells for the sign-change scan; doubled once before giving up.
pub const DEFAULT_GRID_CELLS: usize = 1024;
/// Relative gate on the two flatness residuals checked after refinement.
pub const TOL_PLANE: f64 = 1e-9;
/// Gate on the coordinate-level central-equation residual.
pub const TOL_CENTRAL: f64 = 1e-8;

/// Which residual the lambda root-solve drives to zero. The quadratic
/// constraint is the general-purpose choice; the plane sum is an alternative;
/// the kite Pythagoras form is cheaper and better conditioned but only valid
/// for kite-symmetric inputs. All candidates are cross-checked against the
/// other residuals regardless of which one found them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RootResidual {
    QuadConstraint,
    PlaneSum,
    KitePythagoras,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Requested relative accuracy on the lambda root (refinement proceeds
    /// to machine precision when that is smaller).
    pub tol_root: f64,
    /// Iteration cap for one Brent refinement.
    pub max_iter: usize,
    /// Offset keeping the scan strictly inside the open bracket.
    pub bracket_margin: f64,
    /// `None` selects the Pythagoras residual for kite inputs and the
    /// quadratic constraint otherwise.
    pub residual_for_root: Option<RootResidual>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol_root: 1e-13,
            max_iter: 200,
            bracket_margin: 1e-9,
            residual_for_root: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("lambda outside the domain: some 1 + lambda*A_j*A_k <= 0")]
    OutOfDomain,
    #[error("no positive area product: empty lambda bracket")]
    EmptyBracket,
    #[error("no sign change of the flatness residual in the lambda bracket")]
    NoRoot,
    #[error("root(s) found but none is a physical configuration: {0}")]
    NonPhysicalRoot(String),
}

/// The six distances as functions of lambda: `r_jk = (1 + lambda A_j A_k)^(-1/3)`.
pub fn distances_from_lambda(a: &WeightedAreas, lambda: f64) -> Result<DistanceSet, SolveError> {
    let mut r = [0.0f64; 6];
    for (idx, &(j, k)) in PAIRS.iter().enumerate() {
        let v = 1.0 + lambda * a.product(j, k);
        if v <= 0.0 || !v.is_finite() {
            return Err(SolveError::OutOfDomain);
        }
        r[idx] = v.cbrt().recip();
    }
    Ok(DistanceSet::from_array(r).expect("distances are positive by construction"))
}

/// Heron areas at the given distances with signs inherited from the input
/// areas; impossible triples clamp to zero so scans stay total.
pub(crate) fn inherited_signed_areas(a: &WeightedAreas, d: &DistanceSet) -> SignedAreas {
    let mut s = [0.0f64; 4];
    for (i, v) in s.iter_mut().enumerate() {
        let [x, y, z] = d.triangle_sides(i);
        *v = geometry::heron_doubled_area_clamped(x, y, z) * a.get(i).signum();
    }
    SignedAreas::new(s[0], s[1], s[2], s[3])
}

/// The open interval of lambda on which all six distances are defined and
/// positive: `(-1/Pmax, 0)` with `Pmax` the largest positive area product,
/// shrunk by the default margin at both ends.
pub fn lambda_bracket(a: &WeightedAreas) -> Result<(f64, f64), SolveError> {
    lambda_bracket_with_margin(a, SolverOptions::default().bracket_margin)
}

fn lambda_bracket_with_margin(a: &WeightedAreas, margin: f64) -> Result<(f64, f64), SolveError> {
    let pmax = PAIRS
        .iter()
        .map(|&(j, k)| a.product(j, k))
        .filter(|p| *p > 0.0)
        .fold(f64::NEG_INFINITY, f64::max);
    if !pmax.is_finite() || pmax <= 0.0 {
        return Err(SolveError::EmptyBracket);
    }
    // keep the margin meaningful for very narrow brackets
    let width = 1.0 / pmax;
    let m = margin.min(0.25 * width);
    let (lo, hi) = (-width + m, -m);
    if lo >= hi {
        return Err(SolveError::EmptyBracket);
    }
    Ok((lo, hi))
}

/// Kite labeling for the Pythagoras residual: the equal-area pair, the two
/// axis particles (interior one second for concave hulls), and the hull.
fn kite_labels(a: &WeightedAreas) -> Option<((usize, usize), (usize, usize), Hull)> {
    let (i, k) = a.kite_pair()?;
    let axis: Vec<usize> = (0..4).filter(|x| *x != i && *x != k).collect();
    let hull = a.hull();
    let (j, l) = match hull {
        Hull::Concave => {
            if a.get(axis[0]) < 0.0 {
                (axis[1], axis[0])
            } else {
                (axis[0], axis[1])
            }
        }
        Hull::Convex => (axis[0], axis[1]),
    };
    Some(((i, k), (j, l), hull))
}

fn residual_kind(a: &WeightedAreas, opts: &SolverOptions) -> RootResidual {
    opts.residual_for_root.unwrap_or_else(|| {
        if a.kite_pair().is_some() {
            RootResidual::KitePythagoras
        } else {
            RootResidual::QuadConstraint
        }
    })
}

fn root_residual(a: &WeightedAreas, kind: RootResidual, lambda: f64) -> f64 {
    let d = match distances_from_lambda(a, lambda) {
        Ok(d) => d,
        Err(_) => return f64::NAN,
    };
    match kind {
        RootResidual::QuadConstraint => {
            let s = inherited_signed_areas(a, &d);
            quad_planarity_residual(&d, &s)
        }
        RootResidual::PlaneSum => inherited_signed_areas(a, &d).sum(),
        RootResidual::KitePythagoras => {
            let (pair, axis, hull) =
                kite_labels(a).expect("kite residual requested for a non-kite input");
            kite_residual_clamped(&d, pair, axis, hull)
        }
    }
}

/// Solves for the unique physical configuration. Scans the bracket for sign
/// changes of the selected residual, refines each, and keeps only candidates
/// that embed as genuine planar configurations with positive masses and a
/// small central-equation residual. If several survive, the one with the
/// smallest residual is returned and the rest are listed in `other_roots`.
pub fn solve(a: &WeightedAreas, opts: &SolverOptions) -> Result<CentralConfig, SolveError> {
    let (lo, hi) = lambda_bracket_with_margin(a, opts.bracket_margin)?;
    let kind = residual_kind(a, opts);
    let g = |x: f64| root_residual(a, kind, x);

    let mut any_candidates = false;
    for grid in [DEFAULT_GRID_CELLS, 2 * DEFAULT_GRID_CELLS] {
        let candidates = scan_candidates(g, lo, hi, grid);
        any_candidates |= !candidates.is_empty();
        let mut validated: Vec<CentralConfig> = Vec::new();
        for cand in candidates {
            let lambda = match cand {
                Candidate::Exact(x) => Some(x),
                Candidate::Bracket(x0, x1) => brent(g, x0, x1, opts.tol_root, opts.max_iter),
            };
            let Some(lambda) = lambda else { continue };
            if validated
                .iter()
                .any(|c| (c.lambda - lambda).abs() <= 1e-9 * lambda.abs())
            {
                continue;
            }
            if let Some(cfg) = validate_candidate(a, lambda) {
                validated.push(cfg);
            }
        }
        if !validated.is_empty() {
            validated.sort_by(|x, y| {
                x.diagnostics
                    .central_eq
                    .partial_cmp(&y.diagnostics.central_eq)
                    .unwrap()
            });
            let mut best = validated.remove(0);
            best.other_roots = validated.iter().map(|c| c.lambda).collect();
            return Ok(best);
        }
    }
    if any_candidates {
        Err(SolveError::NonPhysicalRoot(
            "all residual roots fail planarity, positivity, or centrality checks".into(),
        ))
    } else {
        Err(SolveError::NoRoot)
    }
}

/// Convenience wrapper taking raw area values.
pub fn solve_values(areas: [f64; 4], opts: &SolverOptions) -> Result<CentralConfig, SolveError> {
    solve(&WeightedAreas::from_array(areas)?, opts)
}

fn validate_candidate(a: &WeightedAreas, lambda: f64) -> Option<CentralConfig> {
    if !(lambda < 0.0) {
        return None;
    }
    let d = distances_from_lambda(a, lambda).ok()?;

    let mut s = [0.0f64; 4];
    for (i, v) in s.iter_mut().enumerate() {
        let [x, y, z] = d.triangle_sides(i);
        *v = heron_signed_area(x, y, z, a.get(i)).ok()?;
        if *v == 0.0 {
            return None; // degenerate triangle means a vanishing mass
        }
    }
    let s = SignedAreas::new(s[0], s[1], s[2], s[3]);

    // both flatness restrictions must hold at a physical root, not only the
    // one that was driven to zero
    let plane_rel = plane_sum_residual_rel(&s);
    let quad_rel = quad_planarity_residual_rel(&d, &s);
    if plane_rel > TOL_PLANE || quad_rel > TOL_PLANE {
        return None;
    }

    let mut masses = [0.0f64; 4];
    for (i, m) in masses.iter_mut().enumerate() {
        *m = s.get(i) / a.get(i);
        if !(*m > 0.0) || !m.is_finite() {
            return None;
        }
    }

    let embedding = embed(&d, &s, &masses).ok()?;
    let s_emb = signed_areas_from_coords(&embedding.points);
    let area_scale = d.max() * d.max();
    for i in 0..4 {
        if (s_emb.get(i) - s.get(i)).abs() > 1e-6 * area_scale {
            return None;
        }
    }

    let mut report = verify_coords(&embedding.points, &masses);
    report.plane_sum = report.plane_sum.max(plane_rel);
    report.quad_constraint = report.quad_constraint.max(quad_rel);
    if report.central_eq > TOL_CENTRAL {
        return None;
    }

    Some(CentralConfig {
        areas_in: *a,
        lambda,
        sigma: 1.0,
        distances: d,
        signed_areas: s,
        masses,
        coords: embedding.points,
        classification: a.classify(),
        diagnostics: report,
        other_roots: Vec::new(),
    })
}

/// The positive-definite expression for sigma in terms of masses and
/// distances; equals 1 for a normalized solution.
pub fn sigma_from_masses_distances(masses: &[f64; 4], d: &DistanceSet) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(j, k) in PAIRS.iter() {
        let mm = masses[j] * masses[k];
        let r = d.get(j, k);
        num += mm / r;
        den += mm * r * r;
    }
    num / den
}

/// Recomputes every independent residual from coordinates and masses only,
/// with no reference to how the configuration was produced.
pub fn verify(c: &CentralConfig) -> ResidualReport {
    verify_coords(&c.coords, &c.masses)
}

/// See [`verify`]; this is the raw form used when the configuration comes
/// from a serialized record rather than a solve.
pub fn verify_coords(points: &[Vec2; 4], masses: &[f64; 4]) -> ResidualReport {
    let d = distances_from_coords(points);
    let s = signed_areas_from_coords(points);
    let central_eq = central_residual_with_distances(points, masses, &d);
    let areas: Vec<f64> = (0..4).map(|i| s.get(i) / masses[i]).collect();
    let laura_andoyer = laura_andoyer_residual(&areas, &d);
    let sigma_identity = sigma_identity_residual(&d);
    ResidualReport {
        plane_sum: plane_sum_residual_rel(&s),
        quad_constraint: quad_planarity_residual_rel(&d, &s),
        laura_andoyer,
        central_eq,
        sigma_identity,
    }
}

/// Residual report for a stored record: the coordinate route of
/// [`verify_coords`] combined, entry by entry, with residuals recomputed
/// from the record's own distance and signed-area fields, so corruption in
/// any stored field surfaces in the report.
pub fn verify_record_parts(
    points: &[Vec2; 4],
    masses: &[f64; 4],
    stored_d: &DistanceSet,
    stored_s: &SignedAreas,
) -> ResidualReport {
    let mut rep = verify_coords(points, masses);
    rep.central_eq = rep
        .central_eq
        .max(central_residual_with_distances(points, masses, stored_d));
    rep.plane_sum = rep.plane_sum.max(plane_sum_residual_rel(stored_s));
    rep.quad_constraint = rep
        .quad_constraint
        .max(quad_planarity_residual_rel(stored_d, stored_s));
    let areas: Vec<f64> = (0..4).map(|i| stored_s.get(i) / masses[i]).collect();
    rep.laura_andoyer = rep.laura_andoyer.max(laura_andoyer_residual(&areas, stored_d));
    rep.sigma_identity = rep.sigma_identity.max(sigma_identity_residual(stored_d));
    rep
}

/// Worst per-particle relative deviation from `B r_i = sum_j m_j (r_j - r_i) / r_ij^3`
/// with `B = -sigma(m, r) * sum(m)`. Distances for the force denominators are
/// passed separately so stored records can be cross-checked against their own
/// distance fields.
pub fn central_residual_with_distances(
    points: &[Vec2; 4],
    masses: &[f64; 4],
    d: &DistanceSet,
) -> f64 {
    let sigma = sigma_from_masses_distances(masses, d);
    let total: f64 = masses.iter().sum();
    let b = -sigma * total;
    let mut accs = [Vec2::default(); 4];
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let rij = d.get(i, j);
            accs[i] = accs[i] + (points[j] - points[i]) * (masses[j] / (rij * rij * rij));
        }
    }
    let scale = accs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return f64::INFINITY;
    }
    (0..4)
        .map(|i| (points[i] * b - accs[i]).norm() / scale)
        .fold(0.0, f64::max)
}

/// Worst relative residual of the six pairwise conditions
/// `A_a (u^-3 - v^-3) = A_b (w^-3 - z^-3)`.
fn laura_andoyer_residual(areas: &[f64], d: &DistanceSet) -> f64 {
    let rc = |j: usize, k: usize| d.get(j, k).powi(-3);
    // (a, u, v, b, w, z) in 0-based labels
    let conds: [(usize, (usize, usize), (usize, usize), usize, (usize, usize), (usize, usize)); 6] = [
        (3, (2, 0), (0, 1), 0, (3, 2), (3, 1)),
        (3, (0, 1), (1, 2), 1, (3, 0), (3, 2)),
        (3, (1, 2), (2, 0), 2, (3, 1), (3, 0)),
        (2, (3, 1), (0, 1), 1, (3, 2), (2, 0)),
        (0, (3, 2), (1, 2), 2, (3, 0), (0, 1)),
        (1, (3, 0), (2, 0), 0, (3, 1), (1, 2)),
    ];
    let mut worst = 0.0f64;
    for &(ia, u, v, ib, w, z) in conds.iter() {
        let (aa, ab) = (areas[ia], areas[ib]);
        let (fu, fv, fw, fz) = (rc(u.0, u.1), rc(v.0, v.1), rc(w.0, w.1), rc(z.0, z.1));
        let lhs = aa * (fu - fv);
        let rhs = ab * (fw - fz);
        let scale = aa.abs() * (fu + fv) + ab.abs() * (fw + fz);
        if scale > 0.0 {
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    worst
}

/// Worst deviation from 1 among the three distance-only expressions for
/// sigma. Expressions whose denominator nearly cancels (as happens for every
/// symmetric configuration) are skipped: they are 0/0 forms there.
fn sigma_identity_residual(d: &DistanceSet) -> f64 {
    let rc = |j: usize, k: usize| d.get(j, k).powi(-3);
    let exprs = [
        ((0, 1), (2, 3), (1, 2), (0, 3)),
        ((0, 2), (1, 3), (0, 1), (2, 3)),
        ((1, 2), (0, 3), (0, 2), (1, 3)),
    ];
    let mut worst = 0.0f64;
    for &(p, q, u, v) in exprs.iter() {
        let (fp, fq, fu, fv) = (rc(p.0, p.1), rc(q.0, q.1), rc(u.0, u.1), rc(v.0, v.1));
        let num = fp * fq - fu * fv;
        let den = fp + fq - fu - fv;
        let den_scale = fp + fq + fu + fv;
        if den.abs() > 1e-4 * den_scale {
            worst = worst.max((num / den - 1.0).abs());
        }
    }
    worst
}

/// Checks the distance-ordering theorems after relabeling to the canonical
/// order (concave: `A1 >= A2 >= A3 > 0 > A4`; convex: `A1 >= A3 > 0 > A2 >= A4`
/// with diagonals (1,3) and (2,4)).
pub fn ordering_check(c: &CentralConfig) -> bool {
    let a = c.areas_in.values();
    let ge = |x: f64, y: f64| x >= y - 1e-9 * x.abs().max(y.abs()).max(1.0);
    let mut pos: Vec<usize> = (0..4).filter(|i| a[*i] > 0.0).collect();
    let mut neg: Vec<usize> = (0..4).filter(|i| a[*i] < 0.0).collect();
    pos.sort_by(|&x, &y| a[y].partial_cmp(&a[x]).unwrap());
    neg.sort_by(|&x, &y| a[y].partial_cmp(&a[x]).unwrap());
    match c.classification.hull {
        Hull::Concave => {
            let perm = [pos[0], pos[1], pos[2], neg[0]];
            let d = c.distances.permuted(&perm);
            let chain = [d.r12, d.r13, d.r23, 1.0, d.r34, d.r24, d.r14];
            chain.windows(2).all(|w| ge(w[0], w[1]))
        }
        Hull::Convex => {
            let perm = [pos[0], neg[0], pos[1], neg[1]];
            let d = c.distances.permuted(&perm);
            let chain_a = [1.0, d.r23, d.r12, d.r14];
            let chain_b = [1.0, d.r23, d.r34, d.r14];
            chain_a.windows(2).all(|w| ge(w[0], w[1]))
                && chain_b.windows(2).all(|w| ge(w[0], w[1]))
        }
    }
}
