//! Symmetry characterizations on solved configurations.
//!
//! Each symmetry is an iff statement: an exact equality pattern among the
//! input areas on one side, a set of distance/area/mass equalities on the
//! other. The checks here test the area pattern (over all relabelings) and
//! then *assert* the geometric side, so a true result certifies both.

use crate::model::{nearly_equal, CentralConfig, TOL_AREA_EQ};

/// Relative tolerance for the geometric equalities, which carry root-solve
/// error on top of the exact input pattern.
pub const TOL_GEOM_EQ: f64 = 1e-9;

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let idx = [0usize, 1, 2, 3];
    for i in 0..4 {
        for j in 0..4 {
            if j == i {
                continue;
            }
            for k in 0..4 {
                if k == i || k == j {
                    continue;
                }
                let l = 6 - i - j - k;
                out.push([idx[i], idx[j], idx[k], idx[l]]);
            }
        }
    }
    out
}

fn geom_eq(x: f64, y: f64) -> bool {
    nearly_equal(x, y, TOL_GEOM_EQ)
}

fn area_eq(x: f64, y: f64) -> bool {
    nearly_equal(x, y, TOL_AREA_EQ)
}

/// Kite symmetry: some `A_i = A_j`, which must force (with labels so the
/// equal pair is (1,3)) `r12 = r23`, `r41 = r43`, `S1 = S3`, `m1 = m3`.
pub fn check_kite(c: &CentralConfig) -> bool {
    for perm in permutations() {
        let a = c.areas_in.permuted(&perm).values();
        if !area_eq(a[0], a[2]) {
            continue;
        }
        let d = c.distances.permuted(&perm);
        let s = c.signed_areas.permuted(&perm);
        let m = [
            c.masses[perm[0]],
            c.masses[perm[1]],
            c.masses[perm[2]],
            c.masses[perm[3]],
        ];
        if geom_eq(d.r12, d.r23)
            && geom_eq(d.r14, d.r34)
            && geom_eq(s.s1, s.s3)
            && geom_eq(m[0], m[2])
        {
            return true;
        }
    }
    false
}

/// Equilateral-triangle-plus-center symmetry: `A1 = A2 = A3`, forcing equal
/// outer sides, equal spokes with ratio `sqrt(3)`, `S1 = S2 = S3 = -S4/3`,
/// equal outer masses, and `A4/A1 = -3 m1/m4`.
pub fn check_equilateral_center(c: &CentralConfig) -> bool {
    for perm in permutations() {
        let a = c.areas_in.permuted(&perm).values();
        if !(area_eq(a[0], a[1]) && area_eq(a[1], a[2])) {
            continue;
        }
        let d = c.distances.permuted(&perm);
        let s = c.signed_areas.permuted(&perm);
        let m = [
            c.masses[perm[0]],
            c.masses[perm[1]],
            c.masses[perm[2]],
            c.masses[perm[3]],
        ];
        let sides = geom_eq(d.r12, d.r23) && geom_eq(d.r23, d.r13);
        let spokes = geom_eq(d.r14, d.r24) && geom_eq(d.r24, d.r34);
        let ratio = geom_eq(d.r12 / d.r14, 3f64.sqrt());
        let areas = geom_eq(s.s1, s.s2)
            && geom_eq(s.s2, s.s3)
            && geom_eq(s.s1, -s.s4 / 3.0);
        let masses = geom_eq(m[0], m[1]) && geom_eq(m[1], m[2]);
        let mass_area = geom_eq(a[3] / a[0], -3.0 * m[0] / m[3]);
        if d.r12 > d.r14 && sides && spokes && ratio && areas && masses && mass_area {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhombusClass {
    NotRhombus,
    Rhombus,
    Square,
}

/// Rhombus: `A1 = A3 > 0 > A2 = A4` up to relabeling, forcing four equal
/// sides and paired areas; a square additionally has `A1 A3 = A2 A4`, which
/// forces equal diagonals.
pub fn check_rhombus_square(c: &CentralConfig) -> RhombusClass {
    for perm in permutations() {
        let a = c.areas_in.permuted(&perm).values();
        if !(a[0] > 0.0 && area_eq(a[0], a[2]) && a[1] < 0.0 && area_eq(a[1], a[3])) {
            continue;
        }
        let d = c.distances.permuted(&perm);
        let s = c.signed_areas.permuted(&perm);
        let sides = geom_eq(d.r12, d.r23) && geom_eq(d.r23, d.r34) && geom_eq(d.r34, d.r14);
        let areas = geom_eq(s.s1, s.s3) && geom_eq(s.s1, -s.s2) && geom_eq(s.s1, -s.s4);
        if !(sides && areas) {
            continue;
        }
        if nearly_equal(a[0] * a[2], a[1] * a[3], TOL_AREA_EQ) {
            if geom_eq(d.r13, d.r24) {
                return RhombusClass::Square;
            }
        } else {
            return RhombusClass::Rhombus;
        }
    }
    RhombusClass::NotRhombus
}

/// Isosceles trapezium: `A1 = -A2` and `A3 = -A4` up to relabeling, forcing
/// `r31 = r42`, `r23 = r41`, paired areas and pairwise equal masses.
pub fn check_isosceles_trapezium(c: &CentralConfig) -> bool {
    for perm in permutations() {
        let a = c.areas_in.permuted(&perm).values();
        if !(area_eq(a[0], -a[1]) && area_eq(a[2], -a[3])) {
            continue;
        }
        let d = c.distances.permuted(&perm);
        let s = c.signed_areas.permuted(&perm);
        let m = [
            c.masses[perm[0]],
            c.masses[perm[1]],
            c.masses[perm[2]],
            c.masses[perm[3]],
        ];
        if geom_eq(d.r13, d.r24)
            && geom_eq(d.r23, d.r14)
            && geom_eq(s.s1, -s.s2)
            && geom_eq(s.s3, -s.s4)
            && geom_eq(m[0], m[1])
            && geom_eq(m[2], m[3])
        {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_values, SolverOptions};

    fn cfg(areas: [f64; 4]) -> CentralConfig {
        solve_values(areas, &SolverOptions::default()).unwrap()
    }

    #[test]
    fn kite_detection() {
        assert!(check_kite(&cfg([1.0, 1.0, 1.0, -1.0])));
        assert!(check_kite(&cfg([1.0, 2.0, 1.0, -1.0])));
        // equal pair in a different labeling
        assert!(check_kite(&cfg([2.0, 1.0, -1.0, 1.0])));
        assert!(!check_kite(&cfg([5.0, 6.0, 4.0, -8.0])));
    }

    #[test]
    fn equilateral_center_detection() {
        assert!(check_equilateral_center(&cfg([1.0, 1.0, 1.0, -1.0])));
        assert!(check_equilateral_center(&cfg([1.0, 1.0, 1.0, -5.0])));
        assert!(!check_equilateral_center(&cfg([1.0, 1.0, 1.5, -1.0])));
    }

    #[test]
    fn rhombus_and_square_detection() {
        assert_eq!(check_rhombus_square(&cfg([1.0, -1.0, 1.0, -1.0])), RhombusClass::Square);
        assert_eq!(check_rhombus_square(&cfg([1.0, -2.0, 1.0, -2.0])), RhombusClass::Rhombus);
        // equal diagonals are not enough without the rhombus pattern
        assert_eq!(check_rhombus_square(&cfg([2.0, -1.0, 2.0, -4.0])), RhombusClass::NotRhombus);
        assert_eq!(check_rhombus_square(&cfg([5.0, 6.0, 4.0, -8.0])), RhombusClass::NotRhombus);
    }

    #[test]
    fn square_diagonal_ratio() {
        let c = cfg([1.0, -1.0, 1.0, -1.0]);
        assert!((c.distances.r13 / c.distances.r12 - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn trapezium_detection() {
        assert!(check_isosceles_trapezium(&cfg([1.0, -1.0, 2.0, -2.0])));
        // the square is the degenerate special case
        assert!(check_isosceles_trapezium(&cfg([1.0, -1.0, 1.0, -1.0])));
        assert!(!check_isosceles_trapezium(&cfg([5.0, 6.0, 4.0, -8.0])));
    }

    #[test]
    fn trapezium_mass_pairing() {
        let c = cfg([1.0, -1.0, 2.0, -2.0]);
        assert!((c.masses[0] - c.masses[1]).abs() < 1e-9);
        assert!((c.masses[2] - c.masses[3]).abs() < 1e-9);
    }
}
