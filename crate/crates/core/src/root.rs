//! Bracketed scalar root finding: a uniform sign-change scan plus Brent
//! refinement. Derivative-free on purpose; the residuals involve Heron
//! square roots with unbounded slope near degeneracy.

/// A root candidate produced by scanning.
#[derive(Debug, Clone, Copy)]
pub enum Candidate {
    /// `f` changes sign across this subinterval.
    Bracket(f64, f64),
    /// `f` evaluated to exactly zero at a grid point.
    Exact(f64),
}

/// Scans `[lo, hi]` on `cells` uniform subintervals and returns every sign
/// change and exact grid zero, in increasing order.
pub fn scan_candidates<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, cells: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    let step = (hi - lo) / cells as f64;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    if prev_f == 0.0 {
        out.push(Candidate::Exact(lo));
    }
    for k in 1..=cells {
        let x = if k == cells { hi } else { lo + step * k as f64 };
        let fx = f(x);
        if fx == 0.0 {
            out.push(Candidate::Exact(x));
        } else if prev_f != 0.0 && (fx > 0.0) != (prev_f > 0.0) {
            out.push(Candidate::Bracket(prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    out
}

/// Brent's method on a sign-change bracket. Stops when the interval shrinks
/// to `|b| * rel_tol` (floored at a few ulps) or the residual hits zero.
/// Returns the best abscissa; `None` if the bracket does not change sign.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a0: f64, b0: f64, rel_tol: f64, max_iter: usize) -> Option<f64> {
    let (mut a, mut b) = (a0, b0);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if (fa > 0.0) == (fb > 0.0) {
        return None;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = b - a;

    for _ in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(f64::MIN_POSITIVE);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, secant when a == c
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb == 0.0 {
            return Some(b);
        }
    }
    Some(b)
}

/// Bisection to machine precision; used by tests as an independent check.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, iters: usize) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return None;
    }
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let f = |x: f64| x * x * x - 2.0;
        let r = brent(f, 1.0, 2.0, 1e-15, 200).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-15, 100).is_none());
    }

    #[test]
    fn scan_finds_multiple_roots() {
        let f = |x: f64| (x - 1.0) * (x - 2.0) * (x - 3.0);
        let cands = scan_candidates(f, 0.0, 4.0, 64);
        assert_eq!(cands.len(), 3);
        let roots: Vec<f64> = cands
            .iter()
            .map(|c| match *c {
                Candidate::Bracket(a, b) => brent(f, a, b, 1e-15, 100).unwrap(),
                Candidate::Exact(x) => x,
            })
            .collect();
        for (r, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - want).abs() < 1e-12);
        }
    }

    #[test]
    fn bisect_matches_brent() {
        let f = |x: f64| x.cos() - x;
        let a = brent(f, 0.0, 1.0, 1e-15, 200).unwrap();
        let b = bisect(f, 0.0, 1.0, 200).unwrap();
        assert!((a - b).abs() < 1e-13);
    }
}
