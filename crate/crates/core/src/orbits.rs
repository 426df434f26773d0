//! Homographic elliptic motion. A central configuration admits solutions in
//! which every particle traces a Kepler ellipse about the common center of
//! mass: all positions share one complex scaling `z_i(t) = f(t) z_i(0)`,
//! where `f` follows a Kepler orbit with gravitational parameter
//! `mu = sigma * sum(m)`.
//!
//! Scale and phase convention: `t = 0` at periapsis with `f(0) = 1`, i.e.
//! semi-major axis `a_f = 1/(1 - e)`, so the emitted configuration at `t = 0`
//! is exactly the solved one. Rotation is counterclockwise. Times are in the
//! normalized units with `G = 1`, `sigma = 1`.

use std::f64::consts::TAU;

use crate::geometry::Vec2;
use crate::model::CentralConfig;
use crate::solver;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbitError {
    #[error("configuration fails verification: {0}")]
    InvalidConfig(String),
    #[error("invalid orbit parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitParams {
    /// Common eccentricity of the four ellipses, `0 <= e < 1`.
    pub eccentricity: f64,
    /// Samples per orbital period, at least 2.
    pub samples_per_period: usize,
    /// Number of periods to emit (fractional allowed).
    pub periods: f64,
}

impl OrbitParams {
    pub fn new(eccentricity: f64, samples_per_period: usize, periods: f64) -> Result<Self, OrbitError> {
        let p = Self { eccentricity, samples_per_period, periods };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), OrbitError> {
        if !(0.0..1.0).contains(&self.eccentricity) {
            return Err(OrbitError::InvalidParams("eccentricity must be in [0, 1)".into()));
        }
        if self.samples_per_period < 2 {
            return Err(OrbitError::InvalidParams("need at least 2 samples per period".into()));
        }
        if !(self.periods > 0.0) || !self.periods.is_finite() {
            return Err(OrbitError::InvalidParams("periods must be positive".into()));
        }
        Ok(())
    }
}

/// One time slice of the motion; the center of mass stays at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub time: f64,
    pub positions: [Vec2; 4],
}

/// Derived constants of the homographic motion.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct OrbitInfo {
    /// Gravitational parameter `sigma * sum(m)`.
    pub mu: f64,
    /// Semi-major axis of the scaling ellipse, `1/(1 - e)`.
    pub semi_major: f64,
    /// Period `2 pi sqrt(a^3 / mu)`.
    pub period: f64,
    pub eccentricity: f64,
}

pub fn orbit_info(c: &CentralConfig, eccentricity: f64) -> OrbitInfo {
    let mu = c.sigma * c.masses.iter().sum::<f64>();
    let semi_major = 1.0 / (1.0 - eccentricity);
    let period = TAU * (semi_major.powi(3) / mu).sqrt();
    OrbitInfo { mu, semi_major, period, eccentricity }
}

/// Solves Kepler's equation `E - e sin E = M` for the eccentric anomaly, by
/// Newton iteration safeguarded with the bracket `[M - e, M + e]`. The
/// residual at the returned value is below 1e-14.
pub fn kepler_solve(mean_anomaly: f64, e: f64) -> f64 {
    assert!((0.0..1.0).contains(&e), "eccentricity must be in [0, 1)");
    if e == 0.0 {
        return mean_anomaly;
    }
    // reduce to [-pi, pi]; the solution shifts by the same multiple of 2 pi
    let turns = (mean_anomaly / TAU).round();
    let m = mean_anomaly - turns * TAU;

    let (mut lo, mut hi) = (m - e, m + e);
    let mut x = m + e * m.sin();
    for _ in 0..100 {
        let f = x - e * x.sin() - m;
        if f.abs() < 1e-15 {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = f / (1.0 - e * x.cos());
        let mut next = x - step;
        if next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if next == x {
            break;
        }
        x = next;
    }
    x + turns * TAU
}

/// Position of the scaling factor on its ellipse at eccentric anomaly `ecc_anom`:
/// focus at the origin, periapsis on the positive x-axis.
fn scaling_factor(ecc_anom: f64, e: f64, semi_major: f64) -> Vec2 {
    Vec2::new(
        semi_major * (ecc_anom.cos() - e),
        semi_major * (1.0 - e * e).sqrt() * ecc_anom.sin(),
    )
}

/// Samples the homographic motion of `c` uniformly in time. `z_i(t) =
/// f(t) z_i(0)` in complex notation, so every sample is similar to the
/// solved configuration and the mutual-distance ratios are preserved
/// exactly by construction.
pub fn generate_orbit(c: &CentralConfig, p: &OrbitParams) -> Result<Vec<OrbitSample>, OrbitError> {
    p.validate()?;
    let check = solver::verify(c);
    if !(check.central_eq < 1e-8) {
        return Err(OrbitError::InvalidConfig(format!(
            "central-equation residual {:.3e} exceeds 1e-8",
            check.central_eq
        )));
    }
    let info = orbit_info(c, p.eccentricity);
    let total = (p.samples_per_period as f64 * p.periods).round() as usize;
    if total == 0 {
        return Err(OrbitError::InvalidParams("zero samples requested".into()));
    }
    let mut out = Vec::with_capacity(total);
    for k in 0..total {
        let mean_anomaly = TAU * k as f64 / p.samples_per_period as f64;
        let time = info.period * k as f64 / p.samples_per_period as f64;
        let ecc_anom = kepler_solve(mean_anomaly, p.eccentricity);
        let f = scaling_factor(ecc_anom, p.eccentricity, info.semi_major);
        let positions = complex_scale(&c.coords, f);
        out.push(OrbitSample { time, positions });
    }
    Ok(out)
}

fn complex_scale(points: &[Vec2; 4], f: Vec2) -> [Vec2; 4] {
    let mut out = [Vec2::default(); 4];
    for (o, z) in out.iter_mut().zip(points.iter()) {
        *o = Vec2::new(f.x * z.x - f.y * z.y, f.x * z.y + f.y * z.x);
    }
    out
}
