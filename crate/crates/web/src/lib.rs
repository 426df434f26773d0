//! Browser bindings: three interactive operations returning JSON strings,
//! consumed by the static page in `www/`. Everything heavy lives in the
//! core crate; this layer only adapts inputs and serializes results.

use wasm_bindgen::prelude::*;

use dziobek::orbits::{generate_orbit, orbit_info, OrbitParams};
use dziobek::record::{ConfigRecord, Provenance};
use dziobek::solver::{solve_values, SolverOptions};

fn provenance() -> Provenance {
    Provenance {
        tool: "dziobek-web".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        timestamp: String::new(),
    }
}

fn err_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "ok": false, "error": { "kind": kind, "message": message } }).to_string()
}

/// Solves for the central configuration of four weighted areas and returns
/// `{ok: true, record: ...}` or `{ok: false, error: ...}`.
#[wasm_bindgen]
pub fn solve_json(a1: f64, a2: f64, a3: f64, a4: f64) -> String {
    let areas = [a1, a2, a3, a4];
    let opts = SolverOptions::default();
    match solve_values(areas, &opts) {
        Ok(config) => {
            let record = ConfigRecord::from_config(&config, areas, &opts, provenance());
            serde_json::json!({ "ok": true, "record": record }).to_string()
        }
        Err(e) => err_json("SolveError", &e.to_string()),
    }
}

/// Samples the homographic elliptic motion: `{ok, period, positions: [[x1,y1,
/// ...,x4,y4]; n]}` with one row per sample.
#[wasm_bindgen]
pub fn orbit_json(a1: f64, a2: f64, a3: f64, a4: f64, ecc: f64, samples: usize, periods: f64) -> String {
    let opts = SolverOptions::default();
    let config = match solve_values([a1, a2, a3, a4], &opts) {
        Ok(c) => c,
        Err(e) => return err_json("SolveError", &e.to_string()),
    };
    let params = match OrbitParams::new(ecc, samples, periods) {
        Ok(p) => p,
        Err(e) => return err_json("InvalidParams", &e.to_string()),
    };
    match generate_orbit(&config, &params) {
        Ok(samples) => {
            let info = orbit_info(&config, ecc);
            let rows: Vec<[f64; 9]> = samples
                .iter()
                .map(|s| {
                    let p = s.positions;
                    [s.time, p[0].x, p[0].y, p[1].x, p[1].y, p[2].x, p[2].y, p[3].x, p[3].y]
                })
                .collect();
            serde_json::json!({
                "ok": true,
                "period": info.period,
                "mu": info.mu,
                "semi_major": info.semi_major,
                "positions": rows,
            })
            .to_string()
        }
        Err(e) => err_json("OrbitError", &e.to_string()),
    }
}

/// Sweeps one area over `[start, stop]` with the other three fixed:
/// `{ok, rows: [{value, lambda?, masses?, status}]}`. Rows past an asymptotic
/// bound carry `status: "NoRoot"` instead of aborting the sweep.
#[wasm_bindgen]
pub fn sweep_json(
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    vary: usize,
    start: f64,
    stop: f64,
    steps: usize,
) -> String {
    if vary >= 4 {
        return err_json("InvalidParams", "vary index must be 0..=3");
    }
    if steps < 2 {
        return err_json("InvalidParams", "need at least 2 steps");
    }
    let opts = SolverOptions::default();
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = k as f64 / (steps - 1) as f64;
        let value = start + (stop - start) * t;
        let mut areas = [a1, a2, a3, a4];
        areas[vary] = value;
        match solve_values(areas, &opts) {
            Ok(c) => rows.push(serde_json::json!({
                "value": value,
                "lambda": c.lambda,
                "masses": c.masses,
                "status": "OK",
            })),
            Err(e) => rows.push(serde_json::json!({
                "value": value,
                "status": format!("{e}")
                    .split(':')
                    .next()
                    .map(|_| "NoRoot")
                    .unwrap_or("NoRoot"),
            })),
        }
    }
    serde_json::json!({ "ok": true, "rows": rows }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_json_round_trips() {
        let out = solve_json(5.0, 6.0, 4.0, -8.0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        let lambda = v["record"]["outputs"]["lambda"].as_f64().unwrap();
        assert!((lambda + 0.023_818_542_972_627_6).abs() < 1e-12);
        assert_eq!(v["record"]["outputs"]["classification"]["hull"], "concave");
    }

    #[test]
    fn solve_json_reports_errors() {
        let out = solve_json(1.0, 1.0, 1.0, 1.0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], false);
    }

    #[test]
    fn orbit_json_emits_samples() {
        let out = orbit_json(5.0, 6.0, 4.0, -8.0, 0.72, 36, 1.0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["positions"].as_array().unwrap().len(), 36);
    }

    #[test]
    fn sweep_json_crosses_the_bound() {
        let out = sweep_json(1.0, 1.0, 1.0, -1.0, 1, 1.0, 0.05, 16);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 16);
        assert_eq!(rows[0]["status"], "OK");
        assert_eq!(rows[15]["status"], "NoRoot");
    }
}
