//! Text and CSV formatting. All floats are printed with 17 significant
//! digits so that parsing the output reproduces them bit-exactly.

use dziobek::orbits::{OrbitInfo, OrbitSample};
use dziobek::record::{ConfigRecord, Provenance};
use dziobek::{CentralConfig, ResidualReport};

/// Shortest representation that round-trips: 17 significant digits.
pub fn full(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_report(r: &ResidualReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("plane_sum:       {:.3e}\n", r.plane_sum));
    s.push_str(&format!("quad_constraint: {:.3e}\n", r.quad_constraint));
    s.push_str(&format!("laura_andoyer:   {:.3e}\n", r.laura_andoyer));
    s.push_str(&format!("central_eq:      {:.3e}\n", r.central_eq));
    s.push_str(&format!("sigma_identity:  {:.3e}\n", r.sigma_identity));
    s
}

pub fn format_config_table(c: &CentralConfig, record: &ConfigRecord) -> String {
    let mut s = String::new();
    s.push_str(&format!("areas (input):   {:?}\n", record.inputs.areas));
    s.push_str(&format!("areas (canonical): {:?}\n", c.areas_in.values()));
    s.push_str(&format!(
        "classification:  {} {}\n",
        record.outputs.classification.hull,
        if record.outputs.classification.symmetries.is_empty() {
            "(no symmetry)".to_string()
        } else {
            format!("[{}]", record.outputs.classification.symmetries.join(", "))
        }
    ));
    s.push_str(&format!("lambda:          {}\n", full(c.lambda)));
    s.push_str(&format!("sigma:           {}\n", full(c.sigma)));
    s.push('\n');
    for (k, v) in &record.outputs.distances {
        s.push_str(&format!("{k}:  {}\n", full(*v)));
    }
    s.push('\n');
    for (i, m) in c.masses.iter().enumerate() {
        s.push_str(&format!("m{}:  {}\n", i + 1, full(*m)));
    }
    s.push('\n');
    for (i, p) in c.coords.iter().enumerate() {
        s.push_str(&format!("p{}:  ({}, {})\n", i + 1, full(p.x), full(p.y)));
    }
    s.push('\n');
    s.push_str("residuals:\n");
    s.push_str(&format_report(&c.diagnostics));
    if !c.other_roots.is_empty() {
        s.push_str(&format!("other validated roots: {:?}\n", c.other_roots));
    }
    s
}

pub struct SweepRow {
    pub areas: [f64; 4],
    pub status: &'static str,
    pub values: Option<SweepValues>,
}

pub struct SweepValues {
    pub lambda: f64,
    pub distances: [f64; 6],
    pub masses: [f64; 4],
    pub residuals: ResidualReport,
}

impl SweepRow {
    pub fn solved(areas: [f64; 4], c: &CentralConfig) -> Self {
        Self {
            areas,
            status: "OK",
            values: Some(SweepValues {
                lambda: c.lambda,
                distances: c.distances.as_array(),
                masses: c.masses,
                residuals: c.diagnostics,
            }),
        }
    }

    pub fn failed(areas: [f64; 4], status: &'static str) -> Self {
        Self { areas, status, values: None }
    }
}

pub fn write_sweep_csv(vary: &str, rows: &[SweepRow], prov: &Provenance) -> String {
    let mut s = String::new();
    s.push_str(&format!("# {} v{} sweep over {}\n", prov.tool, prov.version, vary));
    s.push_str(&format!("# generated: {}\n", prov.timestamp));
    s.push_str("# units: distances in sigma^(-1/3); sigma = 1, G = 1\n");
    s.push_str(
        "a1,a2,a3,a4,lambda,r12,r13,r14,r23,r24,r34,m1,m2,m3,m4,\
         plane_sum,quad_constraint,laura_andoyer,central_eq,sigma_identity,status\n",
    );
    for row in rows {
        for a in row.areas {
            s.push_str(&full(a));
            s.push(',');
        }
        match &row.values {
            Some(v) => {
                s.push_str(&full(v.lambda));
                s.push(',');
                for d in v.distances {
                    s.push_str(&full(d));
                    s.push(',');
                }
                for m in v.masses {
                    s.push_str(&full(m));
                    s.push(',');
                }
                for r in v.residuals.as_array() {
                    s.push_str(&format!("{r:.3e}"));
                    s.push(',');
                }
            }
            None => s.push_str(&",".repeat(16)),
        }
        s.push_str(row.status);
        s.push('\n');
    }
    s
}

pub fn write_orbit_csv(
    areas: &[f64; 4],
    info: &OrbitInfo,
    mirrored: bool,
    samples: &[OrbitSample],
    prov: &Provenance,
) -> String {
    let mut s = String::new();
    s.push_str(&format!("# {} v{} orbit samples\n", prov.tool, prov.version));
    s.push_str(&format!("# generated: {}\n", prov.timestamp));
    s.push_str(&format!(
        "# areas: {},{},{},{}\n",
        full(areas[0]),
        full(areas[1]),
        full(areas[2]),
        full(areas[3])
    ));
    s.push_str(&format!("# eccentricity: {}\n", full(info.eccentricity)));
    s.push_str(&format!("# mu: {}\n", full(info.mu)));
    s.push_str(&format!("# semi_major: {}\n", full(info.semi_major)));
    s.push_str(&format!("# period: {}\n", full(info.period)));
    s.push_str("# convention: t = 0 at periapsis with unit scaling; counterclockwise\n");
    s.push_str(&format!("# arrangement: {}\n", if mirrored { "mirror" } else { "direct" }));
    s.push_str("t,x1,y1,x2,y2,x3,y3,x4,y4\n");
    for sample in samples {
        s.push_str(&full(sample.time));
        for p in sample.positions {
            s.push(',');
            s.push_str(&full(p.x));
            s.push(',');
            s.push_str(&full(p.y));
        }
        s.push('\n');
    }
    s
}
