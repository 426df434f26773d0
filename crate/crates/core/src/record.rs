//! Versioned, serialization-friendly records of solver outputs. These are
//! the on-disk and over-the-wire schema; numeric fields round-trip exactly
//! through JSON.

use std::collections::BTreeMap;

use crate::geometry::Vec2;
use crate::model::{
    CentralConfig, DistanceSet, Hull, LimitSolution, ResidualReport, SignedAreas, Symmetry,
};
use crate::solver::{self, RootResidual, SolverOptions};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RecordError {
    #[error("unsupported schema version {0}")]
    BadVersion(u32),
    #[error("record field invalid: {0}")]
    BadField(String),
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RecordOptions {
    pub tol_root: f64,
    pub max_iter: usize,
    pub bracket_margin: f64,
    /// "auto", "quad-constraint", "plane-sum" or "kite-pythagoras".
    pub residual_for_root: String,
}

impl From<&SolverOptions> for RecordOptions {
    fn from(o: &SolverOptions) -> Self {
        let residual = match o.residual_for_root {
            None => "auto",
            Some(RootResidual::QuadConstraint) => "quad-constraint",
            Some(RootResidual::PlaneSum) => "plane-sum",
            Some(RootResidual::KitePythagoras) => "kite-pythagoras",
        };
        Self {
            tol_root: o.tol_root,
            max_iter: o.max_iter,
            bracket_margin: o.bracket_margin,
            residual_for_root: residual.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RecordInputs {
    /// Areas exactly as supplied by the caller, before canonical orientation.
    pub areas: [f64; 4],
    pub options: RecordOptions,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RecordClassification {
    pub hull: String,
    pub symmetries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RecordOutputs {
    pub lambda: f64,
    pub sigma: f64,
    /// Keyed "r12", "r13", "r14", "r23", "r24", "r34".
    pub distances: BTreeMap<String, f64>,
    pub signed_areas: [f64; 4],
    pub masses: [f64; 4],
    pub coords: [[f64; 2]; 4],
    pub classification: RecordClassification,
    pub residuals: ResidualReport,
    pub other_roots: Vec<f64>,
}

/// A complete solve result: inputs, outputs, provenance.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConfigRecord {
    pub schema_version: u32,
    pub inputs: RecordInputs,
    pub outputs: RecordOutputs,
    pub provenance: Provenance,
}

pub fn hull_name(h: Hull) -> &'static str {
    match h {
        Hull::Concave => "concave",
        Hull::Convex => "convex",
    }
}

pub fn symmetry_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::Kite => "kite",
        Symmetry::EquilateralCenter => "equilateral-center",
        Symmetry::Rhombus => "rhombus",
        Symmetry::Square => "square",
        Symmetry::IsoscelesTrapezium => "isosceles-trapezium",
    }
}

impl ConfigRecord {
    pub fn from_config(
        c: &CentralConfig,
        raw_areas: [f64; 4],
        opts: &SolverOptions,
        provenance: Provenance,
    ) -> Self {
        let keys = ["r12", "r13", "r14", "r23", "r24", "r34"];
        let distances = keys
            .iter()
            .map(|k| k.to_string())
            .zip(c.distances.as_array())
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            inputs: RecordInputs {
                areas: raw_areas,
                options: opts.into(),
            },
            outputs: RecordOutputs {
                lambda: c.lambda,
                sigma: c.sigma,
                distances,
                signed_areas: c.signed_areas.as_array(),
                masses: c.masses,
                coords: c.coords.map(|p| [p.x, p.y]),
                classification: RecordClassification {
                    hull: hull_name(c.classification.hull).into(),
                    symmetries: c
                        .classification
                        .symmetries
                        .iter()
                        .map(|s| symmetry_name(*s).into())
                        .collect(),
                },
                residuals: c.diagnostics,
                other_roots: c.other_roots.clone(),
            },
            provenance,
        }
    }

    pub fn distance_set(&self) -> Result<DistanceSet, RecordError> {
        let get = |k: &str| {
            self.outputs
                .distances
                .get(k)
                .copied()
                .ok_or_else(|| RecordError::BadField(format!("missing distance {k}")))
        };
        DistanceSet::new(
            get("r12")?,
            get("r13")?,
            get("r14")?,
            get("r23")?,
            get("r24")?,
            get("r34")?,
        )
        .map_err(|e| RecordError::BadField(e.to_string()))
    }

    pub fn coords(&self) -> [Vec2; 4] {
        self.outputs.coords.map(|p| Vec2::new(p[0], p[1]))
    }

    /// Recomputes the residual report from the record: the coordinate-and-
    /// mass route of `solver::verify`, cross-checked against the record's own
    /// stored distance and area fields so that a corrupted field is flagged.
    pub fn verify(&self) -> Result<ResidualReport, RecordError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(RecordError::BadVersion(self.schema_version));
        }
        let d = self.distance_set()?;
        let [s1, s2, s3, s4] = self.outputs.signed_areas;
        let s = SignedAreas::new(s1, s2, s3, s4);
        let masses = self.outputs.masses;
        if masses.iter().any(|m| !(*m > 0.0)) {
            return Err(RecordError::BadField("masses must be positive".into()));
        }
        Ok(solver::verify_record_parts(&self.coords(), &masses, &d, &s))
    }
}

/// Serialized form of a limit-case solution.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LimitRecord {
    pub schema_version: u32,
    pub kind: String,
    pub inputs: BTreeMap<String, f64>,
    pub distances: BTreeMap<String, f64>,
    pub lambda_or_product: f64,
    pub aux: BTreeMap<String, f64>,
    pub provenance: Provenance,
}

impl LimitRecord {
    pub fn from_solution(
        sol: &LimitSolution,
        inputs: BTreeMap<String, f64>,
        provenance: Provenance,
    ) -> Self {
        let keys = ["r12", "r13", "r14", "r23", "r24", "r34"];
        Self {
            schema_version: SCHEMA_VERSION,
            kind: format!("{:?}", sol.kind),
            inputs,
            distances: keys
                .iter()
                .map(|k| k.to_string())
                .zip(sol.distances.as_array())
                .collect(),
            lambda_or_product: sol.lambda_or_product,
            aux: sol.aux.clone(),
            provenance,
        }
    }
}
