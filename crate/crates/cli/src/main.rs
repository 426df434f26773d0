//! `dziobek` — planar four-body central configurations from the command line.
//!
//! Subcommands: `solve`, `classify`, `sweep`, `limit`, `orbit`, `verify`.
//! Exit codes: 0 success, 1 domain failure (no root, invalid configuration),
//! 2 usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use dziobek::limits::{
    coorbital_limit, euler_convex_limit, general_coorbital_limit, general_euler_limit,
    general_lagrange_limit, lagrange_concave_limit, lagrange_convex_limit, maxwell_1p3_roots,
    AreaAtInfinity,
};
use dziobek::orbits::{generate_orbit, orbit_info, OrbitParams};
use dziobek::record::{ConfigRecord, LimitRecord, Provenance, SCHEMA_VERSION};
use dziobek::solver::{solve_values, RootResidual, SolverOptions};
use dziobek::{validate_areas, CentralConfig, LimitSolution};

mod output;

use output::{format_config_table, format_report, write_orbit_csv, write_sweep_csv, SweepRow};

#[derive(Parser)]
#[command(name = "dziobek", version, about = "Four-body planar central configurations from weighted directed areas", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the central configuration determined by four weighted areas
    Solve(SolveArgs),
    /// Classify four weighted areas (hull class and symmetry tags) without solving
    Classify(ClassifyArgs),
    /// Tabulate solutions over a one-parameter family of area values
    Sweep(SweepArgs),
    /// Asymptotic limiting configurations
    Limit(LimitArgs),
    /// Sample homographic elliptic trajectories of a solved configuration
    Orbit(OrbitArgs),
    /// Re-verify a stored solution record from coordinates and masses
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ResidualChoice {
    Auto,
    Quad,
    Plane,
    Kite,
}

#[derive(Args)]
struct SolverFlags {
    /// Requested accuracy on the lambda root
    #[arg(long, default_value_t = 1e-13)]
    tol_root: f64,
    /// Residual driven to zero by the root solve
    #[arg(long, value_enum, default_value_t = ResidualChoice::Auto)]
    residual: ResidualChoice,
}

impl SolverFlags {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            tol_root: self.tol_root,
            residual_for_root: match self.residual {
                ResidualChoice::Auto => None,
                ResidualChoice::Quad => Some(RootResidual::QuadConstraint),
                ResidualChoice::Plane => Some(RootResidual::PlaneSum),
                ResidualChoice::Kite => Some(RootResidual::KitePythagoras),
            },
            ..SolverOptions::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Four comma-separated weighted areas, e.g. 5,6,4,-8
    #[arg(long, value_parser = parse_areas)]
    areas: Areas,
    /// Emit the full record as JSON instead of a table
    #[arg(long)]
    json: bool,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = parse_areas)]
    areas: Areas,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Fixed areas as name=value pairs, e.g. a1=1,a3=1,a4=-1
    #[arg(long, value_parser = parse_fixed)]
    fixed: Fixed,
    /// Which area to vary: a1, a2, a3 or a4
    #[arg(long)]
    vary: String,
    #[arg(long, allow_hyphen_values = true)]
    start: f64,
    #[arg(long, allow_hyphen_values = true)]
    stop: f64,
    /// Number of grid points (at least 2)
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Space the grid geometrically instead of linearly
    #[arg(long)]
    log: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct LimitArgs {
    #[command(subcommand)]
    kind: LimitKindArgs,
}

#[derive(Subcommand)]
enum LimitKindArgs {
    /// Both equal-mass coorbital angles
    Maxwell {
        #[arg(long)]
        json: bool,
    },
    /// Boundary of the concave kite family (particles 1,4,3 collinear)
    EulerConvex {
        #[arg(long)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a4: f64,
        #[arg(long)]
        json: bool,
    },
    /// Concave kite limit A2 -> +infinity
    LagrangeConcave {
        #[arg(long)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a4: f64,
        #[arg(long)]
        json: bool,
    },
    /// Convex kite limit A4 -> -infinity
    LagrangeConvex {
        #[arg(long)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long)]
        json: bool,
    },
    /// Kite limit A4 -> 0-: satellites on a circle around a dominant mass
    Coorbital {
        #[arg(long)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long)]
        json: bool,
    },
    /// One area to +/- infinity with three retained areas
    GeneralLagrange {
        /// Three comma-separated retained areas
        #[arg(long, value_parser = parse_three)]
        retained: Three,
        /// Sign of the diverging area
        #[arg(long, value_enum)]
        vanishing: VanishingChoice,
        #[arg(long)]
        json: bool,
    },
    /// Three collinear areas; solves for lambda and the fourth area
    GeneralEuler {
        #[arg(long, value_parser = parse_three)]
        areas: Three,
        #[arg(long)]
        json: bool,
    },
    /// Three satellite areas around a dominant central mass
    GeneralCoorbital {
        #[arg(long, value_parser = parse_three)]
        areas: Three,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VanishingChoice {
    Positive,
    Negative,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, value_parser = parse_areas)]
    areas: Areas,
    /// Common eccentricity of the four ellipses
    #[arg(long, default_value_t = 0.72)]
    ecc: f64,
    /// Samples per orbital period
    #[arg(long, default_value_t = 360)]
    samples: usize,
    /// Number of periods (fractional allowed)
    #[arg(long, default_value_t = 1.0)]
    periods: f64,
    /// Emit the mirror-image arrangement (reflect across the x-axis)
    #[arg(long)]
    mirror: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to a solve record (JSON)
    record: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy)]
struct Areas([f64; 4]);

fn parse_areas(s: &str) -> Result<Areas, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated values, got {}", parts.len()));
    }
    let mut vals = [0.0f64; 4];
    for (v, p) in vals.iter_mut().zip(parts) {
        *v = p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"))?;
    }
    Ok(Areas(vals))
}

#[derive(Clone, Copy)]
struct Three([f64; 3]);

fn parse_three(s: &str) -> Result<Three, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {}", parts.len()));
    }
    let mut vals = [0.0f64; 3];
    for (v, p) in vals.iter_mut().zip(parts) {
        *v = p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"))?;
    }
    Ok(Three(vals))
}

#[derive(Clone)]
struct Fixed(Vec<(String, f64)>);

fn parse_fixed(s: &str) -> Result<Fixed, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let name = name.trim().to_lowercase();
        if !["a1", "a2", "a3", "a4"].contains(&name.as_str()) {
            return Err(format!("unknown area name {name:?}"));
        }
        let value: f64 = value.trim().parse().map_err(|e| format!("bad number: {e}"))?;
        out.push((name, value));
    }
    Ok(Fixed(out))
}

fn provenance() -> Provenance {
    Provenance {
        tool: "dziobek".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        timestamp: chrono::Utc::now().to_rfc3339(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}")),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

/// Machine-readable error object on stdout, message on stderr.
fn domain_failure(kind: &str, message: &str) -> ExitCode {
    let obj = serde_json::json!({
        "error": { "kind": kind, "message": message },
        "schema_version": SCHEMA_VERSION,
    });
    println!("{obj}");
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, String> {
    let opts = args.solver.options();
    match solve_values(args.areas.0, &opts) {
        Ok(config) => {
            let record = ConfigRecord::from_config(&config, args.areas.0, &opts, provenance());
            let text = if args.json {
                serde_json::to_string_pretty(&record).map_err(|e| e.to_string())? + "\n"
            } else {
                format_config_table(&config, &record)
            };
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Ok(domain_failure(error_kind(&e), &e.to_string())),
    }
}

fn error_kind(e: &dziobek::SolveError) -> &'static str {
    use dziobek::SolveError::*;
    match e {
        Model(dziobek::ModelError::AllSameSign) => "AllSameSign",
        Model(dziobek::ModelError::ZeroArea) => "ZeroArea",
        Model(dziobek::ModelError::NonFinite) => "NonFinite",
        OutOfDomain => "OutOfDomain",
        EmptyBracket => "EmptyBracket",
        NoRoot => "NoRoot",
        NonPhysicalRoot(_) => "NonPhysicalRoot",
    }
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, String> {
    match validate_areas(args.areas.0) {
        Ok(class) => {
            let hull = dziobek::record::hull_name(class.hull);
            let syms: Vec<&str> = class
                .symmetries
                .iter()
                .map(|s| dziobek::record::symmetry_name(*s))
                .collect();
            if args.json {
                let obj = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "areas": args.areas.0,
                    "hull": hull,
                    "symmetries": syms,
                });
                println!("{obj:#}");
            } else {
                println!("hull:       {hull}");
                println!(
                    "symmetries: {}",
                    if syms.is_empty() { "none".into() } else { syms.join(", ") }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let kind = match e {
                dziobek::ModelError::AllSameSign => "AllSameSign",
                dziobek::ModelError::ZeroArea => "ZeroArea",
                dziobek::ModelError::NonFinite => "NonFinite",
            };
            Ok(domain_failure(kind, &e.to_string()))
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let vary = args.vary.to_lowercase();
    let vary_idx = match vary.as_str() {
        "a1" => 0usize,
        "a2" => 1,
        "a3" => 2,
        "a4" => 3,
        other => return Err(format!("unknown area name {other:?}")),
    };
    if args.steps < 2 {
        return Err("need at least 2 steps".into());
    }
    let mut template = [f64::NAN; 4];
    for (name, value) in &args.fixed.0 {
        let idx = match name.as_str() {
            "a1" => 0,
            "a2" => 1,
            "a3" => 2,
            "a4" => 3,
            _ => unreachable!(),
        };
        template[idx] = *value;
    }
    for (i, v) in template.iter().enumerate() {
        if i != vary_idx && v.is_nan() {
            return Err(format!("a{} is neither fixed nor varied", i + 1));
        }
    }
    if args.log && (args.start * args.stop <= 0.0) {
        return Err("--log requires start and stop of the same nonzero sign".into());
    }

    let grid: Vec<f64> = (0..args.steps)
        .map(|k| {
            let t = k as f64 / (args.steps - 1) as f64;
            if args.log {
                let sign = args.start.signum();
                sign * (args.start.abs().ln() * (1.0 - t) + args.stop.abs().ln() * t).exp()
            } else {
                args.start + (args.stop - args.start) * t
            }
        })
        .collect();

    let opts = args.solver.options();
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|value| {
            let mut areas = template;
            areas[vary_idx] = *value;
            match solve_values(areas, &opts) {
                Ok(c) => SweepRow::solved(areas, &c),
                Err(e) => SweepRow::failed(areas, error_kind(&e)),
            }
        })
        .collect();

    let text = write_sweep_csv(&vary, &rows, &provenance());
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_limit(args: LimitArgs) -> Result<ExitCode, String> {
    let (result, inputs, json): (Result<LimitSolution, _>, BTreeMap<String, f64>, bool) =
        match args.kind {
            LimitKindArgs::Maxwell { json } => {
                let (t1, t2) = maxwell_1p3_roots();
                if json {
                    let obj = serde_json::json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": "Maxwell1p3",
                        "theta1": t1,
                        "theta2": t2,
                    });
                    println!("{obj:#}");
                } else {
                    println!("theta1: {t1:.17}");
                    println!("theta2: {t2:.17}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            LimitKindArgs::EulerConvex { a1, a4, json } => (
                euler_convex_limit(a1, a4),
                [("a1".into(), a1), ("a4".into(), a4)].into(),
                json,
            ),
            LimitKindArgs::LagrangeConcave { a1, a4, json } => (
                lagrange_concave_limit(a1, a4),
                [("a1".into(), a1), ("a4".into(), a4)].into(),
                json,
            ),
            LimitKindArgs::LagrangeConvex { a1, a2, json } => (
                lagrange_convex_limit(a1, a2),
                [("a1".into(), a1), ("a2".into(), a2)].into(),
                json,
            ),
            LimitKindArgs::Coorbital { a1, a2, json } => (
                coorbital_limit(a1, a2),
                [("a1".into(), a1), ("a2".into(), a2)].into(),
                json,
            ),
            LimitKindArgs::GeneralLagrange { retained, vanishing, json } => {
                let v = match vanishing {
                    VanishingChoice::Positive => AreaAtInfinity::Positive,
                    VanishingChoice::Negative => AreaAtInfinity::Negative,
                };
                let sign = match vanishing {
                    VanishingChoice::Positive => 1.0,
                    VanishingChoice::Negative => -1.0,
                };
                (
                    general_lagrange_limit(retained.0, v),
                    [
                        ("a1".into(), retained.0[0]),
                        ("a2".into(), retained.0[1]),
                        ("a3".into(), retained.0[2]),
                        ("vanishing_sign".into(), sign),
                    ]
                    .into(),
                    json,
                )
            }
            LimitKindArgs::GeneralEuler { areas, json } => (
                general_euler_limit(areas.0),
                [
                    ("a1".into(), areas.0[0]),
                    ("a2".into(), areas.0[1]),
                    ("a3".into(), areas.0[2]),
                ]
                .into(),
                json,
            ),
            LimitKindArgs::GeneralCoorbital { areas, json } => (
                general_coorbital_limit(areas.0),
                [
                    ("a1".into(), areas.0[0]),
                    ("a2".into(), areas.0[1]),
                    ("a3".into(), areas.0[2]),
                ]
                .into(),
                json,
            ),
        };

    match result {
        Ok(sol) => {
            let record = LimitRecord::from_solution(&sol, inputs, provenance());
            if json {
                println!("{}", serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?);
            } else {
                println!("kind:              {}", record.kind);
                println!("lambda_or_product: {:.17}", record.lambda_or_product);
                for (k, v) in &record.distances {
                    println!("{k}:               {v:.17}");
                }
                for (k, v) in &record.aux {
                    println!("aux {k}: {v:.17}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let kind = match e {
                dziobek::limits::LimitError::NoRoot => "NoRoot",
                dziobek::limits::LimitError::DomainError(_) => "DomainError",
                dziobek::limits::LimitError::InvalidInput(_) => "InvalidInput",
            };
            Ok(domain_failure(kind, &e.to_string()))
        }
    }
}

fn cmd_orbit(args: OrbitArgs) -> Result<ExitCode, String> {
    let opts = args.solver.options();
    let config: CentralConfig = match solve_values(args.areas.0, &opts) {
        Ok(c) => c,
        Err(e) => return Ok(domain_failure(error_kind(&e), &e.to_string())),
    };
    let params = match OrbitParams::new(args.ecc, args.samples, args.periods) {
        Ok(p) => p,
        Err(e) => return Err(e.to_string()),
    };
    let mut samples = match generate_orbit(&config, &params) {
        Ok(s) => s,
        Err(e) => return Ok(domain_failure("InvalidConfig", &e.to_string())),
    };
    if args.mirror {
        for s in &mut samples {
            for p in &mut s.positions {
                p.y = -p.y;
            }
        }
    }
    let info = orbit_info(&config, args.ecc);
    let text = write_orbit_csv(&args.areas.0, &info, args.mirror, &samples, &provenance());
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let text = fs::read_to_string(&args.record)
        .map_err(|e| format!("cannot read {:?}: {e}", args.record))?;
    let record: ConfigRecord =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse record: {e}"))?;
    let report = match record.verify() {
        Ok(r) => r,
        Err(e) => return Err(format!("record invalid: {e}")),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
    } else {
        print!("{}", format_report(&report));
    }
    if report.max_entry() < 1e-8 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: residuals exceed 1e-8");
        Ok(ExitCode::from(1))
    }
}
