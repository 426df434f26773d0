//! Planar central configurations of the Newtonian four-body problem.
//!
//! The parameterization runs backwards from tradition: instead of fixing
//! four masses and hunting for compatible shapes, the four *weighted
//! directed areas* `A_j = S_j / m_j` are the inputs. Every mutual distance
//! is then an explicit function of a single scalar `lambda` through the
//! Dziobek relations `r_jk^-3 = 1 + lambda A_j A_k` (distances in units of
//! `sigma^(-1/3)`), a one-dimensional root solve on a flatness constraint
//! pins `lambda` down, and the six distances and four masses follow.
//!
//! The crate provides:
//!
//! - [`solver`]: the lambda root solve, candidate validation by planar
//!   embedding, and independent verification of every defining equation;
//! - [`geometry`]: Heron areas, flatness residuals, trilateration;
//! - [`symmetry`]: kite / equilateral-center / rhombus / square / isosceles
//!   trapezium characterizations, checked on both the input and the
//!   geometric side;
//! - [`limits`]: the asymptotic families where one constant runs to zero or
//!   infinity (Euler collinear, Lagrange equilateral and coorbital 1+3
//!   limits), each reduced to one bracketed scalar equation;
//! - [`orbits`]: homographic elliptic motion built on a Kepler solver;
//! - [`record`]: versioned serialization of results.

pub mod geometry;
pub mod limits;
pub mod model;
pub mod orbits;
pub mod record;
pub mod root;
pub mod solver;
pub mod symmetry;

pub use geometry::{PlanarEmbedding, Vec2};
pub use model::{
    validate_areas, CentralConfig, Classification, DistanceSet, Hull, LimitKind, LimitSolution,
    ModelError, ResidualReport, SignedAreas, Symmetry, WeightedAreas,
};
pub use orbits::{generate_orbit, kepler_solve, OrbitParams, OrbitSample};
pub use solver::{
    lambda_bracket, ordering_check, solve, solve_values, verify, RootResidual, SolveError,
    SolverOptions,
};
