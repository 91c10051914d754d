//! Minimax G0 polynomial interpolants of circular arcs.
//!
//! Given a unit circular arc of half-angle `phi <= pi/2`, this crate
//! constructs the degree 2, 3 and 4 Bezier interpolants that match the
//! arc's endpoints and minimize the simplified radial error
//! `max_t |x(t)^2 + y(t)^2 - 1|`, whose optimum is a scaled Chebyshev
//! equioscillation. It also ships independent verification tools:
//! equioscillation checks, a multi-start optimality probe, reference
//! table reproduction, and a census of all real candidate solutions in
//! the quartic case.

mod dd;

pub mod arc;
pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod poly;
pub mod solvers;
pub mod verify;

pub use arc::{
    bezier_point, build_polygon, radial_error, simplified_error_poly, ArcSpec, ControlPolygon,
    InterpolantSolution, Params, Point2,
};
pub use chebyshev::{alternation_data, chebyshev_eval, AlternationData};
pub use error::{ArcFitError, Result};
pub use poly::{max_abs_on_interval, BracketedRoot, Poly};
pub use solvers::{
    cubic_objective, quartic_all_real_roots, quartic_intermediates, quartic_objective,
    recover_beta, recover_y, solve_cubic, solve_parabolic, solve_quartic, QuarticIntermediates,
    QuarticRoot,
};
pub use verify::{
    brute_force_minimax, census_threshold, check_equioscillation, reproduce_table, root_census,
    solve, EquioscillationReport, OptimalityProbe, ProbeConfig, TableRow, TABLE_ANGLES,
};
