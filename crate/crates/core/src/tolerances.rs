//! Numerical tolerances and defaults shared across the crate.

/// Central-difference step, scaled per axis by `max(1, |u_i|)`.
pub const FD_STEP: f64 = 1e-5;

/// Acceptance budget for pipelines built on finite-difference jets.
pub const FD_TOL: f64 = 1e-5;

/// Acceptance budget for pipelines whose jets are exact up to round-off.
pub const ANALYTIC_TOL: f64 = 1e-9;

/// Default verdict tolerance for property checks.
pub const PROPERTY_TOL: f64 = 1e-6;

/// Vectors with `|<v,v>|` below this are rejected as (nearly) light-like.
pub const EPS_NULL: f64 = 1e-8;

/// A tangent part shorter than this counts as vanishing.
pub const TAU_ZERO: f64 = 1e-7;

/// Gap kept between sampled domains and singular endpoints.
pub const DOMAIN_MARGIN: f64 = 1e-3;

/// Fixed RK4 step.
pub const RK4_STEP: f64 = 1e-3;

/// Points per axis of a default verification grid.
pub const DEFAULT_GRID: usize = 21;

/// Largest membership residual accepted for generated points.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Smallest Jacobian singular value accepted as regular.
pub const MIN_SINGULAR: f64 = 1e-6;
