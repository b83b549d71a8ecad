//! Inexact line search by interval bracketing, with instrumented
//! function-evaluation counts.
//!
//! The classic backtracking loop accepts the first element of the sequence
//! `x0, x0*beta, x0*beta^2, ...` satisfying `g(x) <= 0`, which costs up to
//! `ceil(log_beta(eps/x0))` evaluations of `g`. Maintaining a bracket
//! `[a, b]` around the turning point instead, and querying interior points,
//! brings the worst case down to `ceil(log2(log_beta(eps/x0)))` while
//! returning a step of the same quality (within a factor `beta` of the
//! largest acceptable step).
//!
//! The crate is organised as:
//!
//! - [`rootfind`]: generic one-dimensional bracketing steps (bisection,
//!   regula falsi, interpolate-truncate-project) on a sign-change interval.
//! - [`linesearch`]: the line-search problem type, the backtracking and
//!   fast-tracking searchers, the choice rules (geometric mean, ITP in
//!   log2 coordinates), and the worst-case bound calculators.
//! - [`armijo`]: the Armijo sufficient-decrease residual, a vanilla
//!   gradient-descent driver, and a ten-function benchmark suite in R^10.
//! - [`bench`]: experiment runners aggregating per-call evaluation counts
//!   into CSV/JSON reports.

pub mod armijo;
pub mod bench;
pub mod linesearch;
pub mod rootfind;

pub use linesearch::{
    backtrack, fasttrack, geometric_point, validate_conditions, ChoiceRule, SearchOutcome,
    SearchStatus, TurningPointProblem,
};
pub use rootfind::{
    bisect_point, itp_point, regula_falsi_point, update_bracket, BracketUpdate, ItpParams,
    ItpState, RootBracket,
};
