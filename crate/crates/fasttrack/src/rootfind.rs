//! One-dimensional bracketing root-finding steps.
//!
//! Everything here operates on a [`RootBracket`], a sign-change interval
//! `[lo, hi]` with `f(lo) <= 0 <= f(hi)`. Callers whose function has the
//! opposite orientation wrap it with a negation before constructing the
//! bracket. The step functions are pure: they propose a query point inside
//! the bracket and leave evaluation, counting and bracket updates to the
//! caller. This keeps worst-case evaluation budgets unambiguous.
//!
//! Three step rules are provided:
//!
//! - [`bisect_point`]: the interval midpoint (minmax optimal).
//! - [`regula_falsi_point`]: the secant-line root estimate.
//! - [`itp_point`]: interpolate-truncate-project, which follows the regula
//!   falsi estimate but truncates it toward the midpoint and projects it
//!   onto a shrinking minmax interval, so the worst case stays within the
//!   bisection budget plus a configurable slack.

use std::fmt;

/// Error raised by bracket construction and degenerate interpolation.
#[derive(Debug, Clone, PartialEq)]
pub enum RootFindError {
    /// `lo >= hi`.
    InvalidInterval { lo: f64, hi: f64 },
    /// The endpoint values do not satisfy `f_lo <= 0 <= f_hi`.
    SignOrientation { f_lo: f64, f_hi: f64 },
    /// Secant interpolation with `f_lo == f_hi` has no root estimate.
    DegenerateInterpolation,
    /// An ITP parameter is outside its admissible range.
    InvalidItpParams(String),
}

impl fmt::Display for RootFindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootFindError::InvalidInterval { lo, hi } => {
                write!(f, "invalid bracket: lo = {lo} must be < hi = {hi}")
            }
            RootFindError::SignOrientation { f_lo, f_hi } => write!(
                f,
                "bracket values must satisfy f_lo <= 0 <= f_hi, got f_lo = {f_lo}, f_hi = {f_hi}"
            ),
            RootFindError::DegenerateInterpolation => {
                write!(f, "regula falsi is undefined for f_lo == f_hi")
            }
            RootFindError::InvalidItpParams(msg) => write!(f, "invalid ITP parameters: {msg}"),
        }
    }
}

impl std::error::Error for RootFindError {}

/// A sign-change interval `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    /// Builds a bracket, checking `lo < hi` and the canonical sign
    /// orientation `f_lo <= 0 <= f_hi`.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, RootFindError> {
        if !(lo < hi) {
            return Err(RootFindError::InvalidInterval { lo, hi });
        }
        if !(f_lo <= 0.0 && f_hi >= 0.0) {
            return Err(RootFindError::SignOrientation { f_lo, f_hi });
        }
        Ok(RootBracket { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Result of updating a bracket with a queried point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketUpdate {
    /// The bracket contracted to a sub-interval.
    Contracted(RootBracket),
    /// The queried value was exactly zero; the bracket degenerates to the
    /// root itself.
    ExactHit(f64),
}

impl BracketUpdate {
    /// The contracted bracket, if the update was not an exact hit.
    pub fn bracket(self) -> Option<RootBracket> {
        match self {
            BracketUpdate::Contracted(b) => Some(b),
            BracketUpdate::ExactHit(_) => None,
        }
    }
}

/// The interval midpoint `(lo + hi) / 2`.
pub fn bisect_point(bracket: &RootBracket) -> f64 {
    0.5 * (bracket.lo + bracket.hi)
}

/// The secant-line root estimate `(hi*f_lo - lo*f_hi) / (f_lo - f_hi)`.
///
/// Requires a strict sign change `f_lo < 0 < f_hi`; with `f_lo == f_hi`
/// the secant is horizontal and the estimate is undefined.
pub fn regula_falsi_point(bracket: &RootBracket) -> Result<f64, RootFindError> {
    if bracket.f_lo == bracket.f_hi {
        return Err(RootFindError::DegenerateInterpolation);
    }
    let x = (bracket.hi * bracket.f_lo - bracket.lo * bracket.f_hi)
        / (bracket.f_lo - bracket.f_hi);
    Ok(x.clamp(bracket.lo, bracket.hi))
}

/// Parameters of the interpolate-truncate-project step.
///
/// `kappa1 > 0` and `1 <= kappa2 < 1 + phi` (phi the golden ratio) keep the
/// step superlinear on smooth functions; `n0 >= 0` is the slack added to the
/// bisection worst-case budget; `eps_tol` is the target half-width at which
/// the caller intends to stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItpParams {
    pub kappa1: f64,
    pub kappa2: f64,
    pub n0: f64,
    pub eps_tol: f64,
}

/// Upper limit for `kappa2`: one plus the golden ratio.
const KAPPA2_LIMIT: f64 = 2.618033988749895;

impl ItpParams {
    /// Default tuning (`kappa1 = 0.1`, `kappa2 = 2`, `n0 = 0.99`) with an
    /// explicit stopping half-width.
    pub fn with_eps_tol(eps_tol: f64) -> Result<Self, RootFindError> {
        ItpParams::new(0.1, 2.0, 0.99, eps_tol)
    }

    pub fn new(kappa1: f64, kappa2: f64, n0: f64, eps_tol: f64) -> Result<Self, RootFindError> {
        if !(kappa1 > 0.0) {
            return Err(RootFindError::InvalidItpParams(format!(
                "kappa1 must be positive, got {kappa1}"
            )));
        }
        if !(1.0..KAPPA2_LIMIT).contains(&kappa2) {
            return Err(RootFindError::InvalidItpParams(format!(
                "kappa2 must lie in [1, {KAPPA2_LIMIT}), got {kappa2}"
            )));
        }
        if !(n0 >= 0.0) {
            return Err(RootFindError::InvalidItpParams(format!(
                "n0 must be non-negative, got {n0}"
            )));
        }
        if !(eps_tol > 0.0) {
            return Err(RootFindError::InvalidItpParams(format!(
                "eps_tol must be positive, got {eps_tol}"
            )));
        }
        Ok(ItpParams { kappa1, kappa2, n0, eps_tol })
    }
}

/// Per-run state of the ITP step: the iteration index and the minmax
/// budget derived from the initial bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItpState {
    /// Iteration index, starting at 0 and advanced by the caller after
    /// every query.
    pub j: u32,
    /// Bisection budget `ceil(log2((hi0 - lo0) / (2 eps_tol)))`, clamped
    /// at zero.
    pub n_half: u32,
    /// Real budget `n_half + n0`.
    pub n_max: f64,
}

impl ItpState {
    /// Initialises the budget from the initial bracket.
    pub fn new(initial: &RootBracket, params: &ItpParams) -> Self {
        let n_half = (initial.width() / (2.0 * params.eps_tol)).log2().ceil().max(0.0) as u32;
        ItpState { j: 0, n_half, n_max: f64::from(n_half) + params.n0 }
    }

    /// Records that one query has been spent.
    pub fn advance(&mut self) {
        self.j += 1;
    }
}

/// The interpolate-truncate-project query point.
///
/// Interpolation takes the regula falsi estimate `x_f`; truncation moves it
/// toward the midpoint by `delta = kappa1 * (hi - lo)^kappa2` (or all the
/// way if the estimate is closer than `delta`); projection clips the result
/// onto the minmax interval of radius `r = eps_tol * 2^(n_max - j) -
/// (hi - lo)/2` around the midpoint. Once the budget is exhausted (`r <= 0`)
/// the midpoint is returned. The result always lies strictly inside
/// `(lo, hi)`.
pub fn itp_point(bracket: &RootBracket, params: &ItpParams, state: &ItpState) -> f64 {
    let x_half = bisect_point(bracket);
    let width = bracket.width();
    let r = params.eps_tol * (state.n_max - f64::from(state.j)).exp2() - 0.5 * width;
    if r <= 0.0 {
        // Budget exhausted; the midpoint is the only minmax-safe query.
        return x_half;
    }
    let x_f = match regula_falsi_point(bracket) {
        Ok(x) => x,
        Err(_) => return x_half,
    };
    let sigma = (x_half - x_f).signum();
    if x_half == x_f {
        // Interpolation coincides with the midpoint; ties go to bisection.
        return x_half;
    }
    let delta = params.kappa1 * width.powf(params.kappa2);
    let x_t = if delta <= (x_half - x_f).abs() { x_f + sigma * delta } else { x_half };
    let projected = if (x_t - x_half).abs() <= r { x_t } else { x_half - sigma * r };
    if projected > bracket.lo && projected < bracket.hi {
        projected
    } else {
        x_half
    }
}

/// Contracts the bracket with the value observed at an interior point:
/// negative values raise `lo`, positive values lower `hi`, and an exact
/// zero collapses the bracket onto the root.
pub fn update_bracket(bracket: &RootBracket, x: f64, fx: f64) -> BracketUpdate {
    debug_assert!(bracket.lo < x && x < bracket.hi, "query must be interior");
    if fx < 0.0 {
        BracketUpdate::Contracted(RootBracket { lo: x, f_lo: fx, ..*bracket })
    } else if fx > 0.0 {
        BracketUpdate::Contracted(RootBracket { hi: x, f_hi: fx, ..*bracket })
    } else {
        BracketUpdate::ExactHit(x)
    }
}
