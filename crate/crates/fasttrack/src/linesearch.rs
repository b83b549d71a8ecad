//! Backtracking and fast-tracking searchers for the turning-point problem.
//!
//! The problem: given `g` with `g(x) <= 0` iff `x <= x*` for an unknown
//! turning point `x*`, find a step `x_hat` with `g(x_hat) <= 0` that is not
//! too far below `x*` (Condition 1: `beta * x* < x_hat`), assuming `x*` is
//! bounded away from zero (Condition 2: `x* > epsilon`).
//!
//! [`backtrack`] walks the sequence `x0, x0*beta, x0*beta^2, ...` and stops
//! at the first acceptable value. [`fasttrack`] maintains a bracket
//! `[a, b]` with `a = epsilon`, `b = x0`, queries interior points chosen by
//! a [`ChoiceRule`], and contracts the bracket until `a > beta * b`; at that
//! point `a` is within a factor `beta` of every `x* <= b`. Both record a full
//! evaluation trace so tests can re-check acceptance without re-evaluating.
//!
//! Evaluation accounting: `loop_evals` counts only the bracketing loop's
//! queries (what the worst-case bounds refer to); `total_evals` additionally
//! counts the `g(x0)` pre-check and the `g(epsilon)` safeguard. For
//! backtracking the two coincide.

use std::fmt;

use crate::rootfind::{itp_point, ItpParams, ItpState, RootBracket};

/// Error raised when a problem is constructed with out-of-range parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemError {
    /// `epsilon` must satisfy `0 < epsilon < x0`.
    EpsilonOutOfRange { epsilon: f64, x0: f64 },
    /// `beta` must lie strictly inside `(0, 1)`.
    BetaOutOfRange { beta: f64 },
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::EpsilonOutOfRange { epsilon, x0 } => {
                write!(f, "epsilon = {epsilon} must satisfy 0 < epsilon < x0 = {x0}")
            }
            ProblemError::BetaOutOfRange { beta } => {
                write!(f, "beta = {beta} must lie in (0, 1)")
            }
        }
    }
}

impl std::error::Error for ProblemError {}

/// The turning-point problem: the residual `g`, the initial step `x0`, the
/// relative precision `beta`, the lower bound `epsilon` on the turning
/// point, and a safety cap on evaluations.
pub struct TurningPointProblem<G> {
    g: G,
    x0: f64,
    beta: f64,
    epsilon: f64,
    max_evals: usize,
}

impl<G: FnMut(f64) -> f64> TurningPointProblem<G> {
    /// Builds a problem, validating `0 < epsilon < x0` and `beta` in
    /// `(0, 1)`. The evaluation cap defaults to the backtracking worst
    /// case plus eight, which is generous for both searchers while still
    /// catching Condition 2 violations quickly.
    pub fn new(g: G, x0: f64, beta: f64, epsilon: f64) -> Result<Self, ProblemError> {
        if !(epsilon > 0.0 && epsilon < x0) {
            return Err(ProblemError::EpsilonOutOfRange { epsilon, x0 });
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(ProblemError::BetaOutOfRange { beta });
        }
        let mut problem = TurningPointProblem { g, x0, beta, epsilon, max_evals: 0 };
        problem.max_evals = problem.backtrack_bound() + 8;
        Ok(problem)
    }

    /// Overrides the evaluation safety cap.
    pub fn with_max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals.max(1);
        self
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_evals(&self) -> usize {
        self.max_evals
    }

    /// Worst-case backtracking iteration count
    /// `ceil(log_beta(epsilon / x0)) = ceil(ln(epsilon/x0) / ln(beta))`.
    pub fn backtrack_bound(&self) -> usize {
        ((self.epsilon / self.x0).ln() / self.beta.ln()).ceil() as usize
    }

    /// Worst-case fast-tracking iteration count
    /// `ceil(log2(log_beta(epsilon / x0)))`, clamped at zero (the loop body
    /// never runs when `epsilon > beta * x0`).
    pub fn fasttrack_bound(&self) -> usize {
        let ratio = (self.epsilon / self.x0).ln() / self.beta.ln();
        ratio.log2().ceil().max(0.0) as usize
    }
}

/// How the searcher finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// A point with `g <= 0` was found and verified.
    Accepted,
    /// A query hit `g = 0` exactly; the returned point is the turning point.
    ExactHit,
    /// `g(epsilon) > 0`: the turning point lies below `epsilon`, violating
    /// Condition 2.
    Condition2Violated,
    /// The evaluation safety cap was reached before acceptance.
    EvalBudgetExceeded,
}

/// Outcome of a line search: the accepted step, evaluation counts and the
/// ordered trace of `(query point, g value)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// The accepted step for `Accepted`/`ExactHit`; the last candidate
    /// otherwise.
    pub x_hat: f64,
    /// Evaluations spent inside the bracketing loop.
    pub loop_evals: usize,
    /// All evaluations, including the pre-check and safeguard.
    pub total_evals: usize,
    pub trace: Vec<(f64, f64)>,
    pub status: SearchStatus,
}

impl SearchOutcome {
    /// The recorded `g` value at the accepted step, re-read from the trace
    /// without spending another evaluation.
    pub fn value_at_x_hat(&self) -> Option<f64> {
        self.trace.iter().rev().find(|(x, _)| *x == self.x_hat).map(|&(_, v)| v)
    }

    fn new(x_hat: f64, loop_evals: usize, trace: Vec<(f64, f64)>, status: SearchStatus) -> Self {
        SearchOutcome { x_hat, loop_evals, total_evals: trace.len(), trace, status }
    }
}

/// Query-point rule for the fast-tracking loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChoiceRule {
    /// The geometric mean `sqrt(a * b)`: bisection on the log scale.
    GeometricBisection,
    /// The ITP step applied in log2 coordinates, with the bracket rescaled
    /// to `[0, 1]`. The stopping half-width is derived from the problem, so
    /// only the tuning parameters are carried here.
    ItpLog { kappa1: f64, kappa2: f64, n0: f64 },
}

impl ChoiceRule {
    /// The ITP rule with its default tuning.
    pub fn itp_log() -> Self {
        ChoiceRule::ItpLog { kappa1: 0.1, kappa2: 2.0, n0: 0.99 }
    }
}

/// The geometric mean `sqrt(a * b)`; its base-2 logarithm is the arithmetic
/// mean of `log2(a)` and `log2(b)`.
pub fn geometric_point(a: f64, b: f64) -> f64 {
    debug_assert!(0.0 < a && a < b);
    (a * b).sqrt()
}

/// True iff `beta * x_star < x_hat <= x_star`. Testing aid for synthetic
/// problems with a known turning point.
pub fn validate_conditions(outcome: &SearchOutcome, x_star: f64, beta: f64) -> bool {
    beta * x_star < outcome.x_hat && outcome.x_hat <= x_star
}

/// Classic backtracking: evaluates `g` at `x0, x0*beta, x0*beta^2, ...` and
/// returns the first point with `g <= 0`. A value that is NaN counts as a
/// rejection and the step keeps shrinking.
pub fn backtrack<G: FnMut(f64) -> f64>(problem: &mut TurningPointProblem<G>) -> SearchOutcome {
    let mut x = problem.x0;
    let mut trace = Vec::new();
    loop {
        if trace.len() >= problem.max_evals {
            let n = trace.len();
            return SearchOutcome::new(x, n, trace, SearchStatus::EvalBudgetExceeded);
        }
        let gx = (problem.g)(x);
        trace.push((x, gx));
        if gx <= 0.0 {
            let n = trace.len();
            return SearchOutcome::new(x, n, trace, SearchStatus::Accepted);
        }
        x *= problem.beta;
    }
}

/// Bracketing line search: after a `g(x0)` pre-check, maintains the bracket
/// `[a, b]` from `[epsilon, x0]`, querying points chosen by `rule` while
/// `a <= beta * b` and contracting on the observed sign. Returns `a` (a
/// point already verified acceptable) on normal exit; if `a` was never
/// raised above `epsilon` the safeguard evaluates `g(epsilon)` and reports
/// a Condition 2 violation when it is positive.
pub fn fasttrack<G: FnMut(f64) -> f64>(
    problem: &mut TurningPointProblem<G>,
    rule: &ChoiceRule,
) -> SearchOutcome {
    let mut trace = Vec::new();
    let g0 = (problem.g)(problem.x0);
    trace.push((problem.x0, g0));
    if g0 <= 0.0 {
        return SearchOutcome::new(problem.x0, 0, trace, SearchStatus::Accepted);
    }

    let mut a = problem.epsilon;
    let mut b = problem.x0;
    let mut a_raised = false;
    let mut itp = match rule {
        ChoiceRule::GeometricBisection => None,
        ChoiceRule::ItpLog { kappa1, kappa2, n0 } => {
            Some(ItpLogDriver::new(problem, *kappa1, *kappa2, *n0, g0))
        }
    };
    let mut loop_evals = 0;

    while a <= problem.beta * b {
        if trace.len() >= problem.max_evals {
            return SearchOutcome::new(a, loop_evals, trace, SearchStatus::EvalBudgetExceeded);
        }
        let x = match &itp {
            None => geometric_point(a, b),
            Some(driver) => driver.query(a, b),
        };
        let gx = (problem.g)(x);
        trace.push((x, gx));
        loop_evals += 1;
        if gx == 0.0 {
            return SearchOutcome::new(x, loop_evals, trace, SearchStatus::ExactHit);
        }
        // NaN counts as a rejection: the step shrinks away from it.
        let accepted = gx < 0.0;
        if accepted {
            a = x;
            a_raised = true;
        } else {
            b = x;
        }
        if let Some(driver) = &mut itp {
            driver.observe(x, gx, accepted);
        }
    }

    if a_raised {
        return SearchOutcome::new(a, loop_evals, trace, SearchStatus::Accepted);
    }
    // `a` was never raised: verify epsilon itself before returning it.
    let ge = (problem.g)(problem.epsilon);
    trace.push((problem.epsilon, ge));
    if ge <= 0.0 {
        SearchOutcome::new(problem.epsilon, loop_evals, trace, SearchStatus::Accepted)
    } else {
        SearchOutcome::new(problem.epsilon, loop_evals, trace, SearchStatus::Condition2Violated)
    }
}

/// ITP in log2 coordinates. The bracket `[a, b]` maps to `u = (log2(x) - L)
/// / W` with `L = log2(epsilon)`, `W = log2(x0) - log2(epsilon)`, so the
/// initial bracket is `[0, 1]`; the stopping half-width `eps_tol =
/// -log2(beta) / (2 W)` makes the ITP termination width coincide with the
/// loop guard `a <= beta * b`.
///
/// Interpolation operates on the residual measured in the same log units as
/// the coordinate: `h(x) = log2(x) - log2(x - g(x))`, which has the sign of
/// `g(x)` wherever it is defined and equals the exact log-distance to the
/// turning point whenever `g` has the form `x - x*`. Raw `g` values span
/// too many orders of magnitude across the bracket for the secant to be
/// informative (`g(0) = 0` for Armijo residuals pulls it toward the origin).
/// Endpoints without a finite residual fall back to the log-scale midpoint,
/// which is the minmax-safe choice.
struct ItpLogDriver {
    log_lo: f64,
    log_width: f64,
    params: ItpParams,
    state: ItpState,
    h_at_a: Option<f64>,
    h_at_b: Option<f64>,
}

impl ItpLogDriver {
    fn new<G: FnMut(f64) -> f64>(
        problem: &TurningPointProblem<G>,
        kappa1: f64,
        kappa2: f64,
        n0: f64,
        precheck_value: f64,
    ) -> Self {
        let log_lo = problem.epsilon.log2();
        let log_width = problem.x0.log2() - log_lo;
        let eps_tol = -problem.beta.log2() / (2.0 * log_width);
        let params = ItpParams::new(kappa1, kappa2, n0, eps_tol)
            .expect("problem invariants imply valid ITP parameters");
        let unit = RootBracket::new(0.0, 1.0, -1.0, 1.0).expect("unit bracket is valid");
        let state = ItpState::new(&unit, &params);
        let mut driver =
            ItpLogDriver { log_lo, log_width, params, state, h_at_a: None, h_at_b: None };
        // The pre-check value at x0 is already paid for; it seeds the upper
        // endpoint's residual.
        driver.h_at_b = driver.log_residual(problem.x0, precheck_value);
        driver
    }

    fn to_unit(&self, x: f64) -> f64 {
        (x.log2() - self.log_lo) / self.log_width
    }

    fn from_unit(&self, u: f64) -> f64 {
        (self.log_lo + u * self.log_width).exp2()
    }

    /// `(log2(x) - log2(x - gx)) / W = -log2(1 - gx/x) / W`, computed via
    /// `ln_1p` so the sign matches `sign(gx)` exactly. `None` when the
    /// residual is undefined (`gx >= x`) or non-finite.
    fn log_residual(&self, x: f64, gx: f64) -> Option<f64> {
        let h = -(-gx / x).ln_1p() / (std::f64::consts::LN_2 * self.log_width);
        h.is_finite().then_some(h)
    }

    fn query(&self, a: f64, b: f64) -> f64 {
        let u_lo = self.to_unit(a);
        let u_hi = self.to_unit(b);
        let u = match (self.h_at_a, self.h_at_b) {
            (Some(ha), Some(hb)) if ha < 0.0 && hb > 0.0 => {
                match RootBracket::new(u_lo, u_hi, ha, hb) {
                    Ok(bracket) => itp_point(&bracket, &self.params, &self.state),
                    Err(_) => 0.5 * (u_lo + u_hi),
                }
            }
            _ => 0.5 * (u_lo + u_hi),
        };
        let x = self.from_unit(u);
        if x > a && x < b {
            x
        } else {
            geometric_point(a, b)
        }
    }

    /// Records the residual observed at the new endpoint and spends one
    /// unit of the minmax budget.
    fn observe(&mut self, x: f64, gx: f64, accepted: bool) {
        let h = self.log_residual(x, gx);
        if accepted {
            self.h_at_a = h;
        } else {
            self.h_at_b = h;
        }
        self.state.advance();
    }
}
