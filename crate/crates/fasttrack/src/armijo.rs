//! Armijo residuals, a gradient-descent driver, and the benchmark suite.
//!
//! The Armijo condition `f(x + t d) <= f(x) + c t grad_f(x)'d` is encoded
//! as the residual `g(t) = f(x + t d) - f(x) - c t grad_f(x)'d`, so finding
//! an acceptable step is exactly the turning-point problem solved by the
//! searchers in [`crate::linesearch`]. Each invocation of the residual
//! costs one objective evaluation; the gradient is computed once when the
//! residual is built.

use std::fmt;

use crate::linesearch::{
    backtrack, fasttrack, ChoiceRule, SearchOutcome, SearchStatus, TurningPointProblem,
};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// A named objective with its analytic gradient.
pub struct ObjectiveFunction {
    name: &'static str,
    dim: usize,
    f: Box<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    grad: Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
}

impl ObjectiveFunction {
    pub fn new(
        name: &'static str,
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        ObjectiveFunction { name, dim, f: Box::new(f), grad: Box::new(grad) }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.f)(x)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        (self.grad)(x)
    }
}

impl fmt::Debug for ObjectiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveFunction")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Raised when the supplied direction is not a descent direction.
#[derive(Debug, Clone, PartialEq)]
pub struct NonDescentError {
    pub slope: f64,
}

impl fmt::Display for NonDescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grad'd = {} is not negative; d is not a descent direction", self.slope)
    }
}

impl std::error::Error for NonDescentError {}

/// Builds the Armijo residual `g(t) = f(x_k + t d) - f(x_k) - c t
/// grad_f(x_k)'d` for a unit descent direction `d`. The gradient and
/// `f(x_k)` are evaluated once here; each call of the returned closure
/// costs exactly one evaluation of `f`.
pub fn armijo_residual<'a>(
    obj: &'a ObjectiveFunction,
    x_k: &'a [f64],
    d: &'a [f64],
    c: f64,
) -> Result<impl FnMut(f64) -> f64 + 'a, NonDescentError> {
    let grad = obj.gradient(x_k);
    let slope = dot(&grad, d);
    if slope >= 0.0 {
        return Err(NonDescentError { slope });
    }
    let f_k = obj.value(x_k);
    let mut point = vec![0.0; x_k.len()];
    Ok(move |t: f64| {
        for (p, (xi, di)) in point.iter_mut().zip(x_k.iter().zip(d)) {
            *p = xi + t * di;
        }
        obj.value(&point) - f_k - c * t * slope
    })
}

/// Line-search selector for the descent driver and the experiment runners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Backtrack,
    FasttrackGeometric,
    FasttrackItp,
}

impl SearchMethod {
    pub const ALL: [SearchMethod; 3] =
        [SearchMethod::Backtrack, SearchMethod::FasttrackGeometric, SearchMethod::FasttrackItp];

    pub fn label(self) -> &'static str {
        match self {
            SearchMethod::Backtrack => "backtrack",
            SearchMethod::FasttrackGeometric => "fasttrack_geometric",
            SearchMethod::FasttrackItp => "fasttrack_itp",
        }
    }
}

impl fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SearchMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "backtrack" => Ok(SearchMethod::Backtrack),
            "fasttrack_geometric" => Ok(SearchMethod::FasttrackGeometric),
            "fasttrack_itp" => Ok(SearchMethod::FasttrackItp),
            other => Err(format!(
                "unknown method '{other}' (expected backtrack, fasttrack_geometric or fasttrack_itp)"
            )),
        }
    }
}

/// Configuration of a gradient-descent run.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentConfig {
    pub start: Vec<f64>,
    pub steps: usize,
    pub armijo_c: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub x0_step: f64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            start: vec![1.0; 10],
            steps: 20,
            armijo_c: 1e-4,
            beta: 0.8,
            epsilon: 1e-10,
            x0_step: 1.0,
        }
    }
}

/// Why a descent run stopped before completing its step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    /// The gradient norm fell below `1e-12`.
    GradientVanished,
    /// The line search reported a Condition 2 violation.
    Condition2Violated,
    /// The line search hit its evaluation cap.
    EvalBudgetExceeded,
    /// The objective became non-finite at the new iterate.
    DomainError,
    /// The normalized gradient was not a descent direction (non-finite
    /// gradient components).
    NonDescentDirection,
}

impl fmt::Display for Halt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Halt::GradientVanished => "gradient vanished",
            Halt::Condition2Violated => "condition 2 violated",
            Halt::EvalBudgetExceeded => "evaluation budget exceeded",
            Halt::DomainError => "objective left its domain",
            Halt::NonDescentDirection => "direction is not a descent direction",
        };
        f.write_str(s)
    }
}

/// One gradient step: the new iterate, its objective value (recovered from
/// the line-search trace), the gradient norm at the previous iterate, and
/// the line-search outcome.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub iterate: Vec<f64>,
    pub f_value: f64,
    pub grad_norm: f64,
    pub outcome: SearchOutcome,
}

/// Full record of a descent run.
#[derive(Debug, Clone)]
pub struct DescentTrace {
    pub f_start: f64,
    pub steps: Vec<StepRecord>,
    pub halt: Option<Halt>,
}

impl DescentTrace {
    /// Per-step loop evaluation counts, in step order.
    pub fn loop_evals(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.outcome.loop_evals).collect()
    }

    /// Per-step total evaluation counts, in step order.
    pub fn total_evals(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.outcome.total_evals).collect()
    }
}

const GRAD_NORM_STOP: f64 = 1e-12;

/// Vanilla gradient descent with normalized direction `d = -grad / |grad|`
/// and the selected line search choosing the step length. Runs for
/// `config.steps` iterations, stopping early when the gradient vanishes,
/// the searcher reports an error status, or the objective leaves its
/// domain.
pub fn gradient_descent(
    obj: &ObjectiveFunction,
    config: &DescentConfig,
    method: SearchMethod,
) -> DescentTrace {
    assert_eq!(config.start.len(), obj.dim(), "start point dimension mismatch");
    let mut x = config.start.clone();
    let mut f_x = obj.value(&x);
    let f_start = f_x;
    let mut steps = Vec::with_capacity(config.steps);
    let mut halt = None;

    for _ in 0..config.steps {
        let grad = obj.gradient(&x);
        let grad_norm = norm(&grad);
        if !grad_norm.is_finite() {
            halt = Some(Halt::NonDescentDirection);
            break;
        }
        if grad_norm < GRAD_NORM_STOP {
            halt = Some(Halt::GradientVanished);
            break;
        }
        let d: Vec<f64> = grad.iter().map(|gi| -gi / grad_norm).collect();
        let outcome = {
            let residual = match armijo_residual(obj, &x, &d, config.armijo_c) {
                Ok(r) => r,
                Err(_) => {
                    halt = Some(Halt::NonDescentDirection);
                    break;
                }
            };
            let mut problem =
                TurningPointProblem::new(residual, config.x0_step, config.beta, config.epsilon)
                    .expect("descent config implies a valid problem");
            match method {
                SearchMethod::Backtrack => backtrack(&mut problem),
                SearchMethod::FasttrackGeometric => {
                    fasttrack(&mut problem, &ChoiceRule::GeometricBisection)
                }
                SearchMethod::FasttrackItp => fasttrack(&mut problem, &ChoiceRule::itp_log()),
            }
        };
        match outcome.status {
            SearchStatus::Accepted | SearchStatus::ExactHit => {}
            SearchStatus::Condition2Violated => {
                steps.push(StepRecord { iterate: x.clone(), f_value: f_x, grad_norm, outcome });
                halt = Some(Halt::Condition2Violated);
                break;
            }
            SearchStatus::EvalBudgetExceeded => {
                steps.push(StepRecord { iterate: x.clone(), f_value: f_x, grad_norm, outcome });
                halt = Some(Halt::EvalBudgetExceeded);
                break;
            }
        }
        let t = outcome.x_hat;
        // Recover f at the accepted point from the residual trace:
        // g(t) = f(x + t d) - f(x) - c t slope with slope = -|grad|.
        let g_t = outcome.value_at_x_hat().expect("accepted point is recorded in the trace");
        let f_new = f_x + g_t - config.armijo_c * t * grad_norm;
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi += t * di;
        }
        steps.push(StepRecord { iterate: x.clone(), f_value: f_new, grad_norm, outcome });
        if !f_new.is_finite() {
            halt = Some(Halt::DomainError);
            break;
        }
        f_x = f_new;
    }

    DescentTrace { f_start, steps, halt }
}

/// The matrix `V = I + W` where `W` is the Vandermonde matrix on the `n`
/// Chebyshev-Gauss nodes `t_i = cos((2i - 1) pi / (2n))`, `W[i][j] =
/// t_i^j` for `j = 0..n-1`.
pub fn chebyshev_vandermonde(n: usize) -> Vec<Vec<f64>> {
    assert!(n >= 1);
    let nodes: Vec<f64> = (1..=n)
        .map(|i| ((2 * i - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos())
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let w = nodes[i].powi(j as i32);
                    if i == j {
                        1.0 + w
                    } else {
                        w
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, x)).collect()
}

/// `x' V x` and its gradient `(V + V') x`.
fn quadratic_form(v: &[Vec<f64>], x: &[f64]) -> f64 {
    dot(x, &mat_vec(v, x))
}

fn quadratic_form_grad(v: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let vx = mat_vec(v, x);
    let n = x.len();
    (0..n).map(|i| vx[i] + (0..n).map(|k| v[k][i] * x[k]).sum::<f64>()).collect()
}

/// Underflow guard for the singular loci of the suite functions.
const SINGULAR_GUARD: f64 = 1e-300;

const SUITE_DIM: usize = 10;

/// The ten benchmark objectives on R^10. Index vector `n = [1, 2, ..., 10]`
/// enters element-wise where it appears; `V` is [`chebyshev_vandermonde`]
/// of size 10. Subgradient conventions: `sign(0) = 0` for the L1 term, and
/// the gradient of `sqrt(|n'x|)` is zero at `n'x = 0`.
pub fn test_suite() -> Vec<ObjectiveFunction> {
    let dim = SUITE_DIM;
    let idx: Vec<f64> = (1..=dim).map(|i| i as f64).collect();
    // n^(1/n) element-wise, the offset of the log objective.
    let log_center: Vec<f64> = idx.iter().map(|&i| i.powf(1.0 / i)).collect();
    // sqrt(n) element-wise, the L1 anchor.
    let sqrt_idx: Vec<f64> = idx.iter().map(|&i| i.sqrt()).collect();
    let v1 = chebyshev_vandermonde(dim);
    let v2 = v1.clone();
    let v3 = v1.clone();
    let v4 = v1.clone();

    vec![
        ObjectiveFunction::new(
            "simple_quadratic",
            dim,
            |x| x.iter().map(|xi| xi * xi).sum(),
            |x| x.iter().map(|xi| 2.0 * xi).collect(),
        ),
        ObjectiveFunction::new(
            "high_degree_polynomial",
            dim,
            |x| x.iter().enumerate().map(|(k, xi)| xi.powi(2 * (k as i32 + 1))).sum(),
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| {
                        let p = 2 * (k as i32 + 1);
                        f64::from(p) * xi.powi(p - 1)
                    })
                    .collect()
            },
        ),
        ObjectiveFunction::new(
            "vandermonde_interpolation",
            dim,
            move |x| quadratic_form(&v1, x),
            move |x| quadratic_form_grad(&v2, x),
        ),
        ObjectiveFunction::new(
            "trigonometric_1",
            dim,
            |x| x.iter().enumerate().map(|(k, xi)| (k as f64 + 1.0) * xi.cos()).sum(),
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| -(k as f64 + 1.0) * xi.sin())
                    .collect()
            },
        ),
        ObjectiveFunction::new(
            "trigonometric_2",
            dim,
            |x| x.iter().enumerate().map(|(k, xi)| (k as f64 + 1.0) * xi.cos().cos()).sum(),
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| (k as f64 + 1.0) * xi.cos().sin() * xi.sin())
                    .collect()
            },
        ),
        {
            let center = log_center.clone();
            let center_g = log_center.clone();
            ObjectiveFunction::new(
                "log_poly",
                dim,
                move |x| {
                    let r2: f64 =
                        x.iter().zip(&center).map(|(xi, mi)| (xi - mi) * (xi - mi)).sum();
                    if r2.sqrt() < SINGULAR_GUARD {
                        f64::NEG_INFINITY
                    } else {
                        r2.sqrt().ln() * 2.0
                    }
                },
                move |x| {
                    let diff: Vec<f64> = x.iter().zip(&center_g).map(|(xi, mi)| xi - mi).collect();
                    let r2 = dot(&diff, &diff);
                    diff.iter().map(|di| 2.0 * di / r2).collect()
                },
            )
        },
        {
            let idx_f = idx.clone();
            let idx_g = idx.clone();
            ObjectiveFunction::new(
                "quartic",
                dim,
                move |x| {
                    let s: f64 = x.iter().sum();
                    let nx = dot(&idx_f, x);
                    s.powi(4) / dim as f64 + nx.abs().sqrt()
                },
                move |x| {
                    let s: f64 = x.iter().sum();
                    let nx = dot(&idx_g, x);
                    let cubic = 4.0 * s.powi(3) / dim as f64;
                    let scale = if nx.abs() < SINGULAR_GUARD {
                        0.0
                    } else {
                        nx.signum() / (2.0 * nx.abs().sqrt())
                    };
                    idx_g.iter().map(|ni| cubic + scale * ni).collect()
                },
            )
        },
        {
            let anchor = sqrt_idx.clone();
            let anchor_g = sqrt_idx.clone();
            ObjectiveFunction::new(
                "interpolation_regularizer",
                dim,
                move |x| {
                    quadratic_form(&v3, x)
                        + x.iter().zip(&anchor).map(|(xi, si)| (xi - si).abs()).sum::<f64>()
                },
                move |x| {
                    let mut grad = quadratic_form_grad(&v4, x);
                    for (gi, (xi, si)) in grad.iter_mut().zip(x.iter().zip(&anchor_g)) {
                        let diff = xi - si;
                        // sign(0) = 0 subgradient at the kink.
                        if diff != 0.0 {
                            *gi += diff.signum();
                        }
                    }
                    grad
                },
            )
        },
        ObjectiveFunction::new(
            "noisy_quadratic_hard",
            dim,
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| {
                        let i = k as f64 + 1.0;
                        let noise =
                            if xi.abs() < SINGULAR_GUARD { 0.0 } else { 1e-3 * (i / xi).sin() };
                        xi * xi + noise
                    })
                    .sum()
            },
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| {
                        let i = k as f64 + 1.0;
                        let noise = if xi.abs() < SINGULAR_GUARD {
                            0.0
                        } else {
                            -1e-3 * (i / xi).cos() * i / (xi * xi)
                        };
                        2.0 * xi + noise
                    })
                    .collect()
            },
        ),
        ObjectiveFunction::new(
            "noisy_quadratic_easy",
            dim,
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| {
                        let i = k as f64 + 1.0;
                        xi * xi + 1e-3 * (1e3 * i * xi).sin()
                    })
                    .sum()
            },
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(k, xi)| {
                        let i = k as f64 + 1.0;
                        2.0 * xi + i * (1e3 * i * xi).cos()
                    })
                    .collect()
            },
        ),
    ]
}

/// Looks up a suite function by its snake_case name.
pub fn suite_function(name: &str) -> Option<ObjectiveFunction> {
    test_suite().into_iter().find(|f| f.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chebyshev_vandermonde_small_cases() {
        // n = 1: the single node is cos(pi/2) = 0, so W = [1] and V = [2].
        let v = chebyshev_vandermonde(1);
        assert_relative_eq!(v[0][0], 2.0, max_relative = 1e-15);

        // n = 2: nodes (sqrt(2)/2, -sqrt(2)/2).
        let v = chebyshev_vandermonde(2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(v[0][0], 2.0, max_relative = 1e-14);
        assert_relative_eq!(v[0][1], s, max_relative = 1e-14);
        assert_relative_eq!(v[1][0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(v[1][1], 1.0 - s, max_relative = 1e-14);
    }

    #[test]
    fn chebyshev_vandermonde_first_power_column_is_ones() {
        for n in [1, 3, 7, 10] {
            let v = chebyshev_vandermonde(n);
            for (i, row) in v.iter().enumerate() {
                let w0 = if i == 0 { row[0] - 1.0 } else { row[0] };
                assert_eq!(w0, 1.0, "n = {n}, row {i}");
            }
        }
    }

    #[test]
    fn suite_values_at_reference_points() {
        let suite = test_suite();
        assert_eq!(suite.len(), 10);
        let ones = vec![1.0; 10];
        assert_eq!(suite[0].value(&ones), 10.0);

        let zeros = vec![0.0; 10];
        assert_eq!(suite[3].value(&zeros), 55.0);

        // The log objective at its center hits the singular guard.
        let idx: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let center: Vec<f64> = idx.iter().map(|&i| i.powf(1.0 / i)).collect();
        assert_eq!(suite[5].value(&center), f64::NEG_INFINITY);
    }

    #[test]
    fn armijo_residual_quadratic_closed_form() {
        let suite = test_suite();
        let quad = &suite[0];
        let x = vec![1.0; 10];
        let grad = quad.gradient(&x);
        let gn = norm(&grad);
        let d: Vec<f64> = grad.iter().map(|g| -g / gn).collect();
        let c = 1e-4;
        let mut g = armijo_residual(quad, &x, &d, c).unwrap();

        // Closed form along the ray: g(t) = (sqrt(10) - t)^2 - 10 + c t 2 sqrt(10).
        let closed = |t: f64| {
            let r = 10f64.sqrt();
            (r - t) * (r - t) - 10.0 + c * t * 2.0 * r
        };
        assert_eq!(g(0.0), 0.0);
        for t in [0.3, 1.0, 2.0, 10f64.sqrt()] {
            assert_relative_eq!(g(t), closed(t), max_relative = 1e-10, epsilon = 1e-12);
        }
        assert!(g(10f64.sqrt()) < 0.0);
    }

    #[test]
    fn armijo_residual_rejects_ascent_direction() {
        let suite = test_suite();
        let quad = &suite[0];
        let x = vec![1.0; 10];
        let grad = quad.gradient(&x);
        let gn = norm(&grad);
        let d: Vec<f64> = grad.iter().map(|g| g / gn).collect();
        assert!(armijo_residual(quad, &x, &d, 1e-4).is_err());
    }

    #[test]
    fn descent_strictly_decreases_objective() {
        let config = DescentConfig::default();
        for obj in test_suite() {
            for method in SearchMethod::ALL {
                let trace = gradient_descent(&obj, &config, method);
                let mut prev = trace.f_start;
                for (k, step) in trace.steps.iter().enumerate() {
                    if matches!(
                        step.outcome.status,
                        SearchStatus::Accepted | SearchStatus::ExactHit
                    ) {
                        assert!(
                            step.f_value < prev,
                            "{} / {method}: step {k} did not decrease ({} -> {})",
                            obj.name(),
                            prev,
                            step.f_value
                        );
                        prev = step.f_value;
                    }
                }
            }
        }
    }

    #[test]
    fn descent_paths_nearly_coincide_on_simple_quadratic() {
        let config = DescentConfig::default();
        let suite = test_suite();
        let quad = &suite[0];
        let a = gradient_descent(quad, &config, SearchMethod::Backtrack);
        let b = gradient_descent(quad, &config, SearchMethod::FasttrackItp);
        assert_eq!(a.steps.len(), 20);
        assert_eq!(b.steps.len(), 20);
        for (k, (sa, sb)) in a.steps.iter().zip(&b.steps).enumerate() {
            let dist = sa
                .iterate
                .iter()
                .zip(&sb.iterate)
                .map(|(p, q)| (p - q) * (p - q))
                .sum::<f64>()
                .sqrt();
            assert!(dist <= 0.5, "paths diverged at step {k}: {dist}");
        }
    }

    #[test]
    fn descent_per_call_trends_on_simple_quadratic() {
        let config = DescentConfig::default();
        let suite = test_suite();
        let quad = &suite[0];

        // Backtracking grows the further into the run.
        let bt = gradient_descent(quad, &config, SearchMethod::Backtrack);
        let evals = bt.total_evals();
        for k in 10..evals.len() - 1 {
            assert!(evals[k] <= evals[k + 1], "backtracking counts decreased: {evals:?}");
        }

        // Fast-tracking shrinks: compare the mean of the last five real
        // searches with the five before them.
        let ft = gradient_descent(quad, &config, SearchMethod::FasttrackItp);
        let evals = ft.loop_evals();
        let mean = |s: &[usize]| s.iter().sum::<usize>() as f64 / s.len() as f64;
        assert!(
            mean(&evals[15..20]) <= mean(&evals[10..15]),
            "fast-tracking counts grew: {evals:?}"
        );
    }

    #[test]
    fn domain_error_halts_driver() {
        // A log singularity exactly one unit step away: the accepted step
        // lands on it, the objective comes back -inf, and the run halts.
        let obj = ObjectiveFunction::new(
            "log_wall",
            1,
            |x: &[f64]| {
                let r = (x[0] - 1.0).abs();
                if r < SINGULAR_GUARD {
                    f64::NEG_INFINITY
                } else {
                    2.0 * r.ln()
                }
            },
            |x: &[f64]| vec![2.0 / (x[0] - 1.0)],
        );
        let config = DescentConfig { start: vec![0.0], steps: 5, ..DescentConfig::default() };
        let trace = gradient_descent(&obj, &config, SearchMethod::Backtrack);
        assert_eq!(trace.halt, Some(Halt::DomainError));
        assert_eq!(trace.steps.len(), 1);
        assert!(!trace.steps[0].f_value.is_finite());
    }
}
