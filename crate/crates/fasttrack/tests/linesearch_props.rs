//! Property tests for the searcher guarantees.

use fasttrack::linesearch::{
    backtrack, fasttrack, validate_conditions, ChoiceRule, SearchOutcome, SearchStatus,
    TurningPointProblem,
};
use fasttrack::rootfind::{bisect_point, update_bracket, BracketUpdate, RootBracket};
use proptest::prelude::*;

fn searchers() -> [(&'static str, fn(&mut TurningPointProblem<Box<dyn FnMut(f64) -> f64>>) -> SearchOutcome); 3] {
    [
        ("backtrack", |p| backtrack(p)),
        ("fasttrack_geometric", |p| fasttrack(p, &ChoiceRule::GeometricBisection)),
        ("fasttrack_itp", |p| fasttrack(p, &ChoiceRule::itp_log())),
    ]
}

fn affine_problem(
    x_star: f64,
    beta: f64,
    epsilon: f64,
) -> TurningPointProblem<Box<dyn FnMut(f64) -> f64>> {
    let g: Box<dyn FnMut(f64) -> f64> = Box::new(move |x| x - x_star);
    TurningPointProblem::new(g, 1.0, beta, epsilon).unwrap()
}

proptest! {
    /// Termination guard: at loop exit a > beta*b, hence beta*x* < x_hat <=
    /// x* for every searcher on monotone problems with epsilon < x* < beta.
    #[test]
    fn condition1_and_condition2_postconditions(
        beta in 0.1f64..0.95,
        eps_exp in -12.0f64..-2.0,
        t in 0.001f64..0.999,
    ) {
        let epsilon = 10f64.powf(eps_exp);
        // x* log-uniform strictly between epsilon and beta * x0.
        let x_star = (epsilon.ln() * (1.0 - t) + (beta * 1.0).ln() * t).exp();
        prop_assume!(x_star > epsilon && x_star < beta);
        for (name, search) in searchers() {
            let mut problem = affine_problem(x_star, beta, epsilon);
            let out = search(&mut problem);
            prop_assert!(
                matches!(out.status, SearchStatus::Accepted | SearchStatus::ExactHit),
                "{name}: unexpected status {:?}", out.status
            );
            prop_assert!(
                validate_conditions(&out, x_star, beta),
                "{name}: x_hat = {} violates ({} * {}, {}]",
                out.x_hat, beta, x_star, x_star
            );
        }
    }

    /// Whenever a searcher reports acceptance, the trace already contains
    /// the evaluation proving g(x_hat) <= 0.
    #[test]
    fn postcondition_soundness(
        beta in 0.1f64..0.95,
        x_star_exp in -9.0f64..-0.2,
    ) {
        let x_star = 10f64.powf(x_star_exp);
        for (name, search) in searchers() {
            let mut problem = affine_problem(x_star, beta, 1e-10);
            let out = search(&mut problem);
            if matches!(out.status, SearchStatus::Accepted | SearchStatus::ExactHit) {
                let v = out.value_at_x_hat();
                prop_assert!(v.is_some(), "{name}: accepted point missing from trace");
                prop_assert!(v.unwrap() <= 0.0, "{name}: accepted value positive");
            }
            prop_assert_eq!(out.trace.len(), out.total_evals);
        }
    }

    /// Geometric-rule eval ceiling: never more than fasttrack_bound + 1
    /// loop queries, with equality to the bound itself off dyadic edges.
    #[test]
    fn geometric_loop_count_vs_bound(
        beta in 0.1f64..0.95,
        eps_exp in -12.0f64..-2.0,
        t in 0.05f64..0.95,
    ) {
        let epsilon = 10f64.powf(eps_exp);
        let x_star = (epsilon.ln() * (1.0 - t)).exp();
        prop_assume!(x_star > epsilon && x_star < beta);
        let mut problem = affine_problem(x_star, beta, epsilon);
        let bound = problem.fasttrack_bound();
        let out = fasttrack(&mut problem, &ChoiceRule::GeometricBisection);
        prop_assert!(
            out.loop_evals <= bound + 1,
            "loop_evals {} exceeds bound {} + 1", out.loop_evals, bound
        );
        if out.status == SearchStatus::Accepted {
            let log_ratio = (epsilon.ln() / beta.ln()).log2();
            // Off dyadic edges the geometric rule spends exactly the bound.
            if (log_ratio - log_ratio.round()).abs() > 1e-6 {
                prop_assert_eq!(
                    out.loop_evals, bound,
                    "expected exactly {} loop evals, got {}", bound, out.loop_evals
                );
            }
        }
    }

    /// The ITP rule never does worse than geometric bisection on the
    /// affine family.
    #[test]
    fn itp_dominates_geometric_on_affine(
        x_star_exp in -8.9f64..-0.11,
    ) {
        let x_star = 10f64.powf(x_star_exp);
        let mut p1 = affine_problem(x_star, 0.8, 1e-10);
        let itp = fasttrack(&mut p1, &ChoiceRule::itp_log());
        let mut p2 = affine_problem(x_star, 0.8, 1e-10);
        let geo = fasttrack(&mut p2, &ChoiceRule::GeometricBisection);
        prop_assert!(
            itp.loop_evals <= geo.loop_evals,
            "itp {} > geometric {} at x* = {}", itp.loop_evals, geo.loop_evals, x_star
        );
    }
}

/// The geometric rule's queries equal, point for point after the log2 map,
/// bisection driven on G(X) = g(2^X) over [log2(eps), log2(x0)].
#[test]
fn geometric_queries_match_log_scale_bisection() {
    for (x_star, beta, epsilon) in [
        (0.37f64, 0.8f64, 1e-10f64),
        (2.4e-7, 0.8, 1e-10),
        (1.3e-3, 0.55, 1e-8),
        (0.09, 0.92, 1e-6),
    ] {
        let mut problem = affine_problem(x_star, beta, epsilon);
        let out = fasttrack(&mut problem, &ChoiceRule::GeometricBisection);
        let loop_queries: Vec<f64> =
            out.trace[1..1 + out.loop_evals].iter().map(|&(x, _)| x).collect();

        // Reference route: rootfind bisection in log coordinates.
        let g = |x: f64| x - x_star;
        let big_g = |x_log: f64| g(x_log.exp2());
        let (a0, b0) = (epsilon.log2(), 1.0f64.log2());
        let mut bracket = RootBracket::new(a0, b0, big_g(a0), big_g(b0)).unwrap();
        let delta = -beta.log2();
        let mut midpoints = Vec::new();
        while bracket.width() >= delta {
            let mid = bisect_point(&bracket);
            midpoints.push(mid);
            match update_bracket(&bracket, mid, big_g(mid)) {
                BracketUpdate::Contracted(next) => bracket = next,
                BracketUpdate::ExactHit(_) => break,
            }
        }

        assert_eq!(loop_queries.len(), midpoints.len(), "query counts diverged");
        for (q, m) in loop_queries.iter().zip(&midpoints) {
            assert!(
                approx::ulps_eq!(q.log2(), *m, max_ulps = 4),
                "log2({q}) = {} vs midpoint {m}",
                q.log2()
            );
        }
    }
}
