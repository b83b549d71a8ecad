//! Experiment runners: the full benchmark table and per-step evolution
//! series, rendered to CSV or JSON.
//!
//! Every run is deterministic: the suite order is fixed, the searchers use
//! no randomness, and repeated invocations with the same configuration
//! produce identical reports.

use serde::Serialize;

use crate::armijo::{
    gradient_descent, suite_function, test_suite, DescentConfig, DescentTrace, ObjectiveFunction,
    SearchMethod,
};

/// Configuration echoed into every report so each row can be re-run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub beta: f64,
    pub epsilon: f64,
    pub x0_step: f64,
    pub armijo_c: f64,
    pub steps: usize,
    /// ITP tuning used by the `fasttrack_itp` method.
    pub itp_kappa1: f64,
    pub itp_kappa2: f64,
    pub itp_n0: f64,
}

impl RunMetadata {
    fn from_config(config: &DescentConfig) -> Self {
        RunMetadata {
            beta: config.beta,
            epsilon: config.epsilon,
            x0_step: config.x0_step,
            armijo_c: config.armijo_c,
            steps: config.steps,
            itp_kappa1: 0.1,
            itp_kappa2: 2.0,
            itp_n0: 0.99,
        }
    }
}

/// Aggregates over the line-search calls of one descent run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionRow {
    pub function: String,
    pub method: SearchMethod,
    pub calls: usize,
    pub mean_loop_evals: f64,
    pub mean_total_evals: f64,
    pub max_loop_evals: usize,
    pub max_total_evals: usize,
    /// Why the run stopped early, if it did; the row still aggregates the
    /// calls that completed.
    pub error: Option<String>,
}

/// Aggregates pooled over every recorded call of one method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodAggregate {
    pub method: SearchMethod,
    pub calls: usize,
    pub mean_loop_evals: f64,
    pub mean_total_evals: f64,
    pub max_loop_evals: usize,
    pub max_total_evals: usize,
}

/// The benchmark table: one row per (function, method) pair plus pooled
/// per-method aggregates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub metadata: RunMetadata,
    pub rows: Vec<FunctionRow>,
    pub global: Vec<MethodAggregate>,
}

fn mean(values: &[usize]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<usize>() as f64 / values.len() as f64
    }
}

fn run_error(trace: &DescentTrace) -> Option<String> {
    use crate::armijo::Halt;
    match trace.halt {
        Some(Halt::Condition2Violated) => Some("condition2_violated".to_owned()),
        Some(Halt::EvalBudgetExceeded) => Some("eval_budget_exceeded".to_owned()),
        Some(Halt::DomainError) => Some("domain_error".to_owned()),
        Some(Halt::NonDescentDirection) => Some("non_descent_direction".to_owned()),
        Some(Halt::GradientVanished) | None => None,
    }
}

/// Runs gradient descent for every (function, method) pair with an
/// identical configuration and aggregates the per-call evaluation counts.
pub fn run_table(config: &DescentConfig, methods: &[SearchMethod]) -> BenchReport {
    run_table_on(&test_suite(), config, methods)
}

/// [`run_table`] restricted to an explicit set of objectives.
pub fn run_table_on(
    functions: &[ObjectiveFunction],
    config: &DescentConfig,
    methods: &[SearchMethod],
) -> BenchReport {
    let mut rows = Vec::new();
    let mut pooled: Vec<(SearchMethod, Vec<usize>, Vec<usize>)> =
        methods.iter().map(|&m| (m, Vec::new(), Vec::new())).collect();

    for obj in functions {
        for (method, loop_pool, total_pool) in pooled.iter_mut() {
            let trace = gradient_descent(obj, config, *method);
            let loops = trace.loop_evals();
            let totals = trace.total_evals();
            rows.push(FunctionRow {
                function: obj.name().to_owned(),
                method: *method,
                calls: loops.len(),
                mean_loop_evals: mean(&loops),
                mean_total_evals: mean(&totals),
                max_loop_evals: loops.iter().copied().max().unwrap_or(0),
                max_total_evals: totals.iter().copied().max().unwrap_or(0),
                error: run_error(&trace),
            });
            loop_pool.extend(loops);
            total_pool.extend(totals);
        }
    }

    let global = pooled
        .into_iter()
        .map(|(method, loops, totals)| MethodAggregate {
            method,
            calls: loops.len(),
            mean_loop_evals: mean(&loops),
            mean_total_evals: mean(&totals),
            max_loop_evals: loops.iter().copied().max().unwrap_or(0),
            max_total_evals: totals.iter().copied().max().unwrap_or(0),
        })
        .collect();

    BenchReport { metadata: RunMetadata::from_config(config), rows, global }
}

/// Unknown suite function name.
#[derive(Debug, Clone, PartialEq)]
pub struct UnknownFunction(pub String);

impl std::fmt::Display for UnknownFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown suite function '{}'", self.0)
    }
}

impl std::error::Error for UnknownFunction {}

/// Per-method evaluation counts indexed by gradient-step number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSeries {
    pub method: SearchMethod,
    pub loop_evals: Vec<usize>,
    pub total_evals: Vec<usize>,
    /// Why the run stopped early, if it did.
    pub error: Option<String>,
}

/// The per-step series of one suite function under each method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionReport {
    pub metadata: RunMetadata,
    pub function: String,
    pub series: Vec<MethodSeries>,
}

/// Runs one suite function under each method and reports the sequence of
/// per-call evaluation counts, step by step.
pub fn run_evolution(
    function_name: &str,
    config: &DescentConfig,
    methods: &[SearchMethod],
) -> Result<EvolutionReport, UnknownFunction> {
    let obj =
        suite_function(function_name).ok_or_else(|| UnknownFunction(function_name.to_owned()))?;
    let series = methods
        .iter()
        .map(|&method| {
            let trace = gradient_descent(&obj, config, method);
            MethodSeries {
                method,
                loop_evals: trace.loop_evals(),
                total_evals: trace.total_evals(),
                error: run_error(&trace),
            }
        })
        .collect();
    Ok(EvolutionReport {
        metadata: RunMetadata::from_config(config),
        function: function_name.to_owned(),
        series,
    })
}

fn metadata_columns(m: &RunMetadata) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        m.beta, m.epsilon, m.x0_step, m.armijo_c, m.steps, m.itp_kappa1, m.itp_kappa2, m.itp_n0
    )
}

/// CSV header shared by every table report.
pub const TABLE_CSV_HEADER: &str = "name,method,mean_loop_evals,mean_total_evals,max_loop_evals,\
beta,epsilon,x0,c,steps,itp_kappa1,itp_kappa2,itp_n0,error";

/// Renders table rows as CSV (comma delimiter, `.` decimal point, LF line
/// endings). Each row carries the full configuration metadata.
pub fn table_to_csv(reports: &[BenchReport]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for report in reports {
        let meta = metadata_columns(&report.metadata);
        for row in &report.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.function,
                row.method,
                row.mean_loop_evals,
                row.mean_total_evals,
                row.max_loop_evals,
                meta,
                row.error.as_deref().unwrap_or("")
            ));
        }
    }
    out
}

/// CSV header shared by every evolution report.
pub const EVOLUTION_CSV_HEADER: &str = "name,method,step,loop_evals,total_evals,\
beta,epsilon,x0,c,steps,itp_kappa1,itp_kappa2,itp_n0";

/// Renders evolution series as CSV, one row per (method, step).
pub fn evolution_to_csv(reports: &[EvolutionReport]) -> String {
    let mut out = String::from(EVOLUTION_CSV_HEADER);
    out.push('\n');
    for report in reports {
        let meta = metadata_columns(&report.metadata);
        for series in &report.series {
            for (k, (loops, totals)) in
                series.loop_evals.iter().zip(&series.total_evals).enumerate()
            {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    report.function,
                    series.method,
                    k + 1,
                    loops,
                    totals,
                    meta
                ));
            }
        }
    }
    out
}

/// Renders any report list as pretty JSON.
pub fn to_json<T: Serialize>(reports: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> DescentConfig {
        DescentConfig { steps: 5, ..DescentConfig::default() }
    }

    #[test]
    fn empty_method_list_yields_metadata_only() {
        let report = run_table(&small_config(), &[]);
        assert!(report.rows.is_empty());
        assert!(report.global.is_empty());
        assert_eq!(report.metadata.beta, 0.8);
    }

    #[test]
    fn table_is_deterministic() {
        let config = small_config();
        let methods = [SearchMethod::Backtrack, SearchMethod::FasttrackItp];
        let a = run_table(&config, &methods);
        let b = run_table(&config, &methods);
        assert_eq!(a, b);
        assert_eq!(table_to_csv(&[a]), table_to_csv(&[b.clone()]));
        let _ = b;
    }

    #[test]
    fn global_mean_equals_mean_of_function_means() {
        // Every run records the same number of calls, so the pooled mean
        // and the mean of per-function means must coincide.
        let config = small_config();
        let methods = [SearchMethod::FasttrackGeometric];
        let report = run_table(&config, &methods);
        assert!(report.rows.iter().all(|r| r.calls == config.steps));
        let per_function: Vec<f64> = report.rows.iter().map(|r| r.mean_loop_evals).collect();
        let mean_of_means = per_function.iter().sum::<f64>() / per_function.len() as f64;
        let pooled = report.global[0].mean_loop_evals;
        assert!((mean_of_means - pooled).abs() < 1e-12);
    }

    #[test]
    fn evolution_has_one_entry_per_step() {
        let config = DescentConfig { steps: 1, ..DescentConfig::default() };
        let report =
            run_evolution("simple_quadratic", &config, &[SearchMethod::Backtrack]).unwrap();
        assert_eq!(report.series.len(), 1);
        assert_eq!(report.series[0].loop_evals.len(), 1);
    }

    #[test]
    fn evolution_rejects_unknown_function() {
        let err = run_evolution("no_such_function", &small_config(), &[SearchMethod::Backtrack]);
        assert_eq!(err.unwrap_err(), UnknownFunction("no_such_function".to_owned()));
    }

    #[test]
    fn csv_rows_carry_metadata() {
        let config = small_config();
        let report = run_table_on(
            &crate::armijo::test_suite()[..1],
            &config,
            &[SearchMethod::Backtrack],
        );
        let csv = table_to_csv(&[report]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(TABLE_CSV_HEADER));
        let row = lines.next().expect("one data row");
        assert!(row.starts_with("simple_quadratic,backtrack,"));
        assert!(row.contains(",0.8,"), "beta column missing: {row}");
        assert_eq!(csv.matches('\n').count(), 2);
    }
}
