//! Benchmark harness for the inexact line-search methods.
//!
//! Runs vanilla gradient descent on the ten-function suite with each
//! selected line search and reports per-call function-evaluation counts,
//! either aggregated per (function, method) pair (`--mode table`) or as
//! per-step series (`--mode evolution`). Output is CSV or JSON, written to
//! stdout or a file.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 when any run reports a
//! Condition 2 violation or a domain error (the report is still emitted).

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};

use fasttrack::armijo::{test_suite, DescentConfig, SearchMethod};
use fasttrack::bench::{
    evolution_to_csv, run_evolution, run_table_on, table_to_csv, to_json, BenchReport,
    EvolutionReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Table,
    Evolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fasttrack-bench",
    about = "Compare line-search methods by per-call function evaluation counts",
    version
)]
struct Cli {
    /// Relative precision of the accepted step; a comma-separated list
    /// emits one report per value.
    #[arg(long, value_delimiter = ',', default_value = "0.8")]
    beta: Vec<f64>,

    /// Lower bound on the turning point.
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,

    /// Initial trial step of every line search.
    #[arg(long, default_value_t = 1.0)]
    x0: f64,

    /// Gradient-descent steps per run.
    #[arg(long, default_value_t = 20)]
    steps: usize,

    /// Armijo sufficient-decrease constant.
    #[arg(long, default_value_t = 1e-4)]
    c: f64,

    /// Line-search methods to run.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "backtrack,fasttrack_geometric,fasttrack_itp"
    )]
    methods: Vec<String>,

    /// Suite functions to run ("all" or a comma-separated list of names).
    #[arg(long, value_delimiter = ',', default_value = "all")]
    functions: Vec<String>,

    #[arg(long, value_enum, default_value_t = Mode::Table)]
    mode: Mode,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output destination: a path or "stdout".
    #[arg(long, default_value = "stdout")]
    out: String,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut methods = Vec::new();
    for name in &cli.methods {
        match name.parse::<SearchMethod>() {
            Ok(m) => {
                if !methods.contains(&m) {
                    methods.push(m);
                }
            }
            Err(e) => return usage_error(&e),
        }
    }

    let suite = test_suite();
    let all_names: Vec<&str> = suite.iter().map(|f| f.name()).collect();
    let function_names: Vec<String> = if cli.functions == ["all"] {
        all_names.iter().map(|s| s.to_string()).collect()
    } else {
        for name in &cli.functions {
            if !all_names.contains(&name.as_str()) {
                return usage_error(&format!(
                    "unknown function '{name}' (available: {})",
                    all_names.join(", ")
                ));
            }
        }
        cli.functions.clone()
    };

    for &beta in &cli.beta {
        if !(beta > 0.0 && beta < 1.0) {
            return usage_error(&format!("beta must lie in (0, 1), got {beta}"));
        }
    }
    if !(cli.epsilon > 0.0 && cli.epsilon < cli.x0) {
        return usage_error(&format!(
            "epsilon must satisfy 0 < epsilon < x0, got epsilon = {}, x0 = {}",
            cli.epsilon, cli.x0
        ));
    }
    if !(cli.c > 0.0 && cli.c < 1.0) {
        return usage_error(&format!("c must lie in (0, 1), got {}", cli.c));
    }

    let config_for = |beta: f64| DescentConfig {
        start: vec![1.0; 10],
        steps: cli.steps,
        armijo_c: cli.c,
        beta,
        epsilon: cli.epsilon,
        x0_step: cli.x0,
    };

    let (output, any_error) = match cli.mode {
        Mode::Table => {
            let reports: Vec<BenchReport> = cli
                .beta
                .iter()
                .map(|&beta| {
                    let selected: Vec<_> = test_suite()
                        .into_iter()
                        .filter(|f| function_names.iter().any(|n| n == f.name()))
                        .collect();
                    run_table_on(&selected, &config_for(beta), &methods)
                })
                .collect();
            let any_error =
                reports.iter().any(|r| r.rows.iter().any(|row| row.error.is_some()));
            let text = match cli.format {
                Format::Csv => table_to_csv(&reports),
                Format::Json => to_json(&reports),
            };
            (text, any_error)
        }
        Mode::Evolution => {
            if function_names.len() != 1 {
                return usage_error(
                    "evolution mode requires exactly one function via --functions <name>",
                );
            }
            let mut reports: Vec<EvolutionReport> = Vec::new();
            for &beta in &cli.beta {
                match run_evolution(&function_names[0], &config_for(beta), &methods) {
                    Ok(r) => reports.push(r),
                    Err(e) => return usage_error(&e.to_string()),
                }
            }
            let any_error =
                reports.iter().any(|r| r.series.iter().any(|s| s.error.is_some()));
            let text = match cli.format {
                Format::Csv => evolution_to_csv(&reports),
                Format::Json => to_json(&reports),
            };
            (text, any_error)
        }
    };

    if let Err(e) = write_output(&cli.out, &output) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }

    if any_error {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn write_output(out: &str, text: &str) -> anyhow::Result<()> {
    if out == "stdout" {
        std::io::stdout().write_all(text.as_bytes()).context("writing to stdout")?;
    } else {
        std::fs::write(out, text).with_context(|| format!("writing {out}"))?;
    }
    Ok(())
}
