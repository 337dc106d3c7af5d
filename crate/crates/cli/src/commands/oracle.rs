use super::CommandError;
use crate::args::OracleArgs;
use crate::report::{rational, rational_cell, Report};
use crate::{EXIT_OK, EXIT_VERIFICATION};
use conics_core::ci::conic_count;
use conics_core::oracle::{count_conics_with, OracleError, OracleOptions, OracleReport};
use serde_json::{json, Value};
use std::fmt::Write;

fn options(a: &OracleArgs) -> Result<OracleOptions, CommandError> {
    let mut opts = OracleOptions::default();
    let t = &mut opts.tracker;
    if let Some(v) = a.initial_step {
        t.initial_step = v;
    }
    if let Some(v) = a.min_step {
        t.min_step = v;
    }
    if let Some(v) = a.max_step {
        t.max_step = v;
    }
    if let Some(v) = a.success_residual {
        t.success_residual = v;
    }
    t.validate().map_err(CommandError::usage)?;
    Ok(opts)
}

fn run_json(r: &OracleReport) -> Value {
    json!({
        "seed": r.seed,
        "retries": r.retries,
        "recharts": r.recharts,
        "count": r.count,
        "paths": {
            "converged": r.converged,
            "diverged": r.diverged,
            "failed": r.failed,
            "statuses": r.statuses.iter().map(|s| s.name()).collect::<Vec<_>>(),
        },
        "max_backward_error": r.max_backward_error,
    })
}

pub fn run(a: &OracleArgs) -> Result<Report, CommandError> {
    let opts = options(a)?;
    let expected = conic_count(&[3])?;
    let results: Vec<OracleReport> = (0..u64::from(a.runs))
        .map(|i| count_conics_with(a.seed.wrapping_add(i), &opts, None))
        .collect::<Result<_, OracleError>>()
        .map_err(CommandError::verification)?;

    let agreeing = results
        .iter()
        .filter(|r| {
            expected.is_integer()
                && expected.numer() == &r.count.into()
                && r.max_backward_error <= opts.tracker.success_residual
        })
        .count();
    let matches = agreeing == results.len();
    let summary = format!(
        "{agreeing}/{} runs: count={}, {}",
        results.len(),
        rational_cell(&expected),
        if matches {
            "matches formula"
        } else {
            "does not match formula"
        }
    );

    let mut text = String::new();
    for r in &results {
        let _ = writeln!(
            text,
            "seed {}: count={} retries={} recharts={} converged={}/{} max_backward_error={:.3e}",
            r.seed,
            r.count,
            r.retries,
            r.recharts,
            r.converged,
            r.statuses.len(),
            r.max_backward_error
        );
    }
    let _ = writeln!(text, "{summary}");

    let header = [
        "seed",
        "retries",
        "recharts",
        "count",
        "converged",
        "diverged",
        "failed",
        "max_backward_error",
    ];
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.seed.to_string(),
                r.retries.to_string(),
                r.recharts.to_string(),
                r.count.to_string(),
                r.converged.to_string(),
                r.diverged.to_string(),
                r.failed.to_string(),
                format!("{:e}", r.max_backward_error),
            ]
        })
        .collect();

    Ok(Report {
        json: json!({
            "seed": a.seed,
            "runs": a.runs,
            "expected": rational(&expected),
            "matches": matches,
            "summary": summary,
            "results": results.iter().map(run_json).collect::<Vec<_>>(),
        }),
        csv_header: header.iter().map(|s| s.to_string()).collect(),
        csv_rows: rows,
        text,
        code: if matches { EXIT_OK } else { EXIT_VERIFICATION },
    })
}
