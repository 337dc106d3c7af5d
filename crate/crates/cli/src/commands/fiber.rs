use super::{degrees_json, flag, CommandError};
use crate::args::FiberArgs;
use crate::report::{big_uint, option_cell, rational, rational_cell, Report};
use crate::{EXIT_HYPOTHESIS, EXIT_OK};
use conics_core::ci::{fiber_report, main_theorem_bound, render_degrees, CIType, FiberReport};
use serde_json::json;
use std::fmt::Write;

const HEADER: [&str; 15] = [
    "type",
    "ambient",
    "degrees_ok",
    "not_quadric_hypersurface",
    "main_thm_bound",
    "fano_bound",
    "setup_bound",
    "fiber_type",
    "fiber_ambient",
    "fiber_dim",
    "boundary_type",
    "fiber_degree",
    "canonical_coeff",
    "conic_count",
    "count_is_integer",
];

pub fn run(a: &FiberArgs) -> Result<Report, CommandError> {
    let ambient = a
        .ambient
        .unwrap_or_else(|| main_theorem_bound(&a.degrees.0).max(1) as u32);
    let t = CIType::new(a.degrees.0.clone(), ambient)?;
    let r = fiber_report(&t)?;
    let code = if r.flags.main_theorem() {
        EXIT_OK
    } else {
        EXIT_HYPOTHESIS
    };
    Ok(Report {
        json: to_json(&r),
        csv_header: HEADER.iter().map(|s| s.to_string()).collect(),
        csv_rows: vec![csv_row(&r)],
        text: to_text(&r),
        code,
    })
}

fn to_json(r: &FiberReport) -> serde_json::Value {
    let f = &r.flags;
    json!({
        "input": { "degrees": degrees_json(r.input.degrees()), "ambient": r.input.ambient() },
        "flags": {
            "degrees_ok": f.degrees_ok,
            "not_quadric_hypersurface": f.not_quadric_hypersurface,
            "main_thm_bound": f.main_thm_bound,
            "fano_bound": f.fano_bound,
            "setup_bound": f.setup_bound,
        },
        "fiber_dim": r.fiber_dim,
        "fiber_type": r.fiber_type.as_ref().map(|t| degrees_json(t.degrees())),
        "fiber_ambient": r.fiber_type.as_ref().map(CIType::ambient),
        "boundary_type": r.boundary_type.as_ref().map(|t| degrees_json(t.degrees())),
        "fiber_degree": r.fiber_degree.as_ref().map(big_uint),
        "canonical_coeff": r.canonical_coeff,
        "conic_count": r.conic_count.as_ref().map(rational),
        "count_is_integer": r.count_is_integer,
        "notes": r.notes,
    })
}

fn csv_row(r: &FiberReport) -> Vec<String> {
    let f = &r.flags;
    vec![
        render_degrees(r.input.degrees()),
        r.input.ambient().to_string(),
        flag(f.degrees_ok),
        flag(f.not_quadric_hypersurface),
        flag(f.main_thm_bound),
        flag(f.fano_bound),
        flag(f.setup_bound),
        option_cell(&r.fiber_type.as_ref().map(|t| render_degrees(t.degrees()))),
        option_cell(&r.fiber_type.as_ref().map(CIType::ambient)),
        option_cell(&r.fiber_dim),
        option_cell(
            &r.boundary_type
                .as_ref()
                .map(|t| render_degrees(t.degrees())),
        ),
        option_cell(&r.fiber_degree),
        option_cell(&r.canonical_coeff),
        option_cell(&r.conic_count.as_ref().map(rational_cell)),
        flag(r.count_is_integer),
    ]
}

fn to_text(r: &FiberReport) -> String {
    let f = &r.flags;
    let dash = |s: Option<String>| s.unwrap_or_else(|| "-".into());
    let mut s = String::new();
    let _ = writeln!(s, "X: {}", r.input);
    let _ = writeln!(
        s,
        "hypotheses: degrees_ok={} not_quadric_hypersurface={} main_thm_bound={} fano_bound={} setup_bound={}",
        f.degrees_ok, f.not_quadric_hypersurface, f.main_thm_bound, f.fano_bound, f.setup_bound
    );
    let _ = writeln!(
        s,
        "fiber type: {}",
        dash(r.fiber_type.as_ref().map(ToString::to_string))
    );
    let _ = writeln!(
        s,
        "fiber dimension: {}",
        dash(r.fiber_dim.map(|d| d.to_string()))
    );
    let _ = writeln!(
        s,
        "boundary type: {}",
        dash(r.boundary_type.as_ref().map(ToString::to_string))
    );
    let _ = writeln!(
        s,
        "fiber degree: {}",
        dash(r.fiber_degree.as_ref().map(ToString::to_string))
    );
    let _ = writeln!(
        s,
        "canonical class: {}",
        dash(r.canonical_coeff.map(|k| format!("{k}*O(1)")))
    );
    let _ = writeln!(
        s,
        "conic count: {}",
        dash(r.conic_count.as_ref().map(rational_cell))
    );
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}
