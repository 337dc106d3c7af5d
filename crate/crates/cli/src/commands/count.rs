use super::{degrees_json, flag, CommandError};
use crate::args::CountArgs;
use crate::report::{rational, rational_cell, Report};
use crate::{EXIT_OK, EXIT_VERIFICATION};
use conics_core::ci::{
    conic_count, degree, degree_identity_holds, fiber_type, render_degrees, slice_to_points,
};
use serde_json::json;

pub fn run(a: &CountArgs) -> Result<Report, CommandError> {
    let d = &a.degrees.0;
    let count = conic_count(d)?;
    let slice = slice_to_points(d)?;
    let slice_points = degree(&fiber_type(&slice)?);
    let identity = degree_identity_holds(d);
    let integral = count.is_integer();
    let ok = identity && integral && count.numer() == &slice_points.clone().into();
    let mut sorted = d.clone();
    sorted.sort_unstable();
    let ty = render_degrees(&sorted);
    let text = format!(
        "conics through two general points on {ty}: {}\nzero-dimensional slice: {slice} ({slice_points} points)\ndegree identity: {}\n",
        rational_cell(&count),
        if identity { "OK" } else { "FAILED" },
    );
    Ok(Report {
        json: json!({
            "type": degrees_json(&sorted),
            "count": rational(&count),
            "count_is_integer": integral,
            "slice_ambient": slice.ambient(),
            "degree_identity": identity,
        }),
        csv_header: [
            "type",
            "count",
            "count_is_integer",
            "slice_ambient",
            "degree_identity",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        csv_rows: vec![vec![
            ty,
            rational_cell(&count),
            flag(integral),
            slice.ambient().to_string(),
            flag(identity),
        ]],
        text,
        code: if ok { EXIT_OK } else { EXIT_VERIFICATION },
    })
}
