use super::{degrees_json, flag, CommandError};
use crate::args::{AmbientRule, ScanArgs};
use crate::report::{big_uint, option_cell, rational, rational_cell, Report};
use crate::{EXIT_OK, EXIT_VERIFICATION};
use conics_core::ci::{
    canonical_coefficient, conic_count, degree, degree_identity_holds, enumerate_types,
    fiber_degrees, fiber_dimension, fiber_type, main_theorem_bound, render_degrees, validate,
    CIType,
};
use num::{BigRational, BigUint};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write;

pub const HEADER: [&str; 11] = [
    "type",
    "ambient",
    "excluded",
    "fiber_type",
    "fiber_ambient",
    "fiber_dim",
    "fiber_degree",
    "canonical",
    "fano",
    "count",
    "degree_identity",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub degrees: Vec<u32>,
    pub ambient: u32,
    pub excluded: bool,
    pub fiber_type: Option<CIType>,
    pub fiber_dim: Option<u32>,
    pub fiber_degree: Option<BigUint>,
    pub canonical: Option<i64>,
    pub fano: bool,
    pub count: Option<BigRational>,
    pub degree_identity: Option<bool>,
}

impl Row {
    fn new(degrees: Vec<u32>, ambient: u32) -> Result<Row, CommandError> {
        let t = CIType::new(degrees.clone(), ambient)?;
        let flags = validate(&t);
        let admissible = flags.admissible();
        let ft = if admissible {
            Some(fiber_type(&t)?)
        } else {
            None
        };
        Ok(Row {
            excluded: !flags.main_theorem(),
            fiber_dim: if admissible {
                Some(fiber_dimension(&t)?)
            } else {
                None
            },
            fiber_degree: ft.as_ref().map(degree),
            canonical: if admissible {
                Some(canonical_coefficient(&t)?)
            } else {
                None
            },
            fano: flags.fano_bound,
            count: if flags.not_quadric_hypersurface {
                conic_count(&degrees).ok()
            } else {
                None
            },
            degree_identity: fiber_degrees(&degrees)
                .ok()
                .map(|_| degree_identity_holds(&degrees)),
            fiber_type: ft,
            degrees,
            ambient,
        })
    }

    fn is_consistent(&self) -> bool {
        self.degree_identity != Some(false)
            && self.count.as_ref().is_none_or(BigRational::is_integer)
    }

    fn json(&self) -> Value {
        json!({
            "type": degrees_json(&self.degrees),
            "ambient": self.ambient,
            "excluded": self.excluded,
            "fiber_type": self.fiber_type.as_ref().map(|t| degrees_json(t.degrees())),
            "fiber_ambient": self.fiber_type.as_ref().map(CIType::ambient),
            "fiber_dim": self.fiber_dim,
            "fiber_degree": self.fiber_degree.as_ref().map(big_uint),
            "canonical": self.canonical,
            "fano": self.fano,
            "count": self.count.as_ref().map(rational),
            "degree_identity": self.degree_identity,
        })
    }

    fn cells(&self) -> Vec<String> {
        vec![
            render_degrees(&self.degrees),
            self.ambient.to_string(),
            flag(self.excluded),
            option_cell(
                &self
                    .fiber_type
                    .as_ref()
                    .map(|t| render_degrees(t.degrees())),
            ),
            option_cell(&self.fiber_type.as_ref().map(CIType::ambient)),
            option_cell(&self.fiber_dim),
            option_cell(&self.fiber_degree),
            option_cell(&self.canonical),
            flag(self.fano),
            option_cell(&self.count.as_ref().map(rational_cell)),
            option_cell(&self.degree_identity),
        ]
    }
}

pub fn rows(a: &ScanArgs) -> Result<Vec<Row>, CommandError> {
    if let (AmbientRule::Explicit, Some(n)) = (a.ambient_rule, a.ambient) {
        if n < a.max_codim {
            return Err(CommandError::usage(format!(
                "--ambient {n} is smaller than --max-codim {}",
                a.max_codim
            )));
        }
    }
    enumerate_types(a.max_codim as usize, a.max_degree)
        .into_par_iter()
        .map(|d| {
            let ambient = match (a.ambient_rule, a.ambient) {
                (AmbientRule::Explicit, Some(n)) => n,
                _ => main_theorem_bound(&d) as u32,
            };
            Row::new(d, ambient)
        })
        .collect()
}

pub fn run(a: &ScanArgs) -> Result<Report, CommandError> {
    let rows = rows(a)?;
    let table: Vec<Vec<String>> = rows.iter().map(Row::cells).collect();
    let code = if rows.iter().all(Row::is_consistent) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    };
    let rule = match a.ambient_rule {
        AmbientRule::Minimal => "minimal",
        AmbientRule::Explicit => "explicit",
    };
    Ok(Report {
        json: json!({
            "max_codim": a.max_codim,
            "max_degree": a.max_degree,
            "ambient_rule": rule,
            "rows": rows.iter().map(Row::json).collect::<Vec<_>>(),
        }),
        csv_header: HEADER.iter().map(|s| s.to_string()).collect(),
        text: text_table(&table),
        csv_rows: table,
        code,
    })
}

fn text_table(rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut s = String::new();
    let line = |cells: Vec<&str>, s: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", padded.join("  ").trim_end());
    };
    line(HEADER.to_vec(), &mut s);
    for r in rows {
        line(
            r.iter()
                .map(|c| if c.is_empty() { "-" } else { c.as_str() })
                .collect(),
            &mut s,
        );
    }
    s
}
