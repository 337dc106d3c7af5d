use super::CommandError;
use crate::args::GrrArgs;
use crate::report::{rational, Report};
use crate::{EXIT_OK, EXIT_VERIFICATION};
use conics_core::chow::{integer, make_universal_family_ring};
use conics_core::grr::{grr_transcript, pushed_c1_omega_squared};
use serde_json::{json, Value};

pub fn run(a: &GrrArgs) -> Result<Report, CommandError> {
    let u = make_universal_family_ring();
    let t = grr_transcript(&u).map_err(CommandError::verification)?;
    let mut stages: Vec<(&str, String)> = vec![
        ("td(T_pi)", t.todd.render()),
        ("ch(I_Z)", t.nodal_character.render()),
        ("c(I_Z)", t.whitney.render()),
        ("(td(T_pi)*ch(I_Z))_2", t.degree_two.to_string()),
    ];
    if a.show_series {
        stages.push((
            "(td(T_pi)*ch(I_Z))_2 in c1w, z",
            t.degree_two_presented.clone(),
        ));
    }
    stages.push(("pi_*((td(T_pi)*ch(I_Z))_2)", t.lhs.to_string()));
    stages.push(("ch_1(pi_! I_Z)", t.rhs.to_string()));
    let boundary = format!("Delta = {}", u.lambda_class().scale(&t.k));
    let mut ok = t.k == integer(2);

    let mut corollary = Value::Null;
    let mut lines: Vec<String> = stages.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    let mut rows: Vec<Vec<String>> = stages
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.clone()])
        .collect();
    rows.push(vec!["k".into(), crate::report::rational_cell(&t.k)]);
    if a.verify_corollary {
        let pushed = pushed_c1_omega_squared(&u).map_err(CommandError::verification)?;
        let holds = pushed == u.lambda_class().scale(&integer(-2));
        ok &= holds;
        let verdict = if holds { "OK" } else { "FAILED" };
        lines.push(format!("pi_*(c1w^2) = {pushed} : {verdict}"));
        rows.push(vec!["pi_*(c1w^2)".into(), pushed.to_string()]);
        corollary = json!({ "pushforward": pushed.to_string(), "ok": holds });
    }
    lines.push(boundary.clone());
    rows.push(vec!["boundary".into(), boundary.clone()]);

    Ok(Report {
        json: json!({
            "todd": t.todd.render(),
            "nodal_character": t.nodal_character.render(),
            "whitney": t.whitney.render(),
            "degree_two": t.degree_two.to_string(),
            "degree_two_presented": t.degree_two_presented,
            "pushforward": t.lhs.to_string(),
            "riemann_roch": t.rhs.to_string(),
            "k": rational(&t.k),
            "boundary": boundary,
            "corollary": corollary,
        }),
        csv_header: vec!["stage".into(), "value".into()],
        csv_rows: rows,
        text: lines.iter().map(|l| format!("{l}\n")).collect(),
        code: if ok { EXIT_OK } else { EXIT_VERIFICATION },
    })
}
