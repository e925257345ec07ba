use std::fmt::Write as _;

use anyhow::bail;
use gq_core::bs::{enumerate, stratum, ArrowLeaf, BranchCoord, BsGroupoid, Params, UnitLeaf, Window};
use serde::Serialize;

use crate::args::EnumerateArgs;
use crate::output::emit;
use crate::{Outcome, UsageError};

#[derive(Serialize)]
struct UnitRow<'a> {
    coords: &'a UnitLeaf,
    c: Vec<f64>,
    stratum: gq_core::bs::StratumLabel,
    mu: f64,
}

#[derive(Serialize)]
struct Listing<'a> {
    params: &'a Params,
    max_level: i64,
    max_shift: i64,
    unit_count: usize,
    arrow_count: usize,
    units: Vec<UnitRow<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arrows: Option<&'a [ArrowLeaf]>,
}

pub fn coord_label(c: &BranchCoord) -> String {
    match c {
        BranchCoord::Below(m) => format!("lo{m}"),
        BranchCoord::At => "at".into(),
        BranchCoord::Above(m) => format!("hi{m}"),
    }
}

fn unit_label(u: &UnitLeaf) -> String {
    u.coords.iter().map(coord_label).collect::<Vec<_>>().join(" ")
}

fn rows<'a>(g: &BsGroupoid, w: &'a Window) -> Vec<UnitRow<'a>> {
    w.units.iter().map(|u| UnitRow { coords: u, c: g.c_values(u), stratum: stratum(u), mu: g.measure_mu(u) }).collect()
}

fn text(w: &Window, rows: &[UnitRow]) -> String {
    let p = &w.params;
    let mut s = format!(
        "n={} t={} hbar={} max_level={} max_shift={}\nunits {} arrows {}\n",
        p.n,
        p.t,
        p.hbar,
        w.max_level,
        w.max_shift,
        w.units.len(),
        w.arrows.len()
    );
    for r in rows {
        let c: Vec<String> = r.c.iter().map(|v| format!("{v:.6}")).collect();
        let _ = writeln!(
            s,
            "{:<24} c=({})  stratum=({},{})  mu={:.6e}",
            unit_label(r.coords),
            c.join(", "),
            r.stratum.r,
            r.stratum.s,
            r.mu
        );
    }
    s.pop();
    s
}

fn csv(w: &Window, rows: &[UnitRow]) -> String {
    let n = w.params.n;
    let mut s = String::from("index,coords");
    for k in 1..=n {
        let _ = write!(s, ",c{k}");
    }
    s.push_str(",r,s,mu");
    for (i, r) in rows.iter().enumerate() {
        let c: Vec<String> = r.c.iter().map(|v| format!("{v}")).collect();
        let _ = write!(s, "\n{i},{},{},{},{},{}", unit_label(r.coords), c.join(","), r.stratum.r, r.stratum.s, r.mu);
    }
    s
}

fn colour(u: &UnitLeaf) -> &'static str {
    let st = stratum(u);
    match (st.r, st.s) {
        _ if st.r + st.s < u.n() => "#c0392b",
        (_, 0) => "#2563eb",
        (0, _) => "#15803d",
        _ => "#7c3aed",
    }
}

/// Points at their c-coordinates inside the simplex `0 ≤ c_1 ≤ … ≤ c_n ≤ 1`,
/// with the walls `c_k = 1 − t` dashed.
pub fn svg(g: &BsGroupoid, w: &Window) -> anyhow::Result<String> {
    let n = g.n();
    let wall = 1.0 - g.params().t;
    let mut s = String::new();
    match n {
        1 => {
            let x = |c: f64| 20.0 + 380.0 * c;
            let _ =
                writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="420" height="80" viewBox="0 0 420 80">"#);
            let _ = writeln!(s, r#"<line x1="20" y1="40" x2="400" y2="40" stroke="black"/>"#);
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="25" x2="{0:.2}" y2="55" stroke="grey" stroke-dasharray="4 3"/>"#,
                x(wall)
            );
            for u in &w.units {
                let c = g.c_values(u);
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="40" r="3" fill="{}"/>"#, x(c[0]), colour(u));
            }
        }
        2 => {
            let px = |c1: f64| 20.0 + 360.0 * c1;
            let py = |c2: f64| 380.0 - 360.0 * c2;
            let _ = writeln!(
                s,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" viewBox="0 0 400 400">"#
            );
            let _ = writeln!(
                s,
                r#"<polygon points="{},{} {},{} {},{}" fill="none" stroke="black"/>"#,
                px(0.0),
                py(0.0),
                px(0.0),
                py(1.0),
                px(1.0),
                py(1.0)
            );
            let dash = r#"stroke="grey" stroke-dasharray="4 3""#;
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {dash}/>"#,
                px(wall),
                py(wall),
                px(wall),
                py(1.0)
            );
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {dash}/>"#,
                px(0.0),
                py(wall),
                px(wall),
                py(wall)
            );
            for u in &w.units {
                let c = g.c_values(u);
                let _ =
                    writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, px(c[0]), py(c[1]), colour(u));
            }
        }
        _ => bail!("--svg is only drawn for n = 1 or 2; use --csv"),
    }
    s.push_str("</svg>");
    Ok(s)
}

pub fn run(a: &EnumerateArgs) -> Result<Outcome, UsageError> {
    let params = a.geometry.params()?;
    if a.window.max_level < 0 || a.window.max_shift < 0 {
        return Err(anyhow::anyhow!("--max-level and --max-shift must be nonnegative").into());
    }
    let g = BsGroupoid::new(params)?;
    if a.output.svg && g.n() > 2 {
        return Err(anyhow::anyhow!("--svg is only drawn for n = 1 or 2; use --csv").into());
    }
    let w = enumerate(&params, a.window.max_level, a.window.max_shift);
    let rows = rows(&g, &w);
    let body = if a.output.json {
        let listing = Listing {
            params: &w.params,
            max_level: w.max_level,
            max_shift: w.max_shift,
            unit_count: w.units.len(),
            arrow_count: w.arrows.len(),
            units: rows,
            arrows: a.arrows.then_some(w.arrows.as_slice()),
        };
        serde_json::to_string_pretty(&listing)?
    } else if a.output.csv {
        csv(&w, &rows)
    } else if a.output.svg {
        svg(&g, &w)?
    } else {
        text(&w, &rows)
    };
    emit(a.output.out.as_deref(), &body)?;
    Ok(Outcome::Pass)
}
