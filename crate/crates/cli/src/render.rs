//! Plain-text tables for a result record.

use std::fmt::Write;

use radx_core::radial::IndexRecord;

use crate::commands::ResultRecord;

fn detail(r: &IndexRecord) -> String {
    match (r.index.algebra_dimension, r.index.residual) {
        (Some(d), _) => format!("dim {d}"),
        (None, Some(res)) => format!("residual {res:.3e}"),
        (None, None) => String::new(),
    }
}

pub fn text(rec: &ResultRecord) -> String {
    let mut out = String::new();
    let p = &rec.request.problem;
    let _ = writeln!(out, "{}: {} problem in R^{}", rec.command, p.kind.as_str(), p.dimension);
    if let Some(d) = &p.description {
        let _ = writeln!(out, "  {d}");
    }
    if let Some(s) = rec.request.options.delta_sign {
        let _ = writeln!(out, "  sign of delta: {}", s.as_str());
    }
    if !rec.indices.is_empty() {
        let w = rec.indices.iter().map(|r| r.label.len()).max().unwrap_or(0).max(5);
        let _ = writeln!(out, "\n{:<w$}  {:>5}  {:<16}  detail", "index", "value", "method");
        for r in &rec.indices {
            let _ = writeln!(out, "{:<w$}  {:>5}  {:<16}  {}", r.label, r.index.value, r.index.method.as_str(), detail(r));
        }
    }
    if let Some(b) = &rec.branches {
        let _ = writeln!(out, "\nsphere radius {:e}, {} half-branches{}", b.radius, b.half_branch_count, if b.certified { "" } else { " (not certified)" });
        for q in &b.points {
            let coords: Vec<String> = q.point.iter().map(|c| format!("{c:+.6e}")).collect();
            let inbound = match q.inbound {
                Some(true) => "inbound",
                Some(false) => "outbound",
                None => "-",
            };
            let signs: String = q.signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect();
            let _ = writeln!(out, "  [{}]  {inbound:<8}  {signs}", coords.join(", "));
        }
    }
    if !rec.values.is_empty() {
        let w = rec.values.iter().map(|v| v.set.len()).max().unwrap_or(0).max(3);
        let _ = writeln!(out, "\n{:<w$}  {:>5}", "set", "value");
        for v in &rec.values {
            let _ = writeln!(out, "{:<w$}  {:>5}", v.set, v.value);
        }
    }
    if !rec.warnings.is_empty() {
        out.push('\n');
    }
    for warning in &rec.warnings {
        let _ = writeln!(out, "warning: {warning}");
    }
    out
}
