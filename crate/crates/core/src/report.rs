//! The `arcreport v1` text format.

use std::collections::BTreeMap;

use crate::decider::{structural_report, ArcVerdict, StructuralReport};
use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use crate::plmap::PLMap;
use crate::rational::fmt_frac;

pub const ARCREPORT_HEADER: &str = "arcreport v1";

fn iv(i: &IntervalQ) -> String {
    format!("[{},{}]", fmt_frac(i.lo()), fmt_frac(i.hi()))
}

fn or_none(items: Vec<String>) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(" ")
    }
}

fn structure_lines(r: &StructuralReport, out: &mut Vec<String>) {
    let mut fixed: Vec<String> = r.fixed_set.points.iter().map(fmt_frac).collect();
    fixed.extend(r.fixed_set.segments.iter().map(iv));
    let mut cycles: Vec<String> =
        r.cycles.isolated.iter().map(|c| format!("{{{},{}}}", fmt_frac(&c.s), fmt_frac(&c.t))).collect();
    cycles.extend(r.cycles.swapped_segments.iter().map(|s| format!("swap{}", iv(s))));
    let types: Vec<String> =
        r.fixed_point_types.iter().map(|t| format!("{}:{}", fmt_frac(&t.point), t.kind.label())).collect();
    let endpoints = match &r.endpoints {
        Some((a, b)) => format!("{a} {b}"),
        None => "none".into(),
    };
    let pieces: Vec<String> = r.decomposition.iter().map(|p| format!("{}:{}", iv(&p.interval), p.kind.label())).collect();
    out.push(format!("analyzed {}", r.analyzed));
    out.push(format!("case {}", r.boundary.case.label()));
    out.push(format!("fixed_points {}", or_none(fixed)));
    out.push(format!("fixed_point_types {}", or_none(types)));
    out.push(format!("two_cycles {}", or_none(cycles)));
    out.push(format!("endpoints {endpoints}"));
    out.push(format!("pieces {}", or_none(pieces)));
}

/// Renders a verdict for `f`. With `cert_path` the certificate is
/// referenced by path, otherwise its fields are written inline.
pub fn write_report(f: &PLMap, v: &ArcVerdict, cert_path: Option<&str>) -> Result<String> {
    let mut lines = vec![ARCREPORT_HEADER.to_string(), format!("verdict {}", v.outcome.label()), format!("stage {}", v.stage)];
    let structure = match &v.proof_record {
        Some(r) => r.clone(),
        None => structural_report(f, "f")?,
    };
    structure_lines(&structure, &mut lines);
    if let Some(path) = structure.path {
        lines.push(format!("path {}", path.label()));
        for fact in &structure.facts {
            lines.push(format!("fact {fact}"));
        }
    }
    if let Some(c) = &v.certificate {
        match cert_path {
            Some(p) => lines.push(format!("certificate {p}")),
            None => {
                lines.push(format!("certificate_kind {}", c.kind.label()));
                lines.push(format!("certificate_k {}", c.k));
                lines.push(format!("certificate_A {}", iv(&c.a)));
                lines.push(format!("certificate_B {}", iv(&c.b)));
                lines.push(format!("certificate_D {}", iv(&c.d)));
            }
        }
    }
    if let Some(b) = &v.budget_report {
        lines.push(format!("budget {b}"));
    }
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(text)
}

/// Key-value view of a report; repeated keys (such as `fact`) are joined
/// with `"; "`.
pub fn parse_report(text: &str) -> Result<BTreeMap<String, String>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(ARCREPORT_HEADER) {
        return Err(Error::Parse { line: 1, message: format!("expected `{ARCREPORT_HEADER}`") });
    }
    let mut out: BTreeMap<String, String> = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse { line: i + 2, message: "expected `key value`".into() })?;
        out.entry(k.to_string())
            .and_modify(|e| {
                e.push_str("; ");
                e.push_str(v);
            })
            .or_insert_with(|| v.to_string());
    }
    Ok(out)
}
