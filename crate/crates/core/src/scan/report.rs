//! Rendering scan reports as text tables, CSV or JSON.

use std::fmt::Write as _;

use super::source::ConicOrdering;
use super::{FiberRow, OutputFormat, ScanReport};
use crate::exactmath::rat::rat_to_string;
use crate::exactmath::Rat;

enum Line<'a> {
    Fiber(&'a FiberRow),
    Singular(&'a Rat),
}

impl Line<'_> {
    fn t0(&self) -> &Rat {
        match self {
            Line::Fiber(r) => &r.t0,
            Line::Singular(t) => t,
        }
    }
}

fn lines(report: &ScanReport) -> Vec<Line<'_>> {
    let mut out: Vec<Line<'_>> = report
        .rows
        .iter()
        .map(Line::Fiber)
        .chain(report.singular.iter().map(Line::Singular))
        .collect();
    out.sort_by(|a, b| a.t0().cmp(b.t0()));
    out
}

fn params_text(report: &ScanReport) -> String {
    report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={}", rat_to_string(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_report(report: &ScanReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => text(report),
        OutputFormat::Csv => csv(report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn text(report: &ScanReport) -> String {
    const HEAD: [&str; 5] = ["t", "equation", "points", "bound", "ref"];
    let body: Vec<[String; 5]> = lines(report)
        .iter()
        .map(|l| match l {
            Line::Fiber(r) => [
                rat_to_string(&r.t0),
                r.curve.to_string(),
                r.points.len().to_string(),
                r.rank_lower_bound.to_string(),
                opt(r.paper_rank),
            ],
            Line::Singular(t) => [
                rat_to_string(t),
                "singular".into(),
                String::new(),
                String::new(),
                String::new(),
            ],
        })
        .collect();
    let mut width = HEAD.map(str::len);
    for row in &body {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let params = params_text(report);
    if params.is_empty() {
        writeln!(out, "# family {}", report.family).unwrap();
    } else {
        writeln!(out, "# family {} ({params})", report.family).unwrap();
    }
    let mut put = |cells: &[&str]| {
        let mut line = String::new();
        for (i, (cell, w)) in cells.iter().zip(width).enumerate() {
            if i == 0 {
                write!(line, "{cell:>w$}").unwrap();
            } else if i == 1 {
                write!(line, "  {cell:<w$}").unwrap();
            } else {
                write!(line, "  {cell:>w$}").unwrap();
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    put(&HEAD);
    for row in &body {
        put(&row.each_ref().map(String::as_str));
    }
    out
}

fn csv(report: &ScanReport) -> String {
    let mut out = String::from(
        "t,a2,a4,a6,status,claimed_points,searched_points,claimed_bound,rank_lower_bound,paper_rank,conic_ordering\n",
    );
    for l in lines(report) {
        let cells: Vec<String> = match l {
            Line::Fiber(r) => vec![
                rat_to_string(&r.t0),
                rat_to_string(&r.curve.a2),
                rat_to_string(&r.curve.a4),
                rat_to_string(&r.curve.a6),
                "ok".into(),
                r.points.iter().filter(|p| p.label != "search").count().to_string(),
                r.searched_points.to_string(),
                r.claimed_bound.to_string(),
                r.rank_lower_bound.to_string(),
                opt(r.paper_rank),
                r.conic
                    .as_ref()
                    .and_then(|c| c.ordering)
                    .map(|o| match o {
                        ConicOrdering::T => "t",
                        ConicOrdering::X => "x",
                    })
                    .unwrap_or_default()
                    .to_string(),
            ],
            Line::Singular(t) => {
                let mut v = vec![rat_to_string(t), String::new(), String::new(), String::new(), "singular".into()];
                v.resize(11, String::new());
                v
            }
        };
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
