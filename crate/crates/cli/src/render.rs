//! Plain-text rendering of reports.

use serde_json::Value;

use ordlat::gallery::GalleryReport;
use ordlat::{PropertyVerdict, SuiteReport, Verdict};

fn tally<I: IntoIterator<Item = Verdict>>(verdicts: I) -> String {
    let mut counts = [0usize; 4];
    for v in verdicts {
        counts[v as usize] += 1;
    }
    format!(
        "{} pass, {} fail, {} refuted, {} inconclusive",
        counts[0], counts[1], counts[2], counts[3]
    )
}

pub fn verdicts(props: &[PropertyVerdict]) -> String {
    let mut out = String::new();
    for p in props {
        let mode = p.mode.map(|m| format!(" [{m}]")).unwrap_or_default();
        out.push_str(&format!("{:<13}{:<28} {}{}\n", p.verdict.to_string(), p.id, p.anchor, mode));
        if let Some(w) = &p.witness {
            out.push_str(&format!("{:13}witness: {w}\n", ""));
        }
        if let Some(d) = &p.detail {
            out.push_str(&format!("{:13}{d}\n", ""));
        }
    }
    out
}

pub fn suite(input: &str, report: &SuiteReport, ms: u64) -> String {
    format!(
        "== {} ({input}) ==\n{}-- {} in {ms} ms\n\n",
        report.suite,
        verdicts(&report.properties),
        tally(report.properties.iter().map(|p| p.verdict)),
    )
}

pub fn gallery(report: &GalleryReport) -> String {
    let mut out = format!("== gallery {} ==\n", report.example);
    for c in &report.claims {
        out.push_str(&format!("{:<13}{:<28} {}\n", c.verdict.to_string(), c.id, c.anchor));
        out.push_str(&format!("{:13}computed: {}\n", "", c.computed));
        if let Some(d) = &c.detail {
            out.push_str(&format!("{:13}{d}\n", ""));
        }
    }
    out.push_str(&format!(
        "-- {}\n\n",
        tally(report.claims.iter().map(|c| c.verdict))
    ));
    out
}

pub fn object(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Null => "none".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k:14} {shown}\n"));
        }
    }
    out
}
