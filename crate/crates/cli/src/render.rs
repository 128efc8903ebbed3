//! Plain-text rendering of report documents.

use std::fmt::Write;

use torsion_core::harness::{Report, Verdict};

use crate::run::ReportDocument;

fn tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Undetermined => "UNDT",
    }
}

fn compact(v: &serde_json::Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        let head: String = s.chars().take(97).collect();
        format!("{head}...")
    } else {
        s
    }
}

pub fn render_report(out: &mut String, r: &Report) {
    writeln!(out, "{}  {:<28} {}  [{} instances]", tag(r.verdict), r.check, r.property, r.instances).unwrap();
    for (k, v) in &r.details {
        writeln!(out, "      {k}: {}", compact(v)).unwrap();
    }
    for w in &r.witnesses {
        write!(out, "      witness: {} (order {})", w.module.label, w.module.order).unwrap();
        if let Some(e) = &w.element {
            write!(out, " element {e:?}").unwrap();
        }
        if let Some(s) = &w.submodule {
            write!(out, " submodule {s:?}").unwrap();
        }
        writeln!(out, ": {}", w.note).unwrap();
    }
}

pub fn render_document(doc: &ReportDocument) -> String {
    let mut out = String::new();
    writeln!(out, "torsion {}  input {}  seed {}", doc.tool_version, &doc.input_digest[..16], doc.seed).unwrap();
    for r in &doc.reports {
        render_report(&mut out, r);
    }
    let count = |v| doc.reports.iter().filter(|r| r.verdict == v).count();
    writeln!(
        out,
        "{}: {} pass, {} fail, {} undetermined in {:.1} ms",
        tag(doc.verdict),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Undetermined),
        doc.timing.total_ms
    )
    .unwrap();
    out
}
