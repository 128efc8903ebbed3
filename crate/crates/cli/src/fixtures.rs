//! Worked examples bundled with the binary and run by `torsion suite`.

use serde::{Deserialize, Serialize};
use torsion_core::harness::Verdict;

use crate::error::InputError;
use crate::run::{run, ReportDocument, SCHEMA_VERSION, TOOL_VERSION};
use crate::spec::{parse_runspec, Format, RunSpec};

pub const FIXTURES: &[(&str, &str)] = &[
    ("apolarity", include_str!("../fixtures/apolarity.toml")),
    ("idempotent_product", include_str!("../fixtures/idempotent_product.toml")),
    ("z8_torsion", include_str!("../fixtures/z8_torsion.toml")),
    ("vnr_homology", include_str!("../fixtures/vnr_homology.toml")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn load(name: &str) -> Option<Result<RunSpec, InputError>> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| parse_runspec(text, Format::Toml))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub document: ReportDocument,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub verdict: Verdict,
    pub fixtures: Vec<SuiteEntry>,
}

/// Runs the named fixtures, or all of them when `selected` is empty.
pub fn run_suite(
    selected: &[String],
    adjust: impl Fn(RunSpec) -> Result<RunSpec, InputError>,
) -> Result<SuiteDocument, InputError> {
    for s in selected {
        if load(s).is_none() {
            return Err(InputError::Unresolved { kind: "fixture", name: s.clone(), context: "suite".into() });
        }
    }
    let mut fixtures = Vec::new();
    for name in names().filter(|n| selected.is_empty() || selected.iter().any(|s| s == n)) {
        let spec = adjust(load(name).expect("bundled")?)?;
        fixtures.push(SuiteEntry { name: name.to_string(), document: run(&spec)? });
    }
    let verdict = fixtures.iter().fold(Verdict::Pass, |v, e| v.and(e.document.verdict));
    Ok(SuiteDocument { schema_version: SCHEMA_VERSION, tool_version: TOOL_VERSION.to_string(), verdict, fixtures })
}
