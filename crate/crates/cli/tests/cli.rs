use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use torsion_cli::fixtures::{self, SuiteDocument};
use torsion_cli::spec::{parse_runspec, Format};
use torsion_cli::{run, InputError, ReportDocument};
use torsion_core::harness::theorems::replay_hom_radical_witness;
use torsion_core::harness::Verdict;
use torsion_core::{FinModule, Ideal, RingSpec};

fn torsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion")).args(args).output().expect("binary runs")
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn without_timing(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timing");
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

#[test]
fn bundled_suite_passes() {
    let out = torsion(&["suite"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc: SuiteDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.verdict, Verdict::Pass);
    assert_eq!(doc.fixtures.len(), fixtures::FIXTURES.len());
    for e in &doc.fixtures {
        assert!(!e.document.reports.is_empty(), "{}", e.name);
        for r in &e.document.reports {
            assert_eq!(r.verdict, Verdict::Pass, "{}: {r:?}", e.name);
            assert!(r.instances > 0, "{}: {} checked nothing", e.name, r.check);
        }
    }
}

#[test]
fn suite_lists_and_selects() {
    let out = torsion(&["suite", "--list"]);
    let listing = String::from_utf8(out.stdout).unwrap();
    assert!(listing.lines().any(|l| l == "apolarity"));
    let out = torsion(&["suite", "apolarity"]);
    let doc: SuiteDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.fixtures.len(), 1);
    assert_eq!(torsion(&["suite", "nonexistent"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let spec = fixture("z8_torsion.toml");
    let a = torsion(&["check", spec.to_str().unwrap()]);
    let b = torsion(&["check", spec.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let va = without_timing(serde_json::from_slice(&a.stdout).unwrap());
    let vb = without_timing(serde_json::from_slice(&b.stdout).unwrap());
    assert_eq!(serde_json::to_string(&va).unwrap(), serde_json::to_string(&vb).unwrap());
}

#[test]
fn z4_hom_radical_fails_with_a_replayable_witness() {
    let out = torsion(&["check", fixture("negative/hom_radical_z4.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.verdict, Verdict::Fail);
    let r = &doc.reports[0];
    assert_eq!(r.check, "hom_radical");
    let w = r.witnesses[0].element.clone().expect("element witness");
    let ring = RingSpec::zn(4).build().unwrap();
    let m = FinModule::regular(&ring);
    let i = Ideal::principal(&ring, &[2]);
    assert!(replay_hom_radical_witness(&m, &i, &w));
    assert_eq!(r.witnesses[0].module.order, 4);
}

#[test]
fn empty_check_list_passes() {
    let spec = parse_runspec("ring = { type = \"Zn\", n = 6 }\n", Format::Toml).unwrap();
    let doc = run(&spec).unwrap();
    assert_eq!(doc.verdict, Verdict::Pass);
    assert!(doc.reports.is_empty());
    assert_eq!(doc.schema_version, 1);
    assert_eq!(doc.input_digest.len(), 64);
}

#[test]
fn input_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write(dir.path(), "bad.toml", "ring = { type = \"Zn\", n = 8 }\nideal = { gens = [2], gen = [3] }\n");
    let out = torsion(&["check", bad_key.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gen") && err.contains("line 2"), "{err}");

    let unknown = write(dir.path(), "unknown.json", r#"{"ring": {"type": "Zn", "n": 8}, "checks": ["gama"]}"#);
    let out = torsion(&["check", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check `gama`"));

    let dangling = write(
        dir.path(),
        "dangling.toml",
        "ring = { type = \"Zn\", n = 8 }\n[[modules]]\nname = \"A\"\nkind = \"cyclic\"\nideal = \"K\"\n",
    );
    let out = torsion(&["check", dangling.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unresolved ideal `K`"));

    let wrong_rank = write(dir.path(), "rank.toml", "ring = { type = \"Zn\", n = 8 }\nideal = { gens = [[1, 0]] }\n");
    assert_eq!(torsion(&["check", wrong_rank.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(torsion(&["check", "/nonexistent/spec.toml"]).status.code(), Some(3));
    assert_eq!(torsion(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn core_errors_become_undetermined() {
    // Z/4 is not a product of fields, so the spectral check cannot run.
    let spec = parse_runspec(
        "ring = { type = \"Zn\", n = 4 }\nideal = { gens = [2] }\nmodule = { kind = \"regular\" }\nchecks = [\"spectral_vnr\", \"idempotent_proregularity\"]\n",
        Format::Toml,
    )
    .unwrap();
    let doc = run(&spec).unwrap();
    assert_eq!(doc.verdict, Verdict::Undetermined);
    assert!(doc.reports.iter().all(|r| r.verdict == Verdict::Undetermined && r.details.contains_key("undetermined")));
    assert_eq!(doc.exit_code(), 2);
}

#[test]
fn toml_and_json_agree() {
    let text = std::fs::read_to_string(fixture("vnr_homology.toml")).unwrap();
    let from_toml = parse_runspec(&text, Format::Toml).unwrap();
    let json = serde_json::to_string_pretty(&from_toml).unwrap();
    let from_json = parse_runspec(&json, Format::Json).unwrap();
    assert_eq!(from_toml, from_json);
    assert_eq!(torsion_cli::run::digest(&from_toml), torsion_cli::run::digest(&from_json));
    let back = toml::to_string(&from_json).unwrap();
    assert_eq!(parse_runspec(&back, Format::Toml).unwrap(), from_toml);
}

#[test]
fn digest_tracks_content() {
    let a = parse_runspec("ring = { type = \"Zn\", n = 8 }\n", Format::Toml).unwrap();
    let b = parse_runspec("ring = { type = \"Zn\", n = 9 }\n", Format::Toml).unwrap();
    let c = parse_runspec("ring = { type = \"Zn\", n = 8 }\noutput = \"x.json\"\n", Format::Toml).unwrap();
    let d = torsion_cli::run::digest;
    assert_ne!(d(&a), d(&b));
    assert_eq!(d(&a), d(&c));
}

#[test]
fn out_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let spec = fixture("negative/hom_radical_z4.toml");
    let out = torsion(&["check", spec.to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let doc: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc.reports.len(), 1);
}

#[test]
fn info_commands_and_overrides() {
    let spec = fixture("z8_torsion.toml");
    let out = torsion(&["ring", spec.to_str().unwrap(), "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.seed, 9);
    assert_eq!(doc.reports[0].details["order"], 8);

    let out = torsion(&["module", spec.to_str().unwrap(), "--name", "M"]);
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.reports[0].details["reduction_index"], 3);
    assert_eq!(doc.reports[0].details["annihilator_chain"], serde_json::json!([2, 4, 8]));

    let out = torsion(&["ideal", spec.to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  ideal_info"), "{text}");
    assert!(text.contains("power_orders: [4,2,1,1]"), "{text}");

    let out = torsion(&["check", spec.to_str().unwrap(), "--only", "gamma", "--resolution-length", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = torsion(&["check", spec.to_str().unwrap(), "--only", "gamma"]);
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.reports.len(), 1);
}

#[test]
fn apolarity_subcommand() {
    let out = torsion(&["apolarity", "annihilator", "--vars", "1", "--degree", "5", "--generator", "[[[2], 1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.reports[0].details["basis"], serde_json::json!(["1", "X"]));

    let out = torsion(&[
        "apolarity",
        "profile",
        "--vars",
        "1",
        "--degree",
        "5",
        "--kmax",
        "3",
        "--generator",
        "[[[2], \"1/2\"]]",
    ]);
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.reports[0].details["dims"], serde_json::json!([2, 4, 6]));
    assert_eq!(doc.reports[0].details["witness"], "X^2");

    let out = torsion(&["apolarity", "identity", "--vars", "2", "--degree", "4", "--generator", "[[[1, 1], 1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let out = torsion(&["apolarity", "identity", "--vars", "1", "--degree", "4", "--generator", "[[[1, 1], 1]]"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn members_default_and_ambiguity() {
    let base = "ring = { type = \"Zn\", n = 8 }\nideal = { gens = [2] }\n";
    let err = parse_runspec(
        &format!("{base}[[modules]]\nname = \"A\"\nkind = \"regular\"\n[[modules]]\nname = \"B\"\nkind = \"zero\"\nchecks = [\"gamma\"]\n"),
        Format::Toml,
    );
    // `checks` after a table header belongs to that table, so the TOML is rejected.
    assert!(matches!(err, Err(InputError::Parse { .. })));
    let err = parse_runspec(
        &format!("checks = [\"gamma\"]\n{base}[[modules]]\nname = \"A\"\nkind = \"regular\"\n[[modules]]\nname = \"B\"\nkind = \"zero\"\n"),
        Format::Toml,
    )
    .unwrap_err();
    assert!(matches!(err, InputError::Ambiguous { .. }), "{err:?}");
}
