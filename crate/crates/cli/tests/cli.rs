use std::path::Path;
use std::process::{Command, Output};

use etasphere::kwcalc::{eta_stems, StableStemsData};
use etasphere::steenrod::pages::{pages_for, BocksteinPage, ModelKind, PageBounds};
use etasphere::steenrod::MotivicBase;
use etasphere::witt::catalog_lookup;
use etasphere_cli::config::{parse_catalog, parse_stems};
use etasphere_cli::{emit_chart, load_config, Chartable, ConfigError, ConfigPaths, RunReport};

fn etasphere(args: &[&str]) -> Output {
    etasphere_env(args, None)
}

fn etasphere_env(args: &[&str], data_dir: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_etasphere"));
    c.args(args).env_remove("ETASPHERE_DATA_DIR");
    if let Some(d) = data_dir {
        c.env("ETASPHERE_DATA_DIR", d);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn groups_by_degree(o: &Output) -> Vec<(String, String)> {
    stdout(o)
        .lines()
        .skip(3)
        .map(|l| {
            let mut parts = l.split("  ").filter(|s| !s.is_empty()).map(str::trim);
            (parts.next().unwrap().to_string(), parts.next().unwrap().to_string())
        })
        .collect()
}

#[test]
fn stems_quadratically_closed_table() {
    let o = etasphere(&["stems", "--field", "quadratically_closed", "--max", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let got = groups_by_degree(&o);
    let want = ["ℤ/2", "0", "0", "ℤ/2", "ℤ/2", "0", "0", "ℤ/2", "ℤ/2"];
    assert_eq!(got.len(), want.len());
    for (n, ((deg, g), w)) in got.iter().zip(want).enumerate() {
        assert_eq!(deg, &n.to_string());
        assert_eq!(g, w, "degree {n}");
    }
}

#[test]
fn stems_real_closed_degree_zero() {
    let o = etasphere(&["stems", "--field", "real_closed", "--max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(groups_by_degree(&o), vec![("0".to_string(), "ℤ".to_string())]);
}

#[test]
fn operator_normal_form() {
    let o = etasphere(&["operator", "--word", "phi beta beta"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "81 β² φ + 80 β");
}

#[test]
fn json_reports_round_trip() {
    let runs: [&[&str]; 6] = [
        &["stems", "--field", "real_closed", "--max", "12", "--verify"],
        &["operator", "--word", "phi beta beta", "--phi-beta", "7"],
        &["steenrod", "pages", "--base", "real_closed", "--smax", "6", "--fmax", "2"],
        &["hopf", "--max", "6", "--verify"],
        &["divided", "--field", "real_closed", "--max", "8"],
        &["witt", "--field", "Z_half", "--verify"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let o = etasphere(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let report = RunReport::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text, "{args:?}");
        assert!(report.passed());
    }
}

#[test]
fn json_echoes_inputs() {
    let o = etasphere(&["hwhw", "--field", "F3", "--max", "5", "--format", "json"]);
    let r = RunReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.command, "hwhw");
    assert_eq!(r.inputs["field"], "F3");
    assert_eq!(r.inputs["max"], 5);
    assert_eq!(r.inputs["catalog"], "bundled");
    assert_eq!(r.results["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn steenrod_pages_example() {
    let o = etasphere(&["steenrod", "pages", "--base", "real_closed", "--smax", "16", "--fmax", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = RunReport::from_json(&stdout(&o)).unwrap();
    let e2 = r.results["e2"]["entries"].as_array().unwrap();
    let cell = e2.iter().find(|e| e["s"] == 4 && e["f"] == 1 && e["w"] == -4).unwrap();
    assert_eq!(cell["basis"][0], "h τ₂");
    assert_eq!(r.results["collapse"]["collapses_at"], 2);
    let chart = etasphere(&["steenrod", "pages", "--base", "real_closed", "--smax", "16", "--fmax", "6", "--format", "ascii-chart"]);
    assert!(stdout(&chart).starts_with("E1 f\\s | 0 1 2"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["stems", "--bogus"][..],
        &["frobnicate"],
        &["stems", "--field", "mars"],
        &["stems", "--field", "real_closed", "--max", "21"],
        &["pages", "--model", "tmf"],
        &["operator"],
        &["operator", "--word", "phi gamma"],
        &["witt", "--format", "ascii-chart"],
        &["hopf", "--max", "40"],
        &["divided", "--modulus-bits", "4"],
        &["divided", "--units", "1,2,3,5,7"],
        &["divided", "--field", "Q_7"],
        &["cobordism", "--theory", "mu"],
    ] {
        let o = etasphere(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = etasphere(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["stems", "witt", "steenrod", "pages", "operator", "hopf", "divided", "cobordism", "hwhw", "verify"] {
        assert!(stdout(&o).contains(sub), "{sub}");
    }
}

#[test]
fn every_subcommand_verifies() {
    for args in [
        &["stems", "--field", "quadratically_closed", "--max", "16"][..],
        &["hwhw", "--field", "Z_half", "--max", "12"],
        &["witt", "--field", "F7"],
        &["steenrod", "--base", "finite_field_3mod4", "--truncation", "10"],
        &["pages", "--base", "quadratically_closed", "--smax", "6", "--fmax", "3"],
        &["operator", "--max", "20"],
        &["hopf", "--max", "10"],
        &["divided", "--units", "trivial", "--modulus-bits", "12"],
        &["cobordism", "--max", "10"],
        &["cobordism", "--theory", "msl", "--max", "12"],
        &["verify"],
    ] {
        let mut full = args.to_vec();
        full.push("--verify");
        let o = etasphere(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let out = stdout(&o);
        assert!(out.contains("check "), "{args:?}");
        assert!(!out.contains("FAIL"), "{args:?}");
    }
}

// F5's Witt ring relabelled as F3 passes every load-time check but not the
// comparison with diagonal forms over F3.
#[test]
fn certificate_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/witt_catalog.json")).unwrap();
    let cat: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    let mut f5 = cat.into_iter().find(|f| f["name"] == "F5").unwrap();
    f5["name"] = "F3".into();
    std::fs::write(&path, serde_json::to_string(&vec![f5]).unwrap()).unwrap();
    let p = path.to_str().unwrap();

    let ok = etasphere(&["witt", "--catalog", p, "--field", "F3"]);
    assert_eq!(ok.status.code(), Some(0));
    let o = etasphere(&["witt", "--catalog", p, "--field", "F3", "--verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = RunReport::from_json(&stdout(&o)).unwrap();
    let bad: Vec<_> = r.certificates.iter().filter(|c| !c.passed).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].name, "matches-brute-force-classification");
    assert!(bad[0].counterexample.as_deref().unwrap().contains("F3"));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn bundled_config_loads() {
    let c = load_config(&ConfigPaths::default()).unwrap();
    assert_eq!(c.catalog.fields.len(), 6);
    assert_eq!(c.stems.groups.len(), 21);
    assert_eq!(c.catalog_source, "bundled");
}

#[test]
fn config_errors_carry_locations() {
    let bad_factors = r#"[{"degree": 0, "free_rank": 1, "torsion": []}, {"degree": 1, "free_rank": 0, "torsion": [4, 2]}]"#;
    match parse_stems(bad_factors, "s.json") {
        Err(ConfigError::Invariant { location, .. }) => assert!(location.contains("degree 1"), "{location}"),
        other => panic!("{other:?}"),
    }
    let bundled = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/stable_stems.json")).unwrap();
    let mut rows: Vec<serde_json::Value> = serde_json::from_str(&bundled).unwrap();
    rows.remove(5);
    match parse_stems(&serde_json::to_string(&rows).unwrap(), "s.json") {
        Err(ConfigError::Parse { location, reason }) => {
            assert!(location.contains("row 5"), "{location}");
            assert!(reason.contains("contiguous"), "{reason}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_stems("[{\"degree\": 0}]", "s.json"), Err(ConfigError::Parse { .. })));
    assert!(matches!(parse_stems("not json", "s.json"), Err(ConfigError::Parse { .. })));

    let cat = r#"[{"name": "odd", "additive": {"free_rank": 0, "torsion": [3, 2]}, "mult_table": [], "unit": [],
        "minus_one": [], "rank_mod2": [], "ideal_generators": [], "vcd2": 0}]"#;
    match parse_catalog(cat, "c.json") {
        Err(ConfigError::Invariant { location, .. }) => assert!(location.contains("\"odd\""), "{location}"),
        other => panic!("{other:?}"),
    }
    // structurally fine, but <1> + <-1> is not zero
    let cat = r#"[{"name": "broken", "additive": {"free_rank": 1, "torsion": []}, "mult_table": [[[1]]], "unit": [1],
        "minus_one": [1], "rank_mod2": [1], "ideal_generators": [[2]], "vcd2": 0}]"#;
    assert!(matches!(parse_catalog(cat, "c.json"), Err(ConfigError::Invariant { .. })));
    assert!(matches!(parse_catalog(r#"[{"name": "x"}]"#, "c.json"), Err(ConfigError::Parse { .. })));
}

#[test]
fn bad_files_on_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let stems = dir.path().join("stems.json");
    std::fs::write(&stems, r#"[{"degree": 0, "free_rank": 1, "torsion": []}, {"degree": 2, "free_rank": 0, "torsion": [2]}]"#)
        .unwrap();
    let o = etasphere(&["stems", "--stems-data", stems.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"), "{}", stderr(&o));
    assert!(stderr(&o).contains("row 1"), "{}", stderr(&o));

    let missing = dir.path().join("nope.json");
    let o = etasphere(&["witt", "--catalog", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data");
    std::fs::copy(format!("{data}/witt_catalog.json"), dir.path().join("witt_catalog.json")).unwrap();
    // a short stems file: only degrees 0..=3
    let short: Vec<serde_json::Value> =
        serde_json::from_str::<Vec<serde_json::Value>>(&std::fs::read_to_string(format!("{data}/stable_stems.json")).unwrap())
            .unwrap()
            .into_iter()
            .take(4)
            .collect();
    std::fs::write(dir.path().join("stable_stems.json"), serde_json::to_string(&short).unwrap()).unwrap();

    let o = etasphere_env(&["stems", "--max", "3", "--format", "json"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = RunReport::from_json(&stdout(&o)).unwrap();
    assert!(r.inputs["stems_data"].as_str().unwrap().ends_with("stable_stems.json"));
    let o = etasphere_env(&["stems", "--max", "4"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    // an explicit path wins over the directory
    let o = etasphere_env(&["stems", "--max", "4", "--stems-data", &format!("{data}/stable_stems.json")], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn empty_page_chart_is_header_only() {
    let p = BocksteinPage { page: 2, entries: vec![], differentials: vec![] };
    let chart = emit_chart(Chartable::Page(&p));
    let lines: Vec<&str> = chart.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("E2"));
    assert!(lines[1].chars().all(|c| c == '-'));
}

#[test]
fn sphere_chart_is_one_column() {
    let b = MotivicBase::lookup("real_closed").unwrap();
    let p = pages_for(ModelKind::Sphere, &b, PageBounds::new(6, 4)).unwrap();
    let chart = emit_chart(Chartable::Page(&p.e1));
    let lines: Vec<&str> = chart.lines().collect();
    assert_eq!(lines[0], "E1 f\\s | 0");
    // rows f = 4, …, 0, each with an h-power in stem 0
    assert_eq!(lines.len(), 2 + 5);
    for (k, l) in lines[2..].iter().enumerate() {
        let (f, cell) = l.split_once('|').unwrap();
        assert_eq!(f.trim(), (4 - k).to_string());
        assert!(cell.trim().parse::<usize>().unwrap() > 0);
    }
    assert!(p.e1.entries.iter().all(|e| e.s == 0));
    assert!(p.e1.entries.iter().filter(|e| e.f > 0).all(|e| e.basis.iter().all(|x| x.starts_with('h'))));
}

#[test]
fn stems_chart_lists_summands() {
    let w = catalog_lookup("real_closed").unwrap();
    let t = eta_stems(&w, &StableStemsData::bundled(), 8).unwrap();
    let chart = emit_chart(Chartable::Stems(&t));
    let lines: Vec<&str> = chart.lines().collect();
    let column = |line: &str, n: usize| line.split('|').nth(1).unwrap().split_whitespace().nth(n).unwrap().to_string();
    assert_eq!(column(lines[2], 7), "ℤ/16");
    assert_eq!(column(lines[3], 7), "ℤ/15");
    assert_eq!(column(lines[2], 0), "ℤ");
    assert_eq!(column(lines[2], 1), ".");
    assert_eq!(lines.len(), 4);
    assert_eq!(emit_chart(Chartable::Stems(&t)), chart);
}
