mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use common::synthetic;

fn altimpact(args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_altimpact"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs");
    out.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn harvest_synthetic(out: &Path) -> i32 {
    altimpact(&[
        "harvest",
        "--sample",
        s(&synthetic("sample.csv")),
        "--fixture",
        s(&synthetic("indicators.json")),
        "--resolver",
        s(&synthetic("resolver.json")),
        "--out",
        s(out),
    ])
}

#[test]
fn harvest_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(harvest_synthetic(&out), 0);
    assert!(out.join("kg.triples").exists());
    assert!(out.join("observations.json").exists());

    let missing = dir.path().join("nope.csv");
    assert_eq!(
        altimpact(&[
            "harvest",
            "--sample",
            s(&missing),
            "--fixture",
            s(&synthetic("indicators.json")),
            "--out",
            s(&out)
        ]),
        1
    );

    // one record the resolver fixture cannot place
    let mut sample = fs::read_to_string(synthetic("sample.csv")).unwrap();
    sample.push_str("P999,Ghost Q,Untraceable article,,2020-01-03,\n");
    let path = dir.path().join("sample.csv");
    fs::write(&path, sample).unwrap();
    let partial = dir.path().join("partial");
    assert_eq!(
        altimpact(&[
            "harvest",
            "--sample",
            s(&path),
            "--fixture",
            s(&synthetic("indicators.json")),
            "--resolver",
            s(&synthetic("resolver.json")),
            "--out",
            s(&partial),
        ]),
        2
    );
    let failures = fs::read_to_string(partial.join("failures.json")).unwrap();
    assert!(failures.contains("P999"));
    assert!(partial.join("kg.triples").exists());

    // neither --fixture nor --live
    assert_eq!(
        altimpact(&["harvest", "--sample", s(&path), "--out", s(&out)]),
        1
    );
}

#[test]
fn analyze_needs_a_graph() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(altimpact(&["analyze", "--out", s(dir.path())]), 1);
    fs::write(dir.path().join("kg.triples"), "").unwrap();
    assert_eq!(altimpact(&["analyze", "--out", s(dir.path())]), 1);
}

#[test]
fn analyze_select_assess() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(harvest_synthetic(&out), 0);
    assert_eq!(altimpact(&["analyze", "--out", s(&out)]), 0);
    let cats = fs::read_to_string(out.join("analysis/correlations_categories.csv")).unwrap();
    assert!(cats
        .lines()
        .any(|l| l.starts_with("Mentions,SocialMedia,212,0.81")));
    // weakly correlated pairs get no source breakdown
    assert!(!out
        .join("analysis/correlations_sources_citations_usage.csv")
        .exists());
    assert!(out
        .join("analysis/correlations_sources_mentions_socialmedia.csv")
        .exists());

    assert_eq!(
        altimpact(&[
            "assess",
            "--out",
            s(&out),
            "--checklists",
            s(&synthetic("strobe.csv"))
        ]),
        1
    );
    assert_eq!(
        altimpact(&[
            "select",
            "--out",
            s(&out),
            "--sample",
            s(&synthetic("sample.csv"))
        ]),
        0
    );
    let matrix = fs::read_to_string(out.join("selection_matrix.csv")).unwrap();
    assert_eq!(matrix.lines().count(), 17);
    assert!(out.join("plots/zplane_G_cs.csv").exists());
    assert!(out.join("plots/timeline_CIS_Iprime.csv").exists());

    assert_eq!(altimpact(&["assess", "--out", s(&out)]), 1);
    assert_eq!(
        altimpact(&[
            "assess",
            "--out",
            s(&out),
            "--checklists",
            s(&dir.path().join("missing.csv"))
        ]),
        1
    );
    assert_eq!(
        altimpact(&[
            "assess",
            "--out",
            s(&out),
            "--checklists",
            s(&synthetic("strobe.csv")),
            "--sample",
            s(&synthetic("sample.csv")),
        ]),
        0
    );
    let report = fs::read_to_string(out.join("quality_report.csv")).unwrap();
    assert!(report.starts_with("doi,journal,G_cs,G_cm,G_sm,CIS_C,CIS_A,CIS_I,CIS_I',CIS_A'\n"));
    assert_eq!(report.lines().count(), 17);
    assert_eq!(altimpact(&["report", "--out", s(&out)]), 0);
    assert!(fs::read_to_string(out.join("report.md"))
        .unwrap()
        .contains("| KG_ms | 68 |"));
}

#[test]
fn degenerate_method_is_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let (sample, mut fixture) = common::fixture(30, 5);
    // Usage becomes constant zero
    fixture = fixture.replace("\"Usage\"", "\"Captures\"");
    fs::write(dir.path().join("sample.csv"), sample).unwrap();
    fs::write(dir.path().join("fixture.json"), fixture).unwrap();
    let out = dir.path().join("out");
    assert_eq!(
        altimpact(&[
            "harvest",
            "--sample",
            s(&dir.path().join("sample.csv")),
            "--fixture",
            s(&dir.path().join("fixture.json")),
            "--out",
            s(&out),
        ]),
        0
    );
    assert_eq!(
        altimpact(&["select", "--out", s(&out), "--pairs", "r:u,c:s"]),
        2
    );
    let json = fs::read_to_string(out.join("selections.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["errors"][0]["method"], "G_ru");
    assert!(v["methods"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m["method"] == "G_cs"));
    assert!(v["methods"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m["method"] == "CIS_C"));
}

#[test]
fn stricter_quantile_selects_subsets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(harvest_synthetic(&out), 0);
    let mut picks = Vec::new();
    for q in ["0.95", "0.99"] {
        assert_eq!(altimpact(&["select", "--out", s(&out), "--quantile", q]), 0);
        let v: serde_json::Value =
            serde_json::from_slice(&fs::read(out.join("selections.json")).unwrap()).unwrap();
        picks.push(v["methods"].clone());
    }
    for (loose, strict) in picks[0]
        .as_array()
        .unwrap()
        .iter()
        .zip(picks[1].as_array().unwrap())
    {
        assert_eq!(loose["method"], strict["method"]);
        let loose: Vec<_> = loose["selected"].as_array().unwrap().iter().collect();
        for d in strict["selected"].as_array().unwrap() {
            assert!(
                loose.contains(&d),
                "{d} selected only at the stricter quantile"
            );
        }
    }
    assert_eq!(
        altimpact(&["select", "--out", s(&out), "--quantile", "1.5"]),
        1
    );
}
