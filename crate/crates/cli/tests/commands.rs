//! Runs the binary on the checked-in fixtures.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn sharpset(args: &[&str]) -> (i32, String, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_sharpset")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), text, json)
}

fn verdict(args: &[&str]) -> (i32, String) {
    let (code, _, json) = sharpset(args);
    (code, json["verdict"].as_str().unwrap_or("").to_string())
}

#[test]
fn exit_codes_follow_the_verdict() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["check-we".into(), fixture("vertex-inclusion.smap")], 0),
        (vec!["check-we".into(), fixture("double-cover.smap")], 1),
        (vec!["check-sharp".into(), fixture("edge-projection.smap")], 0),
        (vec!["check-sharp".into(), fixture("vertex-inclusion.smap")], 1),
        (vec!["sheaf-check".into(), fixture("atoms.bpsh")], 0),
        (vec!["sheaf-check".into(), fixture("constant-circle.bpsh")], 1),
        (vec!["check-hocartesian".into(), fixture("bundle-fiber.square")], 0),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let expected = ["pass", "fail", "indeterminate"][code as usize];
        assert_eq!(verdict(&args), (code, expected.to_string()), "{args:?}");
    }
}

#[test]
fn homology_of_the_suspension() {
    let (code, _, json) = sharpset(&["hocolim", &fixture("span.diag")]);
    assert_eq!(code, 0);
    assert_eq!(json["evidence"]["hocolim"]["homology"], serde_json::json!(["Z", "0", "Z"]));
    let (_, _, json) = sharpset(&["homology", &fixture("circle.sset")]);
    assert_eq!(json["evidence"]["homology"], serde_json::json!(["Z", "Z"]));
}

#[test]
fn verifiers_pass_on_their_fixtures() {
    let runs: Vec<Vec<String>> = vec![
        vec!["verify".into(), "thm-hocolims".into(), "--part".into(), "1".into(), fixture("proj.dmap")],
        vec!["verify".into(), "thm-hocolims".into(), "--part".into(), "2".into(), fixture("proj-chain.dmap")],
        vec!["verify".into(), "special-diagrams".into(), "--case".into(), "span".into(), fixture("proj.dmap")],
        vec!["verify".into(), "special-diagrams".into(), "--case".into(), "proper-subsets".into(), fixture("proj-subsets.dmap")],
        vec!["verify".into(), "thm-inverse-image".into(), "--fixture".into(), "arrow".into()],
        vec!["verify".into(), "thm-inverse-image".into(), fixture("bundle-arrow.square")],
        vec!["verify".into(), "horn-gluing".into(), fixture("sphere-bundle.smap"), "--simplex".into(), "012".into(), "--horn".into(), "1".into()],
        vec!["verify".into(), "distributive".into(), fixture("cone-span.diag"), fixture("cone-span-leg.smap")],
        vec!["verify".into(), "tilde-pullback".into(), fixture("proj.dmap")],
        vec!["verify".into(), "peculiar".into(), fixture("ladder.json")],
        vec!["verify".into(), "peculiar".into(), "--seed".into(), "9".into(), "--trials".into(), "50".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(verdict(&args), (0, "pass".to_string()), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify", "distributive", "--seed", "5", "--trials", "20"];
    let (_, a, _) = sharpset(&args);
    let (_, b, json) = sharpset(&args);
    assert_eq!(a, b);
    assert_eq!(json["seed"], 5);
    assert!(json.get("elapsed_micros").is_none());
    let (_, _, timed) = sharpset(&["--timing", "homology", &fixture("circle.sset")]);
    assert!(timed["elapsed_micros"].is_u64());
}

#[test]
fn inputs_are_digested() {
    let path = fixture("circle.sset");
    let (_, _, json) = sharpset(&["homology", &path]);
    let digest = json["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert_eq!(json["inputs"][0]["path"], path);
}

#[test]
fn usage_errors_exit_3() {
    for args in [vec!["frobnicate"], vec!["verify", "peculiar"], vec!["verify", "thm-hocolims", "--part", "3", "x.dmap"]] {
        let (code, _, json) = sharpset(&args);
        assert_eq!(code, 3, "{args:?}");
        assert_eq!(json["error"]["kind"], "usage", "{args:?}");
    }
    let (code, text, _) = sharpset(&["--help"]);
    assert_eq!(code, 0);
    assert!(text.contains("check-sharp"));
}

#[test]
fn validate_separates_syntax_from_violations() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.sset");
    std::fs::write(&broken, "{\"simplices\": [").unwrap();
    let (code, _, json) = sharpset(&["validate", broken.to_str().unwrap()]);
    assert_eq!((code, json["error"]["kind"].as_str()), (3, Some("syntax")));

    let bad = dir.path().join("bad.sset");
    std::fs::write(
        &bad,
        r#"{"simplices": [
            {"id": "0", "dim": 0}, {"id": "1", "dim": 0}, {"id": "2", "dim": 0},
            {"id": "01", "dim": 1, "faces": [["1", [0]], ["0", [0]]]},
            {"id": "02", "dim": 1, "faces": [["2", [0]], ["0", [0]]]},
            {"id": "12", "dim": 1, "faces": [["2", [0]], ["1", [0]]]},
            {"id": "012", "dim": 2, "faces": [["12", [0, 1]], ["02", [0, 1]], ["12", [0, 1]]]}
        ]}"#,
    )
    .unwrap();
    let (code, _, json) = sharpset(&["validate", bad.to_str().unwrap()]);
    assert_eq!((code, json["verdict"].as_str()), (1, Some("fail")));
    assert!(json["evidence"]["violation"].as_str().unwrap().contains("d_0 d_2 != d_1 d_0"));

    let (code, _, json) = sharpset(&["validate", &fixture("proj.dmap")]);
    assert_eq!((code, json["verdict"].as_str()), (0, Some("pass")));
}

#[test]
fn dimension_cap_is_enforced() {
    let (code, _, json) = sharpset(&["--dim-cap", "1", "validate", &fixture("sphere.sset")]);
    assert_eq!(code, 1, "{json}");
}

#[test]
fn missing_files_are_reported() {
    let (code, _, json) = sharpset(&["homology", "/nonexistent/x.sset"]);
    assert_eq!((code, json["error"]["kind"].as_str()), (3, Some("read")));
}
