use galmeasure_cli::{run, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VALIDATION};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("galmeasure").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn target<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["results"]["targets"].as_array().unwrap().iter().find(|t| t["name"] == name).unwrap()
}

#[test]
fn squares_at_rank_three() {
    let doc = json(&["measure", "catalog:squares", "--e", "3", "--format", "json"]);
    assert_eq!(target(&doc, "trivial")["value"], "1/8");
    assert_eq!(target(&doc, "full")["value"], "7/8");
    assert_eq!(doc["results"]["total"], "1/1");
    assert_eq!(doc["command"], "measure");
    assert_eq!(doc["parameters"]["e"], 3);
}

#[test]
fn fifth_root_closed_form_table() {
    let (code, out, _) = call(&["closed-form", "catalog:fifth-root", "--target", "image", "--format", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["n", "=", "5"]), "{out}");
    for (e, v) in [(2, "1/5"), (3, "1/25"), (4, "1/125")] {
        assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == [e.to_string().as_str(), v]), "{out}");
    }
}

#[test]
fn squares_full_ultralimit() {
    let doc = json(&["ultralimit", "catalog:squares", "--target", "full"]);
    assert_eq!(doc["results"]["value"], 1);
}

#[test]
fn omega_sums() {
    let doc = json(&["omega-sum", "catalog:squares", "--target", "full"]);
    assert_eq!(doc["results"]["value"], "inf");
    let doc = json(&["omega-sum", "catalog:squares", "--target", "trivial", "--start", "2"]);
    assert_eq!(doc["results"]["value"], "1/2");
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["spectrum", "catalog:d4-over-c4", "--e", "2"][..],
        &["verify-refinement", "catalog:c4-over-c2-tower", "--e", "2"],
        &["montecarlo", "catalog:squares", "--target", "trivial", "--e", "2", "--samples", "5000", "--seed", "9"],
        &["prop-measure", "catalog:c2xc4-pro2", "--prime", "2", "--e", "2", "--format", "table"],
    ] {
        assert_eq!(call(args), call(args), "{args:?}");
    }
}

#[test]
fn every_subcommand_on_the_catalog() {
    let doc = json(&["catalog"]);
    let ids: Vec<String> =
        doc["results"]["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.contains(&"c4-over-c2-tower".to_string()));
    for id in &ids {
        let input = format!("catalog:{id}");
        let kind = json(&["validate", &input])["results"]["kind"].as_str().unwrap().to_string();
        json(&["gaschutz", &input, "--e", "2"]);
        json(&["verify-refinement", &input, "--e", "2"]);
        if kind == "scenario" {
            json(&["measure", &input, "--e", "2"]);
            json(&["spectrum", &input, "--e", "2"]);
            json(&["bijection-factor", &input, "--target", "full", "--e", "2"]);
            json(&["montecarlo", &input, "--target", "full", "--e", "2", "--samples", "2000"]);
        } else {
            let (code, _, err) = call(&["measure", &input, "--e", "2"]);
            assert_eq!(code, EXIT_VALIDATION);
            assert!(err.contains("WrongInputKind"));
        }
    }
}

#[test]
fn bijection_report_exposes_both_factors() {
    let doc = json(&["bijection-factor", "catalog:s5-transposition", "--target", "transposition", "--e", "2"]);
    let r = &doc["results"];
    assert_eq!(r["factor"], "6/1");
    assert_eq!(r["conjugate-factor"], "10/1");
    assert_eq!(r["observed-ratio"], "10/1");
    assert_eq!(r["measure-v"], "1/480");
}

#[test]
fn export_round_trips() {
    let (code, text, _) = call(&["catalog", "fifth-root", "--export"]);
    assert_eq!(code, EXIT_OK);
    let file = galmeasure_cli::file::parse(&text).unwrap();
    assert_eq!(file.canonical(), text);
    let listed = json(&["catalog", "catalog:fifth-root"]);
    assert_eq!(listed["results"]["file"], serde_json::from_str::<Value>(&text).unwrap());
    assert_eq!(listed["input-digest"].as_str().unwrap(), file.digest());
}

fn scratch(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("galmeasure-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn invalid_inputs_exit_two_with_named_diagnostics() {
    let cases = [
        (
            "non-normal",
            r#"{"format-version": "1", "group": {"symmetric": 3}, "g0": [[1, 0, 2]],
                "targets": [{"name": "full", "generators": [[1, 0, 2], [1, 2, 0]]}]}"#,
            "NotNormal",
        ),
        (
            "non-regular",
            r#"{"format-version": "1", "group": {"symmetric": 3}, "g0": [[1, 2, 0]],
                "targets": [{"name": "trivial", "generators": []}]}"#,
            "NotRegularTarget",
        ),
        (
            "not-member",
            r#"{"format-version": "1", "group": {"cyclic": 3}, "g0": [[1, 0, 2]],
                "targets": [{"name": "full", "generators": [[1, 2, 0]]}]}"#,
            "NotMember",
        ),
        ("bad-version", r#"{"format-version": "7"}"#, "UnsupportedVersion"),
        ("not-json", "{", "MalformedFile"),
    ];
    for (name, body, kind) in cases {
        let path = scratch(name, body);
        let (code, out, err) = call(&["validate", path.to_str().unwrap()]);
        std::fs::remove_file(&path).ok();
        assert_eq!(code, EXIT_VALIDATION, "{name}: {err}");
        assert!(out.is_empty());
        assert!(err.contains(&format!("[{kind}]")), "{name}: {err}");
    }
    let (code, _, err) = call(&["validate", "catalog:no-such-entry"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("UnknownCatalogId"));
}

#[test]
fn unnamed_files_take_the_file_stem() {
    let path = scratch(
        "unnamed",
        r#"{"format-version": "1", "group": {"cyclic": 2}, "g0": [[1, 0]], "complement": [],
            "targets": [{"name": "trivial", "generators": []}]}"#,
    );
    let doc = json(&["measure", path.to_str().unwrap(), "--e", "2"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(target(&doc, "trivial")["value"], "1/4");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["measure", "catalog:squares"]).0, EXIT_USAGE);
    assert_eq!(call(&["measure", "catalog:squares", "--e", "x"]).0, EXIT_USAGE);
    assert_eq!(call(&["--format", "xml", "catalog"]).0, EXIT_USAGE);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("closed-form"));
}

#[test]
fn resource_caps_exit_3() {
    let (code, _, err) = call(&["validate", "catalog:s5-transposition", "--max-group-order", "60"]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.contains("GroupTooLarge"));
    let (code, _, err) = call(&["verify-refinement", "catalog:s3-identity-tower", "--e", "3", "--max-enumeration", "100"]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.contains("EnumerationTooLarge"));
}

#[test]
fn montecarlo_sigma_has_six_digits() {
    let doc = json(&["montecarlo", "catalog:fifth-root", "--target", "image", "--e", "2", "--samples", "10000", "--seed", "1"]);
    let sigma = doc["results"]["sigma"].as_str().unwrap();
    let mantissa = sigma.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 6, "{sigma}");
    assert_eq!(doc["results"]["exact"], "1/5");
}
