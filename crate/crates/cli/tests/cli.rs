use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use lefschetz_cli::{execute, Outcome, ProblemSpec};
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(root().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("lefschetz").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

/// Writes `text` to a scratch file unique to this test process.
fn scratch(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("lefschetz-cli-{}-{name}", std::process::id()));
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn with_key(path: &str, key: &str, value: Value) -> String {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v[key] = value;
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    let all = fixtures();
    assert!(all.len() >= 6);
    for path in all {
        let text = fs::read_to_string(&path).unwrap();
        let spec = ProblemSpec::from_json(&text, &path.to_string_lossy()).unwrap();
        assert_eq!(spec.to_canonical_json(), text, "{}", path.display());
    }
}

#[test]
fn fixtures_conform_to_the_published_schema() {
    let schema: Value =
        serde_json::from_str(&fs::read_to_string(root().join("docs/spec-schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for path in fixtures() {
        let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }

    // the schema and the parser agree on what is rejected
    let heis = fixture("heisenberg.json");
    for (key, value) in [
        ("colour", Value::from("red")),
        ("foliation", serde_json::json!({"kind": "SIDEWAYS"})),
        ("precision", Value::from(0.5)),
        ("endomorphism", serde_json::json!({"matrix": [[1]]})),
    ] {
        let text = with_key(&heis, key, value);
        assert!(!validator.is_valid(&serde_json::from_str(&text).unwrap()), "{key}");
        assert!(ProblemSpec::from_json(&text, "x.json").is_err(), "{key}");
    }

    // every field the parser knows about is declared in the schema
    let top: Vec<&String> = schema["properties"].as_object().unwrap().keys().collect();
    let mut full: Value =
        serde_json::from_str(&fs::read_to_string(fixture("torus-t4-two-fields.json")).unwrap()).unwrap();
    full["group"] = serde_json::from_str::<Value>(&fs::read_to_string(&heis).unwrap()).unwrap()["group"].clone();
    let spec: ProblemSpec = serde_json::from_value(full).unwrap();
    let written: Value = serde_json::to_value(&spec).unwrap();
    let mut keys: Vec<&String> = written.as_object().unwrap().keys().collect();
    let mut declared = top.clone();
    keys.sort();
    declared.sort();
    assert_eq!(keys, declared);
}

#[test]
fn json_output_is_byte_stable() {
    for path in fixtures() {
        let p = path.to_string_lossy();
        for cmd in ["validate", "analyze", "lefschetz", "betti"] {
            let a = run(&[cmd, &p]);
            let b = run(&[cmd, &p]);
            assert_eq!(a, b, "{cmd} {p}");
        }
    }
}

#[test]
fn validate_exit_codes() {
    for f in ["heisenberg.json", "catmap.json", "circle-minus-one.json", "filiform4.json"] {
        let v = run_json(&["validate", &fixture(f)]);
        assert_eq!(v["valid"], true, "{f}");
        assert_eq!(
            v["group"]["source"],
            if f == "heisenberg.json" || f == "filiform4.json" { "explicit" } else { "bch" }
        );
    }

    // BCH coordinates on the 5-dimensional filiform algebra do not close on Z^5:
    // a warning for validate, a refusal for fixed-point enumeration
    let v = run_json(&["validate", &fixture("filiform5.json")]);
    assert!(v["group"]["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("lattice")));
    let out = run(&["lefschetz", &fixture("filiform5.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("lattice"), "{}", out.stderr);

    let bad = scratch("malformed.json", "{\n  \"name\": \"x\",\n  \"lie_algebra\": {\"dim\": 1,}\n}\n");
    let out = run(&["validate", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains(":3:"), "{}", out.stderr);

    let unknown = scratch("unknown.json", &with_key(&fixture("catmap.json"), "colour", Value::from("red")));
    let out = run(&["validate", &unknown]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("colour"), "{}", out.stderr);

    assert_eq!(run(&["validate", "/nonexistent/spec.json"]).code, 2);
    assert_eq!(run(&["validate"]).code, 2);
    assert_eq!(run(&["frobnicate", &fixture("catmap.json")]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);

    // a map that is not a homomorphism
    let text = with_key(
        &fixture("heisenberg.json"),
        "endomorphism",
        serde_json::json!({"matrix": [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}),
    );
    let out = run(&["validate", &scratch("nonhom.json", &text)]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["endomorphism"]["valid"], false);
}

#[test]
fn identity_is_refused_with_eigenvalue_one() {
    let text =
        with_key(&fixture("catmap.json"), "endomorphism", serde_json::json!({"matrix": [["1", "0"], ["0", "1"]]}));
    let path = scratch("identity.json", &text);
    for cmd in ["analyze", "lefschetz"] {
        let out = run(&[cmd, &path]);
        assert_eq!(out.code, 1, "{cmd}");
        assert!(out.stderr.to_lowercase().contains("eigenvalue 1"), "{cmd}: {}", out.stderr);
    }
}

#[test]
fn analyze_heisenberg_and_catmap() {
    let v = run_json(&["analyze", &fixture("heisenberg.json")]);
    assert_eq!(v["anosov_class"], "GENERALIZED");
    assert_eq!(v["dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["nilpotency_class"], 2);
    assert_eq!(v["acceptable"], false);
    let layers = v["acceptability"]["unstable"]["layers"].as_array().unwrap();
    let failing: Vec<&Value> = layers.iter().filter(|l| l["dense"] == false).collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["j"], 1);
    assert_eq!(failing[0]["witness"], serde_json::json!(["0", "0", "1"]));

    let v = run_json(&["analyze", &fixture("catmap.json")]);
    assert_eq!(v["anosov_class"], "ANOSOV");
    assert_eq!(v["dims"], serde_json::json!([1, 1, 0]));
    assert_eq!(v["acceptable"], true);

    let v = run_json(&["analyze", &fixture("torus-t4-two-fields.json")]);
    assert!(v["splitting"].is_null());
    assert!(v["splitting_note"].as_str().unwrap().contains("√5"));
    assert_eq!(v["acceptable"], true);
    assert_eq!(v["acceptability"]["stable"]["overall"], true);
}

fn approx(v: &Value) -> f64 {
    v["approx"].as_f64().unwrap()
}

#[test]
fn lefschetz_on_the_fixtures() {
    let sqrt2 = 2f64.sqrt();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let cases: &[(&str, &[&str], f64, usize, &str)] = &[
        ("heisenberg.json", &[], -sqrt2, 4, "EXACT_EQUAL"),
        ("heisenberg.json", &["--foliation", "stable"], sqrt2, 4, "EXACT_EQUAL"),
        ("heisenberg.json", &["--foliation", "zero"], 1.0, 4, "EXACT_EQUAL"),
        ("heisenberg-center.json", &[], 2.0, 4, "EXACT_EQUAL"),
        ("catmap.json", &[], -phi, 1, "EXACT_EQUAL"),
        ("circle-minus-one.json", &[], 1.0, 2, "EXACT_EQUAL"),
        ("torus-t3-generalized.json", &[], -phi, 2, "EXACT_EQUAL"),
        ("filiform4.json", &[], -15.0, 30, "EXACT_EQUAL"),
        ("torus-t4-two-fields.json", &[], sqrt2 * phi, 2, "INTERVAL_CONSISTENT"),
    ];
    for (f, extra, value, count, verdict) in cases {
        let path = fixture(f);
        let mut args = vec!["lefschetz", path.as_str()];
        args.extend_from_slice(extra);
        let v = run_json(&args);
        assert_eq!(v["verdict"]["kind"], *verdict, "{f} {extra:?}");
        assert_eq!(v["fixed_point_count"], *count, "{f}");
        for side in ["lhs_cohomology", "lhs_determinant", "rhs_fixed_point_sum"] {
            assert!((approx(&v[side]) - value).abs() < 1e-9, "{f} {extra:?} {side}: {} vs {value}", approx(&v[side]));
        }
    }
    let v = run_json(&["lefschetz", &fixture("heisenberg.json")]);
    assert_eq!(v["name"], "heisenberg");
    assert_eq!(v["det_one_minus_full"], "-4");
    assert_eq!(v["local_sign"], -1);
}

#[test]
fn lefschetz_flag_errors() {
    let heis = fixture("heisenberg.json");
    assert_eq!(run(&["lefschetz", &heis, "--precision", "-3"]).code, 2);
    assert_eq!(run(&["lefschetz", &heis, "--precision", "2^x"]).code, 2);
    assert_eq!(run(&["lefschetz", &heis, "--foliation", "sideways"]).code, 2);
    // CUSTOM needs a basis, which only the spec can carry
    assert_eq!(run(&["lefschetz", &heis, "--foliation", "custom"]).code, 2);
    let out = run(&["lefschetz", &fixture("torus-t4-two-fields.json"), "--precision", "1/1000"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn betti_numbers() {
    let cases: &[(&str, &[usize])] = &[
        ("heisenberg.json", &[1, 2, 2, 1]),
        ("catmap.json", &[1, 2, 1]),
        ("circle-minus-one.json", &[1, 1]),
        ("torus-t3-cubic.json", &[1, 3, 3, 1]),
        ("filiform4.json", &[1, 2, 2, 2, 1]),
    ];
    for (f, betti) in cases {
        let v = run_json(&["betti", &fixture(f)]);
        assert_eq!(v["betti"], serde_json::json!(betti), "{f}");
        assert_eq!(v["euler_characteristic"], 0);
    }
    let v = run_json(&["betti", &fixture("filiform5.json")]);
    let b: Vec<i64> = v["betti"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(b.len(), 6);
    assert_eq!(b.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x } else { -x }).sum::<i64>(), 0);
    assert_eq!(b[1], 2);

    let wrong =
        scratch("wrong-betti.json", &with_key(&fixture("catmap.json"), "expected_betti", serde_json::json!([1, 1, 1])));
    assert_eq!(run(&["betti", &wrong]).code, 1);
}

#[test]
fn text_format_is_readable() {
    let out = run(&["lefschetz", &fixture("heisenberg.json"), "--format", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verdict          EXACT_EQUAL"));
    assert!(out.stdout.contains("-√2"));
    for cmd in ["validate", "analyze", "betti"] {
        let out = run(&[cmd, &fixture("catmap.json"), "--format", "text"]);
        assert_eq!(out.code, 0, "{cmd}");
        assert!(out.stdout.starts_with("catmap\n"), "{cmd}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lefschetz");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["lefschetz", &fixture("heisenberg.json")]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["verdict"]["kind"], "EXACT_EQUAL");
    let bad = scratch("bin-malformed.json", "{ nope");
    let out = status(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(status(&["lefschetz", &fixture("filiform5.json")]).status.code(), Some(1));
}
