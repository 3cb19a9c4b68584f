use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn wsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsat"))
        .args(args)
        .env_remove("WSAT_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = wsat(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn validate(name: &str, instance: &Value) {
    let path = schema_dir().join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn exact_path_example() {
    let v = json(&["exact", "--pattern", "path:4", "--n", "4"]);
    assert_eq!(v["value"], 2);
    assert!(v["witness"].as_str().is_some_and(|w| !w.is_empty()));
    let text = stdout(&wsat(&["exact", "--pattern", "path:4", "--n", "4", "--format", "text"]));
    assert!(text.starts_with("w-sat(4, F) = 2\nwitness "));
}

#[test]
fn counterexample_report_exits_zero() {
    let v = json(&["reproduce", "--claim", "counterexample"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["stats"]["disagreements"], 0);
}

#[test]
fn disagreement_exits_one() {
    let out = wsat(&["reproduce", "--claim", "secondlargest", "--params", "l=3", "--format", "csv"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("instance,predicted,computed,agree,evidence\n"));
}

#[test]
fn usage_errors_exit_two() {
    let out = wsat(&["exact", "--pattern", "edges:3;0-1,1-q", "--n", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`q`"));
    let out = wsat(&["exact", "--pattern", "wheel:5", "--n", "5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`wheel`"));
    assert_eq!(code(&out), 2);
    for args in [
        &["exact", "--pattern", "path:4", "--n", "4", "--bogus"][..],
        &["exact", "--pattern", "path:4"],
        &["exact", "--pattern", "path:4", "--n", "99"],
        &["reproduce", "--claim", "nonsense"],
        &["reproduce", "--claim", "threecat", "--params", "depth=3"],
        &["reproduce", "--claim", "threecat", "--params", "max_v"],
        &["classify", "--pattern", "clique:3"],
        &["classify", "--pattern", "path:5", "--format", "csv"],
        &["construct", "--pattern", "cat:2,2", "--n", "5"],
        &["verify", "--certificate", "/nonexistent/cert.json"],
    ] {
        assert_eq!(code(&wsat(args)), 2, "{args:?}");
    }
}

#[test]
fn cap_exhaustion_exits_one() {
    let out = wsat(&["exact", "--pattern", "clique:4", "--n", "7", "--max-edges", "5"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 4] = [
        ("construct.json", &["construct", "--pattern", "cat:2,0,1"]),
        ("pair.json", &["construct", "--pattern", "cat:2,2", "--rule", "pair", "--pair", "0,1"]),
        ("exact.json", &["exact", "--pattern", "clique:3", "--n", "6"]),
        ("closure.json", &["closure", "--graph", "path:6", "--pattern", "path:3"]),
    ];
    for (file, args) in cases {
        let path = dir.path().join(file);
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(code(&wsat(&full)), 0);
        let v = json(&["verify", "--certificate", path.to_str().unwrap()]);
        assert_eq!((v["valid"].as_bool(), v["complete"].as_bool()), (Some(true), Some(true)), "{file}");
    }

    // a duplicated step must be rejected
    let path = dir.path().join("construct.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let steps = v["steps"].as_array_mut().unwrap();
    let first = steps[0].clone();
    steps.insert(0, first);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let out = wsat(&["verify", "--certificate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["valid"], false);
    validate("verify", &report);

    // an incomplete run is valid only with --partial
    let closure = dir.path().join("partial.json");
    let args = ["closure", "--graph", "edges:5;0-1,1-2,2-3", "--pattern", "clique:3", "--out", closure.to_str().unwrap()];
    assert_eq!(code(&wsat(&args)), 0);
    assert_eq!(code(&wsat(&["verify", "--certificate", closure.to_str().unwrap()])), 1);
    assert_eq!(code(&wsat(&["verify", "--certificate", closure.to_str().unwrap(), "--partial"])), 0);
}

#[test]
fn output_is_independent_of_thread_count() {
    let runs: [&[&str]; 7] = [
        &["exact", "--pattern", "cat:2,1", "--n", "7"],
        &["limit", "--pattern", "cat:1,0,2", "--format", "csv"],
        &["reproduce", "--claim", "threecat", "--params", "max_v=7"],
        &["reproduce", "--claim", "closure-order", "--params", "instances=40", "--seed", "9", "--format", "csv"],
        &["reproduce", "--claim", "goodtree-scan", "--params", "max_v=8"],
        &["enumerate", "cores", "--max-edges", "5", "--format", "csv"],
        &["construct", "--pattern", "cat:3,0,3"],
    ];
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["1", "2", "4"]
            .iter()
            .map(|t| {
                let mut full = args.to_vec();
                full.extend(["--threads", t]);
                let out = wsat(&full);
                assert_eq!(code(&out), 0, "{full:?}");
                out.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
        let via_env = Command::new(env!("CARGO_BIN_EXE_wsat")).args(args).env("WSAT_THREADS", "3").output().unwrap();
        assert_eq!(via_env.stdout, outputs[0], "{args:?} with WSAT_THREADS");
    }
}

#[test]
fn seeds_fix_randomized_runs() {
    let a = wsat(&["reproduce", "--claim", "closure-order", "--params", "instances=20", "--seed", "5"]);
    let b = wsat(&["reproduce", "--claim", "closure-order", "--params", "instances=20", "--seed", "5"]);
    let c = wsat(&["reproduce", "--claim", "closure-order", "--params", "instances=20", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn json_outputs_match_their_schemas() {
    let cases: [(&str, &[&str]); 12] = [
        ("closure", &["closure", "--graph", "path:5", "--pattern", "path:3", "--seed", "1"]),
        ("saturated", &["saturated", "--graph", "star:5", "--pattern", "path:3"]),
        ("exact", &["exact", "--pattern", "cat:2,1", "--n", "6"]),
        ("limit", &["limit", "--pattern", "cat:2,1"]),
        ("formulas", &["formulas", "--pattern", "cat:3,3", "--n", "30"]),
        ("formulas", &["formulas", "--pattern", "clique:4"]),
        ("construct", &["construct", "--pattern", "cat:2,0,0,2", "--rule", "local"]),
        ("classify", &["classify", "--pattern", "cat:3,1,0,2"]),
        ("classify", &["classify", "--pattern", "cat:2,2"]),
        ("enumerate", &["enumerate", "trees", "--n", "7"]),
        ("reproduce", &["reproduce", "--claim", "monotonicity"]),
        ("reproduce", &["reproduce", "--claim", "exponents", "--params", "k_max=12"]),
    ];
    for (name, args) in cases {
        validate(name, &json(args));
    }
    let exact = json(&["exact", "--pattern", "path:5", "--n", "6"]);
    validate("certificate", &exact["certificate"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    assert_eq!(code(&wsat(&["construct", "--pattern", "cat:2,2", "--out", path.to_str().unwrap()])), 0);
    validate("verify", &json(&["verify", "--certificate", path.to_str().unwrap()]));
}

#[test]
fn other_formats() {
    let g6 = stdout(&wsat(&["enumerate", "trees", "--n", "5", "--format", "g6"]));
    assert_eq!(g6.lines().count(), 3);
    let dot = stdout(&wsat(&["exact", "--pattern", "path:4", "--n", "5", "--format", "dot"]));
    assert!(dot.starts_with("graph witness {"));
    let csv = stdout(&wsat(&["formulas", "--pattern", "clique:4", "--n", "6", "--format", "csv"]));
    assert!(csv.contains("clique,exact,9"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["classify", "--pattern", "path:6"];
    let direct = wsat(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(code(&wsat(&with_out)), 0);
    assert_eq!(std::fs::read(&path).unwrap(), direct);
}
