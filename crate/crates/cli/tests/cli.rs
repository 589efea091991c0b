use std::path::PathBuf;
use std::process::{Command, Output};

use mtzeta::numerics::{pi, riemann_zeta, Complex};
use rug::Float;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/output-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

/// Drops the wall-time fields, the only ones allowed to differ between runs.
fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_elapsed);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn exact_value(record: &Value, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(record["value_exact"]["re"].as_str().unwrap()).unwrap())
}

fn zeta(n: i64, prec: u32) -> Float {
    riemann_zeta(&Complex::from_i64(n, prec), prec).unwrap().estimate.re
}

fn assert_close(record: &Value, expected: &Float, prec: u32) {
    let got = exact_value(record, prec);
    let err: f64 = record["abs_error"].as_str().unwrap().parse().unwrap();
    let diff = Float::with_val(prec, &got - expected).abs().to_f64();
    let ulp = expected.to_f64().abs() * 2f64.powi(-(prec as i32) + 4);
    assert!(diff <= err + ulp, "diff {diff:e} vs error {err:e}");
}

#[test]
fn coeff_tables() {
    let out = stdout(&run(&["coeff", "--k", "1", "--count", "3", "--csv"]));
    assert_eq!(out, "m,numerator,denominator\n0,1,1\n1,-1,2\n2,1,6\n");
    let out = stdout(&run(&["coeff", "--k", "1,1", "--count", "1", "--csv"]));
    assert_eq!(out, "m,numerator,denominator\n0,0,1\n");
    let table = json(&["coeff", "--k", "2", "--count", "1", "--json"]);
    assert_eq!(table["rows"][0]["numerator"], "1");
    assert_eq!(table["rows"][0]["denominator"], "1");
    assert_valid(&table);
    let text = stdout(&run(&["coeff", "--k", "1", "--count", "3"]));
    assert!(text.lines().nth(2).unwrap().ends_with("-1  2"), "{text}");
}

#[test]
fn eval_depth_three_closed_form() {
    let p = 256;
    let record = json(&["eval", "mt", "--exponents", "2,1,1", "--last", "1", "--prec", "256", "--json"]);
    assert_valid(&record);
    assert_eq!(record["digits"]["re"], 75);
    let expected = Float::with_val(p, 2 * zeta(2, p) * zeta(3, p)) - zeta(5, p);
    assert_close(&record, &expected, p);
}

#[test]
fn eval_xi_single_one() {
    let p = 256;
    let record = json(&["eval", "xi", "--k", "1", "--s", "2", "--json"]);
    assert_valid(&record);
    assert_close(&record, &Float::with_val(p, 2 * zeta(3, p)), p);
}

#[test]
fn eval_lambda_is_dilog() {
    let p = 128;
    let record = json(&["eval", "lambda", "--k", "1,1", "--z", "0.5", "--prec", "128", "--json"]);
    assert_valid(&record);
    let ln2 = Float::with_val(p, Float::with_val(p, 2).ln());
    let expected = Float::with_val(p, pi(p).square() / 12) - Float::with_val(p, ln2.square() / 2);
    assert_close(&record, &expected, p);
}

#[test]
fn eval_other_kinds() {
    let z = json(&["eval", "zeta2", "--a", "1", "--b", "2", "--json"]);
    assert_valid(&z);
    assert_close(&z, &zeta(3, 256), 256);
    let g = json(&["eval", "xig", "--s", "3", "--prec", "128", "--json"]);
    assert_close(&g, &zeta(3, 128), 128);
    let c = json(&["eval", "xi", "--k", "2", "--s", "3+0.5i", "--prec", "128", "--json"]);
    assert_valid(&c);
    assert_ne!(c["value"]["im"], "0");
}

#[test]
fn decimal_output_round_trips() {
    for prec in ["64", "200", "512"] {
        let record = json(&["eval", "xi", "--k", "1,2", "--s", "7/2", "--prec", prec, "--json"]);
        let p: u32 = prec.parse().unwrap();
        let text = record["value_exact"]["re"].as_str().unwrap();
        let parsed = Float::with_val(p, Float::parse(text).unwrap());
        assert_eq!(parsed.to_string_radix(10, None), text);
        // the certified digits are a prefix-accurate rounding of the same value
        let short: f64 = record["value"]["re"].as_str().unwrap().parse().unwrap();
        assert!((short - parsed.to_f64()).abs() <= 1e-15 * short.abs());
    }
}

#[test]
fn identical_invocations_match() {
    let args = ["eval", "xi", "--k", "2,1", "--s", "3+0.5i", "--prec", "192", "--json"];
    let (mut a, mut b) = (json(&args), json(&args));
    strip_elapsed(&mut a);
    strip_elapsed(&mut b);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&[]), Some(1));
    assert_eq!(code(&["eval", "mt", "--exponents", "2,1", "--last", "1", "--prec", "32"]), Some(1));
    assert_eq!(code(&["eval", "mt", "--exponents", "2,x", "--last", "1"]), Some(1));
    assert_eq!(code(&["eval", "xi", "--k", "1", "--s", "three"]), Some(1));
    assert_eq!(code(&["coeff", "--k", "0,1"]), Some(1));
    assert_eq!(code(&["verify", "nope"]), Some(1));
    assert_eq!(code(&["verify", "mr3", "--grid", "k=9"]), Some(1));
    assert_eq!(code(&["verify", "mr3", "--grid", "k"]), Some(1));

    let o = run(&["eval", "mt", "--exponents", "2,1", "--last", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divergent"));
    let o = run(&["eval", "mt", "--exponents", "2,1,1", "--last", "1", "--mmax", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--mmax"));
    assert_eq!(code(&["eval", "lambda", "--k", "1,1", "--z", "1"]), Some(2));
    assert_eq!(code(&["eval", "xi", "--k", "1", "--s", "-1"]), Some(2));
}

#[test]
fn verify_selected_suites() {
    let o = run(&["verify", "mtval", "--prec", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{out}");
    assert!(out.contains("4/4 passed"));

    let reports = json(&["verify", "mr3", "--grid", "k=1", "--json"]);
    assert_valid(&reports);
    let list = reports.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["identity"], "mr3");
    assert_eq!(list[0]["parameters"]["k"], "1");
    assert_eq!(list[0]["pass"], true);
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify_all_256.json")
}

fn verify_all() -> Value {
    let mut v = json(&["verify", "all", "--json"]);
    assert_valid(&v);
    strip_elapsed(&mut v);
    v
}

#[test]
fn verify_all_matches_golden() {
    let current = verify_all();
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(golden_path()).expect(
        "golden file missing; create it with `cargo test -p mtzeta-cli --test cli -- --ignored regenerate_golden`",
    ))
    .unwrap();
    let (cur, gold) = (current.as_array().unwrap(), golden.as_array().unwrap());
    assert_eq!(cur.len(), gold.len());
    for (c, g) in cur.iter().zip(gold) {
        assert_eq!(c, g, "report {} {} differs from golden", g["identity"], g["parameters"]);
    }
    assert!(cur.iter().all(|r| r["pass"] == true));
}

/// Rewrites the golden file; run explicitly with `--ignored`.
#[test]
#[ignore]
fn regenerate_golden() {
    let text = serde_json::to_string_pretty(&verify_all()).unwrap() + "\n";
    std::fs::write(golden_path(), text).unwrap();
}
