//! End-to-end runs of the `chowwitt` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use chowwitt::json as cj;
use chowwitt::wittgw::{self, Decision};
use serde_json::{json, Value};

fn run(args: &[&str], payload: Option<&Value>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chowwitt"));
    cmd.args(args);
    if let Some(p) = payload {
        cmd.arg("--json").arg(p.to_string());
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn assert_no_numbers(v: &Value) {
    match v {
        Value::Number(n) => panic!("numeric literal {n} in output"),
        Value::Array(xs) => xs.iter().for_each(assert_no_numbers),
        Value::Object(m) => m.values().for_each(assert_no_numbers),
        _ => {}
    }
}

fn q() -> Value {
    json!({"kind": "rationals"})
}

fn qt() -> Value {
    json!({"kind": "function", "base": q(), "var": "t"})
}

fn conic(field: Value, coeffs: [i64; 3]) -> Value {
    json!({"kind": "conic", "field": field, "coeffs": coeffs.map(|c| c.to_string())})
}

#[test]
fn anisotropic_form_over_q() {
    let o = run(&["form", "isotropic"], Some(&json!({"field": q(), "entries": ["1", "1", "1"]})));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!({"isotropic": false}));
}

#[test]
fn reciprocity_of_t() {
    let o = run(&["mw", "reciprocity"], Some(&json!({"field": qt(), "unit": "t"})));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!({"sum_rank": "0", "sum_witt": "zero"}));
}

#[test]
fn verify_sum_of_three_squares_conic() {
    let o = run(&["curve", "verify"], Some(&json!({"curve": conic(q(), [1, 1, 1])})));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["certificate"]["anisotropic_at"], "inf");
    assert_eq!(v["certificate"]["odd_search"]["found"], json!([]));
    assert_no_numbers(&v);
}

#[test]
fn verify_isotropic_conic_yields_lift() {
    let o = run(&["curve", "verify"], Some(&json!({"curve": conic(json!({"kind": "prime", "p": "5"}), [1, 1, 1])})));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["lift"]["verified"], "yes");
    assert_no_numbers(&v);
}

#[test]
fn invalid_inputs_exit_two() {
    let bad = [
        json!({"field": q(), "entries": [1.5]}),
        json!({"field": q(), "entries": ["0"]}),
        json!({"field": {"kind": "prime", "p": "4"}, "entries": ["1"]}),
        json!({"entries": ["1"], "field": {"kind": "nonsense"}}),
    ];
    for p in &bad {
        let o = run(&["form", "invariants"], Some(p));
        assert_eq!(code(&o), 2, "payload {p}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["form", "invariants"], None);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_chowwitt"))
        .args(["form", "invariants", "--json", "{not json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn search_limited_case_exits_three() {
    let o = run(&["curve", "degree-one", "--bound", "1"], Some(&json!({"curve": conic(q(), [3, 5, -1013])})));
    assert_eq!(code(&o), 3);
    assert_eq!(stdout_json(&o)["verdict"], "unknown");
}

#[test]
fn witt_equality_exit_codes() {
    let form = |v: &[&str]| json!({"field": q(), "entries": v});
    let o = run(&["witt", "equal"], Some(&json!({"a": form(&["1", "1"]), "b": form(&["2", "2"])})));
    assert_eq!((code(&o), stdout_json(&o)), (0, json!({"equal": "yes"})));
    let o = run(&["witt", "equal"], Some(&json!({"a": form(&["1"]), "b": form(&["2"])})));
    assert_eq!((code(&o), stdout_json(&o)), (1, json!({"equal": "no"})));
}

#[test]
fn payload_from_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chowwitt"))
        .args(["form", "witt-decompose", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let payload = json!({"field": q(), "entries": ["1", "-1", "2"]});
    child.stdin.take().unwrap().write_all(payload.to_string().as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["hyperbolic_planes"], "1");
    assert_no_numbers(&v);
}

#[test]
fn emitted_values_parse_back() {
    let cycle = json!({"curve": {"kind": "p1", "field": q()}, "support": [
        {"point": {"place": "t^2 - 2"}, "gw": {"rank": "1", "witt": {"entries": ["1"]}}},
        {"point": {"place": "t - 1"}, "gw": {"rank": "2", "witt": {"entries": ["1", "3"]}}}
    ]});
    let o = run(&["p1", "qdeg"], Some(&json!({"cycle": cycle})));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_no_numbers(&v);
    let g = cj::gw_from_json(&v, None).unwrap();
    assert_eq!(g.rank(), 4);
    assert_eq!(cj::gw_to_json(&g), v);

    let o = run(&["p1", "residue-divisor"], Some(&json!({"field": qt(), "unit": "(t^2 - 2)/(t - 1)"})));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_no_numbers(&v);
    let z = cj::cycle_from_json(&v).unwrap();
    assert_eq!(cj::cycle_to_json(&z), v);
    let d = chowwitt::gersten::qdeg(&z).unwrap();
    assert_eq!(wittgw::gw_equal(&d, &wittgw::GwElement::zero(d.field())).unwrap(), Decision::Yes);
}

#[test]
fn empty_suite_is_valid() {
    let o = run(&["suite", "run", "--samples", "0"], None);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["checks"], json!([]));
    assert_eq!(v["pass"], true);
    assert!(v["scope"].as_str().unwrap().contains("not reproducible"));
}

#[test]
fn suite_is_deterministic_per_seed() {
    let args = ["suite", "run", "--seed", "7", "--samples", "3"];
    let (a, b) = (run(&args, None), run(&args, None));
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert_no_numbers(&v);
}
