use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const F6: [i64; 6] = [13, 11, -2, -13, -11, 2];
const G6: [i64; 6] = [14, 7, -7, -14, -7, 7];
const F30: [i64; 30] = [
    56, -7, 7, 14, 7, 28, -14, -7, 7, 14, -28, -7, -14, -7, 7, -56, 7, -7, -14, -7, -28, 14, 7, -7,
    -14, 28, 7, 14, 7, -7,
];
const G30: [i64; 30] = [
    52, -2, 11, 13, 2, 44, -13, -2, 11, 13, -8, -11, -13, -2, 11, -52, 2, -11, -13, -2, -44, 13, 2,
    -11, -13, 8, 11, 13, 2, -11,
];

fn autocorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autocorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write_signal(dir: &Path, name: &str, group: &[usize], values: &[i64]) -> String {
    let path = dir.join(name);
    let text = json!({ "group": group, "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>() });
    std::fs::write(&path, text.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn compute_low_orders() {
    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[6], &F6);
    let out = autocorr(&["compute", "--order", "2", &f]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["entries"][0]["t"], json!([[0]]));
    assert_eq!(v["entries"][0]["value"], "588");
    let v = stdout_json(&autocorr(&["compute", "--order", "1", &f]));
    assert_eq!(v["entries"][0]["value"], "0");
    let v = stdout_json(&autocorr(&["compute", "--order", "5", &f]));
    assert_eq!(v["entries"], 1296);
    assert_eq!(v["at_zero"], "0");
}

#[test]
fn compute_errors() {
    let out = autocorr(&["compute", "--order", "2", "/nonexistent/f.json"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[6], &F6);
    let out = Command::new(env!("CARGO_BIN_EXE_autocorr"))
        .args(["compute", "--order", "4", &f])
        .env("AUTOCORR_MEM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fourier side"));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"group":[6],"values":["1","2"]}"#).unwrap();
    let out = autocorr(&["compute", "--order", "2", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[6], &F6);
    let g = write_signal(dir.path(), "g.json", &[6], &G6);
    let out = autocorr(&["compare", &f, &g, "--max-order", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["summary"], "equal:1-5, differ:6");
    assert_eq!(v["first_difference"], 6);
    assert_eq!(v["orders"][5]["witness"], json!([[1], [1], [1], [1], [1], [1]]));

    let shifted: Vec<i64> = (0..6).map(|x| F6[(x + 2) % 6]).collect();
    let h = write_signal(dir.path(), "h.json", &[6], &shifted);
    let out = autocorr(&["compare", &f, &h]);
    assert_eq!(out.status.code(), Some(0));
    // f(x) = h(x + 4)
    assert_eq!(stdout_json(&out)["translate_offset"], json!([4]));

    let f30 = write_signal(dir.path(), "f30.json", &[30], &F30);
    let g30 = write_signal(dir.path(), "g30.json", &[30], &G30);
    let out = autocorr(&["compare", &f30, &g30, "--max-order", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(v["summary"], "equal:1-5");
    assert_eq!(v["translate_offset"], Value::Null);

    let other = write_signal(dir.path(), "o.json", &[5], &[1, 2, 3, 4, 5]);
    assert_eq!(autocorr(&["compare", &f, &other]).status.code(), Some(2));
}

#[test]
fn classify_pair() {
    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[6], &F6);
    let g = write_signal(dir.path(), "g.json", &[6], &G6);
    let out = autocorr(&["--approx", "classify", &f, &g]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["homometric_through_5"], true);
    assert_eq!(v["f_e1_text"], "39-9√-3");
    assert_eq!(v["g_e1_text"], "42");
    assert_eq!(v["approx"]["g_e1"], "42.000000+0.000000i");
}

#[test]
fn generate_contains_fixture() {
    let v = stdout_json(&autocorr(&["generate", "--r", "7"]));
    let want_f: Vec<Value> = F6.iter().map(|x| json!(x.to_string())).collect();
    let want_g: Vec<Value> = G6.iter().map(|x| json!(x.to_string())).collect();
    let pairs = v["pairs"].as_array().unwrap();
    assert!(pairs.iter().any(|p| {
        p["f"]["values"].as_array().unwrap() == &want_f && p["g"]["values"].as_array().unwrap() == &want_g
    }));

    let v = stdout_json(&autocorr(&["generate", "--r", "7", "--modulus", "30"]));
    let want_f: Vec<Value> = F30.iter().map(|x| json!(x.to_string())).collect();
    let want_g: Vec<Value> = G30.iter().map(|x| json!(x.to_string())).collect();
    // the published Z_30 pair takes f from 42
    assert!(v["pairs"].as_array().unwrap().iter().any(|p| {
        let (a, b) = (p["f"]["values"].as_array().unwrap(), p["g"]["values"].as_array().unwrap());
        (a == &want_f && b == &want_g) || (a == &want_g && b == &want_f)
    }));
    assert!(v["note"].as_str().unwrap().contains("not a classification"));

    assert_eq!(autocorr(&["generate", "--r", "2"]).status.code(), Some(2));
    assert_eq!(autocorr(&["generate", "--r", "7", "--modulus", "10"]).status.code(), Some(2));
    let v = stdout_json(&autocorr(&["generate", "--r", "7", "--e0", "-3/2"]));
    assert_eq!(v["pairs"][0]["provenance"]["e0"], "-3/2");
}

#[test]
fn galois_certificates() {
    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[2, 4], &[1, -2, 3, 0, 5, 7, -1, 2]);
    let v = stdout_json(&autocorr(&["galois", &f]));
    assert_eq!(v["certificate"]["verdict"], "PASS");

    let spec = dir.path().join("F.json");
    let text = json!({
        "group": [6],
        "values": { "1": { "conductor": 6, "coeffs": ["0", "1"] } }
    });
    std::fs::write(&spec, text.to_string()).unwrap();
    let out = autocorr(&["--approx", "galois", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["certificate"]["verdict"], "FAIL");
    assert_eq!(v["inverse"]["rational"], false);
    assert!(v["inverse"]["approx"].is_string());
}

#[test]
fn bounds_and_units() {
    let v = stdout_json(&autocorr(&["bounds", "--group", "6", "--support", "1,5"]));
    assert_eq!(v["ak_bound"], 9);
    assert_eq!(v["index2_bound"], 6);
    assert_eq!(v["bound_9r"]["bound"], 9);
    assert_eq!(v["cited_gm_bound"], 6);

    let v = stdout_json(&autocorr(&["bounds", "--group", "2,6", "--support", "1,0;0,1;0,5;1,5"]));
    assert!(v["ak_bound"].is_number());

    let dir = TempDir::new().unwrap();
    let f = write_signal(dir.path(), "f.json", &[6], &F6);
    let v = stdout_json(&autocorr(&["bounds", "--signal", &f]));
    assert_eq!(v["support"], json!([[1], [5]]));

    let v = stdout_json(&autocorr(&["units", "--modulus", "12", "--target", "3"]));
    assert_eq!(v["units"], json!([1, 1, 1]));
    let v = stdout_json(&autocorr(&["units", "--modulus", "9", "--target", "-9"]));
    assert_eq!(v["units"], json!([1, 8]));
    assert_eq!(autocorr(&["units", "--modulus", "1", "--target", "0"]).status.code(), Some(2));
    assert_eq!(autocorr(&["bounds", "--group", "6"]).status.code(), Some(2));
}

#[test]
fn search_command() {
    let v = stdout_json(&autocorr(&["search", "--group", "6", "--bound", "1", "--max-order", "6"]));
    assert_eq!(v["signals"], 729);
    assert_eq!(v["pairs"], json!([]));
    let out = autocorr(&["search", "--group", "12", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let a = autocorr(&["--threads", "1", "search", "--group", "5", "--bound", "1", "--max-order", "3"]);
    let b = autocorr(&["--threads", "4", "search", "--group", "5", "--bound", "1", "--max-order", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
