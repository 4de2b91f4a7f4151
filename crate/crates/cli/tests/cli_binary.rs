use std::path::PathBuf;
use std::process::{Command, Output};

use eicf_core::{EicfSeq, ExtRational};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SQRT2_40: &str = "1.4142135623730950488016887242096980785696";

fn eicf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eicf")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = eicf(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "one object per invocation: {text}");
    (serde_json::from_str(&text).unwrap(), out.status.code().unwrap())
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compare `--json` output with `tests/golden/<name>.json`; set
/// `UPDATE_GOLDEN=1` to rewrite the files.
fn golden(name: &str, args: &[&str]) {
    let (value, _) = json(args);
    let pretty = serde_json::to_string_pretty(&value).unwrap() + "\n";
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &pretty).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(pretty, want, "golden mismatch for {name}");
}

#[test]
fn golden_outputs() {
    golden("classify_8_3", &["classify", "8/3"]);
    golden("classify_3_5", &["classify", "3/5"]);
    golden("classify_inf", &["classify", "inf"]);
    golden("expand_8_3", &["expand", "8/3"]);
    golden("expand_1", &["expand", "1", "--terms", "6"]);
    golden("expand_sqrt2", &["expand", SQRT2_40, "--terms", "6"]);
    golden("eval_tail", &["eval", "[0,2,-4,(2,-2)*]"]);
    golden("convergents_8_3", &["convergents", "8/3"]);
    golden("equivalent_negated", &["equivalent", SQRT2_40, &format!("-{SQRT2_40}")]);
    golden("equivalent_none", &["equivalent", "sqrt(2)", "sqrt(3)", "--min-overlap", "15"]);
    golden("approximants_sqrt2", &["approximants", "sqrt(2)", "--max-den", "12"]);
    golden("approximants_rejected", &["approximants", "0.5"]);
    golden("neighbors_0", &["neighbors", "0", "-1/2", "1/2", "--max-den", "6"]);
    golden("error_parse", &["classify", "1/x"]);
}

#[test]
fn json_schema_is_stable() {
    for args in [
        vec!["classify", "8/3"],
        vec!["expand", "3/5"],
        vec!["eval", "[2,2,-2]"],
        vec!["convergents", "sqrt(5)"],
        vec!["neighbors", "inf", "-4", "4"],
        vec!["approximants", "0.5"],
        vec!["classify", "oops"],
    ] {
        let (v, _) = json(&args);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["diagnostics", "input", "result"], "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(eicf(&["classify", "8/3"]).status.code(), Some(0));
    assert_eq!(eicf(&["classify", "8/0/1"]).status.code(), Some(2));
    assert_eq!(eicf(&["expand", "1.41421"]).status.code(), Some(3));
    assert_eq!(eicf(&["approximants", "0.5"]).status.code(), Some(3));
    assert_eq!(eicf(&["neighbors", "1", "0", "2"]).status.code(), Some(4));
    assert_eq!(eicf(&["render", "--x-min", "3", "--x-max", "1"]).status.code(), Some(4));
}

#[test]
fn worked_examples_through_the_binary() {
    let (v, code) = json(&["expand", "8/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["expansions"][0]["eicf"], "[2,2,-2]");
    assert_eq!(v["result"]["expansions"][0]["convergents"], serde_json::json!(["2", "5/2", "8/3"]));

    let (v, _) = json(&["expand", "1"]);
    assert_eq!(v["result"]["expansions"][0]["eicf"], "[0,(2,-2)*]");
    assert_eq!(v["result"]["expansions"][1]["eicf"], "[2,(-2,2)*]");

    let (v, _) = json(&["expand", SQRT2_40, "--terms", "6"]);
    assert_eq!(v["result"]["expansions"][0]["eicf"], "[2,-2,4,-2,4,-2]");

    let (v, _) = json(&["equivalent", SQRT2_40, &format!("-{SQRT2_40}")]);
    assert_eq!((v["result"]["verdict"].as_str(), v["result"]["m"].as_u64(), v["result"]["n"].as_u64()), (Some("Negated"), Some(0), Some(0)));

    let (v, _) = json(&["approximants", "sqrt(2)", "--max-den", "1"]);
    let rows: Vec<&str> = v["result"]["approximants"].as_array().unwrap().iter().map(|r| r["u"].as_str().unwrap()).collect();
    assert_eq!(rows, ["2"]);
}

#[test]
fn expand_roundtrip_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut done = 0;
    while done < 100 {
        let d: i64 = rng.random_range(1..=500);
        let n: i64 = rng.random_range(-1000..=1000);
        if n.gcd(&d) != 1 || (n + d).rem_euclid(2) == 0 {
            continue;
        }
        let x = ExtRational::new(n, d).unwrap();
        let (v, code) = json(&["expand", &x.to_string()]);
        assert_eq!(code, 0);
        let text = v["result"]["expansions"][0]["eicf"].as_str().unwrap();
        let s: EicfSeq = text.parse().unwrap();
        assert_eq!(s.eval_finite().unwrap(), x, "{x} -> {text}");
        done += 1;
    }
}

#[test]
fn render_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let status = eicf(&[
            "render", "--x-min", "-1.6", "--x-max", "3.6", "--show", "tree,graph,ford", "--path", "[2,2,-2]",
            "--max-den", "8", "--out", out.to_str().unwrap(),
        ])
        .status;
        assert!(status.success());
    }
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let text = String::from_utf8(sa).unwrap();
    assert!(text.contains(r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1""#));
    assert_eq!(text.matches(r#"class="path-edge""#).count(), 3);

    let (v, code) = json(&["render", "--show", "tree", "--max-den", "8", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"]["tree_edges"], 62);
}
