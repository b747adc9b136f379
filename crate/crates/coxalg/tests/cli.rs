use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("runs verify")
}

fn code(args: &[&str]) -> i32 {
    verify(args).status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coxalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn read_json(p: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("runtime_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["gars-sq", "--system", "A2"]), 0);
    assert_eq!(code(&["chain-eval-i", "--g", "2"]), 0);
    assert_eq!(code(&["luttinger-delta"]), 1);
    assert_eq!(code(&["no-such-check"]), 2);
    assert_eq!(code(&["chain-eval-i", "--g", "9"]), 2);
    assert_eq!(code(&["gars-sq", "--system", "Q7"]), 2);
    assert_eq!(code(&["gars-sq", "--bogus"]), 2);
    assert_eq!(code(&[]), 2);
}

#[test]
fn report_json() {
    let out = scratch("hurwitz.json", "");
    let o = verify(&[
        "hurwitz-pair",
        "--system",
        "A3",
        "--n",
        "20",
        "--seed",
        "7",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["check_id"], "hurwitz-pair");
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(v["pass"], true);
    assert_eq!(v["actual"][0]["passed"], 20);
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn deterministic_reports() {
    let a = scratch("a.json", "");
    let b = scratch("b.json", "");
    for p in [&a, &b] {
        verify(&[
            "rs-roundtrip",
            "--system",
            "S2",
            "--n",
            "30",
            "--seed",
            "11",
            "--json",
            p.to_str().unwrap(),
        ]);
    }
    let (mut x, mut y) = (read_json(&a), read_json(&b));
    strip_timing(&mut x);
    strip_timing(&mut y);
    assert_eq!(
        serde_json::to_string(&x).unwrap(),
        serde_json::to_string(&y).unwrap()
    );
}

#[test]
fn config_runs() {
    let pass = scratch(
        "pass.json",
        r#"{"seed": 3, "checks": ["mu-prim-a2", {"id": "sp2-mod4", "g": 2}]}"#,
    );
    let summary = scratch("summary.json", "");
    let o = verify(&[
        "all",
        "--config",
        pass.to_str().unwrap(),
        "--json",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&summary);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["total"], 2);
    assert_eq!(v["reports"][0]["check_id"], "mu-prim-a2");
    assert_eq!(v["reports"][1]["params"]["g"], 2);
    let fail = scratch(
        "fail.json",
        r#"{"checks": [{"id": "luttinger-delta", "g": 2, "n": 20}]}"#,
    );
    assert_eq!(code(&["all", "--config", fail.to_str().unwrap()]), 1);
    let empty = scratch("empty.json", r#"{"checks": []}"#);
    assert_eq!(code(&["all", "--config", empty.to_str().unwrap()]), 2);
    let broken = scratch("broken.json", "{");
    assert_eq!(code(&["all", "--config", broken.to_str().unwrap()]), 2);
    assert_eq!(code(&["all", "--config", "/nonexistent/config.json"]), 2);
}

#[test]
fn input_files() {
    let pairs = scratch(
        "pairs.txt",
        "# paired\n(1,1,0)\n(0,1,1)\n(0,1,1)\n(1,1,0)\n",
    );
    assert_eq!(
        code(&[
            "hurwitz-pair",
            "--system",
            "A3",
            "--fact-file",
            pairs.to_str().unwrap()
        ]),
        0
    );
    let odd = scratch("odd.txt", "(1,0,0)\n(0,1,0)\n(1,0,0)\n");
    assert_eq!(
        code(&[
            "hurwitz-pair",
            "--system",
            "A3",
            "--fact-file",
            odd.to_str().unwrap()
        ]),
        1
    );
    assert_eq!(
        code(&["hurwitz-pair", "--fact-file", odd.to_str().unwrap()]),
        2
    );
    let twists = scratch(
        "twists.txt",
        "+ 1 0 0 0\n+ 0 0 1 0\n+ 1 0 0 0\n+ 0 0 1 0\n+ 1 0 0 0\n+ 0 0 1 0\n",
    );
    assert_eq!(
        code(&[
            "transvection-normalize",
            "--g",
            "2",
            "--fact-file",
            twists.to_str().unwrap()
        ]),
        0
    );
    let word = scratch("word.txt", "s1 s2 s1 s1 s2^-1 s1^-1");
    assert_eq!(
        code(&[
            "rs-roundtrip",
            "--system",
            "A3",
            "--n",
            "5",
            "--word-file",
            word.to_str().unwrap()
        ]),
        0
    );
    let unknown = scratch("bad-word.txt", "s9");
    assert_eq!(
        code(&[
            "rs-roundtrip",
            "--system",
            "A3",
            "--word-file",
            unknown.to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn every_check_runs_in_isolation() {
    let o = verify(&["list"]);
    let ids: Vec<String> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(ids.len(), 16);
    for id in ids {
        let args: Vec<&str> = match id.as_str() {
            "hurwitz-pair" | "transvection-normalize" | "rs-roundtrip" => vec![&id, "--n", "3"],
            _ => vec![&id],
        };
        let expected = if id == "luttinger-delta" { 1 } else { 0 };
        assert_eq!(code(&args), expected, "{id}");
    }
}
