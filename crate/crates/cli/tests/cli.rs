use std::path::Path;
use std::process::{Command, Output};

use mostset::selftest::{cases, golden};
use serde_json::Value;

fn mostset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mostset"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("MOSTSET_MAX_STATES")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn documented_invocations() {
    let v = stdout_json(&mostset(&["intersect-most", "examples/ex1.json"]));
    assert_eq!(v["result"], serde_json::json!([2, 3]));

    let v = stdout_json(&mostset(&["average-state", "examples/hypergraph.json"]));
    assert_eq!(v["result"], serde_json::json!(["v3", "v4"]));
    assert_eq!(v["balanced"], false);

    let out = mostset(&[
        "density",
        "--set",
        r#"{"threshold":0,"prefix":[],"period":3,"residues":[0]}"#,
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"schema\":1,\"num\":1,\"den\":3}\n"
    );
}

#[test]
fn bundled_examples_match_golden_files_from_disk() {
    for case in cases() {
        if case.name == "errors" {
            continue;
        }
        let mut got = String::new();
        for args in &case.commands {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = mostset(&args);
            assert!(out.status.success(), "{}: {:?}", case.name, args);
            got.push_str(&String::from_utf8(out.stdout).unwrap());
        }
        assert_eq!(got, golden(case.name).unwrap(), "{}", case.name);
    }
}

#[test]
fn selftest_flag() {
    let out = mostset(&["--selftest"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["selftest"], "pass");
    let text = mostset(&["--selftest", "--format", "text"]);
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .starts_with("selftest: pass\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| mostset(args).status.code();
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(
        code(&["intersect-most", "examples/does_not_exist.json"]),
        Some(2)
    );
    assert_eq!(code(&["density", "--set", "{"]), Some(2));
    assert_eq!(
        code(&[
            "density-language",
            "--dfas",
            "examples/ex1_unary.json",
            "examples/even_odd.json"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "density-language",
            "--family",
            "examples/cumulative_0n1n.json",
            "--element",
            "0a1"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["acceptance", "--family", "examples/prime_prefix.json"]),
        Some(2)
    );

    let empty = Path::new(env!("CARGO_TARGET_TMPDIR")).join("empty_collection.json");
    std::fs::write(&empty, r#"{"sets": []}"#).unwrap();
    let out = mostset(&["intersect-most", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty collection"));

    let finite = r#"{"threshold":2,"prefix":[1,1],"period":1,"residues":[]}"#;
    assert_eq!(code(&["most", "--set", finite, "--set", finite]), Some(1));
}

#[test]
fn distinct_messages_for_input_errors() {
    let stderr = |args: &[&str]| String::from_utf8(mostset(args).stderr).unwrap();
    let messages = [
        stderr(&["frobnicate"]),
        stderr(&["density", "--set", "{"]),
        stderr(&[
            "density-language",
            "--dfas",
            "examples/ex1_unary.json",
            "examples/even_odd.json",
        ]),
    ];
    assert!(messages[0].contains("unrecognized subcommand"));
    assert!(messages[1].contains("malformed"));
    assert!(messages[2].contains("alphabet mismatch"));
}

#[test]
fn state_cap_from_environment() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_mostset"))
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .env("MOSTSET_MAX_STATES", limit)
            .args(["density-language", "--dfas", "examples/even_odd.json"])
            .output()
            .unwrap()
    };
    assert_eq!(run("3").status.code(), Some(1));
    assert!(run("1000").status.success());
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "estimate",
        "--family",
        "examples/prime_prefix_10.json",
        "--n",
        "500",
    ];
    let first = mostset(&args);
    for _ in 0..3 {
        assert_eq!(mostset(&args).stdout, first.stdout);
    }
}

#[test]
fn emitted_dfa_reads_back() {
    let v = stdout_json(&mostset(&[
        "density-language",
        "--dfas",
        "examples/even_odd.json",
    ]));
    let Value::Object(mut map) = v else {
        panic!("object")
    };
    map.remove("schema");
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("majority.json");
    std::fs::write(&path, Value::Object(map.clone()).to_string()).unwrap();
    let again = stdout_json(&mostset(&[
        "density-language",
        "--dfas",
        path.to_str().unwrap(),
    ]));
    let Value::Object(mut again) = again else {
        panic!("object")
    };
    again.remove("schema");
    assert_eq!(again, map);
}

#[test]
fn hypergraph_formats_agree() {
    let json = mostset(&["average-state", "examples/hypergraph.json"]);
    let text = mostset(&["average-state", "--input", "examples/hypergraph.txt"]);
    assert_eq!(json.stdout, text.stdout);
}

#[test]
fn estimated_reports_carry_provenance() {
    let v = stdout_json(&mostset(&[
        "estimate",
        "--family",
        "examples/cumulative_0n1n.json",
        "--n",
        "200",
        "--tol",
        "1/10",
    ]));
    assert_eq!(v["provenance"]["mode"], "estimated");
    assert_eq!(v["provenance"]["n"], 200);
    for e in v["estimates"].as_array().unwrap() {
        assert!(e["converged"].is_boolean());
    }
    assert!(v["result"]
        .as_array()
        .unwrap()
        .contains(&Value::from("0011")));
}
