use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn mslab(dir: &Path, args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mslab"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (
        code,
        json,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let w = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();
    w(
        "s.json",
        r#"{"points":["a","b","c"],"diam":"1","d":[["0","1/2","1"],["1/2","0","1/2"],["1","1/2","0"]]}"#,
    );
    w(
        "bad.json",
        r#"{"points":["a","b","c"],"diam":"1","d":[["0","1/5","1"],["1/5","0","1/5"],["1","1/5","0"]]}"#,
    );
    w(
        "seed.json",
        r#"{"points":["a","b"],"diam":"1","d":[["0","1/2"],["1/2","0"]]}"#,
    );
    w(
        "k.json",
        r#"{"space":"s.json","values":["1/2","1/2","1/2"]}"#,
    );
    w("notk.json", r#"{"space":"s.json","values":["0","1","0"]}"#);
    w(
        "line.json",
        r#"{"points":["b","x","y","a"],"diam":"1","d":[["0","1/10","1/5","3/10"],["1/10","0","1/10","1/5"],["1/5","1/10","0","1/10"],["3/10","1/5","1/10","0"]]}"#,
    );
    w(
        "h.json",
        r#"{"breakpoints":["0","1"],"values":["1","1"],"tail_slope":"1"}"#,
    );
    w(
        "h2.json",
        r#"{"breakpoints":["0","1","2"],"values":["1","2","2"],"tail_slope":"1"}"#,
    );
    w(
        "hc.json",
        r#"{"breakpoints":["0","1"],"values":["1","3/2"],"tail_slope":"1"}"#,
    );
    w(
        "disjoint.json",
        r#"{"x":{"x_breaks":["0","1","2"],"y_breaks":["0","1"],"values":[["1"],["2"]]},
            "parts":[{"x_breaks":["0","1","2"],"y_breaks":["0","1"],"values":[["3"],["0"]]},
                     {"x_breaks":["0","1","2"],"y_breaks":["0","1"],"values":[["0"],["-1"]]}]}"#,
    );
    dir
}

/// Exit code must follow the verdict printed on stdout.
fn assert_contract(code: i32, json: &Value) {
    let verdict = json["verdict"].as_str().unwrap();
    assert_eq!(code, if verdict == "pass" { 0 } else { 1 }, "{json}");
}

#[test]
fn exit_codes_follow_verdicts() {
    let dir = fixtures();
    let cases: &[(&[&str], i32)] = &[
        (&["validate", "s.json"], 0),
        (&["validate", "bad.json"], 1),
        (&["katetov", "check", "k.json"], 0),
        (&["katetov", "check", "notk.json"], 1),
        (&["katetov", "extend", "k.json"], 0),
        (&["katetov", "enumerate", "s.json", "--denom", "2"], 0),
        (&["katetov", "truncate", "k.json", "--lambda", "3/4"], 0),
        (
            &[
                "urysohn", "ma", "s.json", "--x", "0", "--y", "1", "--f", "2", "--delta", "9/10",
            ],
            0,
        ),
        (
            &[
                "urysohn", "uwmt", "s.json", "--x", "0", "--y", "1", "--z", "2",
            ],
            0,
        ),
        (
            &[
                "urysohn",
                "uwmt",
                "line.json",
                "--x",
                "1",
                "--y",
                "2",
                "--z",
                "3,0",
            ],
            1,
        ),
        (
            &[
                "urysohn", "prop53", "s.json", "--pairs", "0:0", "--eps", "1/4", "--z", "1",
            ],
            0,
        ),
        (&["urysohn", "chain", "--r", "1/3", "--s", "1"], 0),
        (
            &[
                "urysohn",
                "nonproper",
                "s.json",
                "--x",
                "0",
                "--z",
                "1,2",
                "--lambda",
                "1/2",
            ],
            0,
        ),
        (&["weak", "seminorm", "s.json", "--landmarks", "0"], 0),
        (
            &[
                "weak",
                "proximity",
                "s.json",
                "--landmarks",
                "1",
                "--a",
                "0",
                "--b",
                "2",
                "--eps",
                "1/4",
            ],
            0,
        ),
        (
            &[
                "weak",
                "proximity",
                "s.json",
                "--a",
                "0",
                "--b",
                "2",
                "--eps",
                "1/4",
            ],
            1,
        ),
        (&["weak", "net", "s.json", "--eps", "1/2"], 0),
        (&["weak", "restrict", "k.json", "--subset", "0,2"], 0),
        (
            &["hilbert", "--u", "1,0", "--v", "0,1", "--z", "3/5,4/5"],
            0,
        ),
        (&["lp", "--p", "3"], 0),
        (&["lp", "--p", "2"], 1),
        (&["disjoint", "disjoint.json", "--p", "3"], 0),
        (&["profile", "check", "h.json"], 0),
        (&["profile", "check", "h2.json"], 1),
        (
            &[
                "profile", "agree", "h.json", "hc.json", "--lo", "0", "--hi", "0",
            ],
            0,
        ),
        (
            &[
                "profile", "agree", "h.json", "hc.json", "--lo", "0", "--hi", "2",
            ],
            1,
        ),
        (&["rado", "adj", "0", "1"], 0),
        (&["rado", "metric", "--vertices", "0..64"], 0),
        (&["rado", "witness", "--u", "1,3", "--v", "0,2"], 0),
        (
            &["rado", "basis", "--code", "0:1,1:2", "--scan", "0..63"],
            0,
        ),
        (&["rado", "basis", "--code", "0:1", "--with", "0:2"], 0),
    ];
    for (args, want) in cases {
        let (code, json, err) = mslab(dir.path(), args);
        assert_eq!(code, *want, "{args:?}: {err}");
        assert_contract(code, &json);
    }
}

#[test]
fn lp_reports_exponents() {
    let dir = fixtures();
    let (_, json, _) = mslab(dir.path(), &["lp", "--p", "3"]);
    assert_eq!(json["witness"]["norm_w_minus_v"]["exponent"], "2/3");
    assert_eq!(json["witness"]["norm_w_prime_minus_v"]["exponent"], "1/3");
}

#[test]
fn rado_witness_value() {
    let dir = fixtures();
    let (_, json, _) = mslab(dir.path(), &["rado", "witness", "--u", "1,3", "--v", "0,2"]);
    assert_eq!(json["witness"]["w"], 26);
}

#[test]
fn malformed_input_exits_2() {
    let dir = fixtures();
    for args in [
        &["validate", "missing.json"][..],
        &[
            "urysohn", "ma", "s.json", "--x", "0", "--y", "1", "--f", "2", "--delta", "1/4",
        ],
        &["hilbert", "--u", "1,1", "--v", "0,1", "--z", "1,0"],
        &["rado", "adj", "3", "3"],
        &["lp", "--p", "x"],
        &["nonsense"],
    ] {
        let (code, json, err) = mslab(dir.path(), args);
        assert_eq!(code, 2, "{args:?}");
        assert!(json.is_null());
        assert!(!err.is_empty());
    }
}

#[test]
fn approximant_files_round_trip_through_the_cli() {
    let dir = fixtures();
    let (code, _, _) = mslab(
        dir.path(),
        &[
            "urysohn",
            "build",
            "seed.json",
            "--denom",
            "4",
            "--rounds",
            "2",
            "--out",
            "a.json",
        ],
    );
    assert_eq!(code, 0);
    let (code, json, _) = mslab(dir.path(), &["urysohn", "check", "a.json"]);
    assert_eq!(code, 0, "{json}");
    let (code, json, _) = mslab(
        dir.path(),
        &[
            "urysohn", "bf", "a.json", "--pairs", "0:0", "--eps", "1/4", "--z", "1",
        ],
    );
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["witness"]["pairs"][0], serde_json::json!([0, 0]));
    let (code, _, _) = mslab(
        dir.path(),
        &[
            "--budget",
            "10",
            "urysohn",
            "build",
            "seed.json",
            "--denom",
            "4",
            "--rounds",
            "2",
        ],
    );
    assert_eq!(code, 2);
}

#[test]
fn timing_is_opt_in() {
    let dir = fixtures();
    let (_, plain, _) = mslab(dir.path(), &["validate", "s.json"]);
    assert!(plain.get("elapsed_ms").is_none());
}
