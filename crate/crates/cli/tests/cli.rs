use std::path::Path;
use std::process::{Command, Output};

fn lecycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lecycle"))
        .args(args)
        .env_remove("LECYCLE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn milnor_numbers() {
    for (poly, mu) in [("x^3 + y^3", "4"), ("x^2 + y^2 + z^2", "1"), ("x^4 + y^5", "12")] {
        let out = lecycle(&["milnor", poly]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), mu);
    }
}

#[test]
fn analyze_crossing_lines() {
    let out = lecycle(&["analyze", "x^2*y^2 + w^2", "--vars", "x,y,w", "--seed", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["s"], 1);
    assert_eq!(v["lambda_s_generic"], 2);
    assert_eq!(v["verdict"], "NOT_EQUISINGULAR");
    let strict = v["betti_statements"].as_array().unwrap().iter().find(|s| s["kind"] == "STRICT").unwrap();
    assert_eq!((strict["degree"].as_u64(), strict["bound"].as_u64()), (Some(1), Some(2)));
    assert!(v.get("timings").is_none());
}

#[test]
fn analyze_isolated_and_equisingular() {
    let v = json(&lecycle(&["analyze", "x^2+y^2+w^2", "--json"]));
    assert_eq!((v["s"].as_u64(), v["milnor_number"].as_u64()), (Some(0), Some(1)));
    assert_eq!(v["betti_statements"][0]["kind"], "ISOLATED_MILNOR");
    let v = json(&lecycle(&["analyze", "x^3+y^2", "--vars", "t,x,y", "--json"]));
    assert_eq!(v["verdict"], "MILNOR_EQUISINGULAR");
    assert_eq!(v["betti_statements"][0]["text"], "EQUALITY: b~_1 = 2");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["analyze", "(y^2 - x^3)^2 + w^2", "--vars", "x,y,w", "--seed", "3", "--json"];
    assert_eq!(lecycle(&args).stdout, lecycle(&args).stdout);
    let timed = json(&lecycle(&["analyze", "x^3+y^2", "--vars", "t,x,y", "--json", "--timings"]));
    assert!(timed["timings"]["total_ms"].is_u64());
}

#[test]
fn le_numbers_with_frame() {
    let out = lecycle(&["le-numbers", "y^2 - x^3 - t^2*x^2", "--vars", "t,x,y", "--frame", "1,0,0;0,1,0;0,0,1", "--json"]);
    let v = json(&out);
    assert_eq!(v["record"]["mu0_f0"], 2);
    assert_eq!(v["record"]["gamma_s_dot_v"], 1);
    assert_eq!(v["record"]["lambda_s"], 1);
    assert_eq!(v["record"]["curve"]["tau"], 6);
}

#[test]
fn check_equisingular_verdicts() {
    let out = lecycle(&["check-equisingular", "x^3 + y^2", "--vars", "t,x,y", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("MILNOR_EQUISINGULAR"));
    let v = json(&lecycle(&["check-equisingular", "(y^2 - x^3)^2 + w^2", "--vars", "x,y,w", "--seed", "5", "--json"]));
    assert_eq!(v["verdict"], "NOT_EQUISINGULAR");
    assert_eq!(v["seed"], 5);
    assert!(v["evidence"].as_array().unwrap().len() >= 2);
}

#[test]
fn exit_codes() {
    let usage = lecycle(&["analyze", "x^2 +"]);
    assert_eq!(usage.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&usage.stderr).unwrap();
    assert_eq!(err["error"]["code"], "PARSE_ERROR");
    assert_eq!(lecycle(&["analyze", "x^2", "--frame", "1,2;2,4", "--vars", "x,y"]).status.code(), Some(3));
    assert_eq!(lecycle(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(lecycle(&["milnor", "x^2*y"]).status.code(), Some(1));
    let limited = lecycle(&["analyze", "(y^2 - x^3)^2 + w^2", "--vars", "x,y,w", "--max-steps", "1"]);
    assert_eq!(limited.status.code(), Some(2));
    assert_eq!(lecycle(&["--help"]).status.code(), Some(0));
}

#[test]
fn corpus_runs() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    std::fs::write(
        &good,
        "seed = 2\n[[entry]]\nid = \"a2\"\npoly = \"x^3 + y^2\"\nvars = [\"t\", \"x\", \"y\"]\n\
         expected = { lambda_s = 2 }\nprovenance = { lambda_s = \"derived: cusp\" }\n",
    )
    .unwrap();
    let cache = dir.path().join("cache");
    let out_dir = dir.path().join("out");
    let run = |file: &Path| {
        lecycle(&["corpus", "run", file.to_str().unwrap(), "--cache", cache.to_str().unwrap(), "--jobs", "2", "--out", out_dir.to_str().unwrap()])
    };
    let first = run(&good);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(json(&first)["outcomes"][0]["cached"], false);
    let second = run(&good);
    assert_eq!(json(&second)["outcomes"][0]["cached"], true);
    assert!(out_dir.join("a2.json").exists() && out_dir.join("summary.json").exists());

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, std::fs::read_to_string(&good).unwrap().replace("lambda_s = 2", "lambda_s = 5")).unwrap();
    let out = run(&bad);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["outcomes"][0]["mismatches"][0]["key"], "lambda_s");

    let empty = dir.path().join("empty.toml");
    std::fs::write(&empty, "seed = 0\n").unwrap();
    let out = run(&empty);
    assert_eq!((out.status.code(), json(&out)["total"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lecycle"))
        .args(["analyze", "x^3 + y^2", "--vars", "t,x,y"])
        .env("LECYCLE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
