use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use brunlie::cache::{DiskCache, Lookup, FORMAT_VERSION};
use brunlie::core::dkho::SubspaceSpec;
use serde_json::Value;

/// Keeps runs without `--cache-dir` out of the user's cache.
fn scratch_cache() -> std::path::PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-cache")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brunlie"))
        .args(args)
        .env("BRUNLIE_CACHE_DIR", scratch_cache())
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_brunlie"))
        .args(args)
        .env("BRUNLIE_CACHE_DIR", scratch_cache())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({}): {}", e, String::from_utf8_lossy(&out.stdout)))
}

fn dims(v: &Value, key: &str) -> Vec<u64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .collect()
}

fn json_files(dir: &Path) -> usize {
    fs::read_dir(dir)
        .map(|it| {
            it.filter(|e| {
                e.as_ref()
                    .unwrap()
                    .path()
                    .extension()
                    .is_some_and(|x| x == "json")
            })
            .count()
        })
        .unwrap_or(0)
}

#[test]
fn basis_dimensions() {
    let out = run(&[
        "--no-cache",
        "basis",
        "--algebra",
        "brun4",
        "--max-degree",
        "4",
        "--dims-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dims(&json(&out), "degrees"), [0, 0, 2, 9]);
    let out = run(&[
        "--no-cache",
        "basis",
        "--algebra",
        "p5",
        "--max-degree",
        "3",
        "--dims-only",
    ]);
    assert_eq!(dims(&json(&out), "degrees"), [5, 4, 10]);
    let out = run(&["--no-cache", "basis", "--algebra", "dk22", "--degree", "1"]);
    let v = json(&out);
    assert_eq!(v["degrees"][0]["dim"], 5);
    assert_eq!(v["degrees"][0]["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn cache_hit_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        d,
        "basis",
        "--algebra",
        "brun4",
        "--degree",
        "4",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(json_files(dir.path()) > 0);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(second.stderr.is_empty());
}

#[test]
fn cache_lookup_states() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SubspaceSpec::Brun(4);
    let mut c = DiskCache::new(Some(dir.path().to_path_buf()));
    let reference = c.subspace("brun4", &spec, 3).unwrap();
    assert_eq!(c.last_lookup(), Some(Lookup::Miss));
    c.subspace("brun4", &spec, 3).unwrap();
    assert_eq!(c.last_lookup(), Some(Lookup::Memory));

    let mut fresh = DiskCache::new(Some(dir.path().to_path_buf()));
    assert_eq!(fresh.subspace("brun4", &spec, 3).unwrap(), reference);
    assert_eq!(fresh.last_lookup(), Some(Lookup::Hit));

    // a new format version never reads old entries
    let mut bumped = DiskCache::with_version(Some(dir.path().to_path_buf()), FORMAT_VERSION + 1);
    assert_eq!(bumped.subspace("brun4", &spec, 3).unwrap(), reference);
    assert_eq!(bumped.last_lookup(), Some(Lookup::Miss));
    assert!(bumped.warnings().is_empty());

    // corrupt entries are recomputed, then rewritten
    let path = fresh.path("brun4", &spec, 3).unwrap();
    fs::write(&path, "{ not json").unwrap();
    let mut c2 = DiskCache::new(Some(dir.path().to_path_buf()));
    assert_eq!(c2.subspace("brun4", &spec, 3).unwrap(), reference);
    assert_eq!(c2.last_lookup(), Some(Lookup::Corrupt));
    assert_eq!(c2.warnings().len(), 1);
    let mut c3 = DiskCache::new(Some(dir.path().to_path_buf()));
    c3.subspace("brun4", &spec, 3).unwrap();
    assert_eq!(c3.last_lookup(), Some(Lookup::Hit));
}

#[test]
fn unwritable_cache_only_warns() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let bad = blocker.join("cache");
    let out = run(&[
        "--cache-dir",
        bad.to_str().unwrap(),
        "basis",
        "--algebra",
        "t4",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degrees"][0]["dim"], 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["--no-cache", "basis", "--algebra", "t9", "--degree", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--no-cache", "basis", "--algebra", "t4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["--no-cache", "basis", "--algebra", "t4", "--degree", "12"])
            .status
            .code(),
        Some(2)
    );
    let ok = run(&[
        "--no-cache",
        "--guard",
        "12",
        "basis",
        "--algebra",
        "t3",
        "--degree",
        "9",
        "--dims-only",
    ]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn solve_systems() {
    let out = run(&[
        "--no-cache",
        "solve",
        "--system",
        "grt1",
        "--max-weight",
        "7",
    ]);
    assert_eq!(dims(&json(&out), "weights"), [0, 0, 1, 0, 1, 0, 1]);
    let out = run(&[
        "--no-cache",
        "solve",
        "--system",
        "dmr0",
        "--max-weight",
        "5",
    ]);
    assert_eq!(dims(&json(&out), "weights"), [1, 0, 1]);
    let out = run(&[
        "--no-cache",
        "solve",
        "--system",
        "pentk",
        "--flavor",
        "dmr",
        "--k",
        "1",
        "--weight",
        "3",
    ]);
    let v = json(&out);
    assert_eq!(v["weights"][0]["dim"], 1);
    assert_eq!(v["weights"][0]["equal_to_dmr0"], true);
    let out = run(&[
        "--no-cache",
        "solve",
        "--system",
        "krv",
        "--weight",
        "3",
        "--convention",
        "without",
    ]);
    assert_eq!(json(&out)["weights"][0]["dim"], 0);
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "--theorem", "div-mu", "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["theorem"], "div-mu");
    let out = run(&[
        "--no-cache",
        "verify",
        "--theorem",
        "kernel",
        "--samples",
        "5",
        "--max-degree",
        "4",
        "--seed",
        "9",
    ]);
    assert_eq!(json(&out)["pass"], true);
    assert_eq!(
        run(&["verify", "--theorem", "nonsense"]).status.code(),
        Some(2)
    );
}

#[test]
fn pent_of_a_grt_element_vanishes() {
    let s3 = r#"{"alphabet":["x0","x1"],"coords":[{"coeff":"1","lyndon":["x0","x0","x1"]},{"coeff":"-1","lyndon":["x0","x1","x1"]}]}"#;
    for flavor in ["grt", "dmr", "krv"] {
        let out = run_stdin(
            &[
                "--no-cache",
                "pent",
                "--flavor",
                flavor,
                "--k",
                "1",
                "--input",
                "-",
            ],
            s3,
        );
        assert_eq!(out.status.code(), Some(0), "{}", flavor);
        assert_eq!(json(&out)["value"], "0");
    }
    let xy = r#"{"alphabet":["x0","x1"],"coords":[{"coeff":"1","lyndon":["x0","x0","x1"]}]}"#;
    let out = run_stdin(
        &[
            "--no-cache",
            "pent",
            "--flavor",
            "grt",
            "--k",
            "1",
            "--input",
            "-",
        ],
        xy,
    );
    assert_ne!(json(&out)["value"], "0");
    assert_eq!(
        run_stdin(&["pent", "--input", "-"], "[1,2").status.code(),
        Some(2)
    );
}

#[test]
fn braid_commands() {
    let phi = "s1 s1 s2 s2 S1 S1 S2 S2";
    let out = run(&["braid", "is-brunnian", "--n", "3", "--word", phi]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["brunnian"], true);

    let out = run(&["--no-cache", "braid", "pent-triviality", "--phi", phi]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["leading_degree"], 4);
    assert_eq!(v["report"]["in_brun"], true);

    let out = run(&["--no-cache", "braid", "pent-triviality", "--phi", "s1 s1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["report"].is_null());

    let dir = tempfile::tempdir().unwrap();
    let pent = run(&["braid", "pent", "--phi", "s1 s1"]);
    let file = dir.path().join("p.json");
    fs::write(&file, &pent.stdout).unwrap();
    let out = run(&["braid", "is-brunnian", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["brunnian"], false);
    let trivial: Vec<bool> = v["deletions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["trivial"].as_bool().unwrap())
        .collect();
    assert_eq!(trivial, [true, true, false, false]);
}
