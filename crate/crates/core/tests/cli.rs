use std::fs;
use std::process::{Command, Stdio};

use ellipta::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ellipta").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn j8_in_every_format() {
    let (code, out, _) = call(&["compute", "j", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 + 408x + 912x^2 + 64x^3");
    let (_, out, _) = call(&["compute", "j", "--n", "8", "--route", "operator,recurrence,viennot,series", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "408", "912", "64"]));
    let (_, out, _) = call(&["compute", "j", "--n", "8", "--format", "csv"]);
    assert!(out.starts_with("exponent,value\n0,1\n1,408\n"));
}

#[test]
fn triangles_print_rows() {
    let (code, out, _) = call(&["compute", "s", "--n", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,i,j,value\n4,0,0,1\n4,0,1,14\n4,0,2,1\n4,1,0,4\n4,1,1,4\n");
    let (_, out, _) = call(&["compute", "gamma", "--max-n", "5"]);
    assert!(out.contains("5: 1 + 12q + 44p + 16p^2"), "{out}");
    let (_, out, _) = call(&["compute", "t", "--max-n", "7"]);
    assert!(out.contains("7: 1 + 33y + 102x + 78xy + 57x^2 + x^3\n"), "{out}");
}

#[test]
fn decompose_j8() {
    let (code, out, _) = call(&["compute", "decompose", "--n", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("gamma(a) = [1, 342] (center 3)"), "{out}");
    assert!(out.contains("gamma(b) = [63, 441] (center 2)"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["compute", "p", "--n", "11", "--route", "perms"]).0, 2);
    assert_eq!(call(&["verify", "nonsense"]).0, 2);
    assert_eq!(call(&["compute", "j", "--n", "4", "--route", "bogus"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["compute", "decompose", "--poly", "1+y"]).0, 2);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("compute"));
    assert_eq!(call(&["--version"]).0, 0);
}

#[test]
fn large_cap_warns() {
    let (code, _, err) = call(&["compute", "p", "--n", "3", "--route", "perms", "--cap", "11"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["verify", "closure", "--seed", "7", "--instances", "5"];
    let strip = |s: String| {
        s.lines()
            .map(|l| l.rsplit_once(": ").map_or(l, |(head, _)| head).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(strip(a), strip(b));
    let (_, a, _) = call(&["compute", "closure", "--seed", "3", "--max-n", "5"]);
    let (_, b, _) = call(&["compute", "closure", "--seed", "3", "--max-n", "5"]);
    assert_eq!(a, b);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, _) = call(&["cache", "write", "--cache-dir", d, "--max-n", "10"]);
    assert_eq!(code, 0);
    let before = fs::read(dir.path().join("s.jsonl")).unwrap();
    let (code, out, err) = call(&["cache", "read", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(out.contains("s: rows 0..=10 valid"), "{out}");
    assert!(err.is_empty());
    assert_eq!(fs::read(dir.path().join("s.jsonl")).unwrap(), before);

    // Cached and fresh computations agree byte for byte.
    let (_, cached, _) = call(&["compute", "s", "--max-n", "10", "--cache-dir", d, "--format", "csv"]);
    let (_, fresh, _) = call(&["compute", "s", "--max-n", "10", "--format", "csv"]);
    assert_eq!(cached, fresh);

    let text = String::from_utf8(before.clone()).unwrap();
    fs::write(dir.path().join("s.jsonl"), text.replacen("\"coeff\":\"14\"", "\"coeff\":\"15\"", 1)).unwrap();
    let (code, _, err) = call(&["compute", "s", "--n", "4", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
    let (_, out, err) = call(&["cache", "read", "--cache-dir", d, "--target", "s"]);
    assert!(err.is_empty(), "{err}");
    assert!(out.contains("valid"));

    fs::write(dir.path().join("gamma.jsonl"), "not json\n").unwrap();
    let (code, out, err) = call(&["cache", "read", "--cache-dir", d, "--target", "gamma", "--max-n", "10"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    assert!(out.contains("gamma: rebuilt"));
    let (_, gamma_now, _) = call(&["compute", "gamma", "--max-n", "10", "--cache-dir", d, "--format", "csv"]);
    let (_, gamma_fresh, _) = call(&["compute", "gamma", "--max-n", "10", "--format", "csv"]);
    assert_eq!(gamma_now, gamma_fresh);

    let (code, out, _) = call(&["cache", "clear", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(out.contains("removed 3 file(s)"), "{out}");
    let (code, out, _) = call(&["cache", "clear", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(out.contains("removed 0 file(s)"));
}

#[test]
fn cache_without_directory_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_ellipta"))
        .args(["cache", "read"])
        .env_remove("ELLIPTA_CACHE_DIR")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flag_wins_over_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_ellipta");
    let status = Command::new(bin)
        .args(["cache", "write", "--target", "t", "--max-n", "6"])
        .env("ELLIPTA_CACHE_DIR", env_dir.path())
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(env_dir.path().join("t.jsonl").exists());
    let status = Command::new(bin)
        .args(["cache", "write", "--target", "t", "--max-n", "6", "--cache-dir"])
        .arg(flag_dir.path())
        .env("ELLIPTA_CACHE_DIR", env_dir.path())
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(flag_dir.path().join("t.jsonl").exists());
    let status = Command::new(bin)
        .args(["cache", "clear", "--cache-dir"])
        .arg(flag_dir.path())
        .env("ELLIPTA_CACHE_DIR", env_dir.path())
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(!flag_dir.path().join("t.jsonl").exists());
    assert!(env_dir.path().join("t.jsonl").exists());
}

#[test]
fn derive_reads_a_grammar_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sd.txt");
    fs::write(&path, "x -> yz\ny -> xz\nz -> xy\n").unwrap();
    let (code, out, err) = call(&["compute", "derive", "--grammar", path.to_str().unwrap(), "--n", "3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "yz^3 + y^3z + 4x^2yz");
}

#[test]
fn verify_routes_passes() {
    let (code, out, _) = call(&["verify", "routes", "--max-n", "12"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS routes"));
}
