use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn cyclotome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(args)
        .env_remove("CYCLOTOME_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = cyclotome(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn poly_csv() {
    let out = ok(&["poly", "15"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[8], "8,1");
    assert_eq!(ok(&["poly", "1"]), "0,-1\n1,1\n");
}

#[test]
fn psi_json() {
    assert_eq!(ok(&["psi", "3", "--terms", "6", "--out", "json"]).trim(), "[1,-1,0,1,-1,0]");
}

#[test]
fn heights_single() {
    assert_eq!(ok(&["heights", "105"]), "n,omega,phi,A,S,C,B\n105,3,48,2,35,1,\n");
    assert_eq!(ok(&["heights", "7"]).lines().nth(1), Some("7,1,6,1,7,1,"));
}

#[test]
fn scan_with_b_includes_105() {
    let out = ok(&["heights", "--scan", "3", "200", "--omega", "3", "--with-b"]);
    let row = out.lines().find(|l| l.starts_with("105,")).expect("105 present");
    assert!(!row.ends_with(','), "{row}");
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(1) == Some("3")));
}

#[test]
fn bn_reports_witness() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["bn", "15", "--out", "json"])).unwrap();
    assert_eq!(v[0]["B"], 3);
    assert_eq!(v[0]["witnessSubset"], serde_json::json!([3, 5]));
    assert_eq!(cyclotome(&["bn", "12"]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let args = ["heights", "--scan", "1", "600", "--squarefree", "--with-b"];
    let one = ok(&[&args[..], &["--jobs", "1"]].concat());
    let many = ok(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one, many);
}

#[test]
fn decomp_exit_codes() {
    let o = cyclotome(&["decomp", "105"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fstarHeight"], "1");
    assert_eq!(v["congruence"], true);
    let v: serde_json::Value = serde_json::from_str(&ok(&["decomp", "1155"])).unwrap();
    assert!(v["fstarHeight"].as_str().unwrap().parse::<u32>().unwrap() <= 2);
    assert_eq!(cyclotome(&["decomp", "12"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["poly", "abc"][..], &["poly", "0"], &["verify", "nonsense"], &["constants", "--eps3", "x"], &["heights"]] {
        assert_eq!(cyclotome(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn constants_report() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["constants", "--eps3", "3/4", "--prime-box", "7"])).unwrap();
    assert_eq!(v["dEmpirical"]["value"], "1/9");
    assert_eq!(v["dEmpirical"]["witness"], serde_json::json!([3, 5, 7]));
    assert_eq!(v["dUpper"], "15/32");
    let lo: f64 = v["Cvalue"]["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = v["Cvalue"]["hi"].as_str().unwrap().parse().unwrap();
    assert!(lo - 1e-3 <= 0.953 && 0.953 <= hi + 1e-3, "{lo} {hi}");
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 3);

    let v: serde_json::Value = serde_json::from_str(&ok(&["constants", "--eps3", "2/3", "--prime-box", "7"])).unwrap();
    let lo: f64 = v["Cvalue"]["lo"].as_str().unwrap().parse().unwrap();
    assert!((lo - 0.946).abs() < 1e-3);
}

#[test]
fn verify_clean_suites() {
    for suite in ["identities", "small-orders", "decomposition", "bloom", "kaplan"] {
        let v: serde_json::Value = serde_json::from_str(&ok(&["verify", suite, "--max", "500"])).unwrap();
        assert_eq!(v["suite"], suite);
        assert_eq!(v["violations"].as_array().unwrap().len(), 0);
        assert!(v["checksRun"].as_u64().unwrap() > 0);
    }
    let a = ok(&["verify", "all", "--max", "300", "--jobs", "1"]);
    let b = ok(&["verify", "all", "--max", "300"]);
    assert_eq!(a, b);
}

fn cached(cache: &Path, args: &[&str]) -> String {
    let mut full = vec!["--cache", cache.to_str().unwrap()];
    full.extend_from_slice(args);
    ok(&full)
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heights.jsonl");
    let args = ["heights", "--scan", "1", "400", "--with-b"];
    let plain = ok(&args);
    let cold = cached(&path, &args);
    let lines = fs::read_to_string(&path).unwrap().lines().count();
    let warm = cached(&path, &args);
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), lines, "warm run appended records");
    assert!(fs::read_to_string(&path).unwrap().lines().all(|l| l.contains("\"schemaVersion\":1")));

    let without_b = cached(&path, &["heights", "--scan", "1", "400"]);
    assert_eq!(without_b, ok(&["heights", "--scan", "1", "400"]));
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(["heights", "105"])
        .env("CYCLOTOME_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&path).unwrap().contains("\"n\":105"));
}

#[test]
fn torn_trailing_line_is_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torn.jsonl");
    let args = ["heights", "--scan", "1", "50"];
    let cold = cached(&path, &args);
    fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{\"schemaVersion\":1,\"n\":51,\"om").unwrap();
    let again = cached(&path, &["heights", "--scan", "1", "60"]);
    assert!(again.starts_with(&cold));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
    assert_eq!(text.lines().count(), 60);
}

#[test]
fn corrupt_middle_line_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    cached(&path, &["heights", "--scan", "1", "5"]);
    let text = fs::read_to_string(&path).unwrap().replacen("\"n\":2", "\"n\":", 1);
    fs::write(&path, text).unwrap();
    let o = cyclotome(&["--cache", path.to_str().unwrap(), "heights", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
