use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kselberg"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Value of `column` in the first data row of a single-table CSV.
fn csv_field(csv: &str, column: &str) -> String {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == column).unwrap_or_else(|| panic!("no column {column} in {header:?}"));
    row[i].to_string()
}

#[test]
fn enumerate_height_one_has_witnesses_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["enumerate", "--height", "1", "--format", "csv"]);
    assert!(first.status.success(), "{}", stderr(&first));
    let out = stdout(&first);
    assert!(csv_field(&out, "parabolic").parse::<i64>().unwrap() >= 1);
    let elliptic: i64 = csv_field(&out, "elliptic_cuspidal").parse::<i64>().unwrap() + csv_field(&out, "elliptic_noncuspidal").parse::<i64>().unwrap();
    assert!(elliptic >= 1);
    assert!(stderr(&first).contains("cache written"));
    let second = run(dir.path(), &["enumerate", "--height", "1", "--format", "csv"]);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn corrupted_cache_header_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["enumerate", "--height", "1"]).status.success());
    let cache = dir.path().join(".kselberg-cache/gauss-h1.elements");
    let text = std::fs::read_to_string(&cache).unwrap();
    std::fs::write(&cache, text.replacen("version=1", "version=9", 1)).unwrap();
    let o = run(dir.path(), &["enumerate", "--height", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("version"), "{}", stderr(&o));
}

#[test]
fn lsum_dual_path_and_divergence() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["lsum", "--u", "1/2", "--v", "0", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let d: f64 = csv_field(&stdout(&o), "discrepancy").parse().unwrap();
    assert!(d <= 5e-3);
    let o = run(dir.path(), &["lsum", "--u", "0", "--v", "0", "--x-max", "1e4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("diverges") && out.contains("kappa"));
    let o = run(dir.path(), &["lsum", "--u", "half", "--v", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["enumerate", "--height", "0"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["enumerate", "--group", "sl2z"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["enumerate", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["trace", "--height", "2", "--trs0", "0"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn identity_holds_for_both_groups() {
    let dir = tempfile::tempdir().unwrap();
    for (group, rep) in [("picard", "trivial"), ("picard", "sign"), ("eisenstein", "trivial"), ("eisenstein", "cubic")] {
        let o = run(dir.path(), &["identity", "--group", group, "--rep", rep, "--height", "4", "--format", "csv"]);
        assert!(o.status.success(), "{group} {rep}: {}", stderr(&o));
        assert_eq!(csv_field(&stdout(&o), "residual"), "0/1");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.conf"), "group = eisenstein\nheight = 2\nformat = csv\n").unwrap();
    let o = run(dir.path(), &["enumerate", "--config", "run.conf"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(csv_field(&stdout(&o), "group"), "eisenstein");
    assert_eq!(csv_field(&stdout(&o), "height"), "2");
    let o = run(dir.path(), &["enumerate", "--config", "run.conf", "--height", "1"]);
    assert_eq!(csv_field(&stdout(&o), "height"), "1");
    std::fs::write(dir.path().join("bad.conf"), "colour = blue\n").unwrap();
    assert_eq!(run(dir.path(), &["enumerate", "--config", "bad.conf"]).status.code(), Some(1));
}

#[test]
fn trace_json_and_csv_share_the_payload() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["trace", "--height", "8", "--norm-bound", "20"];
    let csv = run(dir.path(), &[&base[..], &["--format", "csv"]].concat());
    assert!(csv.status.success(), "{}", stderr(&csv));
    let json = run(dir.path(), &[&base[..], &["--format", "json"]].concat());
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let csv = stdout(&csv);
    // the cancellation table in both encodings
    let block: String = csv.split("# cancellation\n").nth(1).unwrap().split("\n\n").next().unwrap().to_string();
    let row = &v["tables"]["cancellation"][0];
    for col in ["A", "logA_coefficient", "g0_k_infinity", "difference"] {
        let c: f64 = csv_field(&block, col).parse().unwrap();
        assert_eq!(row[col].as_f64().unwrap(), c, "{col}");
    }
    let coef = row["logA_coefficient"].as_f64().unwrap();
    let expected = row["g0_k_infinity"].as_f64().unwrap();
    assert!((coef - expected).abs() < 1e-9);
    // bit-identical rerun
    let again = run(dir.path(), &[&base[..], &["--format", "csv"]].concat());
    assert_eq!(stdout(&again), csv);
}

#[test]
fn zeta_writes_divisor_csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["zeta", "--group", "eisenstein", "--height", "8", "--depth", "6", "--divisor", "div.csv", "--out", "report.json", "--format", "json"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let div = std::fs::read_to_string(dir.path().join("div.csv")).unwrap();
    let mut lines = div.lines();
    assert_eq!(lines.next().unwrap(), "location_re,location_im,residue_num,residue_den,source");
    assert_eq!(lines.count(), 7);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["tables"]["meromorphy"][0]["computed"], 3);
    assert_eq!(v["tables"]["meromorphy"][0]["stated"], 6);
    assert!(stdout(&o).is_empty());
}

#[test]
fn eisenstein_check_needs_a_singular_vector() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["eisenstein-check", "--series-height", "20", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let block = stdout(&o);
    let block = block.split("# check\n").nth(1).unwrap();
    let r: f64 = csv_field(block, "residual").parse().unwrap();
    assert!(r <= 1e-3);
    let o = run(dir.path(), &["eisenstein-check", "--rep", "sign"]);
    assert_eq!(o.status.code(), Some(2));
}
