use std::fs;
use std::path::Path;

use qwork::run;
use serde_json::Value;

fn qwork(args: &[&str]) -> i32 {
    run(std::iter::once("qwork").chain(args.iter().copied()))
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn sidecar(csv: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(csv.with_extension("json")).unwrap()).unwrap()
}

fn declared_rows(meta: &Value) -> usize {
    meta["axes"].as_object().unwrap().values().map(|v| v.as_u64().unwrap() as usize).product()
}

#[test]
fn single_sweep_table_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("single.csv");
    let code = qwork(&["single", "--channel", "bf", "--bloch", "0.6,0.5,0.4", "--q", "0,1,101", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["q", "W", "WI", "WC", "C", "threshold"]);
    assert_eq!(rows.len(), 101);
    for row in &rows {
        let v: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[2] - v[3]).abs() <= 1e-10);
        assert!((v[5] - 0.4720113960345209).abs() < 1e-15);
    }
    let meta = sidecar(&out);
    assert_eq!(meta["command"], "single");
    assert_eq!(meta["config"]["basis"], "computational");
    assert_eq!(meta["config"]["q"]["count"], 101);
    assert_eq!(meta["rows"], 101);
    assert_eq!(declared_rows(&meta), 101);
}

#[test]
fn defaults_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let code = qwork(&["grid", "--channel", "pf", "--q", "0,1,3", "--axis", "0.05,0.5,3", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let meta = sidecar(&out);
    let config = meta["config"].as_object().unwrap();
    assert_eq!(config["hamiltonian"], "x-field");
    assert_eq!(config["family"], "symmetric-pair");
    assert_eq!(config["p"], 0.5);
    let (_, rows) = read_csv(&out);
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0][2], "NaN");
}

#[test]
fn census_is_byte_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = dir.path().join("census.csv");
        let code = qwork(&["census", "--channel", "ad", "--count", "20", "--seed", "7", "--q", "0,1,21", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    for name in ["census.csv", "census.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    let other = a.path().join("other.csv");
    qwork(&["census", "--channel", "ad", "--count", "20", "--seed", "8", "--q", "0,1,21", "--out", other.to_str().unwrap()]);
    assert_ne!(read_csv(&other).1, read_csv(&a.path().join("census.csv")).1);
}

#[test]
fn every_command_matches_its_declared_shape() {
    let dir = tempfile::tempdir().unwrap();
    let runs: &[&[&str]] = &[
        &["single", "--channel", "ad", "--bloch", "0.1,0.3,-0.4", "--q", "0,1,11"],
        &["single", "--channel", "pf", "--bloch", "0.3,0.2,-0.5", "--basis", "x", "--q", "0,1,11"],
        &["bds", "--channel", "bf", "--bds", "0.1,0.5,0.3", "--q", "0,1,11"],
        &["bds", "--channel", "ad", "--bds", "0.5,0.3,0.1", "--q", "0,1,11"],
        &["grid", "--channel", "ad", "--family", "classical-quantum", "--axis", "0,0.3,4", "--q", "0,1,5"],
        &["scaling", "--n", "2..3", "--q", "0,1,11"],
        &["census", "--channel", "dc", "--count", "5", "--seed", "1", "--q", "0,1,11"],
        &["lindblad-check", "--channel", "ad", "--t", "0,1,5"],
        &["entangled", "--theta", "0,3,4", "--q", "0,1,5"],
        &["appendix-d", "--a", "0.1,0.4", "--q", "0,1,6"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = dir.path().join(format!("run{i}.csv"));
        let mut full = args.to_vec();
        full.extend(["--out", out.to_str().unwrap()]);
        assert_eq!(qwork(&full), 0, "{args:?}");
        let (header, rows) = read_csv(&out);
        let meta = sidecar(&out);
        assert_eq!(rows.len(), declared_rows(&meta), "{args:?}");
        assert_eq!(meta["rows"].as_u64().unwrap() as usize, rows.len());
        assert_eq!(meta["columns"].as_array().unwrap().len(), header.len());
        if let (Some(w), Some(wi), Some(wc)) = (
            header.iter().position(|h| h == "W"),
            header.iter().position(|h| h == "WI"),
            header.iter().position(|h| h == "WC"),
        ) {
            for row in &rows {
                let f = |j: usize| row[j].parse::<f64>().unwrap();
                assert!((f(w) - f(wi) - f(wc)).abs() <= 1e-10, "{args:?}");
            }
        }
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested");
    std::env::set_var(qwork::OUT_DIR_ENV, &target);
    let code = qwork(&["lindblad-check", "--channel", "bf", "--gamma", "0.5", "--t", "0,0.6931471805599453,3"]);
    std::env::remove_var(qwork::OUT_DIR_ENV);
    assert_eq!(code, 0);
    assert!(target.join("lindblad_bf.csv").exists());
    assert!(target.join("lindblad_bf.json").exists());
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(qwork(&[]), 2);
    assert_eq!(qwork(&["nonsense"]), 2);
    assert_eq!(qwork(&["single", "--bloch", "0.1,0.1,0.1"]), 2);
    assert_eq!(qwork(&["single", "--channel", "zz", "--bloch", "0.1,0.1,0.1"]), 2);
    assert_eq!(qwork(&["single", "--channel", "bf", "--bloch", "0.1,0.1"]), 2);
    assert_eq!(qwork(&["single", "--channel", "bf", "--bloch", "0.1,0.1,0.1", "--q", "0,1"]), 2);
    assert_eq!(qwork(&["scaling", "--n", "5..2"]), 2);
}

#[test]
fn validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = out.to_str().unwrap();
    assert_eq!(qwork(&["bds", "--channel", "bf", "--bds", "0.6,0.6,0.6", "--out", o]), 1);
    assert_eq!(qwork(&["single", "--channel", "bf", "--bloch", "0.9,0.5,0.4", "--out", o]), 1);
    assert_eq!(qwork(&["single", "--channel", "bf", "--bloch", "0.1,0.1,0.1", "--q", "0,1,1", "--out", o]), 1);
    assert_eq!(qwork(&["single", "--channel", "bf", "--bloch", "0.1,0.1,0.1", "--q", "0,2,3", "--out", o]), 1);
    assert_eq!(qwork(&["lindblad-check", "--channel", "pf", "--out", o]), 1);
    assert_eq!(qwork(&["scaling", "--n", "2..9", "--q", "0,1,3", "--out", o]), 1);
    assert!(!out.exists());
}
