use std::process::{Command, Output};

use analog_bench::em::{solve_sparams, EmWave, Slab};
use analog_bench::io::table::read_csv;
use analog_bench::io::touchstone::{write_touchstone, DataFormat, FrequencyUnit, TouchstoneDocument};
use analog_bench::nrw::SParamRow;
use analog_bench::sweep::linspace;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_analog-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_vacuum_s2p(dir: &std::path::Path, format: DataFormat) -> std::path::PathBuf {
    let slab = Slab::vacuum(5e-3);
    let rows: Vec<SParamRow> = linspace(1e9, 10e9, 10)
        .iter()
        .map(|&f| SParamRow::new(f, solve_sparams(&slab, &EmWave::new(f).unwrap()).unwrap()))
        .collect();
    let path = dir.join("vacuum.s2p");
    let doc = TouchstoneDocument::from_sparams(&rows, FrequencyUnit::MHz, format);
    std::fs::write(&path, write_touchstone(&doc)).unwrap();
    path
}

#[test]
fn qm_barrier_conserves_flux() {
    let out = run(&[
        "qm-barrier",
        "--vb-ev",
        "0.3",
        "--width-mm",
        "2e-6",
        "--energy-ev",
        "0.1",
    ]);
    assert!(out.status.success());
    let (cols, rows) = read_csv(&stdout(&out)).unwrap();
    let r = cols.iter().position(|c| c == "r_sq").unwrap();
    let t = cols.iter().position(|c| c == "t_sq").unwrap();
    assert!((rows[0][r] + rows[0][t] - 1.0).abs() < 1e-12);
}

#[test]
fn nrw_recovers_vacuum_from_file() {
    let dir = tempfile::tempdir().unwrap();
    for format in [DataFormat::RI, DataFormat::MA, DataFormat::DB] {
        let path = write_vacuum_s2p(dir.path(), format);
        let out = run(&["nrw", "--input", path.to_str().unwrap(), "--thickness-mm", "5"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let (cols, rows) = read_csv(&stdout(&out)).unwrap();
        assert_eq!(rows.len(), 10);
        let col = |name: &str| cols.iter().position(|c| c == name).unwrap();
        for row in &rows {
            assert!((row[col("n_re")] - 1.0).abs() < 1e-9);
            assert!(row[col("n_im")].abs() < 1e-9);
            assert!((row[col("z_re")] - 1.0).abs() < 1e-9);
            assert!(row[col("z_im")].abs() < 1e-9);
        }
    }
}

#[test]
fn map_from_touchstone() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_vacuum_s2p(dir.path(), DataFormat::RI);
    let out = run(&[
        "map",
        "--source",
        "s2p",
        "--input",
        path.to_str().unwrap(),
        "--thickness-mm",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (cols, rows) = read_csv(&stdout(&out)).unwrap();
    let t = cols.iter().position(|c| c == "t_qm").unwrap();
    assert!(rows.iter().all(|r| (r[t] - 1.0).abs() < 1e-9));
}

#[test]
fn json_envelope_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = run(&["table1", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["columns"][0], "b_m");
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert!(v["metadata"]["version"].is_string());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["qm-barrier", "--vb-ev", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let out = run(&["map", "--source", "brown", "--r-mm", "0.04"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--a-mm"));
}

#[test]
fn computation_errors_exit_1() {
    let out = run(&[
        "wire-array",
        "--r-mm",
        "2",
        "--a-mm",
        "10",
        "--b-mm",
        "5",
        "--rows",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: wire_medium:"));
    let out = run(&["qm-barrier", "--vb-ev", "1", "--width-mm", "1e-6", "--energy-ev", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["nrw", "--input", "/nonexistent/file.s2p", "--thickness-mm", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"sweep":{"kind":"lattice"},"extra":1}"#).unwrap();
    let out = run(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config:"));
}
