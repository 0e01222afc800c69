//! End-to-end tests of the binary: exit codes, golden CSV output, and
//! schedule validation.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pulseforge"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pulseforge_test_{name}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const VALID_SCHEDULE: &str = r#"{
  "version": 1,
  "n_qubits": 2,
  "instructions": [
    {"kind": "play_sqp", "channel": {"type": "drive", "qubits": [0]},
     "start": 0, "duration": 160, "amplitude": 0.2, "angle": 0.0,
     "envelope": {"kind": "gaussian", "sigma": 40.0}},
    {"kind": "play_cr", "channel": {"type": "control", "qubits": [0, 1]},
     "start": 160, "duration": 512, "amplitude": 0.3, "angle": 1.0,
     "envelope": {"kind": "gaussian_square", "sigma": 8.0, "rise_fall": 16.0}}
  ],
  "metadata": {}
}"#;

#[test]
fn validate_accepts_a_valid_schedule() {
    let dir = tmp_dir("validate_ok");
    let path = dir.join("ok.json");
    std::fs::write(&path, VALID_SCHEDULE).unwrap();
    let out = bin()
        .args(["validate", "--schedule"])
        .arg(&path)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn validate_rejects_off_grid_duration() {
    let dir = tmp_dir("validate_grid");
    let path = dir.join("grid.json");
    std::fs::write(&path, VALID_SCHEDULE.replace("\"duration\": 512", "\"duration\": 270")).unwrap();
    let out = bin()
        .args(["validate", "--schedule"])
        .arg(&path)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("duration-granularity"), "{stdout}");
}

#[test]
fn validate_cites_the_amplitude_bound_under_guadalupe() {
    let dir = tmp_dir("validate_amp");
    let path = dir.join("amp.json");
    std::fs::write(
        &path,
        VALID_SCHEDULE.replace("\"amplitude\": 0.3", "\"amplitude\": 0.05"),
    )
    .unwrap();
    let out = bin()
        .args(["validate", "--backend", "ibmq_guadalupe", "--schedule"])
        .arg(&path)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("amplitude-out-of-range"), "{stdout}");
    assert!(stdout.contains("0.1") && stdout.contains("0.4"), "{stdout}");
}

#[test]
fn missing_hamiltonian_file_names_the_path() {
    let dir = tmp_dir("missing");
    let out = bin()
        .args(["vqe", "--hamiltonian", "/no/such/file.txt", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("/no/such/file.txt"), "{stderr}");
}

#[test]
fn usage_errors_exit_with_code_two() {
    let out = bin().args(["report"]).output().unwrap(); // missing --template
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bloch_with_zero_samples_emits_a_bare_header() {
    let dir = tmp_dir("bloch_zero");
    let out = bin()
        .args(["bloch", "--sweep", "angle", "--samples", "0", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("bloch_angle.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.last().copied(), Some("value,x,y,z"));
}

#[test]
fn expr_csv_matches_the_golden_file() {
    let dir = tmp_dir("golden");
    let out = bin()
        .args([
            "expr",
            "--template",
            "RZ",
            "--qubits",
            "1",
            "--samples",
            "200",
            "--seed",
            "42",
            "--format",
            "csv",
            "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("expr.csv")).unwrap();
    // fixed column order and deterministic values; the RZ histogram is a
    // delta, so the KL score is exactly ln 50
    let expected = "\
# tool_version=0.1.0
# seed=42
# device_sha256=ef1b39e12317e6576f78b524aadf9bc17dbcae527db13f78940f63226a196432
template,n_qubits,n_layers,expr_kl,samples,seed
RZ,1,1,3.912023005428145,200,42
";
    assert_eq!(csv, expected);
}

#[test]
fn report_header_has_the_documented_columns() {
    let dir = tmp_dir("header");
    let out = bin()
        .args([
            "report", "--template", "2", "--qubits", "2", "--samples", "100",
            "--ent-samples", "20", "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    assert!(csv.contains(
        "template,n_qubits,n_layers,expr_kl,ent_mean_q,ent_max_q,epd,n_params,n_cr,duration_dt,samples,seed"
    ));
    assert!(csv.contains("HE_fixCR,2,1,"));
}

#[test]
fn report_emits_one_row_per_cell() {
    let dir = tmp_dir("cells");
    let out = bin()
        .args([
            "report", "--template", "1,2,3,4,5,6", "--qubits", "2..4", "--layers", "1",
            "--samples", "40", "--ent-samples", "10", "--seed", "5", "--format", "csv", "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    let data_rows = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("template"))
        .count();
    assert_eq!(data_rows, 18);
}

#[test]
fn svg_output_is_self_contained() {
    let dir = tmp_dir("svg");
    let out = bin()
        .args([
            "report", "--template", "RZ", "--qubits", "1", "--samples", "100",
            "--format", "svg", "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let svg = std::fs::read_to_string(dir.join("hist_RZ_N1_L1.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
    assert!(svg.trim_end().ends_with("</svg>"));
}
