use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pathhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_square_with_hole() {
    let v = json(&pathhom(&["compute", &fixture("fig1_left.edges"), "--max-dim", "2"]));
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 1, 0]));
    let v = json(&pathhom(&["compute", &fixture("fig1_right.edges")]));
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 0]));
}

#[test]
fn motif_dyad_up_five() {
    let v = json(&pathhom(&["motif", "dyad_up", "5"]));
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 4]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn integer_ring_reports_torsion() {
    let v = json(&pathhom(&["motif", "torsion_cycle", "3", "--ring", "z"]));
    assert_eq!(v["torsion"]["1"], serde_json::json!([3]));
}

#[test]
fn missing_input_exits_two() {
    let out = pathhom(&["compute", "nonexistent.edges"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(pathhom(&["compute"]).status.code(), Some(1));
    assert_eq!(pathhom(&["census", "--vertices", "4", "--filter", "beta"]).status.code(), Some(1));
    assert_eq!(pathhom(&["temporal", &fixture("contacts_small.txt"), "--window", "hourly"]).status.code(), Some(1));
    assert_eq!(pathhom(&["sample", "--n", "4", "--q", "2"]).status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["sample", "--n", "4", "--q", "0.3", "--trials", "700", "--seed", "1", "--max-dim", "3", "--csv"];
    let a = pathhom(&args);
    let b = pathhom(&[&args[..], &["--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = pathhom(&["census", "--family", "dag", "--vertices", "4", "--filter", "b1>0", "--csv"]);
    let d = pathhom(&["census", "--family", "dag", "--vertices", "4", "--filter", "b1>0", "--csv"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn help_lists_documented_flags() {
    let flags: &[(&str, &[&str])] = &[
        ("compute", &["--dump", "--ring", "--max-dim", "--reps", "--threads", "--format", "--output"]),
        ("motif", &["--q", "--external", "--seed"]),
        ("census", &["--family", "--vertices", "--filter", "--histogram", "--csv"]),
        ("sample", &["--n", "--q", "--trials", "--seed"]),
        ("temporal", &["--window", "--origin", "--reps-out", "--reps"]),
    ];
    for (cmd, want) in flags {
        let out = pathhom(&[cmd, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        for f in *want {
            assert!(text.contains(f), "{cmd} --help lacks {f}");
        }
    }
}

#[test]
fn census_csv_with_histogram_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("hist.json");
    let out = pathhom(&[
        "census", "--family", "digraph", "--vertices", "4", "--max-dim", "3", "--filter", "b2>0", "--csv",
        "--histogram", hist.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 7);
    let h: Value = serde_json::from_str(&std::fs::read_to_string(hist).unwrap()).unwrap();
    assert_eq!(h["total_classes"], 218);
}

#[test]
fn temporal_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("series.csv");
    let out = pathhom(&[
        "temporal", &fixture("contacts_small.txt"), "--window", "day", "--reps", "--csv",
        "--output", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("index,start,end,contacts,vertices,arcs,b0,b1,b2\n"));
    assert!(csv.contains("\n0,0,86400,6,4,6,0,0,1\n"));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(csv_path.with_extension("reps.json")).unwrap()).unwrap();
    assert_eq!(side[0]["index"], 0);
}

#[test]
fn dump_lists_allowed_paths() {
    let v = json(&pathhom(&["compute", &fixture("fig1_left.edges"), "--dump", "--max-dim", "1"]));
    let dump = v["dump"].as_array().unwrap();
    assert_eq!(dump[1]["allowed"].as_array().unwrap().len(), 4);
    assert_eq!(dump[1]["omega_dim"], 4);
}
