use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn lemma2_prints_bound() {
    let o = bsn(&["lemma2", "--p", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1.414213562");
    let o = bsn(&["lemma2", "--p", "inf"]);
    assert_eq!(stdout(&o).trim(), "1.000000000");
}

#[test]
fn bad_norm_is_usage_error() {
    let o = bsn(&["lemma2", "--p", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let o = bsn(&["solve", "definitely-missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn roundtrip_on_cube() {
    let o = bsn(&["verify", "roundtrip", &fixture("q3.graph.json"), &fixture("q3.drawing.json"), "--p", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6 cycles, 6 pass");
}

#[test]
fn reduce_witness_extract_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "q3.instance.json");
    let o = bsn(&["reduce", &fixture("q3.graph.json"), &fixture("q3.drawing.json"), "--p", "1", "-o", &inst]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let wit = path(dir.path(), "witness.json");
    let o = bsn(&["witness", &inst, "--cycle", "a,b,c,d,h,g,f,e", "-o", &wit]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bsn(&["extract", &inst, &wit]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("cycle "));

    let th = path(dir.path(), "threshold.json");
    let o = bsn(&["solve", &inst, "--method", "threshold", "-o", &th]);
    assert!(o.status.success());
    let o = bsn(&["extract", &inst, &th]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("failure: bottleneck ≥ 2^(1/p)"));
}

#[test]
fn gaps_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "q3.instance.json");
    assert!(bsn(&["reduce", &fixture("q3.graph.json"), &fixture("q3.drawing.json"), "--p", "2", "-o", &inst])
        .status
        .success());
    let o = bsn(&["verify", "gaps", &inst]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(" pass:")).count(), 4);

    let o = bsn(&["--json", "verify", "gaps", &inst]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn drawer_fallback_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "prism.instance.json");
    let o = bsn(&["reduce", &fixture("prism6.graph.json"), "--p", "2", "-o", &inst]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = path(dir.path(), "prism.svg");
    assert!(bsn(&["svg", &inst, "-o", &svg]).status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml") && text.trim_end().ends_with("</svg>"));
}

#[test]
fn selftest_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.txt"), path(dir.path(), "b.txt"));
    let first = bsn(&["selftest", "--report", &a]);
    assert!(first.status.success(), "{}", stdout(&first));
    assert!(bsn(&["selftest", "--report", &b]).status.success());
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
}
