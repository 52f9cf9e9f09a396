use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const ADDER: &str = "OPENQASM 2.0;
include \"qelib1.inc\";
qreg q[4];
x q[0];
cx q[2],q[1];
cx q[2],q[0];
ccx q[0],q[1],q[2];
t q[3];
cx q[2],q[3];
ccx q[0],q[1],q[2];
h q[3];
measure q[3];
";

const REPORT_KEYS: [&str; 21] = [
    "circuit",
    "qubits",
    "gates",
    "passes",
    "push_policy",
    "workers",
    "ancilla_count",
    "code_distance",
    "baseline_rounds",
    "total_rounds",
    "speedup",
    "baseline_cycles",
    "total_cycles",
    "rotation_count",
    "baseline_rotation_count",
    "stall_rounds",
    "executed_ops",
    "baseline_ops",
    "frame_ops",
    "kept_cliffords",
    "pass_deltas",
];

fn tqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_input(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_report_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    let out = dir.path().join("report.json");
    let o = tqc(&["run", s(&input), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json = fs::read_to_string(&out).unwrap();
    let top_level: Vec<&str> = json
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim_start().trim_start_matches('"').split('"').next().unwrap())
        .collect();
    assert_eq!(top_level, REPORT_KEYS);
    assert!(dir.path().join("report.circuit.ppc").exists());
    let plan = fs::read_to_string(dir.path().join("report.plan.txt")).unwrap();
    assert!(!plan.is_empty());
    let circuit = fs::read_to_string(dir.path().join("report.circuit.ppc")).unwrap();
    assert!(circuit.starts_with("ppc 4"));
}

#[test]
fn ablation_lists_per_pass_deltas() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    let o = tqc(&["run", "--input", s(&input), "--passes", "layer,fuse", "--emit", "text"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("+layer"), "{text}");
    assert!(text.contains("+fuse"), "{text}");
    assert!(!text.contains("+hide"), "{text}");
}

#[test]
fn csv_emit_has_stable_header() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    let o = tqc(&["run", s(&input), "--emit", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("circuit,qubits,gates,baseline_rounds,tqc_rounds,speedup"));
    assert!(lines.next().unwrap().starts_with("adder,4,9,"));
}

#[test]
fn worker_count_does_not_change_the_dump() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    let mut dumps = Vec::new();
    for w in ["1", "4"] {
        for policy in ["always", "cost-aware"] {
            let out = dir.path().join(format!("r{w}{policy}.json"));
            let o = tqc(&["run", s(&input), "--workers", w, "--push-policy", policy, "--out", s(&out)]);
            assert!(o.status.success());
            let circuit = fs::read(dir.path().join(format!("r{w}{policy}.circuit.ppc"))).unwrap();
            let plan = fs::read(dir.path().join(format!("r{w}{policy}.plan.txt"))).unwrap();
            dumps.push((policy, circuit, plan));
        }
    }
    assert_eq!(dumps[0], dumps[2]);
    assert_eq!(dumps[1], dumps[3]);
}

#[test]
fn identical_runs_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    let a = tqc(&["run", s(&input)]);
    let b = tqc(&["run", s(&input)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "bad.qasm", "qreg q[2];\ncx q[0],q[0];\n");
    let o = tqc(&["run", s(&input)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("error[E006]"), "{err}");
}

#[test]
fn bad_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "adder.qasm", ADDER);
    assert!(!tqc(&["run", s(&input), "--frobnicate"]).status.success());
    assert!(!tqc(&["run", s(&input), "--passes", "fuse"]).status.success());
    assert!(!tqc(&["run", s(&input), "--push-policy", "sometimes"]).status.success());
    assert!(!tqc(&["run", s(&input), "--emit", "yaml"]).status.success());
}

#[test]
fn native_input_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "c.ppc", "ppc 2\npi/4 +ZZ\npi/4 +XI\nmeasure +ZI\n");
    let o = tqc(&["run", s(&input), "--format", "ppc", "--emit", "text"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bench_emits_rows_and_geomean() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    let o = tqc(&["fixtures", s(&suite)]);
    assert!(o.status.success());
    for name in ["mcx_ladder_10.qasm", "toffoli_mix_16.qasm"] {
        fs::remove_file(suite.join(name)).unwrap();
    }
    let csv = dir.path().join("bench.csv");
    let o = tqc(&["bench", s(&suite), "--out", s(&csv)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "circuit,qubits,gates,baseline_rounds,tqc_rounds,speedup,time_ms");
    assert_eq!(lines.len(), 1 + 8 + 1);
    assert!(lines[9].starts_with("geomean,"));
}

#[test]
fn self_check_passes_and_catches_faults() {
    let o = tqc(&["self-check", "--seed", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("n=65"));
    assert!(text.trim_end().ends_with("PASS"));
    assert_eq!(text, String::from_utf8(tqc(&["self-check", "--seed", "3"]).stdout).unwrap());

    let o = tqc(&["self-check", "--seed", "3", "--inject-fault", "drop-s-phase"]);
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().trim_end().ends_with("FAIL"));
}

#[test]
fn gen_is_seeded() {
    let a = tqc(&["gen", "--qubits", "5", "--gates", "50", "--seed", "9"]);
    let b = tqc(&["gen", "--qubits", "5", "--gates", "50", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("qreg q[5];"));
}
