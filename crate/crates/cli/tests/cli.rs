use std::path::Path;
use std::process::{Command, Output};

const SIX: &str = "0.5 XXII\n0.3 IIIX\n0.2 ZIII\n0.7 IXXI\n0.4 YXII\n0.1 IIZI\n";

fn ncf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn gen_writes_benchmark_files() {
    let dir = tempfile::tempdir().unwrap();
    for (model, dims, lines) in [
        ("ising", "5x6", 79),
        ("heisenberg", "1x2", 3),
        ("ising", "3x4x5", 193),
    ] {
        let out = dir.path().join(format!("{model}-{dims}.txt"));
        let o = ncf(&[
            "gen",
            "--model",
            model,
            "--dims",
            dims,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        assert_eq!(
            std::fs::read_to_string(&out).unwrap().lines().count(),
            lines
        );
    }
}

#[test]
fn compile_reports_metrics() {
    let o = ncf(&[
        "compile",
        "--model",
        "heisenberg",
        "--dims",
        "5x6",
        "--mode",
        "ncf1q",
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["unitary_count"].as_u64().unwrap() < 147);

    let o = ncf(&[
        "compile",
        "--model",
        "heisenberg",
        "--dims",
        "5x6",
        "--mode",
        "baseline",
    ]);
    assert_eq!(json(&o)["unitary_count"], 147);
}

#[test]
fn compile_is_deterministic_and_emits() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "six.txt", SIX);
    let a = dir.path().join("a.qasm");
    let b = dir.path().join("b.qasm");
    for (path, seed) in [(&a, "1"), (&b, "2")] {
        let o = ncf(&[
            "compile",
            "--input",
            &input,
            "--mode",
            "ncf2q",
            "--emit",
            path.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        assert_eq!(code(&o), 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("OPENQASM 2.0;\nqreg q[4];\n"));
    assert!(text.lines().any(|l| l.starts_with("rot ")));
}

#[test]
fn empty_input_gives_zero_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.txt", "# nothing\n");
    let o = ncf(&["compile", "--input", &input]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["unitary_count"], 0);
    assert_eq!(r["est_t_count"], 0.0);
}

#[test]
fn verify_passes_in_fusing_modes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "six.txt", SIX);
    for mode in ["baseline", "ncf1q", "ncf2q"] {
        let o = ncf(&["verify", "--input", &input, "--mode", mode]);
        assert_eq!(code(&o), 0, "{mode}");
        assert_eq!(json(&o)["passed"], true);
    }
}

#[test]
fn verify_flags_a_corrupted_program() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "six.txt", SIX);
    let prog = dir.path().join("p.json");
    let o = ncf(&[
        "compile",
        "--input",
        &input,
        "--emit",
        prog.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let mut p: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&prog).unwrap()).unwrap();
    let segments = p["segments"].as_array_mut().unwrap();
    let idx = segments
        .iter()
        .position(|s| !s["frame"]["gates"].as_array().unwrap().is_empty())
        .unwrap();
    segments[idx]["frame"]["gates"]
        .as_array_mut()
        .unwrap()
        .remove(0);
    let bad = write(dir.path(), "bad.json", &p.to_string());

    let o = ncf(&["verify", "--input", &input, "--program", &bad]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["first_failing_segment"], idx);
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "six.txt", SIX);
    assert_eq!(
        code(&ncf(&[
            "compile", "--input", &input, "--mode", "ncf2q", "--window", "8"
        ])),
        1
    );
    assert_eq!(
        code(&ncf(&["compile", "--input", &input, "--eps", "1.5"])),
        1
    );
    assert_eq!(
        code(&ncf(&["compile", "--input", &input, "--format", "pdf"])),
        1
    );
    assert_eq!(
        code(&ncf(&["compile", "--input", "/nonexistent/terms.txt"])),
        1
    );
    assert_eq!(
        code(&ncf(&["verify", "--input", &input, "--max-qubits", "3"])),
        1
    );
    assert_eq!(code(&ncf(&["gen", "--model", "ising", "--dims", "5"])), 1);
    let bad = write(dir.path(), "bad.txt", "1 XX\noops\n");
    let o = ncf(&["compile", "--input", &bad]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
