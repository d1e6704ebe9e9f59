use std::path::Path;
use std::process::{Command, Output};

fn vikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vikit")).args(args).output().unwrap()
}

fn gen(dir: &Path, kind: &str, extra: &[&str]) -> String {
    let path = dir.join(format!("{kind}.json"));
    let path_str = path.to_str().unwrap().to_string();
    let mut args = vec!["gen", "--kind", kind, "--out", &path_str];
    args.extend_from_slice(extra);
    let out = vikit(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn gen_writes_loadable_problems() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [
        ("box-corner", vec!["--n", "3"]),
        ("strong-pseudo", vec!["--mu", "0.5"]),
        ("lp-square", vec![]),
        ("lp-simplex", vec![]),
        ("interior", vec![]),
    ] {
        let path = gen(dir.path(), kind, &extra);
        let p = vikit::harness::ProblemInstance::load(Path::new(&path)).unwrap();
        p.verify().unwrap();
    }
}

#[test]
fn solve_writes_a_trace_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let problem = gen(dir.path(), "box-corner", &[]);
    let trace = dir.path().join("trace.csv");
    let out = vikit(&[
        "solve",
        "--problem",
        &problem,
        "--method",
        "gpm",
        "--gamma",
        "0.5",
        "--sigma",
        "0.5",
        "--x1",
        "0,0",
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("schema,n,x_0,x_1,gamma"));
    assert_eq!(lines.count(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("l_obs=1"));
}

#[test]
fn solve_without_sharpness_is_not_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let problem = gen(dir.path(), "interior", &[]);
    let out = vikit(&[
        "solve",
        "--problem",
        &problem,
        "--gamma",
        "0.5",
        "--x1",
        "0,1",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_verdict"));
}

#[test]
fn certify_and_gap() {
    let dir = tempfile::tempdir().unwrap();
    let problem = gen(dir.path(), "lp-square", &[]);
    let out = vikit(&["certify", "--problem", &problem, "--samples", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["agrees"], true);
    assert_eq!(doc["certificates"].as_array().unwrap().len(), 3);

    let problem = gen(dir.path(), "box-corner", &[]);
    let out = vikit(&["gap", "--problem", &problem, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((doc["primal"]["value"].as_f64().unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn errors_exit_with_two() {
    let out = vikit(&["gap", "--problem", "/nonexistent/problem.json", "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let problem = gen(dir.path(), "box-corner", &[]);
    let out = vikit(&["gap", "--problem", &problem, "--point", "0,zero"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vikit(&["solve", "--problem", &problem, "--x1", "5,5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bounds_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let out = vikit(&["verify-bounds", "--seed", "42", "--out", d.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let report_a = std::fs::read(a.join("report.csv")).unwrap();
    assert_eq!(report_a, std::fs::read(b.join("report.csv")).unwrap());
    for entry in std::fs::read_dir(a.join("traces")).unwrap() {
        let name = entry.unwrap().file_name();
        assert_eq!(
            std::fs::read(a.join("traces").join(&name)).unwrap(),
            std::fs::read(b.join("traces").join(&name)).unwrap()
        );
    }
    assert!(a.join("summary.txt").exists());
}
