use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clusterkit"))
}

fn quiver_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("clusterkit-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

fn three_cycle() -> PathBuf {
    quiver_file("c3.txt", "n 3 frozen none\n1 2\n2 3\n3 1\n")
}

fn seven_vertex() -> PathBuf {
    quiver_file("q7.txt", "# seven vertices\nn 7 frozen none\n1 2\n2 5\n5 1\n2 6\n6 3\n3 2\n3 4\n6 7\n")
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

#[test]
fn expand_three_cycle_with_collections() {
    let q = three_cycle();
    let (code, out, _) = run(bin().args(["expand", "--model", "gcc", "--dvector", "2,2,2", "--quiver"]).arg(&q));
    assert_eq!(code, 0);
    assert!(out.starts_with("(x1^3 + 3 x1^2 x2"), "{out}");
    assert!(out.trim_end().ends_with("/(x1^2 x2^2 x3^2)"), "{out}");
    let (_, mutation, _) = run(bin().args(["expand", "--dvector", "2,2,2", "--quiver"]).arg(&q));
    assert_eq!(out, mutation);
}

#[test]
fn zero_vector_expands_to_one() {
    let (code, out, _) = run(bin().args(["expand", "--dvector", "0,0,0", "--quiver"]).arg(three_cycle()));
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn witness_counts() {
    let (code, out, _) =
        run(bin().args(["count", "--model", "gcs", "--dvector", "2,2,2", "--quiver"]).arg(three_cycle()));
    assert_eq!((code, out.trim()), (0, "27"));
}

#[test]
fn path_and_matching_outputs_are_identical() {
    let q = seven_vertex();
    for format in ["text", "json"] {
        let args = ["expand", "--subquiver", "1,2,3,4", "--format", format, "--model"];
        let (c1, tpath, _) = run(bin().args(args).arg("tpath").arg("--quiver").arg(&q));
        let (c2, matching, _) = run(bin().args(args).arg("matching").arg("--quiver").arg(&q));
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(tpath, matching);
    }
}

#[test]
fn input_errors_use_the_envelope() {
    let (code, out, err) =
        run(bin().args(["expand", "--model", "gcs", "--dvector", "1,1,1", "--quiver"]).arg(three_cycle()));
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["code"], "NotInW");
    assert_eq!(v["context"]["dvector"], serde_json::json!([1, 1, 1]));
    assert!(v["message"].is_string());

    let (code, _, err) = run(bin().arg("no-such-command"));
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["code"], "Usage");

    let missing = std::env::temp_dir().join("clusterkit-cli-missing.txt");
    let (code, _, err) = run(bin().args(["expand", "--dvector", "1", "--quiver"]).arg(missing));
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<serde_json::Value>(err.trim()).is_ok(), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = run(bin().arg("--help"));
    assert_eq!(code, 0);
    assert!(out.contains("crosscheck"));
}

#[test]
fn seeded_crosscheck_is_thread_independent() {
    let args = ["crosscheck", "--random", "12", "--seed", "99", "--max-vertices", "5"];
    let (c1, one, _) = run(bin().args(args).env("CLUSTERKIT_THREADS", "1"));
    let (c4, four, _) = run(bin().args(args).env("CLUSTERKIT_THREADS", "4"));
    assert_eq!((c1, c4), (0, 0));
    assert_eq!(one, four);
    assert!(one.lines().last().unwrap().starts_with("PASS rows="), "{one}");
    let (_, again, _) = run(bin().args(args).arg("--threads").arg("2"));
    assert_eq!(one, again);
}

#[test]
fn single_vertex_crosscheck_has_no_rows() {
    let q = quiver_file("one.txt", "n 1 frozen none\n");
    let (code, out, _) = run(bin().arg("crosscheck").arg("--quiver").arg(q));
    assert_eq!((code, out.as_str()), (0, "PASS rows=0 failures=0\n"));
}

#[test]
fn seven_vertex_crosscheck_passes() {
    let (code, out, _) = run(bin().arg("crosscheck").arg("--quiver").arg(seven_vertex()));
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("PASS rows=28 failures=0\n"), "{out}");
}

#[test]
fn report_table_is_reproducible() {
    let q = seven_vertex();
    let (code, first, _) = run(bin().arg("report-table").arg("--quiver").arg(&q));
    let (_, second, _) = run(bin().arg("report-table").arg("--quiver").arg(&q));
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let row = first.lines().find(|l| l.starts_with("| (1,1,1,1,0,0,0) |")).unwrap();
    assert!(row.ends_with("/(x1 x2 x3 x4) |"), "{row}");
    assert_eq!(first.lines().filter(|l| l.starts_with("| (")).count(), 28);
}

#[test]
fn json_quiver_input() {
    let q = quiver_file("c3.json", r#"{"n":3,"arrows":[[1,2],[2,3],[3,1]],"frozen":[]}"#);
    let (code, out, _) = run(bin().args(["expand", "--dvector", "1,1,0", "--quiver"]).arg(q));
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(x1 + x2 + x3)/(x1 x2)");
}

#[test]
fn decompose_lists_parts() {
    let (code, out, _) = run(bin().args(["decompose", "--dvector", "2,2,2", "--quiver"]).arg(three_cycle()));
    assert_eq!(code, 0);
    let parts: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let total: i64 = parts.iter().filter_map(|p| p["multiplicity"].as_i64()).sum();
    assert_eq!(total, 3);
}

#[test]
fn broken_lines_picture() {
    let (code, out, _) = run(bin()
        .args(["broken-lines", "--subquiver", "1,2,3", "--svg", "plane=1,2", "--quiver"])
        .arg(quiver_file("ex4.txt", "n 4 frozen none\n2 1\n1 4\n4 2\n2 3\n")));
    assert_eq!(code, 0);
    assert!(out.starts_with("<svg"));
    assert_eq!(out.matches("<polyline").count(), 5);
}
