use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn grpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    let text = stdout(o);
    assert_eq!(text.trim().lines().count(), 1, "one document: {text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    v
}

/// Writes the catalog's G1 to a file so commands see a real `.gpd` path.
fn g1_file(dir: &tempfile::TempDir) -> String {
    let out = grpd(&["catalog", "show", "G1"]);
    assert_eq!(code(&out), 0);
    let path = dir.path().join("G1.gpd");
    fs::write(&path, out.stdout).unwrap();
    path.display().to_string()
}

#[test]
fn check_reports_the_substitution_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = g1_file(&dir);
    let out = grpd(&["check", &g1, "(x (y (z u))) = (x ((y z) u))"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness a,a,b,c"));

    let v = json(&grpd(&[
        "--json",
        "check",
        &g1,
        "(x (y (z u))) = (x ((y z) u))",
    ]));
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], serde_json::json!(["a", "a", "b", "c"]));

    assert_eq!(code(&grpd(&["check", &g1, "(x x) = x"])), 0);
}

#[test]
fn variety_membership() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = g1_file(&dir);
    assert_eq!(code(&grpd(&["variety", &g1, "B"])), 0);
    assert_eq!(code(&grpd(&["variety", &g1, "Cp:2"])), 1);
    assert_eq!(code(&grpd(&["variety", "@G1d", "B^d"])), 0);
    let v = json(&grpd(&["--json", "variety", &g1, "Cp:2"]));
    assert_eq!(v["member"], false);
    assert_eq!(v["identity"], "(x (y z)) = (x y)");
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = g1_file(&dir);
    let out = grpd(&["variety", &g1, "Cp:4"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime"));

    let bad = dir.path().join("bad.gpd");
    fs::write(&bad, "a b\na a\n").unwrap();
    assert_eq!(code(&grpd(&["ns", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&grpd(&["check", &g1, "(x y"])), 2);
    assert_eq!(code(&grpd(&["ns", "@nope"])), 2);
    assert_eq!(code(&grpd(&["search", "--size", "5"])), 2);
    assert_eq!(code(&grpd(&["frobnicate"])), 2);

    let v = json(&grpd(&["--json", "variety", &g1, "Cp:4"]));
    assert!(v["error"].as_str().unwrap().contains("not a prime"));
}

#[test]
fn budget_overrun_reports_the_completed_prefix() {
    let out = grpd(&[
        "--json", "spectrum", "@G3", "--max-n", "7", "--budget", "1000",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["completed"], serde_json::json!([1, 1, 2, 5]));
}

#[test]
fn spectrum_output() {
    let v = json(&grpd(&["--json", "spectrum", "@G3", "--max-n", "6"]));
    assert_eq!(v["values"], serde_json::json!([1, 1, 2, 5, 14, 42]));
    assert!(v.get("classes").is_none());

    let v = json(&grpd(&[
        "--json",
        "spectrum",
        "@propD-F2",
        "--max-n",
        "4",
        "--classes",
    ]));
    assert_eq!(v["values"], serde_json::json!([1, 1, 2, 4]));
    let classes = v["classes"][3].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    let members: usize = classes.iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(members, 5);
}

#[test]
fn sh_and_clone_commands() {
    let v = json(&grpd(&["--json", "ns", "@G1", "--triples"]));
    assert_eq!(v["nsCount"], 1);
    assert_eq!(v["triples"], serde_json::json!([["a", "b", "c"]]));

    let v = json(&grpd(&["--json", "sh-type", "@aab-eps"]));
    assert_eq!(v["shType"], "aab");
    assert_eq!(code(&grpd(&["sh-type", "@rectband-F2"])), 1);

    let out = grpd(&["clone", "@G1", "--proxy"]);
    assert_eq!(code(&out), 0);
    let out = grpd(&[
        "--json",
        "clone",
        "@aab-eps",
        "--proxy",
        "--witness",
        "(x (x y))",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["proxy"]["verdict"], "fails_with_witness");
    assert_eq!(v["witness"]["kind"], "partition");

    let v = json(&grpd(&["--json", "clone", "@propD-F2", "--f2"]));
    assert_eq!(v["size"], 4);
    assert_eq!(v["f2"]["names"], serde_json::json!(["x", "y", "xy", "yx"]));
}

#[test]
fn search_is_independent_of_thread_count() {
    let one = json(&grpd(&[
        "--json",
        "--threads",
        "1",
        "search",
        "--size",
        "3",
        "--satisfy",
        "nulla:4",
    ]));
    let four = json(&grpd(&[
        "--json",
        "--threads",
        "4",
        "search",
        "--size",
        "3",
        "--satisfy",
        "nulla:4",
    ]));
    assert_eq!(one, four);
    assert!(one["violations"].as_u64().unwrap() > 0);

    let out = grpd(&["search", "--size", "3", "--satisfy", "left_eq_right:4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("729 tables"));
}

#[test]
fn catalog_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = grpd(&["catalog", "export", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let list = stdout(&grpd(&["catalog", "list"]));
    for line in list.lines() {
        let name = line.split_whitespace().next().unwrap();
        let path = dir.path().join(format!("{name}.gpd"));
        let shown = grpd(&["catalog", "show", name]);
        assert_eq!(fs::read(&path).unwrap(), shown.stdout, "{name}");
        let back = grpd(&["dual", path.to_str().unwrap()]);
        assert_eq!(code(&back), 0);
    }
}

#[test]
fn thin_wrappers() {
    let out = stdout(&grpd(&["bracketings", "3"]));
    assert_eq!(out, "(x1 (x2 x3))\n((x1 x2) x3)\n");
    assert_eq!(
        stdout(&grpd(&["left-depth", "(((x1 x2) x3) x4)"])),
        "3 2 1 0\n"
    );
    assert_eq!(
        stdout(&grpd(&["eval", "@G1", "((x y) z)", "x=a", "y=b", "z=c"]))
            .trim()
            .len(),
        1
    );

    let out = grpd(&["iso", "@G1d", "@G1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&grpd(&["iso", "@G1d", "@G1", "--allow-dual"])), 0);

    let q = grpd(&["quotient", "@G4", "e f"]);
    assert_eq!(code(&q), 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.gpd");
    fs::write(&path, &q.stdout).unwrap();
    assert_eq!(code(&grpd(&["iso", path.to_str().unwrap(), "@G5"])), 0);

    let v = json(&grpd(&["--json", "congruences", "@G3"]));
    assert!(v["congruences"].as_array().unwrap().len() >= 2);
}

#[test]
fn verify_paper_fast_passes_and_skips() {
    let out = grpd(&["--json", "verify-paper", "--fast"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.len() >= 25);
    assert!(claims.iter().all(|c| c["status"] != "fail"));
    let skipped: Vec<_> = claims.iter().filter(|c| c["status"] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0]["claimId"], "scan4-left-eq-right-4");
}
