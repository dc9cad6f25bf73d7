use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIGURE_EIGHT: &str = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)";
const TREFOIL: &str = "X(4,2,5,1);X(6,4,1,3);X(2,6,3,5)";

fn khdetect(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khdetect")).args(args).env("KHDETECT_CACHE_DIR", cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_table(dir: &Path) -> std::path::PathBuf {
    let table = serde_json::json!([
        { "name": "unknot", "pd": "unknot" },
        { "name": "4_1", "pd": FIGURE_EIGHT,
          "expected": [{"q":-4,"h":-2,"dim":1},{"q":-2,"h":-1,"dim":1},{"q":0,"h":0,"dim":1},{"q":2,"h":1,"dim":1},{"q":4,"h":2,"dim":1}] },
        { "name": "3_1", "pd": TREFOIL, "expected": [{"q":0,"h":0,"dim":1}] },
        { "name": "broken", "pd": "X(1,2,3,4)" },
    ]);
    let path = dir.join("table.json");
    fs::write(&path, serde_json::to_string(&table).unwrap()).unwrap();
    path
}

#[test]
fn compute_figure_eight() {
    let dir = tempfile::tempdir().unwrap();
    let o = khdetect(dir.path(), &["compute", "--pd", FIGURE_EIGHT]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let records: Vec<&str> = s.lines().filter(|l| l.split('\t').count() == 3 && !l.starts_with('q')).collect();
    assert_eq!(records, ["-4\t-2\t1", "-2\t-1\t1", "0\t0\t1", "2\t1\t1", "4\t2\t1"]);
    assert!(s.contains("total\t5\n"));
    assert!(s.contains("delta\t{0}\n"));
    assert!(s.contains("thin\tyes\n"));
}

#[test]
fn compute_unknot_and_unreduced() {
    let dir = tempfile::tempdir().unwrap();
    let o = khdetect(dir.path(), &["compute", "--pd", "unknot"]);
    assert!(stdout(&o).contains("q\th\tdim\n0\t0\t1\ntotal\t1\n"));
    let o = khdetect(dir.path(), &["compute", "--pd", TREFOIL, "--unreduced"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total\t4\n"));
}

#[test]
fn compute_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = khdetect(dir.path(), &["compute", "--pd", "X(1,2,3;X(4,5,6,7)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("X(1,2,3"), "{}", stderr(&o));
    let o = khdetect(dir.path(), &["compute", "--pd", "X(1,2,3,4)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = khdetect(dir.path(), &["compute", "--pd", FIGURE_EIGHT, "--max-crossings", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit of 3"));
    let o = khdetect(dir.path(), &["compute"]);
    assert_eq!(o.status.code(), Some(1));
    let o = khdetect(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mirror_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let once = stdout(&khdetect(dir.path(), &["mirror", "--pd", TREFOIL]));
    let twice = stdout(&khdetect(dir.path(), &["mirror", "--pd", once.trim()]));
    assert_eq!(twice.trim(), TREFOIL);
    let a = stdout(&khdetect(dir.path(), &["compute", "--pd", TREFOIL]));
    let b = stdout(&khdetect(dir.path(), &["compute", "--pd", once.trim()]));
    assert!(a.contains("delta\t{1}") && b.contains("delta\t{-1}"), "{a}\n{b}");
}

#[test]
fn scan_rows_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let table = write_table(dir.path());
    let first = khdetect(&cache, &["scan", table.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(2), "{}", stderr(&first));
    let s = stdout(&first);
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows[0], "name\tdim\tdelta\tmatch\texpected");
    assert_eq!(rows[1], "unknot\t1\t{0}\tno\t-");
    assert_eq!(rows[2], "4_1\t5\t{0}\tyes\tok");
    assert_eq!(rows[3], "3_1\t3\t{1}\tno\tMISMATCH");
    assert!(rows[4].starts_with("broken\t-\t-\terror\t"));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 3);

    let second = khdetect(&cache, &["scan", table.to_str().unwrap()]);
    assert_eq!(second.stdout, first.stdout);
    let uncached = khdetect(&cache, &["scan", "--no-cache", table.to_str().unwrap()]);
    assert_eq!(uncached.stdout, first.stdout);
}

#[test]
fn scan_filters() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_table(dir.path());
    let o = khdetect(dir.path(), &["scan", "--dim", "3", "--no-cache", table.to_str().unwrap()]);
    assert!(stdout(&o).contains("3_1\t3\t{1}\tyes\tMISMATCH"));
    assert!(stdout(&o).contains("4_1\t5\t{0}\tno\tok"));
    let t = dir.path().join("mixed.json");
    fs::write(&t, format!(r#"[{{"name":"8_19","pd":"{}"}},{{"name":"4_1","pd":"{FIGURE_EIGHT}"}}]"#, t34())).unwrap();
    let o = khdetect(dir.path(), &["scan", "--thin", "--no-cache", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "name\tdim\tdelta\tmatch\texpected\n4_1\t5\t{0}\tyes\t-\n");
}

/// The (3,4) torus knot, which is not thin.
fn t34() -> String {
    let corpus: Vec<Value> = serde_json::from_str(include_str!("../../core/data/knots_le10.json")).unwrap();
    corpus.iter().find(|e| e["name"] == "8_19").unwrap()["pd"].as_str().unwrap().to_string()
}

#[test]
fn poisoned_cache_is_served_then_caught() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let t = dir.path().join("t.json");
    fs::write(&t, format!(r#"[{{"name":"4_1","pd":"{FIGURE_EIGHT}"}}]"#)).unwrap();
    let clean = khdetect(&cache, &["scan", t.to_str().unwrap()]);
    assert_eq!(clean.status.code(), Some(0));
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let mut rec: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    rec["homology"][4]["dim"] = 2.into();
    fs::write(&entry, rec.to_string()).unwrap();

    let served = khdetect(&cache, &["scan", t.to_str().unwrap()]);
    assert!(stdout(&served).contains("4_1\t6\t{0}\tno"));

    let verified = khdetect(&cache, &["scan", "--verify-cache", t.to_str().unwrap()]);
    assert_eq!(verified.status.code(), Some(3));
    assert!(stderr(&verified).contains("cache divergence: 4_1"));
    assert_eq!(verified.stdout, clean.stdout);
    let again = khdetect(&cache, &["scan", "--verify-cache", t.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));

    fs::write(&entry, b"\x00garbage").unwrap();
    let o = khdetect(&cache, &["scan", "--verify-cache", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn scan_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = khdetect(dir.path(), &["scan", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let t = dir.path().join("dup.json");
    fs::write(&t, r#"[{"name":"a","pd":"unknot"},{"name":"a","pd":"unknot"}]"#).unwrap();
    let o = khdetect(dir.path(), &["scan", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate"));
}

#[test]
fn classify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = khdetect(dir.path(), &["classify", "--dim", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let d: Vec<&str> = report["accepted"].as_array().unwrap().iter().map(|c| c["delta"].as_str().unwrap()).collect();
    assert_eq!(d, ["0", "2"]);
    let again = khdetect(dir.path(), &["classify"]);
    assert_eq!(stdout(&again), fs::read_to_string(&out).unwrap());
}

#[test]
fn classify_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["classify", "--dim", "4"][..], &["classify", "--dim", "-1"], &["classify", "--genus-bound", "1"]] {
        assert_eq!(khdetect(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(khdetect(dir.path(), &["classify", "--dim", "five"]).status.code(), Some(1));
}
