use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cbir::synthetic::{corpus, write_corpus};
use tempfile::tempdir;

fn cbir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbir"))
        .args(args)
        .env_remove("CBIR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn index_query_evaluate_curves() {
    let dir = tempdir().unwrap();
    let data = dir.path().join("data");
    write_corpus(&data, &corpus(2, 2, 24, 9)).unwrap();
    let idx = dir.path().join("idx.bin");

    stdout(&cbir(&[
        "index",
        "--dataset",
        s(&data),
        "--scheme",
        "18,10",
        "--out",
        s(&idx),
    ]));
    let text = fs::read_to_string(&idx).unwrap();
    assert!(text.starts_with("cbir-index\t1\tHSV(18,10,256)\td1\t4\n"));
    assert_eq!(text.lines().count(), 6);

    let q = data.join("class01/001.png");
    let out = stdout(&cbir(&[
        "query",
        "--index",
        s(&idx),
        "--image",
        s(&q),
        "--metric",
        "d1",
        "-n",
        "10",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "1\tclass01/001.png\tclass01\t0.0000000000");

    let out = stdout(&cbir(&[
        "query",
        "--index",
        s(&idx),
        "--image",
        s(&q),
        "--exclude-self",
        "-n",
        "1",
    ]));
    assert!(!out.contains("class01/001.png"));
    let out = stdout(&cbir(&[
        "query",
        "--index",
        s(&idx),
        "--id",
        "class00/000.png",
        "--json",
        "-n",
        "2",
    ]));
    assert!(out.contains("\"query_id\": \"class00/000.png\""));

    let report = dir.path().join("report.json");
    let table = dir.path().join("report.txt");
    let out = stdout(&cbir(&[
        "evaluate",
        "--index",
        s(&idx),
        "-n",
        "2",
        "--out",
        s(&report),
        "--table",
        s(&table),
    ]));
    assert!(out.contains("APR 100.00%  ARR 100.00%  (n = 2)"), "{out}");
    assert_eq!(fs::read_to_string(&table).unwrap(), out);
    let json = fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"p_total\": 1.0") && json.contains("\"r_total\": 1.0"));
    assert!(json.contains("\"scheme\": \"HSV(18,10,256)\""));

    let csv = dir.path().join("curves.csv");
    stdout(&cbir(&[
        "curves",
        "--index",
        s(&idx),
        "--n-values",
        "1,2,4",
        "--out",
        s(&csv),
    ]));
    let curves = fs::read_to_string(&csv).unwrap();
    assert_eq!(curves.lines().next(), Some("n,precision,recall"));
    assert_eq!(curves.lines().last(), Some("4,0.500000,1.000000"));

    // identical inputs give identical files
    let idx2 = dir.path().join("idx2.bin");
    stdout(&cbir(&[
        "--threads",
        "1",
        "index",
        "--dataset",
        s(&data),
        "--out",
        s(&idx2),
    ]));
    assert_eq!(fs::read(&idx).unwrap(), fs::read(&idx2).unwrap());
}

#[test]
fn extract_prints_one_record() {
    let dir = tempdir().unwrap();
    write_corpus(dir.path(), &corpus(1, 1, 16, 2)).unwrap();
    let img = dir.path().join("class00/000.png");
    let out = stdout(&cbir(&[
        "extract",
        "--image",
        s(&img),
        "--scheme",
        "HSV(36,20,256)",
    ]));
    let fields: Vec<&str> = out.trim_end().split('\t').collect();
    assert_eq!(fields[1], "HSV(36,20,256)");
    assert_eq!(fields[2].split(' ').count(), 312);
}

#[test]
fn usage_and_runtime_errors_differ() {
    let dir = tempdir().unwrap();
    for args in [
        vec!["frobnicate"],
        vec!["index", "--dataset", ".", "--scheme", "18", "--out", "x"],
        vec!["evaluate", "--index", "x", "--metric", "cosine"],
        vec!["evaluate", "--index", "x", "-n", "0"],
    ] {
        assert_eq!(cbir(&args).status.code(), Some(2), "{args:?}");
    }
    let missing = dir.path().join("missing.bin");
    let out = cbir(&["evaluate", "--index", s(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.bin"));

    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = cbir(&[
        "index",
        "--dataset",
        s(&empty),
        "--out",
        s(&dir.path().join("i")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}
