use std::process::Command;

use macdonald_hecke::cli::{run_with, CoeffRecord, ERecord, SatakeRow, EXIT_CONFIG, EXIT_OK, EXIT_VERIFY};
use macdonald_hecke::coeffs::GroupAlgebraElement;
use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::Weight;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("macdonald-hecke").chain(args.iter().copied()).map(Into::into);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("macdonald-hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn e_records_round_trip() {
    let (code, out, _) = run(&["e", "--type", "C", "--rank", "2", "--lattice", "Q", "--box", "2"]);
    assert_eq!(code, EXIT_OK);
    let records: Vec<ERecord> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!records.is_empty());
    for r in &records {
        assert!(r.monic);
        let e: GroupAlgebraElement = r.element().unwrap();
        let again = ERecord::new(&r.lambda, &e).unwrap();
        assert_eq!(&again, r);
    }
}

#[test]
fn e_matches_library() {
    let (code, out, _) = run(&["E", "--type", "BC", "--rank", "1", "--lattice", "Q", "--lambda", "-2"]);
    assert_eq!(code, EXIT_OK);
    let r: ERecord = serde_json::from_str(out.trim()).unwrap();
    let cfg: macdonald_hecke::rootdata::RootDatumConfig = serde_json::from_str(r#"{"type":"BC","rank":1,"lattice":"Q"}"#).unwrap();
    let (rs, lat) = cfg.build().unwrap();
    let weyl = macdonald_hecke::weyl::WeylGroup::new(rs.into(), lat.into()).unwrap();
    let mac = MacdonaldEngine::new(weyl.into()).unwrap();
    assert_eq!(r.element().unwrap(), mac.e(&Weight(vec![-2])).unwrap());
}

#[test]
fn satake_rows_round_trip() {
    let (code, out, _) = run(&["satake", "--type", "A", "--rank", "2", "--box", "1", "--tau", "formal"]);
    assert_eq!(code, EXIT_OK);
    for line in out.lines() {
        let row: SatakeRow = serde_json::from_str(line).unwrap();
        assert_eq!(row.residual, "0");
        assert_eq!(serde_json::to_string(&row).unwrap(), line);
    }
}

#[test]
fn coeff_rows_parse() {
    let (code, out, _) = run(&["coeff", "--type", "A", "--rank", "1", "--tau", "3", "--char", "2:1", "--box", "2"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<CoeffRecord> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.residual == "0"));
    let zero = rows.iter().find(|r| r.lambda == Weight(vec![0])).unwrap();
    assert_eq!(zero.value, "1/4");
}

#[test]
fn csv_has_header_and_rows() {
    let (code, out, _) = run(&["coeff", "--type", "BC", "--rank", "1", "--lattice", "Q", "--tau", "4", "--char", "3", "--box", "1", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("lambda"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let base = ["satake", "--type", "B", "--rank", "2", "--lattice", "Q", "--box", "2"];
    let one: Vec<&str> = base.iter().copied().chain(["--jobs", "1"]).collect();
    let three: Vec<&str> = base.iter().copied().chain(["--jobs", "3"]).collect();
    let (a, b, c) = (run(&one), run(&three), run(&one));
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1, c.1);
}

#[test]
fn config_file_equals_flags() {
    let path = tmp("job.json");
    std::fs::write(&path, r#"{"datum":{"type":"G","rank":2},"weights":[[1,-1],[0,0]],"satake":"generic"}"#).unwrap();
    let (code, from_file, _) = run(&["e", "--config", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (_, from_flags, _) = run(&["e", "--type", "G", "--rank", "2", "--lambda", "1,-1", "--lambda", "0,0"]);
    assert_eq!(from_file, from_flags);
}

#[test]
fn out_flag_writes_file() {
    let path = tmp("out.jsonl");
    let (code, stdout, _) = run(&["e", "--type", "A", "--rank", "1", "--lambda", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"lambda\""));
}

#[test]
fn config_errors() {
    let path = tmp("bad.json");
    std::fs::write(&path, r#"{"datum":{"type":"A","rank":1},"colour":"red"}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["e", "--config", path.to_str().unwrap()],
        vec!["e", "--config", path.to_str().unwrap(), "--rank", "2"],
        vec!["e", "--type", "X", "--rank", "2", "--lambda", "0"],
        vec!["e", "--type", "BC", "--rank", "2", "--lattice", "P", "--lambda", "0,0"],
        vec!["e", "--type", "A", "--rank", "2", "--lattice", "Q", "--lambda", "1,0"],
        vec!["e", "--type", "A", "--rank", "2", "--lambda", "1"],
        vec!["satake", "--type", "A", "--rank", "1", "--d", "1,2,3", "--lambda", "0"],
        vec!["coeff", "--type", "A", "--rank", "1", "--char", "1/2,0.5", "--lambda", "0"],
        vec!["coeff", "--type", "A", "--rank", "1", "--lambda", "0"],
        vec!["e", "--type", "A", "--rank", "1"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_CONFIG, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--type", "A", "--rank", "1", "--max-len", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = run(&["verify", "--type", "A", "--rank", "1", "--max-len", "4", "--corrupt-t0", "2"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("\"passed\": false"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_macdonald-hecke");
    let ok = Command::new(bin).args(["e", "--type", "A", "--rank", "1", "--lambda", "-1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["e", "--type", "A"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_CONFIG));
}
