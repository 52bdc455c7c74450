mod common;

use std::process::Command;

use common::{golden_path, run_cli, GOLDEN};
use lagflag::basis::{gw_basis, k_basis, Decomposition, RecursionReport, WittTable};
use lagflag::cli::{emit_summands, Format};
use lagflag::diagram::ShiftedDiagram;
use lagflag::Twist;

#[test]
fn golden_outputs_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in GOLDEN {
        let (code, out, err) = run_cli(args);
        assert_eq!(code, 0, "{name}: {}", String::from_utf8_lossy(&err));
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(
            out == expected,
            "{name} differs:\n--- got\n{}\n--- expected\n{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&expected)
        );
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (name, args) in GOLDEN {
        assert_eq!(run_cli(args), run_cli(args), "{name}");
    }
}

#[test]
fn json_outputs_parse_back() {
    let (_, out, _) = run_cli(&["basis", "-n", "4", "--twist", "Delta", "--format", "json"]);
    let dec: Decomposition = serde_json::from_slice(&out).unwrap();
    assert_eq!(dec, gw_basis(4, Twist::DeltaTwist).unwrap());

    let (_, out, _) = run_cli(&["basis", "-n", "3", "--theory", "k", "--format", "json"]);
    let dec: Decomposition = serde_json::from_slice(&out).unwrap();
    assert_eq!(dec, k_basis(3));

    let (_, out, _) = run_cli(&["enumerate", "-n", "4", "--format", "json"]);
    let all: Vec<ShiftedDiagram> = serde_json::from_slice(&out).unwrap();
    assert_eq!(all, lagflag::enumerate_diagrams(4));

    let (_, out, _) = run_cli(&["recursion", "-n", "5", "--format", "json"]);
    let r: RecursionReport = serde_json::from_slice(&out).unwrap();
    assert!(r.passed());

    let (_, out, _) = run_cli(&["witt", "-n", "4", "--format", "json"]);
    let w: WittTable = serde_json::from_slice(&out).unwrap();
    assert_eq!(w, lagflag::witt_table(4, Twist::Trivial).unwrap());
}

#[test]
fn emit_edge_cases() {
    let mut buf = Vec::new();
    emit_summands(3, &[], Format::Json, &mut buf).unwrap();
    assert_eq!(buf, b"[]\n");

    let mut buf = Vec::new();
    emit_summands(1, &k_basis(1).summands, Format::Csv, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "diagram,kind,shift,map,scheme,dim,components,parity_ok");
    assert_eq!(lines.len(), 3);
}

#[test]
fn text_results() {
    let (code, out, _) = run_cli(&["classify-connecting", "--c1", "3", "--c2", "2", "--lambda", "0,0"]);
    assert_eq!((code, out), (0, b"EtaCaseII\n".to_vec()));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["enumerate"],
        &["enumerate", "-n", "17"],
        &["classify", "VXH"],
        &["basis", "-n", "2", "--twist", "Q"],
        &["verify", "--max-n", "11"],
        &["verify", "--max-n", "2", "--suite", "nope"],
        &["classify-connecting", "--c1", "3", "--c2", "2"],
        &["scheme", "--diagram", "VH", "--map", "xi0"],
    ] {
        let (code, _, err) = run_cli(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn invalid_descriptor_exits_1() {
    let (code, out, _) = run_cli(&["scheme", "--half-rank", "2", "--d", "0,3", "--e", "0", "--t", "1"]);
    assert_eq!(code, 1);
    assert!(String::from_utf8(out).unwrap().contains("d_1 > half_rank"));
}

#[test]
fn binary_exit_codes_and_env_bound() {
    let bin = env!("CARGO_BIN_EXE_lagflag");
    let status = |args: &[&str], env: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args).env_remove("LAGFLAG_MAX_N");
        if let Some(v) = env {
            c.env("LAGFLAG_MAX_N", v);
        }
        c.output().unwrap()
    };
    let o = status(&["verify", "--max-n", "8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("all suites passed"));
    assert_eq!(status(&["enumerate", "-n", "17"], None).status.code(), Some(2));
    assert_eq!(status(&["enumerate", "-n", "3"], Some("2")).status.code(), Some(2));
    assert_eq!(status(&["verify", "--max-n", "11"], Some("11")).status.code(), Some(0));
    assert_eq!(status(&["enumerate", "-n", "1"], Some("x")).status.code(), Some(2));
    assert_eq!(status(&["--help"], None).status.code(), Some(0));
}
