use std::path::PathBuf;

/// CLI invocations with checked-in expected output: (file name, arguments).
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("enumerate_3.txt", &["enumerate", "-n", "3"]),
    ("enumerate_2.json", &["enumerate", "-n", "2", "--format", "json"]),
    ("classify_HHH.txt", &["classify", "HHH"]),
    ("classify_VHV.json", &["classify", "VHV", "--format", "json"]),
    ("scheme_xi0_HH.txt", &["scheme", "--diagram", "HH", "--map", "xi0"]),
    ("scheme_F2.json", &["scheme", "--name", "F2", "--half-rank", "4", "--format", "json"]),
    ("canonical_lf12_symbolic.txt", &["canonical", "--d", "1,2", "--e", "0", "--t", "1", "--half-rank", "N"]),
    ("canonical_lf13_symbolic.json", &["canonical", "--d", "1,3", "--e", "0", "--t", "2", "--half-rank", "N", "--format", "json"]),
    ("canonical_q3_relative.txt", &["canonical", "--d", "1,2", "--e", "0", "--t", "1", "--half-rank", "3", "--relative-to", "2"]),
    ("basis_2_O.json", &["basis", "-n", "2", "--twist", "O", "--format", "json"]),
    ("basis_2_Delta.txt", &["basis", "-n", "2", "--twist", "Delta"]),
    ("basis_3_O.csv", &["basis", "-n", "3", "--twist", "O", "--format", "csv"]),
    ("basis_1_k.csv", &["basis", "-n", "1", "--theory", "k", "--format", "csv"]),
    ("recursion_3.txt", &["recursion", "-n", "3"]),
    ("recursion_4.json", &["recursion", "-n", "4", "--format", "json"]),
    ("witt_2_O.txt", &["witt", "-n", "2", "--twist", "O"]),
    ("witt_3_Delta.json", &["witt", "-n", "3", "--twist", "Delta", "--format", "json"]),
    ("connecting_3_2_00.txt", &["classify-connecting", "--c1", "3", "--c2", "2", "--lambda", "0,0"]),
    ("connecting_4_2_delta.json", &["classify-connecting", "--c1", "4", "--c2", "2", "--twist", "Delta", "--format", "json"]),
    ("verify_6.txt", &["verify", "--max-n", "6"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

/// Runs the CLI in-process; returns (exit status, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lagflag").chain(args.iter().copied());
    let code = lagflag::cli::run(argv, &mut out, &mut err);
    (code, out, err)
}
