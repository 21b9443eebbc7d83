use std::path::{Path, PathBuf};
use std::process::Command;

use lieaut::io::{algebra_from_json, decomposition_from_json, parse_matrix};
use lieaut::{automorphisms::is_automorphism, QMatrix};
use tempfile::TempDir;

const A48: &str = r#"{"dim":4,"label":"A_{4,8}","brackets":[
  {"i":2,"j":3,"k":1,"c":"1"},{"i":2,"j":4,"k":2,"c":"1"},{"i":3,"j":4,"k":3,"c":"-1"}]}"#;
const A21: &str = r#"{"dim":2,"brackets":[{"i":1,"j":2,"k":1,"c":"1"}]}"#;
const A31: &str = r#"{"dim":3,"brackets":[{"i":2,"j":3,"k":1,"c":"1"}]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn lieaut(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["lieaut"];
    argv.extend_from_slice(args);
    let code = lieaut_cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Matrices printed in a report, delimited by text lines.
fn printed_matrices(out: &str) -> Vec<QMatrix> {
    let mut res = Vec::new();
    let mut buf = String::new();
    for line in out.lines() {
        if line.starts_with(char::is_alphabetic) {
            if !buf.trim().is_empty() {
                res.push(parse_matrix(&buf).unwrap());
            }
            buf.clear();
        } else {
            buf.push_str(line);
            buf.push('\n');
        }
    }
    res
}

#[test]
fn delta2_passes_and_p1_reports_the_violated_triple() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a48.json", A48);
    let d2 = write(&dir, "d2.txt", "-1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 -1\n");
    let p1 = write(&dir, "p1.json", r#"[["-1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]"#);

    let (code, out) = lieaut(&["aut-check", s(&alg), "--matrix", s(&d2)]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));

    let (code, out) = lieaut(&["aut-check", s(&alg), "--matrix", s(&p1)]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l == "FAIL equation (2,3,1)"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("FAIL equation")).count(), 1);

    let (code, _) = lieaut(&["aut-check", s(&alg), "--matrix", s(&d2), "--numeric"]);
    assert_eq!(code, 0);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a48.json", A48);
    let p1 = write(&dir, "p1.txt", "-1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let bin = env!("CARGO_BIN_EXE_lieaut");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let o = run(&["validate", s(&alg)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["aut-check", s(&alg), "--matrix", s(&p1)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL equation (2,3,1)"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent.json"]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "1 x\n0 1\n");
    assert_eq!(run(&["aut-check", s(&alg), "--matrix", s(&bad)]).status.code(), Some(2));
}

#[test]
fn catalog_verify_passes() {
    let (code, out) = lieaut(&["catalog-verify", "--samples", "20", "--seed", "1"]);
    assert_eq!(code, 0, "{}", out.lines().filter(|l| l.starts_with("FAIL")).collect::<Vec<_>>().join("\n"));
    assert!(out.lines().last().unwrap().ends_with(", 0 failed"));
    assert!(out.contains("PASS A_{5,17}^{u,v,w} [u=1,v=-2,w=1] B_2 rejected"));
    let (_, again) = lieaut(&["catalog-verify", "--samples", "20", "--seed", "1"]);
    assert_eq!(out, again);
}

#[test]
fn catalog_list_and_lookup_errors() {
    let (code, out) = lieaut(&["catalog-list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 28);
    assert!(out.lines().any(|l| l.starts_with("A_{3,8}\t")));
    let (code, out) = lieaut(&["aut-sample", "--catalog", "A_{4,2}"]);
    assert_eq!(code, 2);
    assert!(out.contains("ambiguous"));
    let (code, out) = lieaut(&["aut-sample", "--catalog", "A_{3,5}", "--params", "u=2"]);
    assert_eq!(code, 2);
    assert!(out.contains("constraint"));
}

#[test]
fn sampled_matrices_reparse_as_automorphisms() {
    let (code, out) = lieaut(&["aut-sample", "--catalog", "A_{4,8}", "--count", "5", "--seed", "9"]);
    assert_eq!(code, 0);
    let alg = lieaut::catalog::instantiate("A_{4,8}", &Default::default()).unwrap();
    let ms = printed_matrices(&out);
    assert_eq!(ms.len(), 5);
    for m in &ms {
        assert!(is_automorphism(&alg, m).unwrap());
    }
    let (_, again) = lieaut(&["aut-sample", "--catalog", "A_{4,8}", "--count", "5", "--seed", "9"]);
    assert_eq!(out, again);

    let (code, out) = lieaut(&[
        "aut-sample",
        "--catalog",
        "A_{5,17}",
        "--params",
        "u=1,v=-1,w=1",
        "--numeric",
        "--count",
        "3",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn aut_sample_from_descriptor_file() {
    let dir = TempDir::new().unwrap();
    let doc = format!(
        r#"{{"algebra": {A48}, "descriptor": {{"dim":4,"discrete":["p12",{{"tuple":["-X_1","X_3","X_2","-X_4"]}}],
        "outer":[{{"terms":[{{"i":1,"j":1,"c":"1"}},{{"i":3,"j":3,"c":"1"}}]}},"E_4^1"],"block":"(1,1,1,1)"}}}}"#
    );
    let f = write(&dir, "desc.json", &doc);
    let (code, out) = lieaut(&["aut-sample", s(&f), "--count", "4", "--seed", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(printed_matrices(&out).len(), 4);
    let broken = write(&dir, "broken.json", &doc.replace("\"p12\"", "\"p15\""));
    assert_eq!(lieaut(&["aut-sample", s(&broken)]).0, 2);
}

#[test]
fn transpose_flag() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a48.json", A48);
    let (code, out) = lieaut(&["inner", s(&alg), "--j", "2", "--eps", "1"]);
    assert_eq!(code, 0);
    let m = &printed_matrices(&out)[0];
    let (_, out_t) = lieaut(&["--transpose", "inner", s(&alg), "--j", "2", "--eps", "1"]);
    assert_eq!(&printed_matrices(&out_t)[0], &m.transpose());
    assert_eq!(m.get(2, 0), &lieaut::scalar::int(-1));
    assert_eq!(m.get(3, 1), &lieaut::scalar::int(-1));
}

#[test]
fn inner_falls_back_to_numeric() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a48.json", A48);
    let (code, out) = lieaut(&["inner", s(&alg), "--j", "4", "--eps", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS automorphism (numeric)"));
    let m: lieaut::FMatrix = parse_matrix(out.lines().take(4).collect::<Vec<_>>().join("\n").as_str()).unwrap();
    assert!((m.get(1, 1) - std::f64::consts::E).abs() < 1e-12);
    assert!((m.get(2, 2) - (-1f64).exp()).abs() < 1e-12);
    assert_eq!(lieaut(&["inner", s(&alg), "--j", "5", "--eps", "1"]).0, 2);
}

#[test]
fn validate_reports_jacobi_failure() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":1,"j":3,"k":1,"c":"1"}]}"#,
    );
    let (code, out) = lieaut(&["validate", s(&bad)]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL jacobi (1,2,3)"), "{out}");
    let unordered = write(&dir, "u.json", r#"{"dim":2,"brackets":[{"i":2,"j":1,"k":1,"c":"1"}]}"#);
    assert_eq!(lieaut(&["validate", s(&unordered)]).0, 2);
}

#[test]
fn sum_decompose_and_sum_aut() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a21.json", A21);
    let b = write(&dir, "a31.json", A31);
    let total = dir.path().join("sum.json");
    let (code, _) = lieaut(&["sum", s(&a), s(&b), s(&b), "--out", s(&total)]);
    assert_eq!(code, 0);
    let alg = algebra_from_json(&std::fs::read_to_string(&total).unwrap()).unwrap();
    assert_eq!(alg.dim(), 8);

    let (code, out) = lieaut(&["invariants", s(&total)]);
    assert_eq!(code, 0);
    assert!(out.contains("centre (dim 2): X_3 X_6"), "{out}");
    assert!(out.contains("derived (dim 3): X_1 X_3 X_6"), "{out}");

    for seed in ["0", "1", "2"] {
        let (code, out) = lieaut(&["decompose", s(&total), "--seed", seed, "--json"]);
        assert_eq!(code, 0);
        let json = &out[..out.rfind("PASS").unwrap()];
        let dec = decomposition_from_json(&alg, json).unwrap();
        let mut dims = dec.dims();
        dims.sort();
        assert_eq!(dims, vec![2, 3, 3]);
    }

    let (code, out) = lieaut(&[
        "sum-aut",
        s(&total),
        "--components",
        "A_{2,1}",
        "A_{3,1}",
        "A_{3,1}",
        "--count",
        "6",
        "--seed",
        "4",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("zeta space dim 10"));
    assert!(out.contains("permutation 1,3,2"));
    let ms = printed_matrices(&out);
    assert_eq!(ms.len(), 6);
    let swap = ms
        .iter()
        .find(|m| !m.get(2, 5).eq(&lieaut::scalar::int(0)) || !m.get(3, 6).eq(&lieaut::scalar::int(0)))
        .unwrap();
    let mf = write(&dir, "b.txt", &lieaut::io::format_matrix(swap));
    let (code, out) = lieaut(&[
        "sum-aut",
        s(&total),
        "--components",
        "A_{2,1}",
        "A_{3,1}",
        "A_{3,1}",
        "--matrix",
        s(&mf),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("permutation 1,3,2"));

    let (code, out) = lieaut(&["sum-aut", s(&total), "--components", "A_{2,1}", "A_{3,1}"]);
    assert_eq!(code, 2, "{out}");
}
