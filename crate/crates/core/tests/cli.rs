use std::process::Command;

fn eulersum(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_eulersum"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn avg_constant_gives_six_ones() {
    let (out, _, code) = eulersum(&["avg", "--seq", "const:1", "--r", "1/2", "--N", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,1,0\n1,1,0\n2,1,0\n3,1,0\n4,1,0\n5,1,0\n");
}

#[test]
fn avg_convolved_exact_final_row() {
    let (out, _, code) = eulersum(&[
        "avg",
        "--seq",
        "conv(const:1;finite:1/3,1/3,1/3)",
        "--r",
        "1/2",
        "--N",
        "4",
        "--mode",
        "exact",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last(), Some("4,7/8,0"));
}

#[test]
fn avg_alternating() {
    let (out, _, _) = eulersum(&["avg", "--seq", "geom:-1", "--r", "1/2", "--N", "3"]);
    let re: Vec<_> = out.lines().map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(re, ["1", "0", "0", "0"]);
}

#[test]
fn float_rows_are_lossless() {
    let (out, _, _) = eulersum(&["avg", "--seq", "geom:-1/3+1/7i", "--r", "0.3", "--N", "20", "--mode", "float"]);
    for line in out.lines() {
        let cols: Vec<_> = line.split(',').collect();
        for col in &cols[1..] {
            let v: f64 = col.parse().unwrap();
            assert_eq!(&format!("{v:.16e}"), col);
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(eulersum(&["avg", "--seq", "const:", "--N", "2"]).2, 2);
    assert_eq!(eulersum(&["avg", "--seq", "const:1", "--r", "1", "--N", "2"]).2, 3);
    assert_eq!(eulersum(&["avg", "--seq", "file:/no/such/file", "--N", "2"]).2, 2);
    assert_eq!(eulersum(&["compose", "--kind", "weighted", "--seq", "geom:2", "--N", "20"]).2, 3);
    assert_eq!(eulersum(&["compose", "--kind", "weighted", "--seq", "geom:-1"]).2, 4);
    let (_, err, code) = eulersum(&["compose", "--kind", "main", "--seq", "geom:-5", "--N", "30"]);
    assert_eq!(code, 4);
    assert!(err.contains("error:"));
}

#[test]
fn out_file_feeds_back_as_a_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("avg.txt");
    let path_str = path.to_str().unwrap();
    let (out, _, code) = eulersum(&[
        "avg", "--seq", "periodic:1,-1/2", "--r", "1/3", "--N", "6", "--values", "--out", path_str,
    ]);
    assert_eq!((out.as_str(), code), ("", 0));

    let seq = format!("file:{path_str}");
    let (out, _, code) = eulersum(&["avg", "--seq", &seq, "--r", "1/2", "--N", "6", "--mode", "exact"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    let (_, _, code) = eulersum(&["avg", "--seq", &seq, "--r", "1/2", "--N", "7"]);
    assert_eq!(code, 3);
}

#[test]
fn counterexample_reports() {
    let (out, _, code) = eulersum(&["counterexample"]);
    assert_eq!(code, 0);
    assert!(out.contains("convolved prefix: (1/3, 2/3, 1, 1, 1, …)"));
    assert!(out.contains("incorrect rhs L*(lambda_0 + sum lambda_n r^(n-1)): 8.3333333333333326e-1"));
    assert!(out.contains("verdict: incorrect formula refuted"));

    let (exact, _, _) = eulersum(&["counterexample", "--N", "60", "--mode", "exact"]);
    assert!(exact.contains("correct rhs L*sum(lambda): 1\n"));
    assert!(exact.contains("incorrect rhs L*(lambda_0 + sum lambda_n r^(n-1)): 5/6\n"));

    // The incorrect value moves with r; the estimate stays at 1.
    let (other_r, _, code) = eulersum(&["counterexample", "--r", "3/10"]);
    assert_eq!(code, 0);
    assert!(other_r.contains("r^(n-1)): 7.6666666666666"));
    assert!(other_r.contains("limit of E_N (lambda * x): 9.99999999999"));
    assert!(other_r.contains("verdict: incorrect formula refuted"));

    let (short, _, code) = eulersum(&["counterexample", "--r", "3/10", "--N", "60", "--mode", "exact"]);
    assert_eq!(code, 4);
    assert!(short.contains("r^(n-1)): 23/30\n"));
    assert!(short.contains("verdict: inconclusive"));

    let (ident, _, _) = eulersum(&["counterexample", "--profile", "finite:1"]);
    assert!(ident.contains("verdict: formulas coincide"));
}

#[test]
fn verify_identities_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ids.csv");
    let (out, _, code) = eulersum(&["verify-identities", "--n-max", "25", "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("2900 cases, 0 violations"));
    assert!(out.contains("first violation at (n,k,l) = (3,0,2), S = 2"));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("n,k,l,lhs,rhs,ok\n"));
    assert_eq!(text.lines().count(), 2901);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["compose", "--kind", "r-independence", "--seq", "conv(const:1;finite:1/3,1/3,1/3)", "--r", "0.7", "--r-prime", "0.3"][..],
        &["compose", "--kind", "main", "--seq", "sum(const:1;geom:-1)", "--profile", "geomtail:c=1/2,ratio=1/2"][..],
        &["avg", "--seq", "geom:1/2i", "--N", "30"][..],
    ] {
        let a = eulersum(args);
        assert_eq!(a.2, 0, "{}", a.1);
        assert_eq!(a, eulersum(args));
    }
}
