#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write as _;

use common::{ap_11a, eta11, primes_below};
use eulerprod::coeffio::read_any;
use eulerprod_cli::run;

fn cli_bytes(args: &[&str]) -> (i32, Vec<u8>, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eulerprod").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, out, String::from_utf8(err).unwrap())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (code, out, err) = cli_bytes(args);
    (code, String::from_utf8(out).unwrap(), err)
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

/// Second column of index-first text output.
fn column(text: &str) -> Vec<i64> {
    text.lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect()
}

fn json_file(v: serde_json::Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

fn a11(p: u64) -> i64 {
    match p {
        2 => -2,
        11 => 1,
        _ => ap_11a(p),
    }
}

/// Level-11 factor file with a_p from point counts below n.
fn level11_file(n: usize) -> tempfile::NamedTempFile {
    let primes: serde_json::Map<String, serde_json::Value> = primes_below(n)
        .into_iter()
        .map(|p| {
            let a = a11(p);
            let c = if p == 11 { vec![1, -a] } else { vec![1, -a, p as i64] };
            (p.to_string(), serde_json::json!(c))
        })
        .collect();
    json_file(serde_json::json!({ "primes": primes, "ramified": [11], "weight": 1 }))
}

#[test]
fn documented_examples() {
    let out = ok(&["eisenstein", "--weight", "1", "--phi", "23,1", "--psi", "23,22", "--length", "4"]);
    assert_eq!(out, "1 1\n2 2\n3 2\n4 3\n");
    let out = ok(&["sieve", "--length", "20", "--print-decomps"]);
    assert!(out.lines().any(|l| l == "6 = 2 * 3"));
    assert!(out.lines().any(|l| l == "12 = 4 * 3"));
    assert!(out.lines().any(|l| l == "primes=8"));
    let out = ok(&["mf-coefs", "--decomp", "level11.json", "--length", "100", "--all"]);
    assert!(out.starts_with("1 1\n2 -2\n3 -1\n"));
    assert_eq!(out.lines().count(), 100);
}

#[test]
fn mf_coefs_modes_and_threads() {
    let all = ok(&["mf-coefs", "--decomp", "level11", "--length", "3000"]);
    assert_eq!(column(&all), eta11(3000)[1..].to_vec());
    let primes = ok(&["mf-coefs", "--decomp", "level11", "--length", "3000", "--primes-only"]);
    let expect: String = primes_below(3001)
        .into_iter()
        .map(|p| format!("{p} {}\n", eta11(3000)[p as usize]))
        .collect();
    assert_eq!(primes, expect);
    let threaded = ok(&["mf-coefs", "--decomp", "level35g", "--length", "2000", "--threads", "3"]);
    assert_eq!(threaded, ok(&["mf-coefs", "--decomp", "level35g", "--length", "2000"]));
    // level 43 on (1, y): a_2 = y
    let l43 = ok(&["mf-coefs", "--decomp", "level43", "--length", "3"]);
    assert_eq!(l43, "1 1 0\n2 0 1\n3 0 -1\n");
}

#[test]
fn explicit_prime_and_decomposition_file() {
    let dec = json_file(serde_json::from_str(eulerprod::corpus::source("level23").unwrap()).unwrap());
    let path = dec.path().to_str().unwrap();
    let a = ok(&["mf-coefs", "--decomp", path, "--length", "500"]);
    let q = eulerprod::find_fft_prime(1 << 12, &[22], 55).unwrap().q.to_string();
    let b = ok(&["mf-coefs", "--decomp", "level23", "--length", "500", "--prime", &q]);
    assert_eq!(a, b);
}

#[test]
fn binary_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("c.bin");
    let txt = dir.path().join("c.txt");
    let args = ["mf-coefs", "--decomp", "level35g", "--length", "400"];
    let mut with_bin = args.to_vec();
    with_bin.extend(["--binary", "--out", bin.to_str().unwrap()]);
    let mut with_txt = args.to_vec();
    with_txt.extend(["--out", txt.to_str().unwrap()]);
    assert_eq!(ok(&with_bin), "");
    assert_eq!(ok(&with_txt), "");
    let bytes = std::fs::read(&bin).unwrap();
    assert_eq!(&bytes[..4], b"LSER");
    let from_bin = read_any(&bytes).unwrap();
    let from_txt = read_any(&std::fs::read(&txt).unwrap()).unwrap();
    assert_eq!(from_bin, from_txt);
    assert_eq!(from_bin.width, 2);
    assert_eq!(std::fs::read_to_string(&txt).unwrap(), ok(&args));
}

#[test]
fn output_is_deterministic() {
    let args = ["eisenstein", "--weight", "2", "--phi", "23,5", "--psi", "23,7", "--length", "300", "--binary"];
    let (c1, a, _) = cli_bytes(&args);
    let (c2, b, _) = cli_bytes(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(read_any(&a).unwrap().len(), 300);
}

#[test]
fn eisenstein_rings() {
    // order 22: coordinates on powers of zeta_22, Q(zeta_22) has degree 10
    let out = ok(&["eisenstein", "--weight", "2", "--phi", "1,1", "--psi", "23,5", "--length", "3"]);
    assert!(out.lines().all(|l| l.split_whitespace().count() == 11));
    // sigma_3 stays below q
    let q = "463";
    let out = ok(&["eisenstein", "--weight", "4", "--phi", "1,1", "--psi", "1,1", "--length", "6", "--prime", q]);
    assert_eq!(column(&out), vec![1, 9, 28, 73, 126, 252]);
    // E_4 constant term 1/240 over Q
    let out = ok(&["eisenstein", "--weight", "4", "--phi", "1,1", "--psi", "1,1", "--length", "2", "--constant"]);
    assert_eq!(out, "0 1/240\n1 1\n2 9\n");
    let (code, _, err) = cli(&[
        "eisenstein", "--weight", "4", "--phi", "1,1", "--psi", "1,1", "--length", "2", "--constant", "--binary",
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn euler_expand_and_tensor() {
    let n = 600;
    let f = level11_file(n);
    let path = f.path().to_str().unwrap();
    let len = (n - 1).to_string();
    assert_eq!(column(&ok(&["euler-expand", "--factors", path, "--length", &len])), eta11(n - 1)[1..].to_vec());

    let zeta = json_file(serde_json::json!({ "default": [1, -1] }));
    let z = zeta.path().to_str().unwrap();
    let out = ok(&["euler-expand", "--factors", z, "--length", "12"]);
    assert_eq!(column(&out), vec![1; 12]);
    // f x zeta = f
    let t = ok(&["tensor", "--factors", path, "--factors", z, "--length", &len]);
    assert_eq!(column(&t), eta11(n - 1)[1..].to_vec());
    // f x f needs a factor at 11
    let (code, _, err) = cli(&["tensor", "--factors", path, "--factors", path, "--length", "30"]);
    assert_eq!(code, 3);
    assert!(err.contains("[lprod]"), "{err}");
    let ff = ok(&["tensor", "--factors", path, "--factors", path, "--length", "30", "--override", "11=1,-1"]);
    let a = eta11(30);
    // Rankin-Selberg: a_4(f x f) = a_4^2 + 4 a_1^2
    assert_eq!(column(&ff)[3], a[4] * a[4] + 4);
    assert_eq!(column(&ff)[10], a[11] * a[11]);
}

#[test]
fn symmetric_square() {
    let n = 400;
    let f = level11_file(n);
    let path = f.path().to_str().unwrap();
    let out = ok(&["sympow", "--factors", path, "--power", "2", "--length", "399"]);
    let col = column(&out);
    for p in primes_below(n) {
        let a = a11(p);
        let expect = if p == 11 { a * a } else { a * a - p as i64 };
        assert_eq!(col[p as usize - 1], expect, "p = {p}");
    }
}

#[test]
fn triple_product_prefix() {
    let out = ok(&["triple", "--f", "level35f", "--g", "level35g", "--h", "level35h", "--level", "35", "--length", "13"]);
    assert_eq!(column(&out), vec![1, 0, -4, 8, -11, 0, 15, 0, 13, 0, 12, -32, 10]);
    let (code, _, _) = cli(&["triple", "--f", "level35f", "--g", "level43", "--h", "level35h", "--level", "35", "--length", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn bench_reports_metrics() {
    for target in ["sieve", "eisenstein", "euler", "mf"] {
        let out = ok(&["bench", "--target", target, "--length", "5000"]);
        let keys: Vec<&str> = out.lines().map(|l| l.split_once('=').unwrap().0).collect();
        assert!(keys.contains(&"wall_ms"), "{target}: {out}");
        if target == "eisenstein" || target == "euler" {
            assert!(keys.contains(&"muls") && keys.contains(&"adds"), "{target}: {out}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["sieve"]).0, 2);
    assert_eq!(cli(&["eisenstein", "--weight", "1", "--phi", "23", "--psi", "1,1", "--length", "3"]).0, 2);
    let (code, _, err) = cli(&["mf-coefs", "--decomp", "level99", "--length", "10"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error [args]"), "{err}");
    let (code, _, err) = cli(&["sieve", "--length", "5000000000"]);
    assert_eq!(code, 4);
    assert!(err.contains("[capacity]"), "{err}");
    let (code, _, err) = cli(&["eisenstein", "--weight", "2", "--phi", "23,5", "--psi", "1,1", "--length", "3", "--prime", "97"]);
    assert_eq!(code, 2);
    assert!(err.contains("[chars]"), "{err}");
    let bad = json_file(serde_json::json!({ "primes": { "2": [2, 1] } }));
    assert_eq!(cli(&["euler-expand", "--factors", bad.path().to_str().unwrap(), "--length", "5"]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("mf-coefs"));
}
