use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsim"))
        .args(args)
        .output()
        .expect("dsim binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dsim(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn encode_writes_integer_header() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    ok(&[
        "encode",
        "--scheme",
        "int",
        "--dist",
        "geometric:p=0.7",
        "-n",
        "10000",
        "--seed",
        "1",
        "-o",
        p(&w),
    ]);
    let bytes = fs::read(&w).unwrap();
    assert_eq!(&bytes[..4], b"DSIM");
    assert_eq!(bytes[4], 1);
    assert_eq!(bytes[5], 1);
    assert_eq!(u64::from_le_bytes(bytes[6..14].try_into().unwrap()), 10_000);

    let text = ok(&["decode", "-i", p(&w), "--seed", "4"]);
    let values: Vec<u64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 10_000);
    assert!(values.iter().all(|&v| v >= 1));
}

#[test]
fn decode_seeds_permute_the_same_multiset() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    ok(&[
        "encode",
        "--scheme",
        "int",
        "--dist",
        "zipf:s=3",
        "-n",
        "2000",
        "--seed",
        "5",
        "-o",
        p(&w),
    ]);
    let a: Vec<u64> = ok(&["decode", "-i", p(&w), "--seed", "1"])
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    let b: Vec<u64> = ok(&["decode", "-i", p(&w), "--seed", "2"])
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_ne!(a, b);
    let (mut sa, mut sb) = (a.clone(), b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    assert_eq!(sa, sb);
}

#[test]
fn unit_and_halfline_files_decode() {
    let dir = tempfile::tempdir().unwrap();
    for (scheme, dist, hi) in [
        ("unit", "triangular", 1.0),
        ("halfline", "exp:lambda=1", f64::INFINITY),
    ] {
        let w = dir.path().join(format!("{scheme}.dsim"));
        ok(&[
            "encode",
            "--scheme",
            scheme,
            "--dist",
            dist,
            "-n",
            "100",
            "--seed",
            "2",
            "-o",
            p(&w),
        ]);
        let csv = ok(&["decode", "-i", p(&w), "--format", "csv"]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("value"));
        let xs: Vec<f64> = lines.map(|l| l.parse().unwrap()).collect();
        assert_eq!(xs.len(), 100);
        assert!(xs.iter().all(|&x| (0.0..hi).contains(&x)));
    }
}

#[test]
fn decode_output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    let o = dir.path().join("out.txt");
    ok(&[
        "encode",
        "--scheme",
        "unit",
        "--dist",
        "uniform",
        "-n",
        "50",
        "-o",
        p(&w),
    ]);
    let stdout = ok(&["decode", "-i", p(&w), "--seed", "9"]);
    ok(&["decode", "-i", p(&w), "--seed", "9", "-o", p(&o)]);
    assert_eq!(fs::read_to_string(&o).unwrap(), stdout);
}

#[test]
fn scheme_dist_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    let out = dsim(&[
        "encode",
        "--scheme",
        "unit",
        "--dist",
        "geometric:p=0.7",
        "-n",
        "10",
        "-o",
        p(&w),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("compatibility"));
    assert!(!w.exists());
    let out = dsim(&[
        "encode",
        "--scheme",
        "int",
        "--dist",
        "poisson:l=2",
        "-n",
        "10",
        "-o",
        p(&w),
    ]);
    assert!(!out.status.success());
}

#[test]
fn truncated_file_names_the_failing_stage() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    ok(&[
        "encode",
        "--scheme",
        "int",
        "--dist",
        "geometric:p=0.7",
        "-n",
        "10000",
        "--seed",
        "1",
        "-o",
        p(&w),
    ]);
    let bytes = fs::read(&w).unwrap();

    let short = dir.path().join("short.dsim");
    fs::write(&short, &bytes[..bytes.len() - 3]).unwrap();
    let out = dsim(&["decode", "-i", p(&short)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing container header"));

    let header_only = dir.path().join("header.dsim");
    fs::write(&header_only, &bytes[..10]).unwrap();
    let out = dsim(&["decode", "-i", p(&header_only)]);
    assert!(!out.status.success());

    // header claims fewer values than the payload holds
    let mut lying = bytes.clone();
    lying[6..14].copy_from_slice(&5000u64.to_le_bytes());
    let bad = dir.path().join("bad.dsim");
    fs::write(&bad, lying).unwrap();
    let out = dsim(&["decode", "-i", p(&bad)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("decoding integer payload"));

    let out = dsim(&["decode", "-i", p(&dir.path().join("missing.dsim"))]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}

fn parse_bench(csv: &str) -> (Vec<Vec<String>>, f64) {
    let mut rows: Vec<Vec<String>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    let summary = rows.pop().unwrap();
    assert_eq!(summary[2], "summary");
    (rows, summary[7].parse().unwrap())
}

#[test]
fn bench_unit_slope_below_one() {
    let csv = ok(&[
        "bench",
        "--scheme",
        "unit",
        "--dist",
        "triangular",
        "--n-list",
        "100,1000,10000",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert!(csv.starts_with("scheme,dist,n,trials,mean_bits,stderr_bits,bound_bits,slope\n"));
    let (rows, slope) = parse_bench(&csv);
    assert_eq!(rows.len(), 3);
    assert!(slope < 1.0, "slope {slope}");
}

#[test]
fn bench_integer_means_under_bounds() {
    let csv = ok(&[
        "bench",
        "--scheme",
        "int",
        "--dist",
        "geometric:p=0.7",
        "--n-list",
        "100,1000,10000",
        "--trials",
        "30",
        "--seed",
        "7",
    ]);
    let (rows, _) = parse_bench(&csv);
    for row in rows {
        let mean: f64 = row[4].parse().unwrap();
        let bound: f64 = row[6].parse().unwrap();
        assert!(mean <= bound, "{row:?}");
    }
}

#[test]
fn bench_quotes_dist_with_commas() {
    let csv = ok(&[
        "bench",
        "--scheme",
        "halfline",
        "--dist",
        "pareto_flat:c=2,lambda=2",
        "--n-list",
        "10,100",
        "--trials",
        "3",
    ]);
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("halfline,\"pareto_flat:c=2,lambda=2\",10,3,"));
}

#[test]
fn bound_values() {
    let v: f64 = ok(&["bound", "--theorem", "3", "--f0", "2", "-n", "10000"])
        .trim()
        .parse()
        .unwrap();
    assert!((v - 9.31e4).abs() < 0.01e4, "{v}");
    let v: f64 = ok(&[
        "bound",
        "--theorem",
        "1",
        "--c",
        "2",
        "--lambda",
        "2",
        "-n",
        "1",
    ])
    .trim()
    .parse()
    .unwrap();
    assert!((v - 200.0).abs() < 1e-9);
    let out = dsim(&["bound", "--theorem", "2", "--c", "2", "-n", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--lambda"));
    assert!(!dsim(&["bound", "--theorem", "7", "--f0", "1", "-n", "1"])
        .status
        .success());
}

#[test]
fn exact_length_rows_nondecreasing() {
    let csv = ok(&[
        "exact-length",
        "--dist",
        "triangular",
        "--n-list",
        "100,1000",
        "--kmax",
        "8",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "dist,n,k_max,expected_bits,bound_bits");
    assert_eq!(lines.len(), 3);
    let vals: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!(vals[0] <= vals[1]);
    assert!(!dsim(&[
        "exact-length",
        "--dist",
        "geometric:p=0.5",
        "--n-list",
        "10"
    ])
    .status
    .success());
    assert!(
        !dsim(&["exact-length", "--dist", "exp:lambda=1", "--n-list", "10"])
            .status
            .success()
    );
}

#[test]
fn verify_halfline_exponential() {
    let out = ok(&[
        "verify",
        "--scheme",
        "halfline",
        "--dist",
        "exp:lambda=1",
        "-n",
        "10000",
        "--trials",
        "100",
        "--seed",
        "3",
    ]);
    assert!(out.contains("result=PASS"), "{out}");
    let rate: f64 = out
        .split_whitespace()
        .find_map(|t| t.strip_prefix("pass_rate="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(rate >= 0.9);
}

#[test]
fn verify_failure_exits_nonzero() {
    // demanding more than every trial passing cannot be met
    let out = dsim(&[
        "verify",
        "--scheme",
        "int",
        "--dist",
        "geometric:p=0.7",
        "-n",
        "100",
        "--trials",
        "5",
        "--min-pass-rate",
        "1.01",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("result=FAIL"));
}

#[test]
fn zero_samples_give_empty_payload() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.dsim");
    ok(&[
        "encode",
        "--scheme",
        "unit",
        "--dist",
        "triangular",
        "-n",
        "0",
        "-o",
        p(&w),
    ]);
    assert_eq!(fs::read(&w).unwrap().len(), 22);
    assert_eq!(ok(&["decode", "-i", p(&w)]), "");
}
