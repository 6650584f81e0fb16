use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_beatty-lab"));
    c.env_remove("BEATTY_LAB_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// One small invocation per subcommand, named after its golden file.
const CASES: &[(&str, &[&str])] = &[
    ("sieve", &["sieve", "--f", "tau2", "--n", "100"]),
    ("sieve_growth", &["sieve", "--f", "one", "--n", "64", "--growth"]),
    ("membership", &["membership", "--alpha", "quad:0,1,2,1", "--m", "9,10"]),
    ("decompose", &["decompose", "--f", "tau2", "--alpha", "quad:0,1,2,1", "--x", "1000"]),
    ("error_curve", &["error-curve", "--f", "tau2", "--alpha", "quad:0,1,2,1", "--xmax", "1000"]),
    ("q_energy", &["q-energy", "--f", "tau2", "--x", "64"]),
    ("maximal_l2", &["maximal-l2", "--f", "tau2", "--X", "256", "--samples", "4", "--seed", "42"]),
    ("lil", &["lil", "--lambda", "dec:0.70710678118654752440", "--X", "1000", "--seeds", "2", "--seed", "7"]),
    ("lower_bound", &["lower-bound", "--lambda", "quad:0,1,2,2", "--X", "1000", "--seeds", "2"]),
    ("carleson", &["carleson-check", "--Y", "16", "--samples", "4"]),
];

#[test]
fn golden_headers() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in CASES {
        let out = stdout(args);
        let head: Vec<&str> = out.lines().take(2).collect();
        let golden = std::fs::read_to_string(dir.join(format!("{name}.txt"))).unwrap();
        let want: Vec<&str> = golden.lines().collect();
        assert_eq!(head, want, "{name}");
    }
}

#[test]
fn comment_line_records_version_and_seed() {
    let out = stdout(&["lower-bound", "--lambda", "quad:0,1,2,2", "--X", "100", "--seeds", "1", "--seed", "9"]);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with(&format!("# beatty-lab v{} seed=9 cmd=lower-bound ", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in CASES {
        let mut files = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{name}-{k}.out"));
            let mut full: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--out", &p]);
            let out = run(&full);
            assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{name}");
        assert!(!files[0].is_empty());
    }
}

#[test]
fn seed_changes_random_output() {
    let a = stdout(&["lower-bound", "--lambda", "quad:0,1,2,2", "--X", "1000", "--seeds", "2", "--seed", "1"]);
    let b = stdout(&["lower-bound", "--lambda", "quad:0,1,2,2", "--X", "1000", "--seeds", "2", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn zero_function_decomposes_to_zero() {
    let out = stdout(&["decompose", "--f", "zero", "--alpha", "quad:0,1,2,1", "--x", "500"]);
    let row = out.lines().nth(2).unwrap();
    let cells: Vec<&str> = row.rsplitn(11, ',').collect();
    // the ten numeric columns after alpha, beta, x
    for c in &cells[..10] {
        assert_eq!(c.parse::<f64>().unwrap(), 0.0, "{row}");
    }
}

#[test]
fn json_mirrors_csv_rows() {
    let csv = stdout(&["error-curve", "--f", "id", "--alpha", "quad:0,1,2,1", "--xmax", "200"]);
    let json = stdout(&["error-curve", "--f", "id", "--alpha", "quad:0,1,2,1", "--xmax", "200", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let lines: Vec<&str> = csv.lines().skip(2).collect();
    assert_eq!(rows.len(), lines.len());
    let header: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    for (row, line) in rows.iter().zip(&lines) {
        let obj = row.as_object().unwrap();
        assert_eq!(obj.keys().map(String::as_str).collect::<Vec<_>>(), header);
        let x: u64 = line.split(',').next().unwrap().parse().unwrap();
        assert_eq!(obj["x"].as_u64(), Some(x));
    }
}

#[test]
fn decompose_json_flag() {
    let out = stdout(&["decompose", "--f", "one", "--alpha", "quad:0,1,2,1", "--x", "100", "--json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["S_plain"].as_f64(), Some(100.0));
    // floor(n sqrt 2) <= 100 exactly for n = 1..71
    assert_eq!(rows[0]["S_beatty"].as_f64(), Some(71.0));
}

#[test]
fn prime_error_curve_at_alpha_two() {
    // B(2, 0) is the even numbers, so S_2(1_P, x) = 1 for x >= 2 while the
    // main term is pi(x)/2
    let out = stdout(&["error-curve", "--f", "prime", "--alpha", "rat:2", "--xmax", "1000"]);
    let last = out.lines().last().unwrap();
    let cells: Vec<&str> = last.split(',').collect();
    assert_eq!(cells[0], "1000");
    assert_eq!(cells[1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(cells[2].parse::<f64>().unwrap(), 168.0);
    assert_eq!(cells[3].parse::<f64>().unwrap(), 1.0 - 84.0);
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["membership", "--alpha", "quad:0,1,2,1", "--m", "5"]), 0);
    // usage errors
    assert_eq!(code(&["decompose", "--f", "tau2", "--alpha", "quad:0,1,2,1", "--x", "10", "--bogus"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    // invalid configurations
    assert_eq!(code(&["decompose", "--f", "tau2", "--alpha", "rat:3/2", "--x", "10"]), 2);
    assert_eq!(code(&["decompose", "--f", "tau2", "--alpha", "quad:0,1,2,1", "--beta", "rat:1/2", "--x", "10"]), 2);
    assert_eq!(code(&["decompose", "--f", "nope", "--alpha", "quad:0,1,2,1", "--x", "10"]), 2);
    assert_eq!(code(&["membership", "--alpha", "quad:0,1,2,2", "--m", "1"]), 2);
    assert_eq!(code(&["lil", "--lambda", "rat:3/2", "--X", "100"]), 2);
    assert_eq!(code(&["q-energy", "--f", "tau2", "--x", "64", "--grid", "10"]), 2);
    assert_eq!(code(&["--precision", "10", "membership", "--alpha", "dec:1.5", "--m", "1"]), 2);
    // a decimal too coarse to place floor(n alpha) is a computation error
    let out = run(&["--precision", "30", "membership", "--alpha", "dec:1.3333333333333333333333333333333", "--m", "3999999999999999999"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(3), "{err}");
    assert!(err.starts_with("error[ambiguous_comparison]"), "{err}");
}

#[test]
fn config_errors_name_their_category() {
    let out = run(&["decompose", "--f", "tau2", "--alpha", "rat:3/2", "--x", "10"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[rational_alpha]"));
    assert!(out.stdout.is_empty());
}

#[test]
fn failed_run_leaves_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let out = run(&["decompose", "--f", "tau2", "--alpha", "rat:3/2", "--x", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn sieve_writes_binary_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tau2.blab");
    let summary = stdout(&["sieve", "--f", "tau2", "--n", "1000", "--out", path.to_str().unwrap()]);
    assert!(summary.contains("tau2,1000,7069,"));
    let t = beatty_core::cache::read_table(&path, "tau2").unwrap();
    assert_eq!(t.n(), 1000);
    assert_eq!(t.int_value(12), Some(6));
}

#[test]
fn cache_directory_is_filled_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["decompose", "--f", "tau3", "--alpha", "quad:0,1,2,1", "--x", "2000"];
    let cold = bin().args(args).env("BEATTY_LAB_CACHE", dir.path()).output().unwrap();
    assert!(cold.status.success());
    let file = dir.path().join("tau3-2000.blab");
    assert!(file.exists());
    let warm = bin().args(args).env("BEATTY_LAB_CACHE", dir.path()).output().unwrap();
    assert_eq!(cold.stdout, warm.stdout);

    // the warm run really reads the file: a doctored table changes the result
    let mut bytes = std::fs::read(&file).unwrap();
    // after magic, N and tag, entry m sits 8*(m-1) bytes in; overwrite tau3(2)
    let at = 5 + 8 + 1 + 8;
    bytes[at..at + 8].copy_from_slice(&1000i64.to_le_bytes());
    std::fs::write(&file, &bytes).unwrap();
    let doctored = bin().args(args).env("BEATTY_LAB_CACHE", dir.path()).output().unwrap();
    assert!(doctored.status.success());
    assert_ne!(cold.stdout, doctored.stdout);
}

#[test]
fn random_tables_bypass_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["decompose", "--f", "rademacher", "--alpha", "quad:0,1,2,1", "--x", "100"])
        .env("BEATTY_LAB_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn corrupt_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tau2-100.blab"), b"garbage").unwrap();
    let args = ["sieve", "--f", "tau2", "--n", "100"];
    let out = bin().args(args).env("BEATTY_LAB_CACHE", dir.path()).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&args));
    assert!(beatty_core::cache::read_table(&dir.path().join("tau2-100.blab"), "tau2").is_ok());
}
