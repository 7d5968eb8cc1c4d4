use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_spherepos");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("SPHEREPOS_TOL")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap()
        .parse()
        .unwrap()
}

fn legendre(k: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    if k == 0 {
        return 1.0;
    }
    for j in 1..k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * t * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn simpson(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0
}

fn read_table(path: &Path) -> Vec<(usize, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

#[test]
fn golden_tables_match_closed_forms() {
    // 2π² P_k(0), P_k(0) = (-1)^{k/2} (k-1)!!/k!!
    for (k, v) in read_table(&golden("tq_n3_q-1_K20.csv")) {
        let mut p0 = 1.0;
        for j in (2..=k).step_by(2) {
            p0 *= -((j - 1) as f64) / j as f64;
        }
        assert!((v - 2.0 * PI * PI * p0).abs() <= 1e-13 * v.abs(), "k = {k}");
    }
    // |S²| U_k(0)/(k+1) in R⁴
    for (k, v) in read_table(&golden("radon_n4_K20.csv")) {
        let sign = if k % 4 == 0 { 1.0 } else { -1.0 };
        assert!((v - 4.0 * PI * sign / (k as f64 + 1.0)).abs() <= 1e-13 * v.abs(), "k = {k}");
    }
    // T₁ = -(π/2) C₁ in R³, with C₁ P_k = 4π ∫₀¹ t P_k(t) dt · P_k
    for (k, v) in read_table(&golden("tq_n3_q1_K20.csv")) {
        let quad = -2.0 * PI * PI * simpson(|t| t * legendre(k, t), 200_000);
        assert!((v - quad).abs() <= 1e-10 * v.abs(), "k = {k}: {v} vs {quad}");
    }
}

#[test]
fn transform_reproduces_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 3] = [
        ("tq_n3_q-1_K20", &["transform", "--n", "3", "--q", "-1", "--K", "20"]),
        ("radon_n4_K20", &["transform", "--n", "4", "--transform", "radon", "--K", "20"]),
        ("tq_n3_q1_K20", &["transform", "--n", "3", "--q", "1", "--K", "20"]),
    ];
    for (name, args) in cases {
        let mut args = args.to_vec();
        args.extend(["-o", name]);
        let out = run_in(dir.path(), &args);
        assert_eq!(code(&out), 0);
        let produced = fs::read(dir.path().join(format!("{name}.csv"))).unwrap();
        assert_eq!(produced, fs::read(golden(&format!("{name}.csv"))).unwrap(), "{name}");
    }
}

#[test]
fn postest_ball_is_member() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ball.spec"), "n=3 kind=zonal K=0\n0 1\n").unwrap();
    let out = run_in(dir.path(), &["postest", "--n", "3", "--q", "-1", "--input", "ball.spec"]);
    assert_eq!(code(&out), 0);
    let report = fs::read_to_string(dir.path().join("postest.txt")).unwrap();
    assert!((field(&report, "margin") - 4.0 * PI.sqrt()).abs() < 1e-12);
    let csv = fs::read_to_string(dir.path().join("postest.csv")).unwrap();
    assert!(csv.starts_with("t,profile\n"));
}

#[test]
fn postest_verdicts_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run_in(d, &["postest", "--n", "3", "--q", "-1", "--f", "perturbed:0.4:2"])), 0);
    assert_eq!(code(&run_in(d, &["postest", "--n", "3", "--q", "-1", "--f", "perturbed:0.6:2"])), 1);
    assert_eq!(code(&run_in(d, &["postest", "--n", "3", "--q", "-1", "--f", "perturbed:0.5:2"])), 2);
}

#[test]
fn excluded_exponent_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["postest", "--n", "3", "--q", "2", "--f", "ball"]);
    assert_eq!(code(&out), 3);
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("q must avoid nonnegative even integers"));
    assert_eq!(stderr.trim().lines().count(), 1);
    assert_eq!(code(&run_in(dir.path(), &["postest", "--bogus"])), 3);
    assert_eq!(code(&run_in(dir.path(), &["compare", "--n", "3", "--q", "-1", "--f", "ball", "--g", "ball"])), 3);
}

#[test]
fn synthesize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run_in(d, &["synthesize", "--n", "3", "--q", "-1", "--p", "2", "--g", "perturbed:0.6:2", "-o", "cx"]);
    assert_eq!(code(&out), 1);
    let cert = fs::read_to_string(d.join("cx.cert")).unwrap();
    assert!(field(&cert, "lp_gap") > 0.0);
    assert_eq!(code(&run_in(d, &["verify", "--input", "cx.cert"])), 0);

    let tampered = cert.replacen("[f]\n", "[f]\n# edited\n", 1).replacen("\n0 ", "\n0 1", 1);
    fs::write(d.join("bad.cert"), tampered).unwrap();
    assert_eq!(code(&run_in(d, &["verify", "--input", "bad.cert"])), 1);

    let member = run_in(d, &["synthesize", "--n", "3", "--q", "-1", "--p", "2", "--g", "ball"]);
    assert_eq!(code(&member), 0);
}

#[test]
fn csv_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let base = ["compare", "--n", "3", "--q", "-1", "--p", "2", "--f", "ball", "--g", "random:6"];
    let mut outputs = Vec::new();
    for (seed, name) in [("7", "a"), ("7", "b"), ("8", "c")] {
        let mut args = base.to_vec();
        args.extend(["--seed", seed, "-o", name]);
        run_in(d, &args);
        outputs.push(fs::read(d.join(format!("{name}.csv"))).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_ne!(outputs[0], outputs[2]);

    for name in ["p1", "p2"] {
        run_in(d, &["postest", "--n", "5", "--q", "-1", "--f", "random:8", "--seed", "3", "-o", name]);
    }
    assert_eq!(fs::read(d.join("p1.csv")).unwrap(), fs::read(d.join("p2.csv")).unwrap());
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("run.conf"), "# near the boundary\nn = 3\nq = -1\noutput = fromconfig\n").unwrap();
    let near = ["postest", "--config", "run.conf", "--f", "perturbed:0.49:2"];
    assert_eq!(code(&run_in(d, &near)), 0);
    assert!(d.join("fromconfig.csv").exists());

    let with_env = |args: &[&str], tol: &str| {
        Command::new(BIN).args(args).current_dir(d).env("SPHEREPOS_TOL", tol).output().unwrap()
    };
    assert_eq!(code(&with_env(&near, "0.1")), 2);
    let mut flagged = near.to_vec();
    flagged.extend(["--tol", "1e-8"]);
    assert_eq!(code(&with_env(&flagged, "0.1")), 0);

    fs::write(d.join("tight.conf"), "n = 3\nq = -1\ntolerance = 1e-8\n").unwrap();
    let cfg_wins = ["postest", "--config", "tight.conf", "--f", "perturbed:0.49:2"];
    assert_eq!(code(&with_env(&cfg_wins, "0.1")), 0);
}

#[test]
fn slicing_and_bp_demo() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run_in(d, &["slicing", "--n", "3", "--q", "-1", "--p", "2", "--f", "ball"]);
    assert_eq!(code(&out), 0);
    let report = fs::read_to_string(d.join("slicing.txt")).unwrap();
    let exact = (4.0 * PI).sqrt();
    assert!((field(&report, "lhs") - exact).abs() < 1e-12 * exact);
    assert!((field(&report, "rhs") - exact).abs() < 1e-12 * exact);

    assert_eq!(code(&run_in(d, &["bp-demo"])), 0);
    let csv = fs::read_to_string(d.join("bp-demo.csv")).unwrap();
    let ball: Vec<f64> = csv.lines().nth(1).unwrap().split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert!((ball[0] - 4.0 * PI / 3.0).abs() < 1e-10);
    assert!((ball[1] - PI).abs() < 1e-10);
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["selftest"]);
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(code(&out), 0, "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
