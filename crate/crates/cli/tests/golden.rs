use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn mdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdeg"))
        .args(args)
        .env_remove("MDEG_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = mdeg(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn piped(args: &[&str], input: &str) -> String {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mdeg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

const TRI_CEE: &str = "2*t1^3*t2^3 + 4*t1^3*t2^2*t3 + 2*t1^3*t2*t3^2 + 2*t1^2*t2^3*t3 + 4*t1^2*t2^2*t3^2";

#[test]
fn kpoly_evaluates_to_zero_at_one() {
    let out = run_ok(&["kpoly", &fixture("triprojective.ring"), "--ideal", "P"]);
    assert!(out.starts_with("-t1^4*t2^4*t3^2 + 3*t1^4*t2^3*t3^2"));
    assert!(out.trim_end().ends_with("- 2*t2*t3 + 1"));
}

#[test]
fn cee_and_gee() {
    assert_eq!(run_ok(&["cee", &fixture("triprojective.ring")]).trim(), TRI_CEE);
    assert_eq!(run_ok(&["gee", &fixture("triprojective.ring")]).trim(), TRI_CEE);
}

#[test]
fn arith_on_growth() {
    assert_eq!(run_ok(&["arith", &fixture("growth.ring")]).trim(), "5*t1^2*t2 + t1*t2");
}

#[test]
fn geom_mixed_multiplicities() {
    let out = run_ok(&["geom", &fixture("triprojective.ring")]);
    assert_eq!(
        out,
        "dim = 3\ndeg^(0,0,3) = 2\ndeg^(0,1,2) = 4\ndeg^(0,2,1) = 2\ndeg^(1,0,2) = 2\ndeg^(1,1,1) = 4\nMDeg = 4\n"
    );
}

#[test]
fn gin_and_seed_override() {
    let out = run_ok(&["gin", &fixture("growth.ring")]);
    assert!(out.starts_with("gin = (x0^2, x0*x1, x0*y0, x1^2*y0, y0^3)\n"));
    assert!(out.contains("seeds = [1, 2, 3]"));
    let o = Command::new(env!("CARGO_BIN_EXE_mdeg"))
        .args(["gin", &fixture("growth.ring"), "--seed", "2"])
        .env("MDEG_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seeds = [7, 8, 9]"));
    assert!(stdout(&o).starts_with("gin = (x0^2, x0*x1, x0*y0, x1^2*y0, y0^3)\n"));
}

#[test]
fn gin_report_pass_and_fail() {
    let out = run_ok(&["gin-report", &fixture("triprojective_fp.ring")]);
    assert!(out.contains("MLength = 4\n"));
    assert!(out.contains("associated primes = 9\n"));
    assert!(out.contains("J = {1,2,3}: MLength 4 bound ok divisibility ok\n"));
    assert!(out.ends_with("pass = yes\n"));
    assert_eq!(mdeg(&["gin-report", &fixture("growth.ring")]).status.code(), Some(4));
}

#[test]
fn project_round_trips_through_stdin() {
    let session = run_ok(&["project", &fixture("triprojective.ring"), "--blocks", "2,3"]);
    assert!(session.contains("tvars t2 t3\n"));
    assert_eq!(piped(&["cee", "-"], &session).trim(), "2*t2^3 + 4*t2^2*t3 + 2*t2*t3^2");
}

#[test]
fn cs_check() {
    let o = mdeg(&["cs-check", &fixture("square.ring")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("cartwright-sturmfels = no\n"));
    let out = run_ok(&["cs-check", &fixture("det2x3.ring"), "--paranoid"]);
    assert!(out.starts_with("cartwright-sturmfels = yes\n"));
}

#[test]
fn standardize_fine_grading() {
    let out = run_ok(&["standardize", &fixture("det2x3.ring")]);
    assert_eq!(
        out,
        "codim ok, K ok, C ok, initial ideals ok\nJ = [\n  y1_1*y5_1*y1_2*y5_2 - y2_1*y4_1*y4_2*y2_2;\n  \
         y1_1*y6_1*y1_2*y6_2 - y3_1*y4_1*y4_2*y3_2;\n  y2_1*y6_1*y2_2*y6_2 - y3_1*y5_1*y5_2*y3_2\n]\n"
    );
    let ring = run_ok(&["standardize", &fixture("det2x3.ring"), "--emit-ring"]);
    assert_eq!(piped(&["cee", "-"], &ring), run_ok(&["cee", &fixture("det2x3.ring")]));
}

#[test]
fn polymatroid_check() {
    let o = mdeg(&["polymatroid-check", "--points", &fixture("points_bad.txt")]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "polymatroid = no\ncounterexample: u = (2,0), v = (0,2), i = 1\n");
    assert_eq!(run_ok(&["polymatroid-check", &fixture("triprojective.ring")]), "polymatroid = yes\n");
}

#[test]
fn snp_check() {
    let o = mdeg(&["snp-check", "--points", &fixture("points_bad.txt")]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "snp = no\n");
    assert_eq!(run_ok(&["snp-check", &fixture("triprojective.ring"), "--from-cee", "P"]), "snp = yes\n");
}

#[test]
fn det_formulas_and_pipeline() {
    let out = run_ok(&["det", "--m", "2", "--n", "3", "--r", "2"]);
    assert!(out.contains("diff C: none\ndiff K: none\n"));
    assert!(out.ends_with("diagonal initial ideal: ok\n"));
    assert_eq!(
        run_ok(&["det", "--m", "2", "--n", "2", "--r", "2", "--formulas-only"]).lines().next(),
        Some("closed C = t1 + t2 + s1 + s2")
    );
}

#[test]
fn hf_oracle() {
    assert_eq!(
        run_ok(&["hf-oracle", &fixture("square.ring"), "--bound", "3"]),
        "(0) 1\n(1) 2\n(2) 2\n(3) 2\nagree = yes\n"
    );
}

#[test]
fn json_is_byte_stable() {
    let args = ["geom", &fixture("triprojective.ring"), "--json"];
    let a = run_ok(&args);
    assert_eq!(a, run_ok(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["ring"]["rank"], 3);
    let g = run_ok(&["gin", &fixture("growth.ring"), "--json"]);
    assert_eq!(g, run_ok(&["gin", &fixture("growth.ring"), "--json"]));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(mdeg(&["cee", "/nonexistent/ring"]).status.code(), Some(2));
    assert_eq!(mdeg(&["cee", &fixture("triprojective.ring"), "--ideal", "Q"]).status.code(), Some(2));
    assert_eq!(mdeg(&["det", "--m", "3", "--n", "2", "--r", "2"]).status.code(), Some(2));
    assert_eq!(mdeg(&["cee", &fixture("points_bad.txt")]).status.code(), Some(2));
}

#[test]
fn help_lists_every_command() {
    let out = run_ok(&["--help"]);
    for c in [
        "kpoly", "cee", "gee", "arith", "geom", "gin", "gin-report", "project", "cs-check", "standardize",
        "polymatroid-check", "snp-check", "det", "hf-oracle",
    ] {
        assert!(out.lines().any(|l| l.trim_start().starts_with(&format!("{c} "))), "{c}");
    }
}
