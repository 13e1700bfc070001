use std::io::Write as _;
use std::path::PathBuf;
use std::process::Command;

use pbwtor_cli::{run, Outcome, EXIT_CONTRACT, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};

fn problem(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems");
    dir.join(name).display().to_string()
}

fn pbwtor(file: &str, args: &[&str]) -> Outcome {
    let path = problem(file);
    let mut argv = vec!["pbwtor", "-f", path.as_str()];
    argv.extend_from_slice(args);
    run(argv)
}

fn ok(file: &str, args: &[&str]) -> String {
    let out = pbwtor(file, args);
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

fn scratch_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_algebra_reports_the_relations() {
    let out = ok("sl2.pbw", &["check-algebra"]);
    assert_eq!(
        out,
        "algebra: valid\nvariables: x, y, z\nweights: 1, 2, 2\ntiebreak: x > y > z\nmodule order: top\n\
         relations:\n  y*x = x*y - z\n  z*x = x*z + 2*x\n  z*y = y*z - 2*y\n"
    );
}

#[test]
fn non_associative_relations_exit_with_validation_code() {
    let out = pbwtor("nonassociative.pbw", &["check-algebra"]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("(z, y, x)"), "{}", out.stderr);
}

#[test]
fn mul_renders_canonically() {
    assert_eq!(ok("sl2.pbw", &["mul", "y", "x"]), "x*y - z\n");
    assert_eq!(ok("sl2.pbw", &["mul", "C", "1"]), "1/2*z^2 + 2*x*y - z\n");
    assert_eq!(ok("weyl.pbw", &["mul", "d", "x"]), "x*d + 1\n");
}

#[test]
fn nf_certifies_the_long_kernel_vector() {
    let out = ok("sl2.pbw", &["nf", "--target", "(8*x*y - 4*z, -z^4 - 4*x*y*z^2 + 2*z^3 + 4)", "--in", "M"]);
    assert_eq!(out, "remainder: (0, 0)\nmember: true\n");
    let out = ok("sl2.pbw", &["nf", "--target", "(x, 0)", "--in", "N"]);
    assert!(out.ends_with("member: false\n"), "{out}");
}

#[test]
fn syz_of_the_example() {
    assert_eq!(ok("sl2.pbw", &["syz", "--module", "N"]), "rank: 3\nsyzygies:\n  (-1, y^2, -1)\n");
}

#[test]
fn gb_of_a_commutative_ideal() {
    assert_eq!(ok("koszul2.pbw", &["gb", "--module", "K"]), "rank: 1\nbasis:\n  (x)\n  (y)\n");
}

#[test]
fn resolve_reports_ranks_and_completion() {
    let out = ok("sl2.pbw", &["resolve", "--module", "N", "--depth", "3"]);
    assert!(out.starts_with("form: generators\nranks: 3 1 0\ncomplete: true\n"), "{out}");
    assert!(out.contains("d_1: 1 x 3\n  (-1, y^2, -1)\nd_2: 0 x 1\n"), "{out}");
    let out = ok("koszul3.pbw", &["resolve", "--module", "K", "--depth", "4"]);
    assert!(out.contains("ranks: 1 3 3 1 0\n"), "{out}");
}

#[test]
fn tsgb_routes() {
    let out = ok("sl2.pbw", &["tsgb", "--bimodule", "M"]);
    assert_eq!(out, "ambient: 2\nroute: central\nbasis:\n  (z^2 + 4*x*y - 2*z, 2)\n  (2, z^2 + 4*x*y - 2*z)\n");
    for route in ["enveloping", "closure"] {
        let out = ok("weyl.pbw", &["tsgb", "--bimodule", "X", "--route", route]);
        assert_eq!(out, format!("ambient: 1\nroute: {route}\nbasis:\n  (1)\n"));
    }
}

#[test]
fn tor_of_the_example() {
    let out = ok("sl2.pbw", &["tor", "--bimodule", "M", "--module", "N", "-k", "1"]);
    assert!(out.starts_with("Tor_1(M,N) = 0\n"), "{out}");
    assert!(out.contains("zero: true\n"));
    for k in ["2", "5"] {
        let out = ok("sl2.pbw", &["tor", "--bimodule", "M", "--module", "N", "-k", k]);
        assert_eq!(out, format!("Tor_{k}(M,N) = 0\nambient: 0\nnumerator:\ndenominator:\nzero: true\n"));
    }
    let out = ok("sl2.pbw", &["tor", "--bimodule", "M", "--module", "N", "-k", "0", "--dim"]);
    assert!(out.starts_with("Tor_0(M,N) != 0\nambient: 6\n"), "{out}");
    assert!(out.ends_with("zero: false\ndimension: infinite\n"), "{out}");
}

#[test]
fn tor_dimensions_over_koszul() {
    for (k, d) in [(0, 1), (1, 2), (2, 1), (3, 0)] {
        let out = ok("koszul2.pbw", &["tor", "--bimodule", "K", "--module", "K", "-k", &k.to_string(), "--dim"]);
        assert!(out.ends_with(&format!("dimension: {d}\n")), "{out}");
    }
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(["pbwtor"]).code, EXIT_USAGE);
    assert_eq!(run(["pbwtor", "check-algebra"]).code, EXIT_USAGE);
    assert_eq!(pbwtor("sl2.pbw", &["syz", "--module", "missing"]).code, EXIT_USAGE);
    assert_eq!(pbwtor("sl2.pbw", &["tor", "--bimodule", "M", "--module", "N"]).code, EXIT_USAGE);
    assert_eq!(pbwtor("sl2.pbw", &["resolve", "--module", "N", "--depth", "0"]).code, EXIT_USAGE);
    let out = pbwtor("sl2.pbw", &["nf", "--target", "(1)", "--in", "M"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("expected 2"), "{}", out.stderr);
}

#[test]
fn parse_errors_carry_file_line_and_column() {
    let f = scratch_file("[algebra]\nvars: x, y\n\n[module A]\nambient: 1\ngen: (x + w)\n");
    let path = f.path().display().to_string();
    let out = run(["pbwtor", "-f", path.as_str(), "gb", "--module", "A"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert_eq!(out.stderr, format!("error: {path}:6:11: unknown variable `w`\n"));
}

#[test]
fn false_centralizing_claim_is_a_contract_failure() {
    let f = scratch_file("[algebra]\nvars: x, d\nrelation: d*x = x*d + 1\n\n[bimodule B]\nambient: 1\ncentralizing: true\ngen: x\n");
    let path = f.path().display().to_string();
    let out = run(["pbwtor", "-f", path.as_str(), "tsgb", "--bimodule", "B"]);
    assert_eq!(out.code, EXIT_CONTRACT);
    assert!(out.stderr.contains("declared centralizing"), "{}", out.stderr);
}

#[test]
fn sequential_mode_matches_parallel_output() {
    let args = ["tor", "--bimodule", "M", "--module", "N", "-k", "0"];
    let parallel = ok("sl2.pbw", &args);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&args);
    assert_eq!(ok("sl2.pbw", &seq), parallel);
}

#[test]
fn binary_output_is_byte_stable() {
    let path = problem("sl2.pbw");
    let invoke = || {
        Command::new(env!("CARGO_BIN_EXE_pbwtor"))
            .args(["-f", &path, "tor", "--bimodule", "M", "--module", "N", "-k", "1"])
            .output()
            .unwrap()
    };
    let first = invoke();
    assert_eq!(first.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&first.stdout).contains("Tor_1(M,N) = 0"));
    for _ in 0..3 {
        assert_eq!(invoke().stdout, first.stdout);
    }
}

#[test]
fn binary_exit_codes() {
    let status = |file: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_pbwtor")).arg("-f").arg(problem(file)).args(args).output().unwrap().status.code()
    };
    assert_eq!(status("nonassociative.pbw", &["check-algebra"]), Some(EXIT_VALIDATION));
    assert_eq!(status("sl2.pbw", &["frobnicate"]), Some(EXIT_USAGE));
    assert_eq!(status("sl2.pbw", &["mul", "x", "y"]), Some(EXIT_OK));
}
