use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn thetaline(args: &[&str]) -> Run {
    let Output { status, stdout, stderr } =
        Command::new(env!("CARGO_BIN_EXE_thetaline")).args(args).output().expect("spawn thetaline");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const DIAGONAL: &str = "# diagonal matrix\nl1: x\nl2: 0\nl3: z\nq1: 0\nq2: 0\nf: x^3 + y^3 + z^3\n";

#[test]
fn build_and_extract_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "a.mat", "l1: x\nl2: y\nl3: z\nq1: x*y\nq2: z^2\nf: x^3 + 2*y^3 + 3*z^3\n");
    let built = thetaline(&["--field", "fp:11", "build-cubic", &m]);
    assert_eq!(built.code, 0, "{}", built.stderr);
    assert_eq!(built.stdout.trim(), "x^3 + 2*x*y*w + x*w^2 + 2*y^3 + 2*y*w*t + 3*z^3 + 2*z^2*t + z*t^2");
    let cubic = file(&dir, "a.cubic", &built.stdout);
    let back = thetaline(&["--field", "fp:11", "extract-matrix", &cubic]);
    assert_eq!(back.code, 0, "{}", back.stderr);
    assert_eq!(back.stdout, "l1: x\nl2: y\nl3: z\nq1: x*y\nq2: z^2\nf: x^3 + 2*y^3 + 3*z^3\n");
}

#[test]
fn extract_rejects_a_missing_line() {
    let dir = TempDir::new().unwrap();
    let cubic = file(&dir, "c.cubic", "x^3 + w^3\n");
    let r = thetaline(&["--field", "fp:7", "extract-matrix", &cubic]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("w^3"));
}

#[test]
fn discriminant_and_conic_of_diagonal_matrix() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "d.mat", DIAGONAL);
    let d = thetaline(&["discriminant", &m]);
    assert_eq!((d.code, d.stdout.trim()), (0, "x^4*z + x*y^3*z + x*z^4"));
    let h = thetaline(&["conic", &m]);
    assert_eq!((h.code, h.stdout.trim()), (0, "x*z"));
}

#[test]
fn pipeline_flags_reducible_discriminant() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "d.mat", DIAGONAL);
    let r = thetaline(&["--field", "fp:7", "pipeline", "--matrix", &m]);
    assert_eq!(r.code, 3, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("reducible discriminant"));
}

#[test]
fn pipeline_reports_cone_apex() {
    let dir = TempDir::new().unwrap();
    let cubic = file(&dir, "cone.cubic", "x^3 + y^3 + z^3 + w^3\n");
    let r = thetaline(&["--field", "fp:7", "pipeline", "--cubic", &cubic, "--line", "1,-1,0,0,0;0,0,0,0,1"]);
    assert_eq!(r.code, 1, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("singular at (0:0:0:0:1)"));
}

#[test]
fn pipeline_random_smooth_example_verifies() {
    let args = ["--field", "fp:11", "--ext-depth", "3", "--seed", "1", "--json", "pipeline", "--random"];
    let r = thetaline(&args);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let report: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["verdict"], "quintic-odd-theta verified (bounded)");
    assert_eq!(report["contact"]["total"], 10);
    assert_eq!(report["contact"]["all_even"], true);
    // identical inputs give byte-identical reports
    assert_eq!(thetaline(&args).stdout, r.stdout);
}

#[test]
fn smoothness_and_nodality_commands() {
    let dir = TempDir::new().unwrap();
    let cone = file(&dir, "cone.cubic", "x^3 + y^3 + z^3 + w^3");
    let r = thetaline(&["--field", "fp:7", "check-smooth", &cone]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("(0:0:0:0:1)"));
    let fermat = file(&dir, "fermat.cubic", "x^3 + y^3 + z^3 + w^3 + t^3");
    let r = thetaline(&["--field", "fp:7", "check-smooth", &fermat]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("not a proof of smoothness"));

    let nodal = file(&dir, "nodal.curve", "x*y*z + x^3");
    let cusp = file(&dir, "cusp.curve", "x^2*z + y^3");
    assert_eq!(thetaline(&["check-nodal", &nodal, "--point", "0,0,1"]).code, 0);
    assert_eq!(thetaline(&["check-nodal", &cusp, "--point", "0,0,1"]).code, 1);
    let locus = thetaline(&["--field", "fp:7", "singular-locus", &cusp]);
    assert_eq!(locus.stdout.trim(), "(0:0:1) over degree 1");
}

const SMOOTH_F11: &str = "\
l1: 2*x + 6*y + 4*z
l2: x + 5*y + 3*z
l3: 6*x + 5*y + 9*z
q1: 5*x^2 + x*y + 10*x*z + 10*y^2 + 3*y*z + z^2
q2: 7*x^2 + x*y + 2*x*z + 4*z^2
f: 10*x^3 + 5*x^2*y + 4*x^2*z + 6*x*y^2 + x*y*z + 10*x*z^2 + 2*y^3 + 8*y^2*z + 6*y*z^2 + z^3
";

#[test]
fn contact_depends_on_extension_depth() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "smooth.mat", SMOOTH_F11);
    let full = thetaline(&["--field", "fp:11", "--ext-depth", "3", "check-contact", &m]);
    assert_eq!(full.code, 0, "{}{}", full.stdout, full.stderr);
    assert!(full.stdout.contains("total 10 of 10, all even: true"));
    let shallow = thetaline(&["--field", "fp:11", "--ext-depth", "1", "check-contact", &m]);
    assert_eq!(shallow.code, 3, "{}", shallow.stdout);
}

#[test]
fn contact_with_shared_component_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    // det A = y (x^3 z + y^3 z - x^4) shares the line y = 0 with h = y z
    let m = file(&dir, "shared.mat", "l1: y\nl2: 0\nl3: z\nq1: 0\nq2: x^2\nf: x^3 + y^3\n");
    let r = thetaline(&["--field", "fp:11", "check-contact", &m]);
    assert_eq!(r.code, 3, "{}{}", r.stdout, r.stderr);
    assert!(r.stderr.contains("share a component"));
}

#[test]
fn cover_check_examples() {
    let dir = TempDir::new().unwrap();
    let irreducible = file(&dir, "g6.json", r#"{"components":[{"id":0,"genus":6}],"edges":[]}"#);
    let r = thetaline(&["cover-check", "--require-genus6", &irreducible]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("deg = 10"));

    let split = file(&dir, "split.json", r#"{"components":[{"id":0,"genus":2},{"id":1,"genus":3}],"edges":[[0,1],[1,0]]}"#);
    let r = thetaline(&["cover-check", &split]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("crossing < 4"));

    let malformed = file(&dir, "bad.json", r#"{"components":[{"id":0,"genus":6}"#);
    let r = thetaline(&["cover-check", &malformed]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1, column"));

    let disconnected = file(&dir, "two.json", r#"{"components":[{"id":0,"genus":3},{"id":1,"genus":3}],"edges":[]}"#);
    assert_eq!(thetaline(&["cover-check", &disconnected]).code, 2);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "d.mat", DIAGONAL);
    let r = thetaline(&["check-contact", &m]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--field fp:<p>"));
    assert_eq!(thetaline(&["--field", "fp:4", "conic", &m]).code, 2);
    assert_eq!(thetaline(&["--field", "fp:5", "pipeline", "--matrix", &m]).code, 2);
    assert_eq!(thetaline(&["pipeline"]).code, 2);
    assert_eq!(thetaline(&["no-such-command"]).code, 2);
    let missing = thetaline(&["conic", "/nonexistent/file.mat"]);
    assert_eq!(missing.code, 2);

    let bad = file(&dir, "bad.mat", "l1: x\nl2: y\nl3: w\n");
    let r = thetaline(&["conic", &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 5: unknown variable `w`"), "{}", r.stderr);
}
