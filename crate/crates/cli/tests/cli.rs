//! End-to-end tests of the command-line interface: spawn the real binary and
//! check stdout, exit codes, and file outputs.

use std::process::Command;

use atomap::{cr, BipOp};
use atomap_cli::matrixfile;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_atomap"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

#[test]
fn pair_prints_reference_values() {
    let (code, stdout, _) = run(&["pair", "--state", "ha", "--map", "robertson"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim().parse::<f64>().unwrap(), -1.0 / 14.0);

    let (code, stdout, _) = run(&["pair", "--state", "new", "--map", "robertson"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim().parse::<f64>().unwrap(), -1.0 / 6.0);

    let (code, stdout, _) = run(&[
        "pair", "--state", "ha-gamma", "--map", "chi", "--x", "1", "--y", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim().parse::<f64>().unwrap(), -1.0 / 7.0);
}

#[test]
fn witness_spectrum_has_expected_multiplicities() {
    let (code, stdout, _) = run(&["witness", "spectrum", "--map", "robertson"]);
    assert_eq!(code, 0);
    let values: Vec<f64> = stdout
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 16);
    let near = |t: f64| values.iter().filter(|&&v| (v - t).abs() < 1e-9).count();
    assert_eq!((near(-1.0), near(0.0), near(1.0)), (1, 10, 5));
}

#[test]
fn certify_exit_codes_follow_conclusions() {
    let (code, stdout, _) = run(&[
        "certify", "atomic", "--map", "robertson", "--state", "ha",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("conclusion: atomic"));

    let (code, stdout, _) = run(&[
        "certify", "indec", "--map", "robertson", "--state", "new",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("conclusion: indecomposable"));

    // a completely positive map certifies nothing: detection exit lane
    let (code, stdout, _) = run(&["certify", "indec", "--map", "trace", "--state", "new"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("conclusion: inconclusive"));

    // atomic certification without certificates is a usage error
    let (code, _, stderr) = run(&[
        "certify", "atomic", "--map", "robertson", "--state", "new",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("Schmidt certificates"));
}

#[test]
fn region_csv_labels_and_svg_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("r1.csv");
    let csv2 = dir.path().join("r2.csv");
    let svg1 = dir.path().join("r1.svg");
    let svg2 = dir.path().join("r2.svg");

    let (code, _, _) = run(&[
        "region", "--grid", "8",
        "--out", csv1.to_str().unwrap(),
        "--svg", svg1.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "region", "--grid", "8",
        "--out", csv2.to_str().unwrap(),
        "--svg", svg2.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let c1 = std::fs::read(&csv1).unwrap();
    assert_eq!(c1, std::fs::read(&csv2).unwrap(), "CSV must be deterministic");
    assert_eq!(
        std::fs::read(&svg1).unwrap(),
        std::fs::read(&svg2).unwrap(),
        "SVG must be a pure function of the CSV"
    );

    let text = String::from_utf8(c1).unwrap();
    assert!(text.contains("x+y=1.75"));
    assert!(text.contains("x+y=1.5"));
    let mut rows = 0usize;
    for line in text.lines().filter(|l| !l.starts_with('#') && *l != "x,y,label") {
        let parts: Vec<&str> = line.split(',').collect();
        let (x, y): (f64, f64) = (parts[0].parse().unwrap(), parts[1].parse().unwrap());
        let want = if x + y > 1.75 {
            "atomic"
        } else if x + y > 1.5 {
            "indecomposable"
        } else {
            "inconclusive"
        };
        assert_eq!(parts[2], want, "label at ({x}, {y})");
        rows += 1;
    }
    assert_eq!(rows, 64);
}

#[test]
fn witness_file_round_trips_and_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.cmat");
    let (code, stdout, _) = run(&[
        "witness", "build", "--map", "robertson", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("candidate: true"));

    let w = matrixfile::read_file(&path).unwrap();
    assert_eq!((w.rows, w.cols), (16, 16));
    assert!((w.trace().re - 4.0).abs() < 1e-12);
    assert!(w.hermitian_deviation() < 1e-12);

    // emit → parse is bit-exact
    let again = matrixfile::parse(&matrixfile::emit(&w)).unwrap();
    for (a, b) in again.entries.iter().zip(&w.entries) {
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }

    // a witness is not a state: loading it as one is a numeric failure
    let (code, _, stderr) = run(&["ppt", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(stderr.contains("error"));
}

#[test]
fn state_files_feed_detection_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ent.cmat");
    // normalized maximally entangled state on 4⊗4: entangled, not PPT
    let p = BipOp::max_entangled(4);
    matrixfile::write_file(&path, &p.mat.scale(cr(0.25))).unwrap();

    let (code, stdout, _) = run(&["ppt", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 1, "an NPT state must take the detection-negative lane");
    assert!(stdout.contains("psd: true"));
    assert!(stdout.contains("ppt: false"));

    let (code, stdout, _) = run(&[
        "pair", "--state", path.to_str().unwrap(), "--map", "reduction",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim().parse::<f64>().unwrap(), -3.0);
}

#[test]
fn selftest_reports_all_checks() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("15 checks: 15 passed, 0 failed"));
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok  ")).count(), 15);
}

#[test]
fn usage_and_numeric_error_lanes() {
    let (code, _, stderr) = run(&["pair", "--state", "ha", "--map", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown map"));

    let (code, _, stderr) = run(&["pair", "--state", "ha", "--map", "chi", "--y", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--x"));

    let (code, _, stderr) = run(&[
        "pair", "--state", "ha", "--map", "chi", "--x", "1", "--y", "1", "--u", "pauli",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("'u0' or 'seed:N'"));

    let (code, _, stderr) = run(&[
        "pair", "--state", "ha", "--map", "chi", "--x", "2", "--y", "0",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("outside"));

    // clap's own parse errors also take the usage lane
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn minimize_solves_the_separable_case() {
    let (code, stdout, _) = run(&[
        "minimize", "--map", "reduction", "--d", "2", "--iters", "400", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    let min_line = stdout
        .lines()
        .find(|l| l.starts_with("minimum:"))
        .expect("minimum line");
    let v: f64 = min_line.split(':').nth(1).unwrap().trim().parse().unwrap();
    assert!(v.abs() < 1e-3, "2⊗2 PPT minimum of the reduction witness is 0, got {v}");
    assert!(stdout.contains("state_ppt: true"));
}
