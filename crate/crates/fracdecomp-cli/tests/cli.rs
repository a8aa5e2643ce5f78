//! End-to-end checks of the command line surface: formats, exit codes, and
//! certificate round trips through real process invocations.

use std::path::Path;
use std::process::{Command, Output};

fn fracdecomp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdecomp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn threshold_prints_exact_rational() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(&["threshold", "--e1", "3", "--e2", "1", "--e3", "1"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "2/3\n");

    let out = fracdecomp(&["threshold", "--e1", "1", "--e2", "1", "--e3", "1"], dir.path());
    assert_eq!(stdout_of(&out), "1/1\n");
}

#[test]
fn oracle_answers_with_exit_zero_either_way() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(&["oracle", "--template", "C5", "--host", "K33"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "infeasible\n");

    let out = fracdecomp(&["oracle", "--template", "K3", "--host", "K4"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "feasible\n");
}

#[test]
fn oracle_witness_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(
        &[
            "oracle",
            "--template",
            "K3",
            "--host",
            "K4",
            "--witness",
            "w.cert",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let verify = fracdecomp(
        &["verify", "--host", "K4", "--certificate", "w.cert"],
        dir.path(),
    );
    assert!(verify.status.success());
    assert_eq!(stdout_of(&verify), "status=exact\n");
}

#[test]
fn decompose_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(
        &[
            "decompose",
            "--graph",
            "K6",
            "--template",
            "3,1,1",
            "--output",
            "k6.cert",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    // every edge lies in 4 triangles; the uniform triple (1/4,1/4,1/4) needs
    // the three cyclic rotations of (3,1,1), so 3 copies per triangle
    assert_eq!(stdout_of(&out), "triangles=20 copies=60 status=exact\n");
    let verify = fracdecomp(
        &["verify", "--host", "K6", "--certificate", "k6.cert"],
        dir.path(),
    );
    assert!(verify.status.success());
    assert_eq!(stdout_of(&verify), "status=exact\n");
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.graph"), "2 1\n0 0\n").unwrap();
    let out = fracdecomp(
        &["decompose", "--graph", "bad.graph", "--template", "3,1,1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());

    let out = fracdecomp(
        &["threshold", "--e1", "0", "--e2", "1", "--e3", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mathematical_failure_exits_two_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    // C5 is triangle-free, so the per-triangle weighting cannot start
    let out = fracdecomp(&["decompose", "--graph", "C5", "--template", "3,1,1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("lies in no triangle"), "stderr: {err}");
}

#[test]
fn condense_matches_cycle_template() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c7.parts"), "1 3 5\n2 4 6\n0\n").unwrap();
    let out = fracdecomp(
        &["condense", "--graph", "C7", "--partition", "c7.parts"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "3 3\n0 1 5/1\n0 2 1/1\n1 2 1/1\n");
}

#[test]
fn condense_rejects_dependent_parts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.parts"), "0 1 3\n2 4\n").unwrap();
    let out = fracdecomp(
        &["condense", "--graph", "C5", "--partition", "bad.parts"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("internal edge"), "stderr: {err}");
}

#[test]
fn blowup_emits_exact_certificate() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c5.parts"), "1 3\n2 4\n0\n").unwrap();
    let out = fracdecomp(
        &[
            "blowup",
            "--graph",
            "C5",
            "--partition",
            "c5.parts",
            "--q",
            "2",
            "--output",
            "blow.cert",
            "--host-out",
            "blow.host",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "injections=8 copies=8 status=exact\n");
    let verify = fracdecomp(
        &["verify", "--host", "blow.host", "--certificate", "blow.cert"],
        dir.path(),
    );
    assert_eq!(stdout_of(&verify), "status=exact\n");

    // over the cap, the identity is checked combinatorially instead
    let out = fracdecomp(
        &[
            "blowup",
            "--graph",
            "C5",
            "--partition",
            "c5.parts",
            "--q",
            "2",
            "--cap",
            "4",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "injections=8 status=verified-combinatorial\n");
}

#[test]
fn extremal_certificates_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(
        &[
            "extremal",
            "--lemma",
            "7",
            "--template-graph",
            "C5",
            "--n",
            "40",
            "--graph-out",
            "l7.graph",
            "--cert-out",
            "l7.cert",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "lemma=7 rho=1/5 h=0 g=10 edges_g0=0 edges_g1=400 status=certified\n"
    );
    let verify = fracdecomp(
        &["verify", "--host", "l7.graph", "--certificate", "l7.cert"],
        dir.path(),
    );
    assert!(verify.status.success());
    assert_eq!(stdout_of(&verify), "status=valid\n");

    // a tampered certificate is rejected with exit 2
    let cert = std::fs::read_to_string(dir.path().join("l7.cert")).unwrap();
    let tampered = cert.replace("rho 1/5", "rho 1/2");
    std::fs::write(dir.path().join("bad.cert"), tampered).unwrap();
    let verify = fracdecomp(
        &["verify", "--host", "l7.graph", "--certificate", "bad.cert"],
        dir.path(),
    );
    assert_eq!(verify.status.code(), Some(2));
}

#[test]
fn threshold_tables_pin_family_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdecomp(&["threshold-table", "--family", "cycle", "--max", "7"], dir.path());
    assert_eq!(stdout_of(&out), "l=5 lower=5/8 upper=2/3\nl=7 lower=7/12 upper=3/5\n");

    // lower bounds frozen at 12 digits from (1/4)(3 - sqrt((a-1)/(3a+1)))
    let out = fracdecomp(&["threshold-table", "--family", "K_a11", "--max", "3"], dir.path());
    assert_eq!(
        stdout_of(&out),
        "a=2 lower≈0.655508881748 upper=4/5\na=3 lower≈0.638196601125 upper=3/4\n"
    );

    let out = fracdecomp(&["threshold-table", "--family", "K_aa1", "--max", "3"], dir.path());
    assert_eq!(
        stdout_of(&out),
        "a=2 lower=2/3 upper=3/4\na=3 lower=5/8 upper=3/4\n"
    );
}

#[test]
fn random_graph_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = fracdecomp(
        &["random-graph", "--n", "14", "--min-degree", "10", "--seed", "7"],
        dir.path(),
    );
    let b = fracdecomp(
        &["random-graph", "--n", "14", "--min-degree", "10", "--seed", "7"],
        dir.path(),
    );
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = fracdecomp(
        &["random-graph", "--n", "14", "--min-degree", "10", "--seed", "8"],
        dir.path(),
    );
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn leftover_packings_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    // a half-scale copy of the host leaves half the weight uncovered
    std::fs::write(dir.path().join("host.graph"), "3 3\n0 1 3/1\n0 2 1/1\n1 2 1/1\n").unwrap();
    std::fs::write(
        dir.path().join("half.cert"),
        "fractional-decomposition\ntemplates 1\ntemplate t0 3 3\n0 1 3/1\n0 2 1/1\n1 2 1/1\ncopies 1\nt0 1/2 0 1 2\n",
    )
    .unwrap();
    let out = fracdecomp(
        &["verify", "--host", "host.graph", "--certificate", "half.cert"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "status=leftover total=5/2\n");

    // doubling oversubscribes and fails with exit 2
    std::fs::write(
        dir.path().join("double.cert"),
        "fractional-decomposition\ntemplates 1\ntemplate t0 3 3\n0 1 3/1\n0 2 1/1\n1 2 1/1\ncopies 2\nt0 1/1 0 1 2\nt0 1/1 0 1 2\n",
    )
    .unwrap();
    let out = fracdecomp(
        &["verify", "--host", "host.graph", "--certificate", "double.cert"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("oversubscribed"), "stderr: {err}");
}
