use std::process::Command;

use maxsub_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

const G2_RING: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/presets/g2-rank2.ring");

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("maxsub").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn count_g2_rank2() {
    let (code, out, err) = call(&["count", "--preset", "g2-rank2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "m_2 = (1/48)*n^5 + (1/24)*n^3\n");
    assert!(err.is_empty());
}

#[test]
fn count_jacobian() {
    for g in 2..=5 {
        let (code, out, _) = call(&["count", "--preset", "jacobian", "--genus", &g.to_string()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, format!("m_1 = n^{g}\n"));
    }
}

#[test]
fn count_is_byte_stable() {
    let first = call(&["count", "--preset", "g2-rank2", "--verbose"]);
    for _ in 0..3 {
        assert_eq!(call(&["count", "--preset", "g2-rank2", "--verbose"]), first);
    }
    assert!(first.1.contains(
        "c_top(F - E): ((1/24)*n^5 - (5/12)*n^3)*alpha^3*theta^2 + n^3*theta*Lambda^2\n"
    ));
    assert!(first.1.contains("integral: (1/3)*n^5 + (2/3)*n^3\n"));
}

#[test]
fn count_record() {
    let (code, out, _) = call(&["count", "--preset", "g2-rank2", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["label"], "m_2");
    assert_eq!(v["count"]["text"], "(1/48)*n^5 + (1/24)*n^3");
    assert_eq!(v["count"]["terms"][0]["coefficient"], "1/48");
    assert_eq!(v["covering_degree"], "16");
}

#[test]
fn integrate_and_reduce() {
    assert_eq!(
        call(&["integrate", "--ring", G2_RING, "alpha^3*theta^2"]).1,
        "8\n"
    );
    assert_eq!(
        call(&["integrate", "--ring", G2_RING, "theta*Lambda^2"]).1,
        "4\n"
    );
    assert_eq!(
        call(&["reduce", "--ring", G2_RING, "xi1^2 + 2*theta*f"]).1,
        "0\n"
    );
    assert_eq!(
        call(&["reduce", "--ring", G2_RING, "(alpha + f)^2"]).1,
        "2*f*alpha + alpha^2\n"
    );
    // built-in names work without a file on disk
    assert_eq!(
        call(&["integrate", "--ring", "g2-rank2.ring", "alpha^3*theta^2"]).1,
        "8\n"
    );
    assert_eq!(
        call(&["integrate", "--ring", "jacobian-g3.ring", "theta^3"]).1,
        "6\n"
    );
}

#[test]
fn parse_errors_exit_two() {
    let (code, out, err) = call(&["reduce", "--ring", G2_RING, "xi1^2 +* f"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("1:8"), "{err}");
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["count"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["reduce", "--ring", "/nonexistent/x.ring", "f"]).0,
        EXIT_USAGE
    );
}

#[test]
fn domain_errors_exit_one() {
    let (code, out, err) = call(&["count", "--preset", "jacobian", "--genus", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.is_empty());
    assert!(err.contains("genus"));
    let (code, _, err) = call(&["integrate", "--ring", G2_RING, "alpha^3*theta^2*f"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("pushforward"));
    assert_eq!(call(&["reduce", "--ring", G2_RING, "zeta"]).0, EXIT_DOMAIN);
    let args = [
        "formulas",
        "stratum-dim",
        "--n",
        "4",
        "--sub-rank",
        "2",
        "--d",
        "4",
        "--genus",
        "2",
        "--s",
        "3",
    ];
    assert_eq!(call(&args).0, EXIT_DOMAIN);
}

#[test]
fn formulas() {
    let f = |args: &[&str]| {
        let mut v = vec!["formulas"];
        v.extend_from_slice(args);
        let (code, out, _) = call(&v);
        assert_eq!(code, EXIT_OK, "{args:?}");
        out
    };
    assert_eq!(
        f(&[
            "s-invariant",
            "--n",
            "6",
            "--d",
            "7",
            "--sub-rank",
            "3",
            "--sub-degree",
            "2"
        ]),
        "9\n"
    );
    assert_eq!(
        f(&[
            "hirschowitz-smax",
            "--n",
            "4",
            "--sub-rank",
            "2",
            "--d",
            "4",
            "--genus",
            "2"
        ]),
        "4\n"
    );
    assert_eq!(
        f(&[
            "stratum-dim",
            "--n",
            "2",
            "--sub-rank",
            "1",
            "--d",
            "-3",
            "--genus",
            "2",
            "--s",
            "1"
        ]),
        "5\n"
    );
    assert_eq!(
        f(&["quot-dim", "--n-g", "1", "--d-g", "1", "--n-q", "2", "--d-q", "1", "--genus", "2"]),
        "-2\n"
    );
    assert_eq!(f(&["m1", "--n", "3", "--genus", "4"]), "81\n");
    assert_eq!(f(&["m2", "--n", "6"]), "171\nadmissible: yes\n");
    assert_eq!(f(&["m2", "--n", "2"]), "1\nadmissible: no\n");
    let v: serde_json::Value =
        serde_json::from_str(&f(&["m2", "--n", "4", "--format", "record"])).unwrap();
    assert_eq!(v["value"], "24");
    assert_eq!(v["admissible"], true);
}

#[test]
fn check_presets() {
    let (code, out, _) = call(&["check", "--preset", "g2-rank2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    assert!(out.contains("closed form"));
    let (code, _, _) = call(&["check", "--preset", "jacobian", "--genus", "4"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn binary_streams_and_status() {
    let bin = env!("CARGO_BIN_EXE_maxsub");
    let ok = Command::new(bin)
        .args(["count", "--preset", "g2-rank2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        "m_2 = (1/48)*n^5 + (1/24)*n^3\n"
    );
    let bad = Command::new(bin)
        .args(["count", "--preset", "k3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
