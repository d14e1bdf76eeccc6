use std::process::{Command, Output};

use dwcalc::seifert::DWResult;

fn dwcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_text_and_json() {
    let args = [
        "compute",
        "--group",
        "cyclic:3",
        "--level",
        "1",
        "--seifert",
        "g=0;(1,1),(1,2)",
    ];
    let o = dwcalc(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("value:    -1/3 - 2/3*E(3)"), "{text}");
    assert!(text.contains("method:   prime"));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let o = dwcalc(&json_args);
    assert_eq!(o.status.code(), Some(0));
    let r: DWResult = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.value.to_string(), "-1/3 - 2/3*E(3)");
    assert!((r.approx.im + 1.0 / 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn methods_agree_through_the_binary() {
    let base = [
        "compute",
        "--group",
        "cyclic:5",
        "--level",
        "0",
        "--seifert",
        "g=1;(2,1),(3,-1),(5,2)",
        "--format",
        "json",
    ];
    let values: Vec<String> = ["formula", "prime", "oracle"]
        .iter()
        .map(|m| {
            let mut a = base.to_vec();
            a.extend(["--method", m]);
            let o = dwcalc(&a);
            assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
            let r: DWResult = serde_json::from_str(&stdout(&o)).unwrap();
            r.value.to_string()
        })
        .collect();
    assert_eq!(values[0], values[1]);
    assert_eq!(values[1], values[2]);
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec![
            "compute",
            "--group",
            "cyclic:6",
            "--level",
            "5",
            "--seifert",
            "g=0;(2,1),(3,1),(5,-3)",
        ],
        vec!["characters", "--group", "cyclic:4", "--level", "3", "--format", "json"],
        vec![
            "verify",
            "--suite",
            "gluing",
            "--suite",
            "cocycle",
            "--max-order",
            "4",
            "--seed",
            "7",
        ],
    ] {
        let a = dwcalc(&args);
        let b = dwcalc(&args);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let cases: [(&[&str], &str); 5] = [
        (
            &["compute", "--group", "cyclic:3", "--level", "7", "--seifert", "g=0"],
            "--level",
        ),
        (
            &["compute", "--group", "cyclic:3", "--seifert", "g=0;(2,4)"],
            "--seifert",
        ),
        (&["compute", "--group", "dihedral:4", "--seifert", "g=0"], "--group"),
        (&["gauss", "--p", "9", "--a", "1"], "--p"),
        (&["verify", "--suite", "nonsense"], "--suite"),
    ];
    for (args, flag) in cases {
        let o = dwcalc(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn budget_overrun_exits_three() {
    let o = dwcalc(&[
        "compute",
        "--group",
        "abelian:4,4",
        "--seifert",
        "g=3;(2,1),(3,1)",
        "--method",
        "oracle",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn kappa_verification_passes_at_order_eight() {
    let o = dwcalc(&["verify", "--suite", "kappa", "--max-order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn kappa_and_gauss_subcommands() {
    let o = dwcalc(&[
        "kappa", "--group", "cyclic:6", "--level", "5", "--a", "3", "--b", "5", "--z", "2", "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal: yes"));

    let o = dwcalc(&["gauss", "--p", "5", "--a", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("S_5(2) = 1 + 2*E(5)^2 + 2*E(5)^3"));
}
