mod common;

use std::process::Command;

use common::run;
use qgr::{EXIT_CAPABILITY, EXIT_CERTIFIED, EXIT_INPUT, EXIT_WITNESS};
use qgr_core::Config;

#[test]
fn codes_by_outcome() {
    let cfg = Config::default();
    let cases = [
        ("verify-morphism --n 3 --l 2", EXIT_CERTIFIED),
        ("verify-morphism --n 2 --l 2", EXIT_WITNESS),
        ("verify-morphism --n 3 --l 3", EXIT_INPUT),
        ("verify-splitting --n 3", EXIT_CERTIFIED),
        ("verify-splitting --n 2", EXIT_WITNESS),
        ("verify-splitting --n 9", EXIT_CAPABILITY),
        ("verify-splitting --n 1", EXIT_INPUT),
        ("classify-approx --n 3 --p2n 2", EXIT_INPUT),
        ("factor --m 0", EXIT_INPUT),
        ("smooth-check --n 1", EXIT_CERTIFIED),
        ("threshold --family D --n 10 --k 5", EXIT_CERTIFIED),
        ("threshold --family Q --n 10 --k 5", EXIT_INPUT),
        ("no-such-command", EXIT_INPUT),
        ("--help", EXIT_CERTIFIED),
    ];
    for (line, code) in cases {
        assert_eq!(run(line, &cfg).code, code, "{line}");
    }
}

#[test]
fn unwritable_json_path_is_an_input_error() {
    let r = run("factor --m 4 --json /nonexistent-dir/x.json", &Config::default());
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn oracle_never_changes_the_verdict() {
    let cfg = Config::default();
    let mut lines = vec![];
    for n in 2..=3 {
        lines.push(format!("verify-splitting --n {n}"));
        lines.push(format!("smooth-check --n {n}"));
        for l in (2..2 * n).step_by(2) {
            lines.push(format!("verify-morphism --n {n} --l {l}"));
        }
    }
    lines.push("smooth-check --n 1".into());
    lines.push("classify-approx --n 3 --p2n 0".into());
    lines.push("classify-approx --n 3 --p2n 1".into());
    lines.push("factor --m 18".into());
    lines.push("threshold --family B --n 10 --k 7".into());
    for line in lines {
        let plain = run(&line, &cfg);
        let checked = run(&format!("{line} --oracle"), &cfg);
        assert_eq!(plain.code, checked.code, "{line}");
        let (a, b) = (plain.cert.unwrap(), checked.cert.unwrap());
        assert_eq!(a.verdict, b.verdict, "{line}");
        assert!(!a.oracle_checked && b.oracle_checked);
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qgr"))
}

#[test]
fn env_bound_overrides_default() {
    let out = bin().args(["verify-splitting", "--n", "3"]).env("QGR_MAX_N", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAPABILITY));
    let out = bin().args(["verify-splitting", "--n", "3"]).env("QGR_MAX_N", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = bin().args(["factor", "--m", "6"]).env_remove("QGR_MAX_N").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CERTIFIED));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 - x + x^2"));
}
