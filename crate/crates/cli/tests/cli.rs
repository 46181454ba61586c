//! End-to-end tests of the satkit binary: exit codes, canonical output,
//! and the round-trip guarantee that printed values re-parse.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::str::FromStr;

use satkit_core::Partition;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn satkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn syn_prints_canonical_blocks() {
    let out = satkit(&["syn", &corpus("z4.alg"), "--subset", "0,2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "[[0,2],[1,3]]");
}

#[test]
fn syn_empty_subset_is_a_precondition_failure() {
    let out = satkit(&["syn", &corpus("z4.alg"), "--subset", ""]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty subset"));
}

#[test]
fn check_variety_prints_ok() {
    let out = satkit(&["check", &corpus("s3.alg"), "--variety", "group"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "group: OK");
    let out = satkit(&["check", &corpus("or2.alg"), "--variety", "monoid"]);
    assert_eq!(stdout(&out).trim(), "monoid: OK");
}

#[test]
fn check_variety_reports_violations() {
    // the boolean semiring is not a group shape at all
    let out = satkit(&["check", &corpus("boolsr.alg"), "--variety", "group"]);
    assert_eq!(exit_code(&out), 2);
    // lz3 is a monoid but not a semilattice question: use flat3 with the
    // monoid tag: no `mul`/`e` shape either -> signature error
    let out = satkit(&["check", &corpus("flat3.alg"), "--variety", "monoid"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn parse_error_names_the_line() {
    let dir = std::env::temp_dir().join("satkit_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.alg");
    std::fs::write(&path, "algebra broken\nsize 2\nop mul 2\n0 1 9 0\nend\n").unwrap();
    let out = satkit(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("out of range"), "{err}");
}

#[test]
fn congruences_respects_the_guard() {
    let out = satkit(&["congruences", &corpus("z4.alg"), "--max-size", "2"]);
    assert_eq!(exit_code(&out), 3);
    let out = satkit(&["congruences", &corpus("z4.alg")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec!["[[0,1,2,3]]", "[[0,2],[1,3]]", "[[0],[1],[2],[3]]"]
    );
}

#[test]
fn printed_partitions_reparse() {
    let cases: Vec<(Vec<String>, usize)> = vec![
        (
            vec!["syn".into(), corpus("z4.alg"), "--subset".into(), "0,2".into()],
            4,
        ),
        (
            vec!["forall".into(), corpus("z4.alg"), "--sub".into(), "0,2".into()],
            4,
        ),
        (
            vec![
                "normal-sup".into(),
                corpus("z4.alg"),
                "--sub".into(),
                "0,2".into(),
            ],
            4,
        ),
        (
            vec![
                "cat-syn".into(),
                corpus("z4mon.cat"),
                "--wide".into(),
                "0,2".into(),
            ],
            4,
        ),
    ];
    for (args, expected_size) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = satkit(&args);
        assert_eq!(exit_code(&out), 0, "{args:?}");
        let text = stdout(&out);
        let first = text.lines().next().unwrap().trim();
        let p = Partition::from_str(first).unwrap();
        assert_eq!(p.size(), expected_size, "{args:?}");
    }
}

#[test]
fn centralizer_output_carries_a_semantics_tag() {
    let out = satkit(&[
        "centralizer",
        &corpus("s3.alg"),
        "--cong",
        "[[0,3,4],[1,2,5]]",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut parts = text.split_whitespace();
    let blocks = parts.next().unwrap();
    assert_eq!(blocks, "[[0,3,4],[1,2,5]]");
    assert_eq!(parts.next().unwrap(), "protomodular");

    // a plain monoid gets the formal tag
    let out = satkit(&["centralizer", &corpus("or2.alg"), "--cong", "[[0],[1]]"]);
    assert!(stdout(&out).contains("formal"));
}

#[test]
fn connected_answers_true_and_false() {
    let theta = "[[0,3,4],[1,2,5]]";
    let out = satkit(&["connected", &corpus("s3.alg"), "--cong-r", theta, "--cong-s", theta]);
    assert_eq!(stdout(&out).trim(), "true");
    let out = satkit(&[
        "connected",
        &corpus("s3.alg"),
        "--cong-r",
        theta,
        "--cong-s",
        "[[0,1,2,3,4,5]]",
    ]);
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn synmon_block_reparses_as_an_algebra() {
    let out = satkit(&["synmon", &corpus("even4.dfa")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let block: String = text
        .lines()
        .take_while(|l| !l.starts_with("size:"))
        .map(|l| format!("{l}\n"))
        .collect();
    let monoid = satkit_core::parse_algebra(&block).unwrap();
    assert_eq!(monoid.size(), 2);
    assert!(text.trim_end().ends_with("size: 2"));

    let out = satkit(&["synmon", &corpus("emptylang.dfa")]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn oracle_flag_agrees_on_largest_computations() {
    let cases: Vec<Vec<String>> = vec![
        vec!["syn".into(), corpus("z4.alg"), "--subset".into(), "0,2".into()],
        vec!["forall".into(), corpus("v4.alg"), "--sub".into(), "0,1".into()],
        vec![
            "normal-sup".into(),
            corpus("lz3.alg"),
            "--sub".into(),
            "0,1".into(),
        ],
        vec![
            "centralizer".into(),
            corpus("z6.alg"),
            "--cong".into(),
            "[[0,2,4],[1,3,5]]".into(),
        ],
        vec![
            "cat-syn".into(),
            corpus("s3mon.cat"),
            "--wide".into(),
            "0,3,4".into(),
        ],
    ];
    for args in cases {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.push("--oracle");
        let out = satkit(&args);
        assert_eq!(exit_code(&out), 0, "{args:?}: {:?}", stdout(&out));
        assert!(stdout(&out).contains("oracle: match"), "{args:?}");
    }
}

#[test]
fn shift_reports_the_witness() {
    let out = satkit(&[
        "shift",
        &corpus("sl22.alg"),
        "--cong-t",
        "[[0,2],[1],[3]]",
        "--cong-s",
        "[[0,1],[2,3]]",
        "--cong-r",
        "[[0,2],[1,3]]",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "fails: x=0 y=1 x'=2 y'=3");

    let out = satkit(&[
        "shift",
        &corpus("z4.alg"),
        "--cong-t",
        "[[0,2],[1,3]]",
        "--cong-s",
        "[[0,2],[1,3]]",
        "--cong-r",
        "[[0,1,2,3]]",
    ]);
    assert_eq!(stdout(&out).trim(), "holds");

    // violated precondition is an error, not a "fails" answer
    let out = satkit(&[
        "shift",
        &corpus("z4.alg"),
        "--cong-t",
        "[[0],[1],[2],[3]]",
        "--cong-s",
        "[[0,2],[1,3]]",
        "--cong-r",
        "[[0,2],[1,3]]",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn forall_cong_is_indexed_by_position() {
    // U = {0,2,4,6} in z8; positions [[0,2],[1,3]] mean elements {0,4},{2,6}
    let out = satkit(&[
        "forall",
        &corpus("z8.alg"),
        "--sub",
        "0,2,4,6",
        "--cong",
        "[[0,2],[1,3]]",
        "--oracle",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "[[0,4],[1,5],[2,6],[3,7]]"
    );
    assert!(text.contains("oracle: match"));
}

#[test]
fn byte_identical_across_runs() {
    let args = ["congruences", &corpus("d4.alg")];
    let first = stdout(&satkit(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&satkit(&args)), first);
    }
}
