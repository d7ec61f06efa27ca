mod common;

use common::{cases, mismatch, wittkit};

fn argv(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn golden_outputs_are_byte_identical() {
    let cases = cases();
    assert!(cases.len() >= 13, "only {} golden cases", cases.len());
    let failures: Vec<String> = cases.iter().filter_map(mismatch).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for case in cases() {
        assert_eq!(wittkit(&case.args).stdout, wittkit(&case.args).stdout, "{}", case.name);
    }
}

#[test]
fn printed_vectors_reparse() {
    let out = wittkit(&argv(&["mul", "--p", "3", "--vars", "1", "wv[T1;2]", "wv[T1^2;1]"]));
    let lit = String::from_utf8(out.stdout).unwrap();
    let again = wittkit(&argv(&["add", "--p", "3", "--vars", "1", lit.trim(), "wv[0;0]"]));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), lit);
}

#[test]
fn domain_errors_exit_1_with_the_error_name() {
    let out = wittkit(&argv(&["inv", "--p", "2", "--vars", "1", "wv[T1;1]"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotAUnit"));
    let out = wittkit(&argv(&["hensel", "--p", "2", "--vars", "1", "--root", "T1", "wv[0]", "wv[1]", "wv[1]"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotARoot"));
    let out = wittkit(&argv(&["f", "--p", "2", "wv[1]"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LengthUnderflow"));
}

#[test]
fn usage_errors_exit_2() {
    let bad: &[&[&str]] = &[
        &["frobnicate"],
        &["add", "--p", "4", "wv[1]", "wv[1]"],
        &["add", "--p", "2", "wv[1]"],
        &["add", "--p", "2", "--len", "1", "wv[1;0]", "wv[1]"],
        &["gauss", "--p", "2", "--epsilon", "0", "wv[1]"],
        &["gauss", "--p", "2", "--epsilon", "-1", "wv[1]"],
        &["check", "nonsense"],
    ];
    for args in bad {
        assert_eq!(wittkit(&argv(args)).status.code(), Some(2), "{args:?}");
    }
    let out = wittkit(&argv(&["add", "--p", "2", "--vars", "1", "wv[T1^]", "wv[1]"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 6"));
}

#[test]
fn short_literals_pad_to_len() {
    let out = wittkit(&argv(&["add", "--p", "2", "--len", "3", "wv[1]", "wv[1]"]));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "wv[0;1;0]\n");
}
