mod common;

use common::{gswf, json, stdout, validate};

#[test]
fn verify_all_fails_only_on_the_expectation_floor() {
    let o = gswf(&["verify", "--all", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    validate("verify.json", &v).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 23);
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["instability_expectation_floor"]);
    for r in reports.iter().filter(|r| r["inverted"] == true) {
        assert_eq!(r["claim_holds"], false, "{}", r["name"]);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn verify_single_checks_exit_zero() {
    let o = gswf(&["verify", "--check", "neutral_limit_constant", "--check", "fkg"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    validate("verify.json", &v).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn verify_unknown_check_is_a_usage_error() {
    assert_eq!(gswf(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(gswf(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let a = gswf(&["verify", "--check", "formula_vs_oracle", "--seed", "3"]);
    let b = gswf(&["verify", "--check", "formula_vs_oracle", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_list_names_every_check() {
    let o = gswf(&["verify", "--list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("instability_expectation_floor"));
}

#[test]
fn majority_stability_curve() {
    let o = gswf(&["curve", "majority-stability", "--n", "3..19"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["n", "rho", "value", "reference", "abs_err"]);
    let recs: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 9);
    let errs: Vec<f64> = recs.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn instability_curve_columns() {
    let o = gswf(&["curve", "instability", "--n", "5,7,9", "--q", "0.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["n", "q", "k", "W", "eta", "ratio", "min_expectation"]);
    assert_eq!(rows.records().count(), 3);
}

#[test]
fn curve_usage_errors() {
    assert_eq!(gswf(&["curve", "instability", "--n", ""]).status.code(), Some(2));
    assert_eq!(gswf(&["curve", "majority-stability", "--n", "4"]).status.code(), Some(2));
    assert_eq!(gswf(&["curve", "sideways", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["curve", "majority-stability", "--n", "3..11", "--rho", "0.2,0.5"][..],
        &["rationality", "--preset", "threshold_instability", "--n", "9", "--q", "0.2"][..],
        &["search", "--n", "3", "--class", "monotone"][..],
    ] {
        assert_eq!(gswf(args).stdout, gswf(args).stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        std::process::Command::new(env!("CARGO_BIN_EXE_gswf"))
            .args(["search", "--n", "3", "--class", "non_constant", "--objective", "min-w", "--exclude-dictators"])
            .env("GSWF_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn bad_thread_count_is_rejected() {
    let o = std::process::Command::new(env!("CARGO_BIN_EXE_gswf"))
        .args(["catalog", "list"])
        .env("GSWF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(gswf(&["--help"]).status.code(), Some(0));
    assert_eq!(gswf(&["--version"]).status.code(), Some(0));
    assert_eq!(gswf(&["frobnicate"]).status.code(), Some(2));
}
