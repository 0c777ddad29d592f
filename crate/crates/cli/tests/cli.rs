use std::process::{Command, Output};

fn rmtori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmtori"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_sqrt2_pair() {
    let o = rmtori(&["classify", "-g", "3,-4,-2,3", "-v", "3,1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("N: 6"));
    assert!(s.contains("M: 14"));
    assert!(s.contains("koszul: holds"));
    assert!(s.contains("dual g: 6,11,1,2"));
    assert!(s.contains("hilbert: 1, 14, 84, 490"));
}

#[test]
fn classify_json_round_trips() {
    let o = rmtori(&["--json", "classify", "-g", "3,-4,-2,3", "-v", "3,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = rmtori::wire::parse_profile(&v["profile"]).unwrap();
    assert_eq!(p.n, 6.into());
    assert_eq!(p.m, 14.into());
    assert_eq!(v["koszul"], "holds");
}

#[test]
fn golden_ratio_pair_not_finitely_generated() {
    let o = rmtori(&["classify", "-g", "2,1,1,1", "-v", "0,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("finitely_generated: fails"));
}

#[test]
fn unipotent_trivial_alpha_is_koszul() {
    let s = stdout(&rmtori(&["classify", "-g", "1,4,0,1", "-v", "0,1", "--alpha", "trivial"]));
    assert!(s.contains("quadratic: holds"));
    assert!(s.contains("koszul: holds"));
}

#[test]
fn hilbert_and_dual_coefficients() {
    let s = stdout(&rmtori(&["hilbert", "--n", "6", "--m", "14", "--horizon", "3"]));
    assert!(s.contains("hilbert: 1, 14, 84, 490"));
    assert!(s.contains("dual: 1, 14, 112, 882"));
}

#[test]
fn descent_from_one_zero() {
    let o = rmtori(&["descent", "--alpha", "1", "--beta", "0", "--gamma", "-2", "-v", "1,0", "-n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["(-1, -1)", "(-4, -3)"]);
}

#[test]
fn construct_rm_postconditions() {
    let o = rmtori(&["--json", "construct-rm", "--alpha", "1", "--beta", "0", "--gamma", "-2", "--koszul-grade"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = rmtori::wire::parse_profile(&v["profile"]).unwrap();
    assert!(p.m >= &p.n + 2);
    assert!(p.koszul().unwrap().status == rmtori::classify::Status::Holds);
}

#[test]
fn orbit_table_prints() {
    let o = rmtori(&["orbit", "-g", "3,-4,-2,3", "-v", "3,1", "--horizon", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rk(F'_0)"));
}

#[test]
fn ample_sequence_rows() {
    let o = rmtori(&["ample-seq", "--theta-alpha", "1", "--theta-beta", "0", "--theta-gamma", "-2", "--count", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<_> = s.lines().collect();
    assert_eq!(lines[0], "index,d,r,mu");
    assert_eq!(lines.len(), 5);
}

#[test]
fn survey_header_and_rows() {
    let o = rmtori(&["survey", "--n-min", "2", "--n-max", "3", "--m-min", "1", "--m-max", "2", "--parallel"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<_> = s.lines().collect();
    assert_eq!(lines[0], "N,M,degree_one,quadratic,koszul,finitely_generated,ample");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("2,1,"));
}

#[test]
fn survey_empty_range_is_header_only() {
    let s = stdout(&rmtori(&["survey", "--n-min", "5", "--n-max", "4"]));
    assert_eq!(s.trim(), "N,M,degree_one,quadratic,koszul,finitely_generated,ample");
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        vec!["classify", "-g", "1,2,3,4", "-v", "1,0"],
        vec!["classify", "-g", "1.5,0,0,1", "-v", "1,0"],
        vec!["classify", "-g", "2,1,1,1", "-v", "0,2"],
        vec!["construct-rm", "--alpha", "1", "--beta", "0", "--gamma", "-4"],
        vec!["oracle", "run", "--suite", "nonsense"],
    ] {
        let o = rmtori(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(!err.contains("panicked"), "{args:?}");
    }
}

#[test]
fn oracle_series_suite_passes() {
    let o = rmtori(&["oracle", "run", "--suite", "series"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}
