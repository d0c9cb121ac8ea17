use std::process::{Command, Output};

fn hquant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hquant")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn char0_vertical_coproduct_of_h() {
    let o = hquant(&["compute", "delta", "--variant", "char0-vertical", "--n", "1", "--k", "1", "--N", "3", "--elt", "DH[1;1]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "t^0: 1⊗DH[1;1] + DH[1;1]⊗1\n\
         t^1: DH[1;1]⊗DH[1;2]\n\
         t^2: DH[1;1]⊗DH[1;2]^2\n\
         t^3: DH[1;1]⊗DH[1;2]^3\n"
    );
}

#[test]
fn counit_of_a_basis_vector_is_zero() {
    let o = hquant(&["compute", "counit", "--elt", "DH[1;2]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn radford_row_in_the_restricted_quantization() {
    // the divided-power e is half the char-0 one, so h⊗e picks up a 2
    let o = hquant(&["compute", "delta", "--variant", "utq", "--p", "3", "--q", "1", "--elt", "DHp[1;1]@3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "t^0: 1⊗DHp[1;1]@3 + DHp[1;1]@3⊗1\n\
         t^1: 2*DHp[1;1]@3⊗DHp[1;2]@3\n\
         t^2: DHp[1;1]@3⊗DHp[1;2]@3^2\n"
    );
}

#[test]
fn specialized_antipode() {
    let o = hquant(&["compute", "antipode", "--variant", "utq", "--p", "3", "--q", "1", "--t0", "0", "--elt", "DHp[1;1]@3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2*DHp[1;1]@3\n");
}

#[test]
fn cocycle_suite_passes() {
    let o = hquant(&["verify", "cocycle", "--n", "1", "--k", "1", "--N", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("PASS cocycle ")));
}

#[test]
fn dims_reports_seven() {
    let o = hquant(&["verify", "dims", "--n", "1", "--p", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("PASS dim-H") && out.contains("enumerated=7"), "{out}");
    assert!(out.contains("monomial_basis=\"3^7\"") && out.contains("u_tq_over_K=\"3^8\""), "{out}");
}

#[test]
fn jordanian_table_as_displayed_fails() {
    let o = hquant(&["--format", "json", "verify", "jordanian"]);
    assert_eq!(code(&o), 1);
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let failing: Vec<u64> = recs
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| {
            assert_eq!(r["check_id"], "sp4-table-row");
            r["parameters"]["row"].as_u64().unwrap()
        })
        .collect();
    assert_eq!(failing.len(), 15);
    assert!(recs.iter().filter(|r| r["check_id"] == "sp4-table-row-corrected").all(|r| r["status"] == "pass"));
}

#[test]
fn json_records_are_deterministic() {
    let args = ["--format", "json", "verify", "horizontal", "--seed", "7", "--samples", "12"];
    let a = hquant(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_hquant")).args(args).env("HQUANT_THREADS", "1").output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["check_id", "context", "parameters", "status", "witness", "wall_time_ms"] {
            assert!(r.get(key).is_some(), "{key} missing in {line}");
        }
        assert_eq!(r["wall_time_ms"], 0);
    }
}

#[test]
fn exit_codes() {
    // 2: configuration
    assert_eq!(code(&hquant(&["compute", "delta", "--variant", "char0-horizontal", "--n", "1", "--elt", "DH[1;1]"])), 2);
    assert_eq!(code(&hquant(&["compute", "delta", "--variant", "ut", "--p", "4", "--elt", "DHp[1;1]@4"])), 2);
    assert_eq!(code(&hquant(&["compute", "delta", "--p", "5", "--elt", "DHp[1;1]@3"])), 2);
    assert_eq!(code(&hquant(&["verify", "nonsense"])), 2);
    // 3: parse
    let o = hquant(&["compute", "delta", "--elt", "DH[1;"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 5"));
    // 4: not a basis index
    assert_eq!(code(&hquant(&["compute", "delta", "--variant", "ut", "--p", "3", "--elt", "DHp[0;0]@3"])), 4);
    assert_eq!(code(&hquant(&["compute", "delta", "--variant", "ut", "--p", "3", "--elt", "DHp[3;1]@3"])), 4);
}
