//! End-to-end tests against the compiled binary: frozen output strings,
//! exit code classification, JSON shapes, and agreement with the library.

use qflag_core::bundles::{coaction, dolbeault, sphere_z, sphere_zs, sphere_zz, theta, DolbeaultPart, HopfMapId};
use qflag_core::calculus::{calc_ctx, idx_e0, OneForm};
use qflag_core::killing::{killing_matrix, pair_r, pair_rbar};
use qflag_core::ncalg::{AlgebraSpec, NcPoly};
use std::process::Command;

fn exe() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qflag"));
    c.env_remove("QFLAG_DEFAULT_N");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = exe().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run_env(args: &[&str], key: &str, value: &str) -> (i32, String, String) {
    let out = exe().args(args).env(key, value).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn su2() -> AlgebraSpec {
    AlgebraSpec::special_unitary(2, 2)
}

fn g(spec: AlgebraSpec, i: u8, j: u8) -> NcPoly {
    NcPoly::gen(spec, i, j).unwrap()
}

#[test]
fn nf_prints_the_exchange_normal_form() {
    let (code, stdout, _) = run(&["nf", "--n", "2", "u[2,2]*u[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "u[1,1]*u[2,2] - (q - q^-1)*u[1,2]*u[2,1]");
}

#[test]
fn nf_letters_rename_the_size_two_generators() {
    let (code, stdout, _) = run(&["nf", "--n", "2", "--letters", "u[2,2]*u[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "a*d - (q - q^-1)*b*c");
}

#[test]
fn nf_quotient_only_expressions_reduce_in_the_session() {
    // S is undefined in the matrix bialgebra, so the session quotient's
    // reduction is shown; at size two the engine rewrites through det = 1.
    let (code, stdout, _) = run(&["nf", "--n", "2", "S(u[1,2])"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), g(su2(), 1, 2).antipode().unwrap().to_string());
}

#[test]
fn nf_json_carries_the_value() {
    let (code, stdout, _) = run(&["nf", "--n", "2", "--json", "u[2,2]*u[1,1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["value"], "u[1,1]*u[2,2] - (q - q^-1)*u[1,2]*u[2,1]");
    assert!(v.get("oracle").is_none());
}

#[test]
fn d_prints_the_frame_expansion() {
    let (code, stdout, _) = run(&["d", "--n", "2", "u[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "u[1,1] e0 + u[1,2] ep[1]");
}

#[test]
fn d_json_shape_lists_basis_and_coefficients() {
    let (code, stdout, _) = run(&["d", "--n", "2", "--json", "u[1,1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["basis"], serde_json::json!(["em[1]", "e0", "ep[1]"]));
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[0].as_array().unwrap().len(), 0);
    assert_eq!(coeffs[1], serde_json::json!([{"monomial": "u[1,1]", "scalar": "1"}]));
    assert_eq!(coeffs[2], serde_json::json!([{"monomial": "u[1,2]", "scalar": "1"}]));
}

#[test]
fn verify_podles_recovery_emits_a_passing_json_report() {
    let (code, stdout, _) = run(&["verify", "podles-recovery", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["suite_name"], "podles-recovery");
    assert_eq!(v["n"], 2);
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for check in checks {
        assert_eq!(check["status"], "pass");
        assert!(check["citation"].as_str().is_some());
    }
}

#[test]
fn out_of_range_index_is_a_usage_error() {
    let (code, _, stderr) = run(&["nf", "--n", "2", "u[3,1]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("out of range"), "{stderr}");
}

#[test]
fn syntax_error_reports_line_and_column() {
    let (code, _, stderr) = run(&["nf", "--n", "2", "u[1,1] +"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1, column 9"), "{stderr}");
}

#[test]
fn theta_outside_the_counit_kernel_is_a_check_failure() {
    let (code, _, stderr) = run(&["theta", "--n", "2", "z[1]"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("counit"), "{stderr}");
}

#[test]
fn theta_of_the_shifted_coordinate_is_the_neutral_frame() {
    let (code, stdout, _) = run(&["theta", "--n", "2", "z[1] - 1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "e0");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let (code, _, stderr) = run(&["verify", "does-not-exist", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"), "{stderr}");
}

#[test]
fn oversized_suite_request_is_a_usage_error() {
    let (code, _, stderr) = run(&["verify", "su2-ideal", "--n", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("su2-ideal"), "{stderr}");
}

#[test]
fn verify_without_a_suite_lists_the_registry() {
    let (code, _, stderr) = run(&["verify", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("hopf-axioms"), "{stderr}");
    assert!(stderr.contains("podles-recovery"), "{stderr}");
}

#[test]
fn verify_all_runs_every_suite_at_size_two() {
    let (code, stdout, _) = run(&["verify", "--all", "--n", "2", "--budget", "sample:2", "--seed", "7"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(!stdout.contains("skipped"), "{stdout}");
}

#[test]
fn verify_all_json_reports_and_skips() {
    let (code, stdout, _) = run(&["verify", "--all", "--n", "2", "--json", "--budget", "sample:1", "--seed", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["reports"].as_array().unwrap().len(), 15);
    assert_eq!(v["skipped"].as_array().unwrap().len(), 0);
}

#[test]
fn bad_budget_syntax_is_a_usage_error() {
    let (code, _, stderr) = run(&["verify", "hopf-axioms", "--n", "2", "--budget", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unrecognized budget"), "{stderr}");
}

#[test]
fn degree_reports_the_line_bundle_charge() {
    let (code, stdout, _) = run(&["degree", "--n", "2", "z[1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-1");
    let (code, stdout, _) = run(&["degree", "--n", "2", "zs[2]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1");
    let (code, _, stderr) = run(&["degree", "--n", "2", "z[1] + zs[1]"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("charges"), "{stderr}");
}

#[test]
fn environment_variable_sets_the_default_size() {
    let (code, stdout, _) = run_env(&["nf", "u[3,3]"], "QFLAG_DEFAULT_N", "3");
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "u[3,3]");
    // without the variable the default is 2, so the index is out of range
    let (code, _, _) = run(&["nf", "u[3,3]"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_env(&["nf", "u[1,1]"], "QFLAG_DEFAULT_N", "not-a-size");
    assert_eq!(code, 2);
}

#[test]
fn undersized_session_is_rejected() {
    let (code, _, stderr) = run(&["nf", "--n", "1", "u[1,1]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("supported sizes"), "{stderr}");
}

#[test]
fn bound_certifies_the_determinant_relation() {
    let det_minus_one = "u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1";
    let (code, stdout, _) = run(&["nf", "--n", "2", "--json", "--bound", "3", det_minus_one]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["oracle"]["bound"], 3);
    assert_eq!(v["oracle"]["zero_mod_det_ideal"], true);

    let (code, stdout, stderr) = run(&["nf", "--n", "2", "--json", "--bound", "3", "u[1,1]"]);
    assert_eq!(code, 0, "{stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["oracle"]["zero_mod_det_ideal"], false);
}

#[test]
fn bound_smaller_than_the_degree_is_a_usage_error() {
    let (code, _, stderr) = run(&["nf", "--n", "2", "--bound", "1", "u[1,2]*u[2,1]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bound"), "{stderr}");
}

#[test]
fn pair_matches_the_library() {
    let s = su2();
    for (kind, expect) in [
        ("r", pair_r(&g(s, 1, 1), &g(s, 1, 1)).unwrap()),
        ("rbar", pair_rbar(&g(s, 1, 1), &g(s, 1, 1)).unwrap()),
    ] {
        let (code, stdout, _) = run(&["pair", kind, "--n", "2", "u[1,1]", "u[1,1]"]);
        assert_eq!(code, 0);
        assert_eq!(stdout.trim(), expect.to_string());
    }
}

#[test]
fn killing_json_matches_the_library() {
    let s = su2();
    let m = killing_matrix(&g(s, 1, 1)).unwrap();
    let (code, stdout, _) = run(&["killing", "--n", "2", "--json", "u[1,1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["size"], 2);
    for k in 0..2 {
        for l in 0..2 {
            assert_eq!(v["entries"][k][l], m.at(k, l).to_string());
        }
    }
}

#[test]
fn act_matches_the_library() {
    let s = su2();
    let ctx = calc_ctx(s).unwrap();
    let expect = ctx
        .right_act(&OneForm::frame(s, idx_e0(2)), &sphere_z(s, 1).unwrap())
        .unwrap();
    let (code, stdout, _) = run(&["act", "--n", "2", "e0", "z[1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), expect.to_string());
}

#[test]
fn coset_matches_the_library() {
    let s = su2();
    let ctx = calc_ctx(s).unwrap();
    let expect = ctx.coset(&g(s, 1, 2)).unwrap();
    let (code, stdout, _) = run(&["coset", "--n", "2", "u[1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), expect.to_string());
}

#[test]
fn dolbeault_commands_match_the_library() {
    let s = su2();
    let zz12 = sphere_zz(s, 1, 2).unwrap();
    let del = dolbeault(&zz12, DolbeaultPart::Hol).unwrap();
    let delbar = dolbeault(&zz12, DolbeaultPart::AntiHol).unwrap();
    let (code, stdout, _) = run(&["del", "--n", "2", "zz[1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), del.to_string());
    let (code, stdout, _) = run(&["delbar", "--n", "2", "zz[1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), delbar.to_string());
    // sphere coordinates of nonzero charge are outside the projective
    // subalgebra, so the split of d is not defined on them
    let (code, _, stderr) = run(&["del", "--n", "2", "z[1]"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("e0 component"), "{stderr}");
}

#[test]
fn nabla_matches_the_library() {
    let s = su2();
    let expect = qflag_core::bundles::covariant_derivative(&sphere_zs(s, 1).unwrap()).unwrap();
    let (code, stdout, _) = run(&["nabla", "--n", "2", "zs[1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), expect.to_string());
}

#[test]
fn theta_matches_the_library_on_a_kernel_element() {
    let s = su2();
    let x = sphere_z(s, 2).unwrap();
    let expect = theta(&x).unwrap();
    let (code, stdout, _) = run(&["theta", "--n", "2", "z[2]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), expect.to_string());
}

#[test]
fn coact_matches_the_library_and_validates_the_map() {
    let s = su2();
    let expect = coaction(HopfMapId::Beta, &sphere_z(s, 1).unwrap()).unwrap();
    let (code, stdout, _) = run(&["coact", "beta", "--n", "2", "z[1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), expect.to_string());

    let (code, _, stderr) = run(&["coact", "delta", "--n", "2", "z[1]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown map"), "{stderr}");
}

#[test]
fn coact_json_lists_tensor_terms() {
    let (code, stdout, _) = run(&["coact", "gamma", "--n", "2", "--json", "u[1,1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    for term in terms {
        assert!(term["left"].as_str().is_some());
        assert!(term["right"].as_str().is_some());
        assert!(term["scalar"].as_str().is_some());
    }
}
