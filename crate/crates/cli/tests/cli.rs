use std::process::{Command, Output};

fn ellipmono(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ellipmono"));
    cmd.args(args);
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("ELLIPMONO_")) {
        cmd.env_remove(k);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_prints_closed_form_of_b3() {
    let o = ellipmono(&["coeffs", "--n-max", "3"], &[]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,W_n,b_n_exact,b_n,ratio,c_n_4_sign"));
    assert!(s.contains("pi*(pi^2 + 27*pi + 150)/3072*exp_half_pi"));
    assert_eq!(s.lines().count(), 5);
    assert!(s.lines().nth(1).unwrap().ends_with(",+"));
    assert!(s.lines().nth(2).unwrap().ends_with(",-"));
}

#[test]
fn constants_show_alpha_and_beta() {
    let o = ellipmono(&["constants", "--format", "json"], &[]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let find = |name: &str| {
        v.as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"] == name)
            .unwrap()["value"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert!(find("alpha").starts_with("0.810"));
    assert!(find("beta").starts_with("0.246"));
    assert!(find("ratio_1").starts_with("3.778"));
}

#[test]
fn certify_ratio_increasing_exits_zero_with_json() {
    let o = ellipmono(
        &["certify", "ratio_increasing", "--n-max", "100", "--start-bits", "128"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "Certified");
    assert_eq!(v["claim"], "ratio_increasing");
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn no_timestamp_output_is_deterministic() {
    let args = ["verify", "--family", "P1_lower", "--grid-density", "20", "--no-timestamp"];
    let a = ellipmono(&args, &[]);
    let b = ellipmono(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("runtime_ms"));
}

#[test]
fn flags_override_environment() {
    let env = [("ELLIPMONO_N_MAX", "2")];
    let from_env = ellipmono(&["coeffs"], &env);
    assert_eq!(stdout(&from_env).lines().count(), 4);
    let from_flag = ellipmono(&["coeffs", "--n-max", "5"], &env);
    assert_eq!(stdout(&from_flag).lines().count(), 7);
}

#[test]
fn unknown_selectors_are_usage_errors() {
    let o = ellipmono(&["certify", "no_such_claim"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_claim"));
    let o = ellipmono(&["verify", "--family", "P9"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = ellipmono(&["coeffs", "--n-max", "0"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = ellipmono(&["eval", "--x", "3/2"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn refuted_claim_exits_one_and_sharpness_refutation_exits_zero() {
    let o = ellipmono(&["certify", "c_nonneg", "--p", "4", "--n-max", "5"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let o = ellipmono(&["sharpness", "--family", "P1_upper", "--epsilon", "1/100"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "Refuted");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn out_flag_writes_file_and_csv_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.csv");
    let o = ellipmono(
        &["certify", "--claim", "u_signs", "--n-max", "50", "--format", "csv", "--out", path.to_str().unwrap()],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("claim,range,status,precision_used,checked,witnesses,first_witness,runtime_ms"));
    assert!(text.contains("Certified"));
}

#[test]
fn eval_reports_h_at_half_as_beta() {
    let o = ellipmono(&["eval", "--x", "1/2,0.1"], &[]);
    assert!(o.status.success());
    let s = stdout(&o);
    let half = s.lines().find(|l| l.starts_with("1/2,")).unwrap();
    assert!(half.split(',').last().unwrap().starts_with("0.2467322830"));
}

#[test]
fn extra_claims_run() {
    let o = ellipmono(&["certify", "j_truncation", "--n-max", "20"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let o = ellipmono(&["certify", "h_monotonic", "--grid-density", "12"], &[]);
    assert_eq!(o.status.code(), Some(0));
}
