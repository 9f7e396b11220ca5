//! Black-box checks of the command-line contract: exit codes, JSON shape,
//! float formatting, seed resolution, timestamp handling, --out, and the
//! CSV header rows.

use std::process::Command;

fn jlip_bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jlip"));
    cmd.env_remove("JLIP_SEED");
    cmd
}

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = jlip_bin().args(args).output().expect("spawn jlip");
    (
        out.status.code(),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// The raw text of a top-level field in a compact JSON object.
fn raw_field<'a>(json: &'a str, key: &str) -> &'a str {
    let pat = format!("\"{key}\":");
    let start = json.find(&pat).map(|i| i + pat.len()).unwrap_or_else(|| {
        panic!("field {key} missing in {json}");
    });
    let rest = &json[start..];
    let end = rest
        .find([',', '}'])
        .unwrap_or_else(|| panic!("unterminated field {key}"));
    &rest[..end]
}

#[test]
fn metric_reports_json_with_seventeen_digit_floats() {
    let (code, stdout, stderr) = run(&[
        "metric",
        "--domain",
        "ball2",
        "--x",
        "0,0",
        "--y",
        "0.5,0",
        "--all",
        "--no-timestamp",
    ]);
    assert_eq!(code, Some(0), "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["command"], "metric");
    assert!((v["j"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
    assert!((v["rho"].as_f64().unwrap() - 3.0f64.ln()).abs() < 1e-15);
    assert!(v["k_est"].as_f64().is_some());
    // floats are rendered in scientific notation with 17 significant digits
    let j_text = raw_field(&stdout, "j");
    assert!(j_text.contains('e'), "not scientific notation: {j_text}");
    let digits = j_text
        .chars()
        .take_while(|c| *c != 'e')
        .filter(char::is_ascii_digit)
        .count();
    assert_eq!(digits, 17, "expected 17 significant digits in {j_text}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, stderr) = run(&["sup", "--map", "nosuchmap:a=1"]);
    assert_eq!(code, Some(2), "stderr: {stderr}");

    let (code, _, _) = run(&["metric", "--domain", "octagon", "--x", "0,0", "--y", "0.1,0"]);
    assert_eq!(code, Some(2));

    let (code, _, _) = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(code, Some(2));

    // clap's own usage failure keeps the same code
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, Some(2));

    // a polynomial factor with a zero inside the closed disk is rejected
    let (code, _, _) = run(&["sup", "--map", "poly:m=1,q=0:0;1:0"]);
    assert_eq!(code, Some(2));

    // malformed seed in the environment
    let out = jlip_bin()
        .env("JLIP_SEED", "pony")
        .args(["metric", "--domain", "ball2", "--x", "0,0", "--y", "0.5,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_violations_exit_three() {
    let (code, _, stderr) = run(&["metric", "--domain", "ball2", "--x", "3,0", "--y", "0.5,0"]);
    assert_eq!(code, Some(3), "stderr: {stderr}");

    let (code, _, _) = run(&["metric", "--domain", "half2", "--x", "0,-1", "--y", "0,1"]);
    assert_eq!(code, Some(3));

    // a puncture sitting at one of the query points is a domain violation too
    let (code, _, _) = run(&[
        "metric",
        "--domain",
        "ball2:puncture=0,0",
        "--x",
        "0,0",
        "--y",
        "0.5,0",
    ]);
    assert_eq!(code, Some(3));
}

#[test]
fn seed_flag_beats_environment_which_beats_default() {
    let base = ["sup", "--map", "sigma:a=0.5,0", "--no-timestamp"];

    let (_, defaulted, _) = run(&base); // seed 0

    let out = jlip_bin()
        .env("JLIP_SEED", "7")
        .args(base)
        .output()
        .unwrap();
    let env7 = String::from_utf8(out.stdout).unwrap();

    let mut with_flag = base.to_vec();
    with_flag.extend(["--seed", "7"]);
    let (_, flag7, _) = run(&with_flag);

    let out = jlip_bin()
        .env("JLIP_SEED", "9")
        .args(&with_flag)
        .output()
        .unwrap();
    let flag_beats_env = String::from_utf8(out.stdout).unwrap();

    assert_eq!(env7, flag7, "env seed and flag seed must agree");
    assert_eq!(flag7, flag_beats_env, "flag must override the environment");
    assert_ne!(defaulted, flag7, "different seeds must change the report");

    let v: serde_json::Value = serde_json::from_str(&flag7).unwrap();
    assert_eq!(v["seed"].as_u64(), Some(7), "report echoes the seed");
}

#[test]
fn timestamp_presence_is_controlled() {
    let base = ["metric", "--domain", "ball2", "--x", "0,0", "--y", "0.5,0"];
    let (_, with_ts, _) = run(&base);
    assert!(with_ts.contains("\"timestamp\""), "{with_ts}");

    let mut quiet = base.to_vec();
    quiet.push("--no-timestamp");
    let (_, without, _) = run(&quiet);
    assert!(!without.contains("\"timestamp\""), "{without}");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("jlip-out-{}.json", std::process::id()));
    let base = [
        "metric",
        "--domain",
        "ball2",
        "--x",
        "0,0",
        "--y",
        "0.5,0",
        "--no-timestamp",
    ];
    let (_, stdout, _) = run(&base);

    let mut to_file = base.to_vec();
    to_file.extend(["--out", path.to_str().unwrap()]);
    let (code, piped, _) = run(&to_file);
    assert_eq!(code, Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();

    assert_eq!(written, stdout, "--out must capture exactly the stdout bytes");
    assert!(piped.is_empty(), "stdout should stay quiet when --out is set");
}

#[test]
fn csv_format_emits_contracted_headers() {
    let (code, metric_csv, _) = run(&[
        "metric",
        "--domain",
        "ball2",
        "--x",
        "0,0",
        "--y",
        "0.5,0",
        "--all",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(code, Some(0));
    assert!(
        metric_csv.starts_with("quantity,value\n"),
        "metric header: {metric_csv}"
    );
    assert!(metric_csv.lines().any(|l| l.starts_with("j,")));
    assert!(metric_csv.lines().any(|l| l.starts_with("rho,")));

    let (code, sup_csv, _) = run(&[
        "sup",
        "--map",
        "cayley:b2h",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(code, Some(0));
    assert!(
        sup_csv.starts_with("family,t,ratio\n"),
        "sup header: {}",
        sup_csv.lines().next().unwrap_or("")
    );
    assert!(
        sup_csv.lines().count() > 10,
        "family traces should produce many rows"
    );

    let (code, verify_csv, _) = run(&[
        "verify",
        "--suite",
        "conjecture",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(code, Some(0));
    assert!(
        verify_csv.starts_with("check,passed,measured\n"),
        "verify header: {}",
        verify_csv.lines().next().unwrap_or("")
    );
    assert!(verify_csv.lines().skip(1).any(|l| l.contains(",true,")));
}

#[test]
fn sup_report_carries_certificates_and_traces() {
    let (code, stdout, _) = run(&[
        "sup",
        "--map",
        "power:k=3",
        "--no-timestamp",
        "--seed",
        "0",
    ]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["command"], "sup");
    assert_eq!(v["map"], "power:k=3");
    let sup = v["sup_estimate"].as_f64().unwrap();
    assert!(sup > 1.0 && sup <= 3.0 + 1e-9, "sup {sup}");
    assert_eq!(v["bound_upper"].as_f64(), Some(3.0));
    assert!(v["family_traces"].as_array().map_or(0, Vec::len) >= 1);
    assert!(v["witness_x"].as_array().is_some());
}
