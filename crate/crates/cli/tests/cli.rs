use std::path::PathBuf;
use std::process::{Command, Output};

fn dwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwa"))
        .args(args)
        .env_remove("DWA_THREADS")
        .output()
        .expect("dwa runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dwa-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_suites_names_every_suite() {
    let o = dwa(&["list-suites"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for name in ["relations", "f-identities", "poles", "fusion", "limit1", "limit2", "zalgebra", "characters", "zeta"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "missing {name} in\n{out}");
    }
}

#[test]
fn dump_bernoulli_and_g() {
    let o = dwa(&["dump", "bernoulli", "--order", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1/6", "1/30", "1/42"]));

    // N = 2, k = 2: g^{1,1} = (1 - x)/(1 + x)
    let o = dwa(&["dump", "g:N=2:k=2:mu=1:nu=1", "--order", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "-2", "2", "-2", "2"]));
}

#[test]
fn dump_unknown_id_is_an_error() {
    let o = dwa(&["dump", "nonsense:N=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn verify_zeta_config_writes_a_report() {
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/zeta.toml");
    let report = scratch("zeta.json");
    let o = dwa(&["verify", config.to_str().unwrap(), "-o", report.to_str().unwrap(), "-j", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["suite"] == "zeta"));
}

#[test]
fn verify_without_suites_exits_with_config_error() {
    let config = scratch("empty.toml");
    std::fs::write(&config, "suites = []\n").unwrap();
    let o = dwa(&["verify", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no suites selected"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let config = scratch("typo.toml");
    std::fs::write(&config, "suites = [\"zeta\"]\n[zeta]\nrank = [2]\n").unwrap();
    let o = dwa(&["verify", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
