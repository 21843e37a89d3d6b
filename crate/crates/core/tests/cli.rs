use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use hcbridge::cli_harness::{run, Cli, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hcbridge"))
}

fn status(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn render(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("hcbridge").chain(args.iter().copied())).unwrap();
    let cfg = RunConfig::from_cli(cli).unwrap();
    let r = run(&cfg);
    (r.exit, r.render(cfg.format))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn exit_statuses() {
    assert_eq!(status(&["check", "xy"]), 0);
    assert_eq!(status(&["check", "broken"]), 2);
    assert_eq!(status(&["check", "xy", "--convention", "paper-literal"]), 2);
    assert_eq!(status(&["hochschild", "broken"]), 2);
    assert_eq!(status(&["hochschild", "no-such-model"]), 1);
    assert_eq!(status(&["hochschild", "eps", "--degrees", "3..1"]), 1);
    assert_eq!(status(&["frobnicate"]), 1);
    assert_eq!(status(&["mc", "cone", "--strategy", "verify-only", "--mc-point", "t=1"]), 3);
    assert_eq!(status(&["mc", "cone", "--strategy", "verify-only", "--mc-point", "e=1,th=1"]), 0);
    assert_eq!(status(&["mc", "cone", "--strategy", "verify-only", "--mc-point", "h=1"]), 1);
    let certify = ["cyclic", "xy", "--weight", "3", "--u-max", "1", "--degrees", "-3..0", "--weights", "0..4"];
    assert_eq!(status(&certify), 0);
    assert_eq!(status(&[&certify[..], &["--certify"]].concat()), 4);
    assert_eq!(status(&["bracket", "xy", "--weight", "4", "--u-max", "2", "--class", "0,2,99", "--class", "0,2,0"]), 1);
}

#[test]
fn reports_are_byte_deterministic() {
    let args = ["theorem1", "xy", "--weight", "4", "--u-max", "2", "--weights", "0..1", "--grid", "0..1", "--format", "json"];
    let (exit, first) = render(&args);
    assert_eq!(exit, 0);
    for _ in 0..2 {
        assert_eq!(render(&args).1, first);
    }
    let out = bin().args(args).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), first);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("hcbridge-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(status(&["check", "eps", "--format", "json", "--out", p]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["status"]["exit"], 0);
    assert_eq!(v["version"], 1);
}

#[test]
fn bracket_output_round_trips_as_a_class_file() {
    let (exit, text) = render(&["bracket", "xy", "--weight", "4", "--u-max", "2", "--class", "0,2,0", "--class", "0,2,1", "--format", "json"]);
    assert_eq!(exit, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let path = std::env::temp_dir().join(format!("hcbridge-class-{}.json", std::process::id()));
    std::fs::write(&path, v["result"]["alpha"].to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (exit, again) = render(&["bracket", "xy", "--weight", "4", "--u-max", "2", "--class", p, "--class", p, "--format", "json"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(exit, 0);
    let w: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(w["result"]["alpha"], v["result"]["alpha"]);
    // graded antisymmetry: {α,α} vanishes for α in even Lie degree
    assert_eq!(w["result"]["is_zero_class"], true);
}

/// Frozen outputs for bundled fixtures; `HCBRIDGE_BLESS=1` rewrites them.
#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str])] = &[
        ("check_xy.json", &["check", "xy", "--format", "json"]),
        ("hochschild_dual.txt", &["hochschild", "dual", "--weight", "5", "--degrees", "-4..0", "--weights", "0..4"]),
        ("cyclic_eps.json", &["cyclic", "eps", "--weight", "5", "--u-max", "2", "--degrees", "-3..1", "--weights", "0..3", "--format", "json"]),
        ("cyclic_ground.txt", &["cyclic", "ground", "--weight", "4", "--u-max", "3", "--degrees", "0..6"]),
        ("mc_moment.txt", &["mc", "moment", "--grid", "-1..1"]),
    ];
    let bless = std::env::var_os("HCBRIDGE_BLESS").is_some();
    for (file, args) in cases {
        let (exit, text) = render(args);
        assert_eq!(exit, 0, "{file}");
        if bless {
            std::fs::write(golden(file), &text).unwrap();
        } else {
            let want = std::fs::read_to_string(golden(file)).unwrap();
            assert_eq!(text, want, "{file} differs from its golden copy");
        }
    }
}
