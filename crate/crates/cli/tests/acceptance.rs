use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use z22susy::superspace::SuperField;
use z22susy::actions::{printed_lagrangian, ActionName};
use z22susy::{AtomTable, Pretty};
use z22susy_cli::criteria::{self, criterion_passed, Options};
use z22susy_cli::Status;

/// Every identity is compared exactly; no numeric tolerance anywhere.
const TOLERANCE: f64 = 0.0;
const TRUNCATION: u32 = 4;
const PROPERTY_CASES: usize = 1000;
/// Criteria whose printed statement cannot be reproduced as written.
const KNOWN_UNATTAINABLE: [u8; 1] = [6];
const BATTERY_BUDGET: Duration = Duration::from_secs(120);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_z22susy"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Bypasses the test harness capture so the lines show in every run.
fn say(line: String) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", line).ok();
    out.flush().ok();
}

#[test]
fn acceptance_criteria() {
    assert_eq!(TOLERANCE, 0.0);
    let opts = Options { truncation: TRUNCATION, cases: PROPERTY_CASES, ..Options::default() };
    let start = Instant::now();
    let mut unexpected = Vec::new();
    for n in 1..=10u8 {
        let t = Instant::now();
        let r = criteria::run(n, &opts);
        let ok = criterion_passed(&r);
        let line = if ok { "PASS" } else { "FAIL" };
        let note: Vec<String> =
            r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| format!("{} [{}]: {}", c.name, c.status, c.detail)).collect();
        let extra = if note.is_empty() { String::new() } else { format!(" -- {}", note.join("; ")) };
        say(format!(
            "criterion {:>2} {}: {} ({} checks, {:.1?}){}",
            n,
            line,
            criteria::TITLES[n as usize - 1],
            r.checks.len(),
            t.elapsed(),
            extra
        ));
        if ok == KNOWN_UNATTAINABLE.contains(&n) {
            unexpected.push(n);
        }
        // a known-unattainable criterion may only fall short through flagged checks
        assert!(!r.failed(), "criterion {} has failing checks:\n{}", n, r);
    }
    say(format!("battery time {:.1?}", start.elapsed()));
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {:?}", unexpected);
    assert!(start.elapsed() < BATTERY_BUDGET);
}

#[test]
fn verify_algebra_passes() {
    let (code, out) = run(&["verify-algebra"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("15 passed, 0 failed"));
}

#[test]
fn low_truncation_notes_reduced_coverage() {
    let (code, out) = run(&["verify-algebra", "--truncation", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("reduced coverage"));
}

#[test]
fn corrupted_generator_table_exits_nonzero() {
    let (code, out) = run(&["verify-algebra", "--corrupt"]);
    assert_eq!(code, 1, "{}", out);
    assert!(out.contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["constrain", "--which", "z", "--delta", "2,0"]).0, 2);
    assert_eq!(run(&["action", "no-such-action"]).0, 2);
    assert_eq!(run(&["irreps", "iii"]).0, 2);
    assert_eq!(run(&["criterion", "11"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn case_i_kinetic_mismatch_is_flagged() {
    let (code, out) = run(&["action", "case-i-kinetic"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("[FLAG] case-i-kinetic reproduces the printed Lagrangian"));
    assert!(out.contains("fermion signs differ"));
}

#[test]
fn b10_action_prints_its_lagrangian() {
    let (code, out) = run(&["action", "b10"]);
    assert_eq!(code, 0);
    let printed = Pretty(&printed_lagrangian(ActionName::B10).unwrap()).to_string();
    assert!(out.contains(&format!("L = {}", printed)), "{}", out);
}

#[test]
fn case_ii_attempt_prints_its_obstruction() {
    let (code, out) = run(&["action", "case-ii-attempt", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"][0]["artifacts"]["integrable"] == false);
    assert_eq!(v["checks"][0]["artifacts"]["obstruction"], "-i psi psi^{(1)} + i xi xi^{(1)}");
}

#[test]
fn constrain_writes_the_multiplet() {
    let path = std::env::temp_dir().join(format!("z22susy-constrain-{}.json", std::process::id()));
    let (code, out) = run(&["constrain", "--delta", "1,1", "--which", "z", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("equals dressed-11-table"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["multiplet"]["basis"][0]["atom"], "f_011");
    assert_eq!(v["multiplet"]["matrices"]["Q10"].as_array().unwrap().len(), 4);
}

#[test]
fn exported_superfield_round_trips() {
    let path = std::env::temp_dir().join(format!("z22susy-export-{}.json", std::process::id()));
    let (code, _) = run(&["superfield", "export", "--which", "f011", "--truncation", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    let f = SuperField::from_json(&v, &AtomTable::new()).unwrap();
    assert_eq!(f.truncation(), 3);
    assert!(!f.is_exact());
    assert_eq!(f.to_json(), v);
}

#[test]
fn irreps_report_reducibility() {
    let (code, out) = run(&["irreps", "induced8"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("[PASS] reducible"));
    let (code, out) = run(&["irreps", "dress2"]);
    assert_eq!(code, 0, "{}", out);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["criterion", "8", "--json", "--seed", "5"]);
    let b = run(&["criterion", "8", "--json", "--seed", "5"]);
    assert_eq!(a, b);
}
