use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwe-triage"))
        .args(args)
        .env_remove("MWE_TRIAGE_LEXICON")
        .output()
        .unwrap()
}

fn corpus(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn label_of(stdout: &[u8], id: &str) -> String {
    let text = String::from_utf8_lossy(stdout);
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    let col = header.iter().position(|h| *h == "label").unwrap();
    text.lines()
        .map(|l| l.split('\t').collect::<Vec<_>>())
        .find(|r| r[0] == id)
        .map(|r| r[col].to_string())
        .unwrap_or_else(|| panic!("{id} not in output"))
}

#[test]
fn classify_with_both_trees() {
    let c = corpus("gold_examples.cupt");
    let modified = run(&["classify", "--corpus", &c]);
    assert_eq!(modified.status.code(), Some(0));
    assert_eq!(label_of(&modified.stdout, "fr-ex04#2-3"), "LVC.asp");
    let baseline = run(&["classify", "--corpus", &c, "--tree", "baseline"]);
    assert_eq!(label_of(&baseline.stdout, "fr-ex04#2-3"), "CP");
    assert_eq!(label_of(&baseline.stdout, "fr-ex05#3-5"), "VID");
}

#[test]
fn assume_no_mode_resolves_unknown_predicates() {
    let c = corpus("gold_examples.cupt");
    let out = run(&["classify", "--corpus", &c, "--mode", "assume-no"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("UNRESOLVED"));
    assert!(text.contains("\ttrue\t"));
}

#[test]
fn missing_lexicon_is_an_error() {
    let out = run(&["classify", "--corpus", &corpus("bain_only.cupt"), "--lexicon", "/no/such/lexicon.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lexicon"));
}

#[test]
fn lexicon_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("empty.json");
    std::fs::write(&lex, "[]").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mwe-triage"))
        .args(["classify", "--corpus", &corpus("bain_only.cupt")])
        .env("MWE_TRIAGE_LEXICON", &lex)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(label_of(&out.stdout, "fr-ex01#2-4"), "UNRESOLVED");
}

#[test]
fn audit_exit_codes() {
    let gold = run(&["audit", "--corpus", &corpus("gold_examples.cupt")]);
    assert_eq!(gold.status.code(), Some(1));
    let text = String::from_utf8(gold.stdout).unwrap();
    assert!(text.contains("cluster PP_IDIOM|être|ASPECT(INCHOATIVE)"));

    let clean = run(&["audit", "--corpus", &corpus("bain_only.cupt")]);
    assert_eq!(clean.status.code(), Some(0));
    assert!(String::from_utf8(clean.stdout).unwrap().contains("no inconsistencies"));

    let bad = run(&["audit", "--corpus", &corpus("malformed/ten_columns.cupt")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains(":17:"));
}

#[test]
fn audit_rewrite_relabels_with_modified_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rewritten.cupt");
    let status = run(&[
        "audit",
        "--corpus",
        &corpus("gold_examples.cupt"),
        "--rewrite",
        &out.display().to_string(),
    ]);
    assert_eq!(status.status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains(":LVC.asp"));
    let again = run(&["classify", "--corpus", &out.display().to_string()]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn export_replays_an_answers_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("answers.jsonl");
    let record = serde_json::json!({
        "timestamp": 0,
        "session_id": "s",
        "question_id": "fr-ex25#2-4/LVC0",
        "candidate_id": "fr-ex25#2-4",
        "test": "LVC0",
        "answer": "NO",
        "note": ""
    });
    std::fs::write(&log, format!("{record}\n")).unwrap();
    let verdicts = dir.path().join("verdicts.tsv");
    let out = run(&[
        "export",
        "--corpus",
        &corpus("gold_examples.cupt"),
        "--answers",
        &log.display().to_string(),
        "--verdicts",
        &verdicts.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("# global.columns"));
    let table = std::fs::read_to_string(&verdicts).unwrap();
    let train = table.lines().find(|l| l.starts_with("fr-ex25#2-4\t")).unwrap();
    assert!(train.contains("LVC0=NO@human:s"), "{train}");
}

#[test]
fn export_requires_existing_log() {
    let out = run(&["export", "--corpus", &corpus("bain_only.cupt"), "--answers", "/no/such/log.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn terminal_session_persists_answers() {
    use std::io::Write;
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("answers.jsonl");
    let lex = dir.path().join("empty.json");
    std::fs::write(&lex, "[]").unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_mwe-triage"))
        .args(["session", "--corpus", &corpus("bain_only.cupt")])
        .arg("--lexicon")
        .arg(&lex)
        .arg("--answers")
        .arg(&log)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"n not a noun\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&log).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("\"not a noun\""));
}
