use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_collatz-forms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cascade_of_27() {
    let text = stdout(&["cascade", "27"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "27=8(3)+3");
    assert_eq!(lines[1], "82=2(41)");
    assert_eq!(lines[5], "31=64(0)+31");
}

#[test]
fn ladder_of_31() {
    let text = stdout(&["ladder", "31"]);
    assert_eq!(text, "62=2(31)\n41=4(10)+1\n27=8(3)+3\nmcs 27\n");
    let text = stdout(&["ladder", "28", "--primary"]);
    assert!(text.ends_with("57=4(14)+1\npmcs 57\n"), "{text}");
    assert_eq!(run(&["ladder", "30", "--primary"]).status.code(), Some(1));
}

#[test]
fn columns_of_85() {
    let text = stdout(&["columns", "85"]);
    let columns: Vec<&str> = text
        .lines()
        .map(|l| l.rsplit(' ').next().unwrap())
        .collect();
    assert_eq!(columns, ["1", "4", "8", "4", "8", "4", "8", "4", "2", "1"]);
    assert_eq!(
        stdout(&["columns", "12", "--steps", "1"]).lines().count(),
        2
    );
}

#[test]
fn analyze_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["analyze", "27", "--json"])).unwrap();
    assert_eq!(v["p"], 3);
    assert_eq!(v["n"], "3");
    assert_eq!(v["column"], 3);
    assert_eq!(v["stopping_time"], 96);
    assert_eq!(v["even_steps"], 59);
    assert_eq!(v["principal"], true);

    let v: serde_json::Value = serde_json::from_str(&stdout(&["analyze", "85", "--json"])).unwrap();
    assert_eq!(v["seed"], true);
    assert_eq!(v["column"], 1);
}

#[test]
fn analyze_large_expression() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["analyze", "10^142-10^6+1", "--json"])).unwrap();
    let value = v["value"].as_str().unwrap();
    assert_eq!(value.len(), 142);
    assert!(value.ends_with("000001"));
    assert!(v["total_stopping_time"].as_u64().is_some());
}

#[test]
fn stoptime_and_seeds() {
    let text = stdout(&["stoptime", "27"]);
    assert!(text.contains("stopping time 96\n"));
    assert!(text.contains("even steps 59\n"));
    assert!(text.contains("total stopping time 111\n"));
    let text = stdout(&["seeds", "--count", "5"]);
    assert_eq!(text.lines().last(), Some("341 => 1024 = 2^10"));
}

#[test]
fn dotted_form() {
    let text = stdout(&["form", "16.4.8"]);
    assert!(text.starts_with("16.4.8 = 512n+215\n"));
    assert_eq!(run(&["form", "16.3"]).status.code(), Some(1));
}

#[test]
fn tables() {
    let t10 = stdout(&["table", "10", "--csv"]);
    assert_eq!(t10.lines().count(), 6);
    assert!(t10.lines().nth(5).unwrap().starts_with("341,1024,"));
    let t18 = stdout(&["table", "18", "--csv"]);
    assert_eq!(t18.lines().count(), 18);
    let t4 = stdout(&["table", "4", "--csv"]);
    let bases: Vec<&str> = t4
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(bases[..4], ["2", "4", "2", "64"]);
    let t17 = stdout(&["table", "17"]);
    assert!(t17.contains("8192*"));
    assert_eq!(stdout(&["table", "20"]), stdout(&["table", "20"]));
    assert_eq!(run(&["table", "2"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "0"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "3-4"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "2*3"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn single_window_scan() {
    let text = stdout(&["scan", "1", "10^4"]);
    assert_eq!(
        text,
        "window_start,window_end,principal_count\n1,10000,590\n"
    );
}

#[test]
fn scan_writes_files_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let forms = dir.path().join("f.csv");
    let summary = stdout(&[
        "scan",
        "1",
        "300",
        "--window",
        "100",
        "--out",
        out.to_str().unwrap(),
        "--forms",
        forms.to_str().unwrap(),
    ]);
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "window_start,window_end,principal_count\n1,100,17\n101,200,10\n201,300,9\n"
    );
    let forms = fs::read_to_string(&forms).unwrap();
    assert_eq!(forms.lines().count(), 37);
    assert!(forms.contains("\n27,59,96\n"));
    assert!(summary.contains("mean 12.00\n"), "{summary}");
    assert!(summary.contains("std (population)"));
    assert!(summary.contains("std (sample)"));
}

#[test]
fn jobs_do_not_change_output() {
    let one = stdout(&["scan", "1", "60000", "--window", "5000", "--jobs", "1"]);
    let four = stdout(&["scan", "1", "60000", "--window", "5000", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn resume_from_truncated_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.csv");
    let resumed = dir.path().join("resumed.csv");
    let ckpt = dir.path().join("scan.ckpt");
    let base = ["scan", "1", "40000", "--window", "5000", "--jobs", "3"];

    let mut args = base.to_vec();
    args.extend([
        "--out",
        full.to_str().unwrap(),
        "--checkpoint",
        ckpt.to_str().unwrap(),
    ]);
    stdout(&args);
    let lines: Vec<String> = fs::read_to_string(&ckpt)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 9);

    // Keep the header, three windows and half of a fourth record.
    let mut cut = lines[..4].join("\n");
    cut.push('\n');
    cut.push_str(&lines[4][..lines[4].len() / 2]);
    fs::write(&ckpt, cut).unwrap();

    let mut args = base.to_vec();
    args.extend([
        "--out",
        resumed.to_str().unwrap(),
        "--checkpoint",
        ckpt.to_str().unwrap(),
        "--resume",
    ]);
    stdout(&args);
    assert_eq!(fs::read(&full).unwrap(), fs::read(&resumed).unwrap());

    // Replaying a complete checkpoint scans nothing and changes nothing.
    stdout(&args);
    assert_eq!(fs::read(&full).unwrap(), fs::read(&resumed).unwrap());
    let records = fs::read_to_string(&ckpt).unwrap();
    assert_eq!(records.lines().count(), 9);
}

#[test]
fn resume_rejects_mismatched_header() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("scan.ckpt");
    let c = ckpt.to_str().unwrap();
    stdout(&["scan", "1", "2000", "--window", "1000", "--checkpoint", c]);
    let out = run(&[
        "scan",
        "1",
        "3000",
        "--window",
        "1000",
        "--checkpoint",
        c,
        "--resume",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checkpoint"));
}

#[test]
fn resume_requires_checkpoint() {
    assert_eq!(
        run(&["scan", "1", "100", "--resume"]).status.code(),
        Some(2)
    );
}
