use std::process::{Command, Output};

fn fai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fai"))
        .args(args)
        .output()
        .expect("run fai")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Vec<&'a str> {
    text.lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap_or(""))
        })
        .collect()
}

#[test]
fn analyze_reports_known_values() {
    let o = fai(&["analyze", "3:E8", "2:F"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# fai analyze 3:E8 2:F\n"));
    assert_eq!(field(&text, "ai"), ["2", "0"]);
    assert_eq!(field(&text, "fai"), ["3", "2"]);
    assert_eq!(field(&text, "deg"), ["2", "0"]);
    assert_eq!(field(&text, "profile"), ["(2,2,2)", "(0,0)"]);
}

#[test]
fn analyze_accepts_support_lists() {
    let a = stdout(&fai(&["analyze", "3:{3,5,6,7}"]));
    let b = stdout(&fai(&["analyze", "3:E8"]));
    assert_eq!(field(&a, "fai"), field(&b, "fai"));
    assert_eq!(field(&a, "function"), ["3:E8"]);
}

#[test]
fn analyze_zero_function_is_an_input_error() {
    let o = fai(&["analyze", "3:00"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3:00"), "{err}");
    assert!(err.contains("undefined"), "{err}");
}

#[test]
fn bad_tokens_are_named_in_errors() {
    let o = fai(&["analyze", "3:zz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:zz"));
    let o = fai(&["analyze", "3:1FF"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fai(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_json_is_one_record_per_line() {
    let o = fai(&["analyze", "3:E8", "3:80", "--json"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["ai"], 2);
    assert_eq!(v["command"], "analyze");
    assert!(v["echo"].as_str().unwrap().contains("3:E8"));
    let single: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(single["fai"], 4);
}

fn header(text: &str) -> (usize, usize, bool) {
    let line = text.lines().find(|l| l.starts_with("# code")).unwrap();
    let get = |k: &str| {
        line.split_whitespace()
            .find_map(|t| t.strip_prefix(k))
            .unwrap()
            .to_string()
    };
    (
        get("length=").parse().unwrap(),
        get("dim=").parse().unwrap(),
        get("lcd=") == "true",
    )
}

#[test]
fn rm_codes() {
    let t = stdout(&fai(&["rm", "1", "3"]));
    assert_eq!(header(&t), (8, 4, false));
    assert!(t.contains("# modulus x^3+x+1"));
    let t = stdout(&fai(&["rm", "0", "4"]));
    assert_eq!(header(&t), (16, 1, false));
    assert!(t.contains("1111111111111111"));
    let t = stdout(&fai(&["rm", "1", "3", "--punctured-by", "3:E8"]));
    assert_eq!(header(&t), (4, 4, true));
}

#[test]
fn rm_rejects_bad_parameters() {
    assert_eq!(fai(&["rm", "4", "3"]).status.code(), Some(2));
    assert_eq!(fai(&["rm", "1", "3", "--punctured-by", "4:FF00"]).status.code(), Some(2));
    assert_eq!(fai(&["rm", "1", "3", "--modulus", "0xD"]).status.code(), Some(0));
    assert_eq!(fai(&["rm", "1", "3", "--modulus", "0x9"]).status.code(), Some(2));
    assert_eq!(fai(&["rm", "1", "3", "--modulus", "0xF"]).status.code(), Some(2));
}

#[test]
fn rm_output_round_trips_through_lcd_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rm.txt");
    let p = path.to_str().unwrap();
    let o = fai(&["rm", "1", "3", "--punctured-by", "3:E8", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = fai(&["lcd-check", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("length=4 dim=4 hull=0 lcd=true"));
}

#[test]
fn lcd_check_identity_and_self_dual() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.txt");
    std::fs::write(&id, "3 3\n100\n010\n001\n").unwrap();
    let t = stdout(&fai(&["lcd-check", id.to_str().unwrap()]));
    assert!(t.contains("length=3 dim=3 hull=0 lcd=true"), "{t}");

    let sd = dir.path().join("sd.txt");
    std::fs::write(&sd, "1 2\n11\n").unwrap();
    let t = stdout(&fai(&["lcd-check", sd.to_str().unwrap()]));
    assert!(t.contains("hull=1 lcd=false"), "{t}");
    assert!(t.contains("self_orthogonal=true"), "{t}");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n10\n0x\n").unwrap();
    assert_eq!(fai(&["lcd-check", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(fai(&["lcd-check", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn pai_verify_single_and_search() {
    let o = fai(&["pai-verify", "3:E8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pai_by_def=true pai_by_lcd=true"));

    let o = fai(&["pai-verify", "--search", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("found 148 PAI functions; 0 disagree"));
}

#[test]
fn carlet_feng_reports_certificates() {
    let o = fai(&["carlet-feng", "5", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("offset=3 m=16 weight=16"), "{t}");
    assert!(t.contains("pai_by_def=true pai_by_lcd=true"), "{t}");
    assert!(t.contains("e=2 code [16, 16] lcd=true"), "{t}");
    assert_eq!(fai(&["carlet-feng", "6"]).status.code(), Some(2));
}

#[test]
fn sweeps_are_deterministic_per_seed() {
    let run = |seed: &str| stdout(&fai(&["sweep", "fai-bounds", "4", "50", "--seed", seed]));
    let a = run("7");
    assert_eq!(a, run("7"));
    assert!(a.contains("seed=7") || a.contains("seed 7"), "{a}");
    let j1 = stdout(&fai(&["sweep", "codes", "4", "5", "--json", "--seed", "3"]));
    let j2 = stdout(&fai(&["sweep", "codes", "4", "5", "--json", "--seed", "3"]));
    assert_eq!(j1, j2);
    let v: serde_json::Value = serde_json::from_str(j1.trim()).unwrap();
    assert_eq!(v["seed"], 3);
}

#[test]
fn sweep_exit_codes() {
    assert_eq!(fai(&["sweep", "mobius", "4", "20"]).status.code(), Some(0));
    assert_eq!(fai(&["sweep", "no-such-suite", "4"]).status.code(), Some(2));
    // f + delta a single point gives FAI n + 1 > n
    let o = fai(&["sweep", "perturbation", "3", "1000", "--seed", "0"]);
    let t = stdout(&o);
    assert!(t.contains("result=fail"), "{t}");
    assert!(t.contains("f=3:C3 delta=3:C2 d=1 fai=4"), "{t}");
    assert_eq!(o.status.code(), Some(1));
}
