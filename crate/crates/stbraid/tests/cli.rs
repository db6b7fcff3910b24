use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use stbraid::cli::{run_args, Outcome};

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("stbraid").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, o.stdout))
}

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(rel).display().to_string()
}

#[test]
fn index_prints_the_table() {
    let o = run(&["index", "--n", "3"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "36\n"));
    let o = run(&["index", "--all"]);
    assert!(o.stdout.ends_with("i_6 = 2387230064640\n"), "{}", o.stdout);
    let v = json(&run(&["index", "--n", "4", "--format", "json"]));
    assert_eq!(v["index"], "13056");
}

#[test]
fn eval_gives_w1() {
    let o = run(&["eval", "--n", "2", "--word", "s1 s2 s1"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    let rows: Vec<Vec<String>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(rows, vec![vec!["0", "0", "1", "0"], vec!["0", "1", "0", "0"], vec!["-1", "0", "0", "0"], vec!["0", "0", "0", "1"]]);
    assert_eq!(v["word"]["word"], "z(1) zp(1)^-1 z(1)");
    assert_eq!(v["symplectic"], true);
    // Steinberg input is evaluated directly.
    let v = json(&run(&["eval", "--word", "z(1) zp(1)^-1 z(1)"]));
    assert_eq!(v["matrix"], json(&o)["matrix"]);
}

#[test]
fn verify_suites_pass() {
    for s in ["braid-hom", "images", "kernel-gens", "weyl", "central-w4", "commutation", "soundness"] {
        let o = run(&["verify", s, "--n", "2", "--tier", "certified"]);
        assert_eq!(o.code, 0, "{}: {}{}", s, o.stdout, o.stderr);
    }
    let o = run(&["verify", "braid-hom", "--hat", "--n", "3", "--tier", "certified"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
}

#[test]
fn failures_name_the_first_item() {
    let o = run(&["verify", "acampo", "--n", "2"]);
    assert_eq!(o.code, 1);
    assert_eq!(o.stderr, "check failed: P^-1 T_1 P = fbar(s1)\n");
    let v = json(&run(&["verify", "acampo", "--format", "json"]));
    assert_eq!(v["first_failure"], "P^-1 T_1 P = fbar(s1)");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "nonsense"]).code, 2);
    assert_eq!(run(&["index", "--n", "1"]).code, 2);
    assert_eq!(run(&["verify", "images", "--n", "4", "--tier", "certified"]).code, 2);
    assert_eq!(run(&["eval", "--word", "q(7)"]).code, 2);
    assert_eq!(run(&["span", "--p", "4"]).code, 2);
    assert_eq!(run(&["span", "--n", "2", "--gens", "builtin:E3+z2"]).code, 2);
    assert_eq!(run(&["script", "check", "/nonexistent.script"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn spans() {
    let o = run(&["span", "--n", "2", "--expect", "720"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = run(&["span", "--n", "2", "--p", "3", "--format", "json"]);
    let v = json(&o);
    assert_eq!((v["reached"].as_u64(), v["full_group"].as_bool()), (Some(51840), Some(true)));
    let o = run(&["span", "--n", "3", "--gens", &corpus("gens/e3-z2.txt"), "--expect", "1451520"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = run(&["span", "--n", "2", "--limit", "10", "--expect", "720"]);
    assert_eq!(o.code, 1);
    let o = run(&["span", "--n", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("enumeration skipped"));
}

#[test]
fn charge_and_normalize() {
    let d6 = "s1 s2 s3 s4 s5 s1 s2 s3 s4 s1 s2 s3 s1 s2 s1";
    let word = format!("{} {}", d6, d6);
    let v = json(&run(&["charge", "--word", &word, "--format", "json"]));
    assert_eq!((v["charge"].as_i64(), v["tier"].as_str()), (Some(3), Some("certified")));
    // Not in the kernel.
    assert_eq!(run(&["charge", "--word", "s1"]).code, 1);
    let o = run(&["normalize", "--word", "z(1) zp(1)^-1 z(1) y(1,2) z(1)^-1 zp(1) z(1)^-1"]);
    assert!(o.stdout.contains("-> x(2,1)"), "{}", o.stdout);
}

#[test]
fn written_scripts_check() {
    let dir = std::env::temp_dir().join(format!("stbraid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wyw.script");
    let p = path.display().to_string();
    let o = run(&["script", "derive", "--relation", "wconj(2e1,1,y(1,2))", "--out", &p]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(run(&["script", "check", "--tier", "certified", &p]).code, 0);
    // Corrupt the end word: replay now ends elsewhere.
    let text = std::fs::read_to_string(&path).unwrap().replace("end: x(2,1)", "end: x(1,2)");
    std::fs::write(&path, text).unwrap();
    let o = run(&["script", "check", &p]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("wyw.script"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corpus_scripts_pass() {
    let files: Vec<String> = stbraid::load_corpus(&stbraid::corpus_dir())
        .unwrap()
        .into_iter()
        .map(|(p, _)| p.display().to_string())
        .collect();
    assert!(files.len() >= 8);
    let mut args = vec!["script", "check", "--tier", "certified"];
    args.extend(files.iter().map(|s| s.as_str()));
    let o = run(&args);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
}

#[test]
fn json_is_deterministic() {
    let args = ["verify", "images", "--n", "2", "--tier", "certified", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["span", "--n", "2", "--p", "3", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_stbraid");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = st(&["index", "--n", "3"]);
    assert_eq!((o.status.code(), String::from_utf8_lossy(&o.stdout).as_ref()), (Some(0), "36\n"));
    assert_eq!(st(&["verify", "acampo"]).status.code(), Some(1));
    assert_eq!(st(&["verify"]).status.code(), Some(2));
    let o = Command::new(bin).args(["script", "check"]).arg(corpus("braid/delta3-square.script")).env("STBRAID_CORPUS", "/nowhere").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn corpus_dir_env_override() {
    let bin = env!("CARGO_BIN_EXE_stbraid");
    let o = Command::new(bin).args(["script", "check", "--tier", "certified"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dir = std::env::temp_dir().join(format!("stbraid-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("bad.script"), "alphabet: braid 4\nstart: s1 s2 s1\nend: s2 s1 s2\nstep 0 braid-commute(1,3) fwd\n").unwrap();
    let o = Command::new(bin).args(["script", "check"]).env("STBRAID_CORPUS", &dir).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.script at step 0"));
    std::fs::remove_dir_all(&dir).ok();
    let o = Command::new(bin).args(["script", "check"]).env("STBRAID_CORPUS", "/nonexistent").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
