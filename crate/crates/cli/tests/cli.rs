use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ra_core::generators::{first_equals_last_dra, lcm_zero_loop, random_nra, universal};
use tempfile::TempDir;

fn ra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ra")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn example(dir: &TempDir) -> String {
    let p = dir.path().join("ex.json").to_str().unwrap().to_string();
    assert_eq!(code(&ra(&["gen-example", "-o", &p])), 0);
    p
}

#[test]
fn simulate_example() {
    let dir = TempDir::new().unwrap();
    let a = example(&dir);
    let o = ra(&["simulate", &a, "--word", "σ:1,σ:2,σ:1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "accept"));
    let o = ra(&["simulate", &a, "--word", "σ:1,σ:2,σ:3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "reject"));
    assert_eq!(code(&ra(&["simulate", &a, "--word", "σ:x"])), 2);
}

#[test]
fn member_witness_revalidates() {
    let dir = TempDir::new().unwrap();
    let a = example(&dir);
    let u = write(dir.path(), "u.json", &universal(&["σ"]).to_json());
    let report = dir.path().join("report.json");
    let o = ra(&["member", &a, "--k", "1", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let wit = stdout(&o);
    assert!(!wit.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["k"], 1);
    assert_eq!(r["within_f_bound"], true);
    // The witness is a word whose support exceeds k; the automaton reads it.
    assert_eq!(code(&ra(&["simulate", &a, "--word", &wit])), 1);
    assert_eq!(code(&ra(&["simulate", &u, "--word", &wit])), 0);

    let e = ra(&["empty", &a]);
    assert_eq!(code(&e), 1);
    assert_eq!(code(&ra(&["simulate", &a, "--word", &stdout(&e)])), 0);
}

#[test]
fn member_yes_writes_automaton() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "fel.json", &first_equals_last_dra().to_json());
    let out = dir.path().join("dra.json");
    let o = ra(&["member", &a, "--k", "1", "--verify", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let d = out.to_str().unwrap();
    assert_eq!(stdout(&ra(&["equiv", &a, d])), "equivalent");
    assert_eq!(code(&ra(&["oracle-compare", &a, d, "--max-len", "4"])), 0);
}

#[test]
fn rejected_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let a = example(&dir);
    let two = write(dir.path(), "two.json", &random_nra(3, 2, 1, 0.4, 7).to_json());
    assert_eq!(code(&ra(&["include", &a, &two])), 2);
    assert_eq!(code(&ra(&["member", &two, "--k", "1"])), 2);
    assert_eq!(code(&ra(&["empty", "/nonexistent.json"])), 2);
    let junk = write(dir.path(), "junk.json", "{");
    assert_eq!(code(&ra(&["empty", &junk])), 2);
    assert_eq!(code(&ra(&["member", &a])), 2);
    assert_eq!(code(&ra(&["frobnicate"])), 2);
}

#[test]
fn inclusion_and_budget() {
    let dir = TempDir::new().unwrap();
    let a = example(&dir);
    let u = write(dir.path(), "u.json", &universal(&["σ"]).to_json());
    assert_eq!(code(&ra(&["include", &a, &u])), 0);
    let o = ra(&["include", &u, &a]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&ra(&["simulate", &a, "--word", &stdout(&o)])), 1);
    assert_eq!(code(&ra(&["include", &a, &a, "--budget", "1"])), 3);
    assert_eq!(code(&ra(&["include", &a, &a, "--budget", "0"])), 0);
    assert_eq!(code(&ra(&["include", &u, &a, "--budget", "0"])), 1);
    let o = ra(&["oracle-compare", &a, &u, "--max-len", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "");
}

#[test]
fn generators_and_determinism() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "m.json", &lcm_zero_loop().to_json());
    let a = example(&dir);
    let u = write(dir.path(), "u.json", &universal(&["σ"]).to_json());
    let bad = ra(&["gen-lcm", &m]);
    assert_eq!(code(&bad), 0);
    let bad_path = write(dir.path(), "bad.json", &stdout(&bad));
    // A correct one-location encoding is not a bad encoding.
    assert_eq!(code(&ra(&["simulate", &bad_path, "--word", "q0:0"])), 1);
    let runs: Vec<Output> = (0..2).map(|_| ra(&["compose", &a, &u])).collect();
    assert_eq!(code(&runs[0]), 0);
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let reports: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("r{i}.json"));
            ra(&["member", &a, "--k", "2", "--report", p.to_str().unwrap()]);
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    let e1 = ra(&["elim-eps", &a]);
    assert_eq!(e1.stdout, ra(&["elim-eps", &a]).stdout);
}
