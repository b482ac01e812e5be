use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rookdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rookdist")).args(args).env_remove("RD_SEED").output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rookdist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gen_is_deterministic_and_seed_env_wins() {
    let args = ["gen", "--n", "2", "--m", "4", "--count", "20", "--seed", "3"];
    let a = rookdist(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, rookdist(&args).stdout);
    assert_eq!(lines(&a).len(), 20);

    let other = rookdist(&["gen", "--n", "2", "--m", "4", "--count", "20", "--seed", "9"]);
    assert_ne!(a.stdout, other.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_rookdist"))
        .args(["gen", "--n", "2", "--m", "4", "--count", "20", "--seed", "9"])
        .env("RD_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn solve_exit_codes() {
    let found = scratch("found.json", r#"{"n":2,"m":3,"lists":[[[1,2],[1,2],[1,2]],[[1,2],[1,2],[1,2]]]}"#);
    let out = rookdist(&["solve", "--lists", found.to_str().unwrap(), "--emit-certificate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"]["distinguishing"], true);

    let none = scratch("none.json", r#"{"n":2,"m":4,"lists":[[[1,2],[1,2],[1,2],[1,2]],[[1,2],[1,2],[1,2],[1,2]]]}"#);
    let out = rookdist(&["solve", "--lists", none.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["status"], "nonexistent");

    let out = rookdist(&["solve", "--lists", found.to_str().unwrap(), "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lines(&out)[0]["status"], "refused");

    let out = rookdist(&["solve", "--lists", "/nonexistent/lists.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solved_coloring_round_trips_through_verify() {
    let lists = scratch("rt.json", r#"{"n":2,"m":3,"lists":[[[1,3],[2,3],[1,4]],[[3,4],[2,3],[1,3]]]}"#);
    let out = rookdist(&["solve", "--lists", lists.to_str().unwrap()]);
    assert!(out.status.success());
    let coloring = lines(&out)[0]["coloring"].to_string();
    let path = scratch("coloring.json", &coloring);
    for extra in [&[][..], &["--naive"][..]] {
        let mut args = vec!["verify", "--coloring", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let v = rookdist(&args);
        assert_eq!(v.status.code(), Some(0));
        assert_eq!(lines(&v)[0]["distinguishing"], true);
    }
}

#[test]
fn verify_reports_a_witness() {
    let path = scratch("mono.json", r#"{"n":2,"m":3,"cells":[[1,1,1],[1,1,1]]}"#);
    let out = rookdist(&["verify", "--coloring", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = &lines(&out)[0];
    assert_eq!(v["distinguishing"], false);
    assert!(v["witness"].is_object());
}

#[test]
fn validate_with_zero_budget_refuses() {
    let out = rookdist(&["validate", "--module", "oracle", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(lines(&out).iter().any(|r| r["status"] == "refused"));
}

#[test]
fn validate_filters_modules() {
    let out = rookdist(&["validate", "--module", "polynomial"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    assert_eq!(reports.iter().map(|r| r["id"].as_u64().unwrap()).collect::<Vec<_>>(), vec![2, 3]);
    assert!(reports.iter().all(|r| r["module"] == "polynomial" && r["status"] == "pass"));

    assert_eq!(rookdist(&["validate", "--module", "nonsense"]).status.code(), Some(3));
}

#[test]
fn small_numeric_commands() {
    let out = rookdist(&["exact-d", "--n", "2", "--m", "4"]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0]["value"], 3);

    let out = rookdist(&["cn-coeff", "--n", "3", "--full"]);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["coefficient"], "12");
    assert_eq!(v["full_expansion"], "12");

    let out = rookdist(&["bounds", "lemma4", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0]["max_observed"], 10);
}
