use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tadic")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

const Q3_FIRST: &str = "T^3*x^12 + 2*T^2*x^11 + (2*T^3+2*T)*x^10 + (T^2+1)*x^9 + (T^2+T)*x^8 + (T^3+2*T^2)*x^7 + (2*T^3+2*T)*x^6 + 2*T^3*x^5 + (2*T^3+2)*x^3 + (2*T^2+T)*x^2 + (T^3+T^2)*x + 2*T^3";

#[test]
fn verify_exit_codes() {
    let o = tadic(&["verify", "T*x^3 + x^2 + (T+1)*x + T", "--q", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["height"], "1/3");
    assert_eq!(v["criteria"]["r"], 1);
    assert_eq!(v["minimal_height"], true);

    let o = tadic(&["verify", Q3_FIRST, "--q", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["height"], "1/4");
    assert_eq!(v["criteria"]["r"], 3);

    let o = tadic(&["verify", "x^2 + x + 1", "--q", "2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["profile"]["splits"], false);

    assert_eq!(code(&tadic(&["verify", "T*x^3 + (", "--q", "2"])), 2);
    assert_eq!(code(&tadic(&["verify", "x", "--q", "6"])), 2);
    assert_eq!(code(&tadic(&["verify", "x"])), 2);
}

#[test]
fn printed_polynomials_reparse() {
    let o = tadic(&["verify", "x^3*T + T + x*(1+T) + x^2", "--q", "2"]);
    let printed = json(&o)["poly"].as_str().unwrap().to_string();
    assert_eq!(printed, "T*x^3 + x^2 + (T+1)*x + T");
    let again = tadic(&["verify", &printed, "--q", "2"]);
    assert_eq!(json(&again)["poly"], printed.as_str());
}

#[test]
fn construct_families() {
    let o = tadic(&["construct", "--family", "phi-tower", "--q", "2", "--j", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["poly"], "x^4 + (T+1)*x^2 + T*x + T^3");
    assert_eq!(v["height"], "3/4");

    let o = tadic(&["construct", "--family", "cyclic", "--q", "3", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["height"], "1/4");
    assert_eq!(v["verified"]["ok"], true);

    assert_eq!(code(&tadic(&["construct", "--family", "char2", "--q", "2"])), 2);
    assert_eq!(code(&tadic(&["construct", "--family", "cyclic", "--q", "3", "--n", "3"])), 2);
    assert_eq!(code(&tadic(&["construct", "--family", "nonsense", "--q", "3"])), 2);
    assert_eq!(code(&tadic(&["construct", "--family", "phi-tower", "--q", "2"])), 2);
}

#[test]
fn height_and_np() {
    let o = tadic(&["height", "T*x^3 + x^2 + (T+1)*x + T", "--q", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["height"], "1/3");
    assert_eq!(v["height_local"], "1/3");

    let o = tadic(&["np", "T*x^3 + x^2 + (T+1)*x + T", "--q", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["vertices"], serde_json::json!([[0, 1], [1, 0], [2, 0], [3, 1]]));

    let o = tadic(&["np", "T*x^3 + x^2 + (T+1)*x + T", "--q", "2", "--place", "inf", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("place inf"));

    assert_eq!(code(&tadic(&["np", "x + T", "--q", "2", "--place", "T^2+1"])), 2);
    assert_eq!(code(&tadic(&["np", "x + T", "--q", "2", "--shift", "T"])), 2);
}

#[test]
fn search_exhaustive_reports() {
    let o = tadic(&["search", "exhaustive", "--q", "2", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["tested"], 8);
    assert_eq!(v["hits"], serde_json::json!([]));
    assert_eq!(v["pipeline"], "split-first-v1");
    for key in [
        "q", "n", "shard", "total_shards", "tested", "passed_newton", "passed_rootless", "passed_squarefree",
        "split", "irreducible", "hits", "seed_or_space", "pipeline", "wall_time_s",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let o = tadic(&["search", "exhaustive", "--q", "2", "--n", "3", "--total-shards", "4", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["tested"], 4096);
    assert_eq!(v["hits"], serde_json::json!([]));

    let o = tadic(&["search", "exhaustive", "--q", "2", "--n", "1"]);
    assert_eq!(json(&o)["hits"].as_array().unwrap().len(), 2);

    assert_eq!(code(&tadic(&["search", "exhaustive", "--q", "2", "--n", "3", "--total-shards", "6"])), 2);
    assert_eq!(
        code(&tadic(&["search", "exhaustive", "--q", "2", "--n", "3", "--total-shards", "4", "--shard", "4"])),
        2
    );
}

#[test]
fn search_exhaustive_checkpoint_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("s1.ckpt");
    let out = dir.path().join("s1.json");
    let args = |ck: &Path, out: &Path, shard: &str| {
        vec![
            "search".to_string(),
            "exhaustive".into(),
            "--q".into(),
            "2".into(),
            "--n".into(),
            "3".into(),
            "--total-shards".into(),
            "4".into(),
            "--shard".into(),
            shard.into(),
            "--checkpoint".into(),
            ck.display().to_string(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let a = args(&ck, &out, "1");
    let o = tadic(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(first["tested"], 1024);
    assert!(std::fs::read_to_string(&ck).unwrap().contains("next_index=1024"));

    // rerunning from the finished checkpoint reproduces the counters
    let o = tadic(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 0);
    let second: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for k in ["tested", "passed_rootless", "passed_newton", "passed_squarefree", "split", "irreducible", "hits"] {
        assert_eq!(first[k], second[k], "{k}");
    }

    // the same checkpoint under another shard is refused
    let b = args(&ck, &out, "2");
    let o = tadic(&b.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("shard"));
}

#[test]
fn search_random_report() {
    let o = tadic(&["search", "random", "--q", "2", "--n", "1", "--budget", "200", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["tested"], 200);
    let known = ["T*x^3 + x^2 + (T+1)*x + T", "T*x^3 + (T+1)*x^2 + x + T"];
    for h in v["hits"].as_array().unwrap() {
        assert!(known.contains(&h.as_str().unwrap()), "{h}");
    }
    // the seed is mandatory
    assert_eq!(code(&tadic(&["search", "random", "--q", "2", "--n", "1"])), 2);
    let again = tadic(&["search", "random", "--q", "2", "--n", "1", "--budget", "200", "--seed", "5"]);
    let w = json(&again);
    assert_eq!(v["hits"], w["hits"]);
    assert_eq!(v["passed_newton"], w["passed_newton"]);
}

#[test]
fn text_format() {
    let o = tadic(&["search", "exhaustive", "--q", "2", "--n", "2", "--format", "text"]);
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("tested       8"), "{s}");
    let o = tadic(&["construct", "--family", "gonality-one", "--q", "3", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("T*x^4 + x^3 + 2*x + T"));
}
