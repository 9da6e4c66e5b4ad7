use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use qutrit_mdc::code::GeneratorMatrix;
use qutrit_mdc::field::F9;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-mdc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_spec(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn build_q51_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q51.txt");
    let o = run(&["build", "fixture:q51", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("n=51 field=GF9 basis=1,w modulus=w2=w+1\n"));
    let m = GeneratorMatrix::parse_matrix_file(&text).unwrap();
    assert_eq!(m.n(), 51);
    assert!((0..51).all(|i| m.entry(i, i).to_string() == "3"));
}

#[test]
fn build_k2_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "k2.json", r#"{"N":[2],"S":[[1]],"bordered":false}"#);
    let o = run(&["build", &spec]);
    assert!(o.status.success());
    let m = GeneratorMatrix::parse_matrix_file(&stdout(&o)).unwrap();
    assert_eq!(m.to_rows()[0].entries(), &[F9::OMEGA, F9::ONE]);
    assert_eq!(m.to_rows()[1].entries(), &[F9::ONE, F9::OMEGA]);
}

#[test]
fn malformed_spec_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "bad.json", r#"{"N":[5],"S":[[1]],"bordered":false}"#);
    let o = run(&["build", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotSymmetric"));
    let o = run(&["check", &write_spec(dir.path(), "junk.json", "{")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["distance", "fixture:q51", "--mode", "threshold"]).status.code(), Some(2));
}

#[test]
fn check_fixtures() {
    for (name, n) in [("q51", 51), ("q53", 53), ("q55", 55), ("q56", 56)] {
        let o = run(&["--json", "check", &format!("fixture:{name}")]);
        assert!(o.status.success());
        let v = json(&o);
        assert_eq!(v["self_dual"], true);
        assert_eq!(v["rank"], n);
        assert_eq!(v["parameters"], format!("({n}, 3^{n})_9"));
        assert_eq!(v["qutrit"], format!("[[{n}, 0, ?]]_3"));
        let text = stdout(&run(&["check", &format!("fixture:{name}")]));
        assert!(text.contains("self-dual: yes") && text.contains(&format!("({n}, 3^{n})_9")));
    }
}

#[test]
fn distance_modes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "best23.json", r#"{"N":[2,3],"S":[[0,1],[0,2],[1,0]],"bordered":false}"#);
    let v = json(&run(&["--json", "distance", &spec, "--mode", "exact"]));
    assert_eq!((v["value"].as_u64(), v["certified"].as_str()), (Some(4), Some("exact-value")));
    assert_eq!(v["work"], 728);
    let v = json(&run(&["--json", "--workers", "2", "distance", &spec, "--mode", "threshold", "--threshold", "5"]));
    assert_eq!((v["value"].as_u64(), v["certified"].as_str()), (Some(4), Some("upper-bound-at-most")));

    let o = run(&[
        "--json",
        "--seed",
        "3",
        "distance",
        "fixture:q54",
        "--mode",
        "upper",
        "--seconds",
        "300",
        "--stop-at",
        "17",
    ]);
    let v = json(&o);
    assert_eq!((v["value"].as_u64(), v["mode"].as_str()), (Some(17), Some("upper")));
    assert_eq!(v["seed"], 3);
    assert_eq!(v["witness"].as_array().unwrap().iter().filter(|t| t.as_u64() != Some(0)).count(), 17);

    let o = run(&["distance", "fixture:q51", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds cap 20"));

    let exact = json(&run(&["--json", "distance", "fixture:cube", "--mode", "exact"]));
    let v = json(&run(&["--json", "distance", "fixture:cube", "--mode", "lower", "--iters", "8"]));
    assert_eq!(v["certified"], "exact-value");
    assert_eq!(v["value"], exact["value"]);
}

#[test]
fn graph_stats_reports() {
    let v = json(&run(&["--json", "graph-stats", "fixture:q55"]));
    assert_eq!((v["valency"].as_u64(), v["diameter"].as_u64(), v["girth"].as_u64()), (Some(36), Some(2), Some(3)));
    assert_eq!((v["clique"].as_u64(), v["known_aut_order"].as_u64()), (Some(10), Some(110)));
    let v = json(&run(&["--json", "graph-stats", "fixture:q52"]));
    assert_eq!(
        (v["valency"].as_u64(), v["clique"].as_u64(), v["known_aut_order"].as_u64()),
        (Some(20), Some(5), Some(104))
    );
    let text = stdout(&run(&["graph-stats", "fixture:cube"]));
    for line in ["valency: 3", "diameter: 3", "girth: 4", "clique: 2", "automorphism subgroup order: 16"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn search_subcommands() {
    let v = json(&run(&["--json", "search", "exhaustive", "--shape", "2,3"]));
    assert_eq!(v["best_d"], 4);
    let v = json(&run(&["--json", "search", "exhaustive", "--shape", "5"]));
    assert_eq!(v["best_d"], 3);
    assert_eq!(run(&["search", "exhaustive", "--shape", "3,17"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let stores: Vec<Vec<u8>> = ["a", "b"]
        .iter()
        .map(|tag| {
            let path = dir.path().join(format!("{tag}.jsonl"));
            let o = run(&[
                "--seed",
                "7",
                "--workers",
                "2",
                "search",
                "random",
                "--shape",
                "3,17",
                "--target",
                "16",
                "--iters",
                "6",
                "--screen-iters",
                "20",
                "--fixed-time",
                "T",
                "--min-valency",
                "30",
                "--store",
                path.to_str().unwrap(),
            ]);
            assert!(o.status.success(), "{o:?}");
            std::fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(stores[0], stores[1]);
}

#[test]
fn verify_paper_without_distance_stage() {
    let o = run(&["--json", "verify-paper", "--skip-distance"]);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| !c["name"].as_str().unwrap().contains("witness")));
    let failed: Vec<&str> = checks.iter().filter(|c| c["pass"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    let structural_ok =
        checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with('q')).all(|c| c["pass"] == true);
    assert!(structural_ok, "{failed:?}");
    assert_eq!(o.status.code(), Some(if failed.is_empty() { 0 } else { 4 }));
}

#[test]
fn verify_paper_witness_stage() {
    let o = run(&["verify-paper", "--skip-table", "--distance-seconds", "600"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("PASS q52 distance witness: 16 (claimed 16) [witnessed"), "{text}");
}
