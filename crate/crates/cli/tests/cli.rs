use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spinal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(args)
        .current_dir(dir)
        .env_remove("SPINAL_CACHE_DIR")
        .env_remove("SPINAL_SEARCH_BUDGET")
        .env_remove("SPINAL_ENUM_BUDGET")
        .env_remove("SPINAL_CHROMATIC_LIMIT")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const K3: &str = "3 3\n0 1\n0 2\n1 2\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn synth_golden_k12() {
    let tmp = tempfile::tempdir().unwrap();
    let out = spinal(tmp.path(), &["synth", "--genus", "55", "--order", "24", "--out-dir", "k12"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&std::fs::read(tmp.path().join("k12/report.json")).unwrap()).unwrap();
    assert_eq!(report["faces"], 132);
    assert_eq!(report["order"], 24);
    assert_eq!(report["minimality"]["verdict"], "minimal-certified");
    for name in ["spine.txt", "interlaced.txt", "embedding.json", "manifest.json"] {
        assert!(tmp.path().join("k12").join(name).exists(), "{name}");
    }
    // artifacts re-verify
    let out = spinal(tmp.path(), &["verify", "k12/embedding.json", "--genus", "55"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn synth_chromatic_and_infeasible() {
    let tmp = tempfile::tempdir().unwrap();
    let out = spinal(tmp.path(), &["synth", "--genus", "5", "--chroma", "4", "--out-dir", "a"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&std::fs::read(tmp.path().join("a/report.json")).unwrap()).unwrap();
    assert_eq!(report["spine_chromatic_number"], 4);
    assert_eq!(report["genus"], 5);
    assert_eq!(report["recipe"]["glued_ladder_rungs"], 3);

    let out = spinal(tmp.path(), &["synth", "--genus", "2", "--chroma", "4", "--out-dir", "b"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 3"));
    let out = spinal(tmp.path(), &["synth", "--genus", "7", "--order", "8", "--out-dir", "c"]);
    assert_eq!(code(&out), 2);
    let out = spinal(tmp.path(), &["synth", "--genus", "1", "--order", "7", "--out-dir", "d"]);
    assert_eq!(code(&out), 2);
    let out = spinal(tmp.path(), &["synth", "--genus", "1", "--chroma", "3", "--order", "6"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn deterministic_outputs_and_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |dir: &str| {
        let out =
            spinal(tmp.path(), &["synth", "--genus", "53", "--order", "24", "--out-dir", dir, "--cache-dir", "cache"]);
        assert_eq!(code(&out), 0);
        serde_json::from_slice::<Value>(&std::fs::read(tmp.path().join(dir).join("manifest.json")).unwrap()).unwrap()
    };
    let (first, second) = (run("one"), run("two"));
    assert_eq!((first["cache"].as_str(), second["cache"].as_str()), (Some("miss"), Some("hit")));
    for name in ["spine.txt", "interlaced.txt", "embedding.json", "report.json"] {
        let a = std::fs::read(tmp.path().join("one").join(name)).unwrap();
        let b = std::fs::read(tmp.path().join("two").join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }

    // a corrupted cache entry is detected and rebuilt
    let entry = std::fs::read_dir(tmp.path().join("cache")).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{\"genus\": 53, \"rotations\": [[1, 2]]}").unwrap();
    assert_eq!(run("three")["cache"], "miss");
    assert_eq!(
        std::fs::read(tmp.path().join("one/embedding.json")).unwrap(),
        std::fs::read(tmp.path().join("three/embedding.json")).unwrap()
    );
}

#[test]
fn embed_and_interlace() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "k3.txt", K3);
    write(tmp.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    write(tmp.path(), "disc.txt", "4 2\n0 1\n2 3\n");
    let out = spinal(tmp.path(), &["embed", "k3.txt", "-o", "k3.json", "--trace", "k3.jsonl", "--manifest", "m.json"]);
    assert_eq!(code(&out), 0);
    let emb: Value = serde_json::from_slice(&std::fs::read(tmp.path().join("k3.json")).unwrap()).unwrap();
    assert_eq!(emb["genus"], 1);
    let trace = std::fs::read_to_string(tmp.path().join("k3.jsonl")).unwrap();
    assert_eq!(trace.lines().count(), 3);
    let out = spinal(tmp.path(), &["embed", "p3.txt", "-o", "p3.json"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("genus 0"));
    assert_eq!(code(&spinal(tmp.path(), &["embed", "disc.txt", "-o", "x.json"])), 2);
    assert_eq!(code(&spinal(tmp.path(), &["embed", "missing.txt", "-o", "x.json"])), 2);

    assert_eq!(code(&spinal(tmp.path(), &["interlace", "k3.txt", "-o", "oct.txt"])), 0);
    let oct = std::fs::read_to_string(tmp.path().join("oct.txt")).unwrap();
    assert!(oct.starts_with("6 12\n"));
}

#[test]
fn verify_rejects_tampering() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "k3.txt", K3);
    assert_eq!(code(&spinal(tmp.path(), &["embed", "k3.txt", "-o", "k3.json"])), 0);
    let mut emb: Value = serde_json::from_slice(&std::fs::read(tmp.path().join("k3.json")).unwrap()).unwrap();
    let rot = emb["rotations"][0].as_array_mut().unwrap();
    rot.swap(1, 2);
    std::fs::write(tmp.path().join("bad.json"), emb.to_string()).unwrap();
    let out = spinal(tmp.path(), &["verify", "bad.json"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report["failures"].as_array().unwrap().is_empty());

    assert_eq!(code(&spinal(tmp.path(), &["verify", "k3.json", "--genus", "2"])), 1);
    write(tmp.path(), "broken.json", "{\"genus\": 0");
    assert_eq!(code(&spinal(tmp.path(), &["verify", "broken.json"])), 2);
}

#[test]
fn search_outcomes() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "k5.txt", K5);
    write(tmp.path(), "k4.txt", K4);
    write(tmp.path(), "k3.txt", K3);
    for method in ["backtrack", "enumerate"] {
        let out = spinal(tmp.path(), &["search", "k5.txt", "--genus", "1", "--method", method, "-o", "k5.json"]);
        assert_eq!(code(&out), 0, "{method}");
        assert_eq!(code(&spinal(tmp.path(), &["verify", "k5.json", "--genus", "1"])), 0);
    }
    let out = spinal(tmp.path(), &["search", "k4.txt", "--genus", "1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no quadrangulation"));

    assert_eq!(code(&spinal(tmp.path(), &["interlace", "k3.txt", "-o", "oct.txt"])), 0);
    assert_eq!(code(&spinal(tmp.path(), &["search", "oct.txt", "--genus", "1", "--budget", "10"])), 3);
    let env_budget = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["search", "oct.txt", "--genus", "1"])
        .current_dir(tmp.path())
        .env("SPINAL_SEARCH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&env_budget), 3);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["--sequential", "search", "oct.txt", "--genus", "1", "--budget", "1000000"])
        .current_dir(tmp.path())
        .env("SPINAL_SEARCH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&flag_wins), 0);
    let enum_budget =
        spinal(tmp.path(), &["search", "oct.txt", "--genus", "1", "--method", "enumerate", "--enum-budget", "5"]);
    assert_eq!(code(&enum_budget), 3);
}

#[test]
fn atlas_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let out = spinal(tmp.path(), &["atlas", "--max-genus", "6", "-o", "atlas.csv"]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(tmp.path().join("atlas.csv")).unwrap();
    let lines: Vec<&str> = csv.split('\n').collect();
    assert_eq!(lines[0], "g,eq1_lower_bound,spinal_min_order,corollary5_exact,max_chromatic");
    assert_eq!(&lines[1..5], ["0,4,4,,2", "1,5,6,,3", "2,7,8,,3", "3,8,8,8,4"]);
    assert_eq!(lines.len(), 9);
    let stdout = spinal(tmp.path(), &["--sequential", "atlas", "--max-genus", "6"]);
    assert_eq!(stdout.stdout, csv.as_bytes());
}
