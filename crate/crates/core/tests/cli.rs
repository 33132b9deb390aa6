use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coalwalk::experiment::CSV_HEADER;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coalwalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_prints_edge_list() {
    let o = run(&["gen", "--family", "cycle", "--size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.contains(&"0 1".to_owned()));
}

#[test]
fn exact_reports_clique_hitting_time() {
    let o = run(&["exact", "--family", "clique", "--size", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["t_hit"].as_f64().unwrap() - 14.0).abs() < 1e-9);
    assert_eq!(v["vertex_transitive"], true);
}

#[test]
fn simulate_requires_seed_and_is_deterministic() {
    let missing = run(&["simulate", "--family", "cycle", "--size", "8"]);
    assert_eq!(missing.status.code(), Some(1));
    let args = ["simulate", "--family", "cycle", "--size", "12", "--seed", "5", "--trials", "50"];
    let a = run(&args);
    let b = bin().args(args).env("COALWALK_WORKERS", "3").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["estimate"]["trials"], 50);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--family", "star", "--size", "20"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("name,lhs,rel,rhs,explicit,passed"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("split.txt");
    std::fs::write(&bad, "0 1\n2 3\n").unwrap();
    let o = run(&["verify", "--edges", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    assert_eq!(run(&["verify", "--family", "nonagon", "--size", "9"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn edge_list_input_matches_generated_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q3.txt");
    let o = run(&["gen", "--family", "hypercube", "--size", "3", "--native", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = run(&["exact", "--edges", path.to_str().unwrap(), "--vertex-transitive"]);
    let direct = run(&["exact", "--family", "hypercube", "--size", "3", "--native"]);
    assert_eq!(stdout(&from_file), stdout(&direct));
}

#[test]
fn cycle_exact_config_writes_records_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("cycle_exact.toml");
    let o = run(&["all", "--config", cfg.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["cycle_n16.json", "cycle_n32.json", "results.csv"]);
    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 9));
    let rec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cycle_n16.json")).unwrap()).unwrap();
    assert_eq!(rec["n"], 16);
}

#[test]
fn rerun_with_same_seed_is_byte_identical() {
    let cfg = configs().join("small_everything.toml");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, workers) in [(&a, "1"), (&b, "4")] {
        let o = bin()
            .args(["all", "--config", cfg.to_str().unwrap(), "--trials", "40", "-o", dir.path().to_str().unwrap()])
            .env("COALWALK_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("results.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn monte_carlo_config_without_seed_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "quantities = [\"t_coal\"]\n[[sweep]]\nfamily = \"cycle\"\nsizes = [8, 16]\n").unwrap();
    assert_eq!(run(&["all", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    let o = run(&["all", "--config", cfg.to_str().unwrap(), "--seed", "3", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(CSV_HEADER));

    std::fs::write(&cfg, "quantities = [\"t_hit\"]\n[[sweep]]\nfamily = \"cycle\"\nsizes = [16, 8]\n").unwrap();
    assert_eq!(run(&["all", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn scale_fits_cycle_hitting_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "quantities = [\"t_hit\"]\n[[sweep]]\nfamily = \"cycle\"\nsizes = [64, 128, 256, 512]\n").unwrap();
    let o = run(&["scale", "--config", cfg.to_str().unwrap(), "--quantity", "t_hit", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = v[0]["fit"]["exponent"].as_f64().unwrap();
    assert!((1.9..=2.1).contains(&a), "exponent {a}");
    assert!(dir.path().join("fits.json").exists());
}
