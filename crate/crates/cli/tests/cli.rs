use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightpart"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn gen_to(dir: &Path, file: &str, args: &[&str]) {
    let mut full = vec!["--out", file, "gen"];
    full.extend_from_slice(args);
    let out = run(dir, &full);
    assert!(out.status.success(), "gen {args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

/// The report minus its timing field.
fn untimed(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn lower_bound_file_has_four_vertices() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "lb.h", &["lower-bound", "3", "2"]);
    let text = std::fs::read_to_string(d.path().join("lb.h")).unwrap();
    let h = tightpart::io::parse_hgraph(&text).unwrap();
    assert_eq!((h.k(), h.n(), h.r()), (3, 4, 2));
}

#[test]
fn random_colouring_replays_byte_for_byte() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "a.h", &["--seed", "9", "random-colouring", "3", "8", "3"]);
    gen_to(d.path(), "b.h", &["--seed", "9", "random-colouring", "3", "8", "3"]);
    gen_to(d.path(), "c.h", &["--seed", "10", "random-colouring", "3", "8", "3"]);
    let read = |f: &str| std::fs::read(d.path().join(f)).unwrap();
    assert_eq!(read("a.h"), read("b.h"));
    assert_ne!(read("a.h"), read("c.h"));
}

#[test]
fn randomized_gen_without_seed_is_a_usage_error() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["gen", "random-colouring", "3", "8", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(d.path(), &["gen", "lower-bound", "3", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn triangle_cycle_file_verifies() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "t.h", &["triangle-cycle", "3", "2"]);
    let out = run(d.path(), &["verify", "t.h"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn tampered_triangle_cycle_fails_verify() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "t.h", &["triangle-cycle", "3", "2"]);
    let text = std::fs::read_to_string(d.path().join("t.h")).unwrap();
    // drop the last edge line
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    std::fs::write(d.path().join("t.h"), lines.join("\n")).unwrap();
    let out = run(d.path(), &["verify", "t.h"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cover_on_monochromatic_k6_is_one_cycle() {
    let d = TempDir::new().unwrap();
    let mut text = String::from("HGRAPH k=3 n=6 r=1\n");
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                text.push_str(&format!("{a} {b} {c} c=0\n"));
            }
        }
    }
    std::fs::write(d.path().join("k6.h"), text).unwrap();
    let out = run(d.path(), &["run", "cover", "k6.h"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = json(&out);
    assert_eq!(rep["result"]["report"]["cycles"].as_array().unwrap().len(), 1);
    assert_eq!(rep["result"]["partition_size"], 1);
    assert_eq!(rep["pass"], true);
}

#[test]
fn stage_log_is_json_lines() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "lb.h", &["lower-bound", "3", "2"]);
    let out = run(d.path(), &["run", "cover", "lb.h"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.is_empty());
    for line in err.lines() {
        let v: Value = serde_json::from_str(line).expect("each stderr line is JSON");
        assert!(v["stage"].is_string());
    }
}

#[test]
fn oracle_compare_matches_lower_bound_constructions() {
    let d = TempDir::new().unwrap();
    let cases = [("2", "2"), ("3", "2"), ("2", "3")];
    let mut files = Vec::new();
    for (k, r) in cases {
        let f = format!("lb_{k}_{r}.h");
        gen_to(d.path(), &f, &["lower-bound", k, r]);
        files.push(f);
    }
    let mut args = vec!["run", "oracle-compare", "--expect-r"];
    args.extend(files.iter().map(String::as_str));
    let out = run(d.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rep = json(&out);
    for row in rep["result"]["rows"].as_array().unwrap() {
        assert_eq!(row["oracle"], row["r"]);
    }
}

#[test]
fn rainbow_system_small_colour_regime_takes_matching_branch() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "g.m", &["complete-colours", "40", "2"]);
    let out = run(d.path(), &["run", "rainbow-system", "g.m"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["result"]["report"]["branch"], "Matching");
    assert_eq!(rep["result"]["report"]["system"]["degenerate_edges"].as_array().unwrap().len(), 2);
}

#[test]
fn rainbow_system_precondition_failure_is_exit_two() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "g.m", &["complete-colours", "10", "3"]);
    let out = run(d.path(), &["run", "rainbow-system", "g.m"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forced_absorption_through_the_cli() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "g.m", &["complete-colours", "40", "7"]);
    let out = run(d.path(), &["run", "rainbow-system", "g.m", "--delta0", "1", "--force-d", "40", "--force-g", "11"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rep = json(&out);
    assert_eq!(rep["result"]["report"]["branch"], "Absorption");
    assert_eq!(rep["result"]["report"]["closings"].as_array().unwrap().len(), 1);
}

#[test]
fn stage_budget_exhaustion_is_exit_three() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "g.m", &["complete-colours", "40", "7"]);
    let out = run(
        d.path(),
        &["--budget-nodes", "1", "run", "rainbow-system", "g.m", "--delta0", "1", "--force-d", "40", "--force-g", "11"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["budget_exhausted"], true);
}

#[test]
fn dense_and_blowup_need_a_seed() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "h.h", &["--seed", "1", "random-colouring", "3", "9", "2"]);
    assert_eq!(run(d.path(), &["run", "dense-matching", "h.h"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["run", "blowup", "h.h"]).status.code(), Some(2));
    let out = run(d.path(), &["--seed", "4", "run", "dense-matching", "h.h"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn blowup_lifts_verify_in_the_input() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "h.h", &["--seed", "5", "random-colouring", "3", "24", "1"]);
    let out = run(d.path(), &["--seed", "3", "run", "blowup", "h.h", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rep = json(&out);
    assert!(!rep["result"]["lifted"].as_array().unwrap().is_empty());
    std::fs::write(d.path().join("b.json"), &out.stdout).unwrap();
    assert_eq!(run(d.path(), &["verify", "b.json"]).status.code(), Some(0));
}

#[test]
fn replay_is_identical_apart_from_timing() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "h.h", &["--seed", "2", "random-colouring", "3", "10", "2"]);
    let a = run(d.path(), &["--seed", "7", "run", "dense-matching", "h.h"]);
    let b = run(d.path(), &["--seed", "7", "run", "dense-matching", "h.h"]);
    assert_eq!(untimed(&a), untimed(&b));
    let a = run(d.path(), &["run", "cover", "h.h", "--epsilon", "0.2"]);
    let b = run(d.path(), &["run", "cover", "h.h", "--epsilon", "0.2"]);
    assert_eq!(untimed(&a), untimed(&b));
    assert_eq!(json(&a)["config"]["options"]["epsilon"], 0.2);
}

#[test]
fn verify_reruns_report_and_catches_tampering() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "h.h", &["--seed", "2", "random-colouring", "3", "9", "2"]);
    let out = run(d.path(), &["--out", "r.json", "run", "cover", "h.h"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(d.path(), &["verify", "r.json"]).status.code(), Some(0));
    let mut rep: Value = serde_json::from_slice(&std::fs::read(d.path().join("r.json")).unwrap()).unwrap();
    let cycles = rep["result"]["partition"].as_array_mut().unwrap();
    let last = cycles.pop().unwrap();
    assert!(last.is_object());
    std::fs::write(d.path().join("r.json"), serde_json::to_vec(&rep).unwrap()).unwrap();
    assert_eq!(run(d.path(), &["verify", "r.json"]).status.code(), Some(1));
}

#[test]
fn verify_standalone_cycle_system_and_pair() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "g.m", &["complete-colours", "4", "2"]);
    std::fs::write(d.path().join("s.json"), r#"{"cycles": [], "degenerate_edges": [[0, 1, 0], [2, 3, 1]]}"#).unwrap();
    assert_eq!(run(d.path(), &["verify", "s.json", "--instance", "g.m"]).status.code(), Some(0));
    std::fs::write(d.path().join("s.json"), r#"{"cycles": [], "degenerate_edges": [[0, 1, 0], [1, 3, 1]]}"#).unwrap();
    assert_eq!(run(d.path(), &["verify", "s.json", "--instance", "g.m"]).status.code(), Some(1));
    assert_eq!(run(d.path(), &["verify", "s.json"]).status.code(), Some(2));
    gen_to(d.path(), "p.json", &["--seed", "3", "respecting-pair", "3", "5", "3"]);
    assert_eq!(run(d.path(), &["verify", "p.json"]).status.code(), Some(0));
}

#[test]
fn stats_single_report_and_errors() {
    let d = TempDir::new().unwrap();
    gen_to(d.path(), "h.h", &["--seed", "2", "random-colouring", "3", "9", "2"]);
    gen_to(d.path(), "lb.h", &["lower-bound", "3", "2"]);
    run(d.path(), &["--out", "c.json", "run", "cover", "h.h"]);
    run(d.path(), &["--out", "o.json", "run", "oracle-compare", "lb.h"]);
    let out = run(d.path(), &["stats", "c.json", "--plot-out", "plot.json"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("file,k,n,r,epsilon"));
    let plot: Value = serde_json::from_slice(&std::fs::read(d.path().join("plot.json")).unwrap()).unwrap();
    assert_eq!(plot["leftover_vs_epsilon"].as_array().unwrap().len(), 1);

    let out = run(d.path(), &["stats", "c.json", "o.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("o.json"));

    std::fs::write(d.path().join("e.json"), "").unwrap();
    assert_eq!(run(d.path(), &["stats", "e.json"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["stats"]).status.code(), Some(2));
}

#[test]
fn mean_leftover_is_monotone_in_epsilon() {
    let d = TempDir::new().unwrap();
    let mut reports = Vec::new();
    for seed in 0..5 {
        let f = format!("h{seed}.h");
        gen_to(d.path(), &f, &["--seed", &seed.to_string(), "random-colouring", "3", "9", "3"]);
        for eps in ["0.05", "0.3", "0.6"] {
            let r = format!("r{seed}_{eps}.json");
            let out = run(d.path(), &["--out", &r, "run", "cover", &f, "--epsilon", eps]);
            assert_eq!(out.status.code(), Some(0));
            reports.push(r);
        }
    }
    let mut args = vec!["stats", "--plot-out", "plot.json"];
    args.extend(reports.iter().map(String::as_str));
    assert_eq!(run(d.path(), &args).status.code(), Some(0));
    let plot: Value = serde_json::from_slice(&std::fs::read(d.path().join("plot.json")).unwrap()).unwrap();
    let means: Vec<f64> =
        plot["leftover_vs_epsilon"].as_array().unwrap().iter().map(|p| p["mean_leftover_fraction"].as_f64().unwrap()).collect();
    assert_eq!(means.len(), 3);
    assert!(means.windows(2).all(|w| w[0] <= w[1]), "{means:?}");
}
