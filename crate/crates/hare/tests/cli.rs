use std::fs;
use std::path::Path;

use hare::cli;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = cli::run(std::iter::once("hare").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn json(p: &str) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

const RUNNING_EXAMPLE: &str = "ising 2\nh 1 1\nj 1 2 3\n";

#[test]
fn stats_on_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "a.ising");
    fs::write(&input, RUNNING_EXAMPLE).unwrap();
    let (code, out) = run(&["stats", "-i", &input]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().take(3).collect();
    assert_eq!(lines, ["n=2", "m=1", "fields=1"]);
}

#[test]
fn scale_free_stats_show_hubs() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "sf.ising");
    let args = ["gen", "sf", "--nodes", "5000", "--avg-degree", "6", "-o", &input];
    assert_eq!(run(&args).0, 0);
    let (code, out) = run(&["stats", "-i", &input]);
    assert_eq!(code, 0);
    let degree = out.lines().find(|l| l.starts_with("degree:")).unwrap();
    let field = |key: &str| -> f64 {
        let rest = &degree[degree.find(key).unwrap() + key.len()..];
        rest.split(',').next().unwrap().trim().parse().unwrap()
    };
    assert!(field("max ") > 5.0 * field("mean "), "{degree}");
}

#[test]
fn running_example_reduces_completely() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "a.ising");
    let output = path(dir.path(), "a.out");
    fs::write(&input, RUNNING_EXAMPLE).unwrap();
    let (code, _) = run(&["reduce", "-i", &input, "-o", &output]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(&output).unwrap(), "ising 0\n");
    let report = json(&format!("{output}.report.json"));
    assert_eq!(report["fixed_spins"], 2);
    assert_eq!(report["reduction_ratio_logical"], 1.0);
    let map = json(&format!("{output}.map.json"));
    // ground state is (+1, +1) with energy -4
    assert_eq!(map["offset"], -4);
    for a in map["assignments"].as_array().unwrap() {
        assert_eq!(a["rep"], 0);
        assert_eq!(a["fixed"], 1);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = path(dir.path(), "missing");
    let out = path(dir.path(), "out");
    assert_eq!(run(&["reduce", "-i", &missing, "-o", &out]).0, 1);
    let bad = path(dir.path(), "bad.ising");
    fs::write(&bad, "ising 2\nj 1 2 0.5\n").unwrap();
    assert_eq!(run(&["reduce", "-i", &bad, "-o", &out]).0, 2);
    assert_eq!(run(&["reduce", "--alpha", "0", "-i", &bad, "-o", &out]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(
        run(&["gen", "er", "--nodes", "0", "--avg-degree", "3", "-o", &out]).0,
        2
    );
}

#[test]
fn verify_guard_refuses_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "big.ising");
    let (code, _) = run(&["gen", "er", "--nodes", "30", "--avg-degree", "4", "-o", &input]);
    assert_eq!(code, 0);
    assert_eq!(run(&["verify", "-i", &input]).0, 4);
}

#[test]
fn verify_random_instances_pass() {
    let (code, out) = run(&["verify", "--seed", "5", "--count", "20", "--max-spins", "10"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 20);
    assert!(!out.contains("FAIL"));
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (path(dir.path(), "a"), path(dir.path(), "b"), path(dir.path(), "c"));
    for (p, seed) in [(&a, "3"), (&b, "3"), (&c, "4")] {
        let args = ["gen", "sf", "--nodes", "300", "--avg-degree", "4", "--seed", seed, "-o", p];
        assert_eq!(run(&args).0, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn batch_results_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let inputs = dir.path().join("in");
    fs::create_dir(&inputs).unwrap();
    for seed in 0..6 {
        let topology = if seed % 2 == 0 { "er" } else { "sf" };
        let p = path(&inputs, &format!("g{seed}.ising"));
        let s = seed.to_string();
        let args = ["gen", topology, "--nodes", "500", "--avg-degree", "6", "--seed", &s, "-o", &p];
        assert_eq!(run(&args).0, 0);
    }
    let input = inputs.to_string_lossy().into_owned();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let out = path(dir.path(), &format!("out{jobs}"));
        let (code, stdout) = run(&["reduce", "-i", &input, "-o", &out, "--jobs", jobs, "--no-timing"]);
        assert_eq!(code, 0);
        assert!(stdout.contains("batch: 6/6 instances reduced"), "{stdout}");
        outputs.push((out, stdout));
    }
    assert_eq!(outputs[0].1.replace("out1", "outX"), outputs[1].1.replace("out4", "outX"));
    let mut names: Vec<_> = fs::read_dir(&outputs[0].0)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 18);
    for name in names {
        let a = fs::read(Path::new(&outputs[0].0).join(&name)).unwrap();
        let b = fs::read(Path::new(&outputs[1].0).join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
}

#[test]
fn maxcut_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "tri.txt");
    let output = path(dir.path(), "tri.out");
    fs::write(&input, "3 3\n1 2 1\n2 3 1\n1 3 1\n").unwrap();
    let (code, out) = run(&["reduce", "-i", &input, "-o", &output, "--json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["nodes_before"], 3);
}
