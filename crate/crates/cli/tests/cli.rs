use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nodedisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nodedisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = nodedisc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const TINY: &[&str] = &[
    "--nodes",
    "16",
    "--clusters",
    "2",
    "--contrast",
    "5",
    "--initial-links",
    "1",
];

#[test]
fn step_by_step_pipeline_matches_the_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (net, logs, ranked, curves, exp) = (
        d.join("net"),
        d.join("logs"),
        d.join("ranked"),
        d.join("curves"),
        d.join("exp"),
    );

    let mut synth = vec!["synthesize", "--out", p(&net), "--seed", "4"];
    synth.extend_from_slice(TINY);
    ok(&synth);
    let graph = net.join("graph.edges");
    ok(&[
        "gen-logs",
        "--out",
        p(&logs),
        "--graph",
        p(&graph),
        "--cluster-file",
        p(&net.join("graph.clusters")),
        "--log-count",
        "20",
        "--seed",
        "4",
    ]);
    let logs_file = logs.join("logs.txt");
    ok(&[
        "rank",
        "--out",
        p(&ranked),
        "--logs",
        p(&logs_file),
        "--method",
        "heuristic",
        "--clusters",
        "2",
        "--seed",
        "4",
    ]);
    ok(&[
        "rank",
        "--out",
        p(&ranked),
        "--logs",
        p(&logs_file),
        "--method",
        "mle",
        "--max-iters",
        "40",
    ]);
    assert!(ranked.join("theta-r.csv").is_file() && ranked.join("theta-f.csv").is_file());
    for name in ["mle", "heuristic-c2"] {
        ok(&[
            "evaluate",
            "--out",
            p(&curves),
            "--logs",
            p(&logs_file),
            "--truth",
            p(&logs.join("truth.txt")),
            "--ranking",
            p(&ranked.join(format!("ranking-{name}.csv"))),
        ]);
    }

    let mut run = vec![
        "experiment",
        "--out",
        p(&exp),
        "--seeds",
        "4",
        "--log-count",
        "20",
        "--heuristic-clusters",
        "2",
        "--max-iters",
        "40",
    ];
    run.extend_from_slice(TINY);
    ok(&run);
    let seed_dir = exp.join("seed-4");
    let same = |a: &Path, b: &Path| assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap(), "{a:?} vs {b:?}");
    same(&graph, &seed_dir.join("graph.edges"));
    same(&logs_file, &seed_dir.join("logs.txt"));
    same(&logs.join("truth.txt"), &seed_dir.join("truth.txt"));
    for name in ["mle", "heuristic-c2"] {
        same(
            &ranked.join(format!("ranking-{name}.csv")),
            &seed_dir.join(format!("ranking-{name}.csv")),
        );
        same(
            &curves.join(format!("curves-{name}.csv")),
            &seed_dir.join(format!("curves-{name}.csv")),
        );
    }
}

#[test]
fn tiny_single_seed_run_writes_both_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let mut args = vec![
        "experiment",
        "--out",
        p(&out),
        "--seeds",
        "1",
        "--log-count",
        "20",
        "--max-iters",
        "30",
    ];
    args.extend_from_slice(TINY);
    let stdout = ok(&args);
    assert!(stdout.contains("1 seeds evaluated"), "{stdout}");
    for name in ["curves-mle.csv", "curves-heuristic-c5.csv", "manifest.txt", "plot.gp"] {
        assert!(out.join(name).is_file(), "{name}");
    }
    for name in ["curves-mle.csv", "curves-heuristic-c5.csv"] {
        let text = fs::read_to_string(out.join(name)).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("D_r,precision,recall,f,p_limit,r_limit,f_limit,p_rand,r_rand,f_rand")
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 20);
        assert!(rows[19].starts_with("20,"));
    }
}

#[test]
fn manifest_reruns_the_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let mut args = vec![
        "experiment",
        "--out",
        p(&a),
        "--seeds",
        "0..2",
        "--log-count",
        "25",
        "--max-iters",
        "20",
        "--covert",
        "peripheral",
    ];
    args.extend_from_slice(TINY);
    ok(&args);
    let manifest = a.join("manifest.txt");
    ok(&["experiment", "--config", p(&manifest), "--out", p(&b)]);
    for name in ["curves-mle.csv", "curves-heuristic-c5.csv", "manifest.txt"] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "node_count = 14\ncluster_count = 2\nlog_count = 12\nseeds = [2]\nmethods = [\"heuristic\"]\nheuristic_clusters = 3\n").unwrap();
    let out = dir.path().join("o");
    ok(&["experiment", "--config", p(&cfg), "--out", p(&out), "--log-count", "15"]);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("log_count = 15"));
    assert!(manifest.contains("node_count = 14"));
    assert!(out.join("curves-heuristic-c3.csv").is_file());
    assert!(!out.join("curves-mle.csv").exists());
}

#[test]
fn errors_exit_nonzero_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let mut args = vec![
        "experiment",
        "--out",
        p(&out),
        "--seeds",
        "0",
        "--covert-label",
        "no-such-node",
    ];
    args.extend_from_slice(TINY);
    let res = nodedisc(&args);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("no-such-node"));

    let missing = dir.path().join("missing.edges");
    let res = nodedisc(&["gen-logs", "--out", p(&out), "--graph", p(&missing)]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("missing.edges"));

    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "nodes = 3\n").unwrap();
    assert!(!nodedisc(&["synthesize", "--config", p(&cfg), "--out", p(&out)])
        .status
        .success());
    assert!(!nodedisc(&["rank", "--out", p(&out)]).status.success());
}
