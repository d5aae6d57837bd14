//! End-to-end tests of the netrobust binary: exit codes, output formats,
//! and byte-stable batch artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn netrobust() -> Command {
    Command::new(env!("CARGO_BIN_EXE_netrobust"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn metrics_table_contains_all_rows() {
    let out = netrobust()
        .args(["metrics"])
        .arg(data("pollination_sample.csv"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for label in [
        "nodes",
        "edges",
        "connectance",
        "component_count",
        "nonzero_eigenvalues",
        "largest_eigenvalue",
        "betweenness_variance",
        "pagerank_variance",
        "communities_cnm",
        "communities_louvain",
        "communities_gn",
        "communities_lp",
    ] {
        assert!(text.contains(label), "missing {label} in:\n{text}");
    }
}

#[test]
fn metrics_component_count_on_identity_incidence() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("identity.csv");
    fs::write(&file, "1,0\n0,1\n").unwrap();
    let out = netrobust().arg("metrics").arg(&file).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("component_count"))
        .unwrap();
    assert!(row.ends_with('2'), "{row}");
}

#[test]
fn metrics_json_is_one_object_with_all_metrics() {
    let out = netrobust()
        .args(["metrics", "--json"])
        .arg(data("host_parasite_sample.csv"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let object = value.as_object().unwrap();
    for key in [
        "network_id",
        "nodes",
        "edges",
        "connectance",
        "component_count",
        "nonzero_eigenvalues",
        "largest_eigenvalue",
        "betweenness_variance",
        "pagerank_variance",
        "communities_cnm",
        "communities_louvain",
        "communities_gn",
        "communities_lp",
    ] {
        assert!(object.contains_key(key), "missing {key}");
    }
    assert_eq!(object["nodes"], serde_json::json!(11));
    assert_eq!(object["edges"], serde_json::json!(11));
}

#[test]
fn metrics_missing_file_exits_2() {
    let out = netrobust()
        .args(["metrics", "/nonexistent/net.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn metrics_parse_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.csv");
    fs::write(&file, "1,0\n0,1,1\n").unwrap();
    let out = netrobust().arg("metrics").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn sweep_writes_artifacts_and_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("run_a");
    let out_b = dir.path().join("run_b");
    for out_dir in [&out_a, &out_b] {
        let out = netrobust()
            .arg("sweep")
            .arg(data("manifest.csv"))
            .arg("--out")
            .arg(out_dir)
            .args(["--seed", "11", "--replicates", "3", "--threads", "2"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
    }
    for name in ["records.csv", "aggregate.csv"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
        assert!(!a.is_empty());
    }
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["networks_processed"], serde_json::json!(4));
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["config"]["sweep"]["base_seed"], serde_json::json!(11));
    assert_eq!(report["config"]["sweep"]["replicates"], serde_json::json!(3));
    assert_eq!(
        report["records_emitted"],
        serde_json::json!(report["records_emitted"].as_u64().unwrap())
    );

    let records = fs::read_to_string(out_a.join("records.csv")).unwrap();
    assert!(records.starts_with(
        "network_id,interaction_type,k_added,added_fraction,replicate,seed,metric,value\n"
    ));
    assert!(!records.contains('\r'));
}

#[test]
fn sweep_isolates_per_network_failures() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("good.csv"), "1,1,0\n0,1,1\n1,0,1\n").unwrap();
    fs::write(dir.path().join("corrupt.csv"), "1,0\n0,oops\n").unwrap();
    fs::write(
        dir.path().join("manifest.csv"),
        "path,network_id,interaction_type,format\n\
         good.csv,good,pollination,incidence_csv\n\
         corrupt.csv,bad,pollination,incidence_csv\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = netrobust()
        .arg("sweep")
        .arg(dir.path().join("manifest.csv"))
        .arg("--out")
        .arg(&out_dir)
        .args(["--replicates", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    let failures = report["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["network_id"], serde_json::json!("bad"));

    // disallowing failures turns the partial run into exit 1
    let out = netrobust()
        .arg("sweep")
        .arg(dir.path().join("manifest.csv"))
        .arg("--out")
        .arg(dir.path().join("out2"))
        .args(["--replicates", "2", "--allow-failures=false"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_with_zero_successes_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("corrupt.csv"), "x\n").unwrap();
    fs::write(
        dir.path().join("manifest.csv"),
        "path,network_id,interaction_type,format\n\
         corrupt.csv,bad,pollination,incidence_csv\n",
    )
    .unwrap();
    let out = netrobust()
        .arg("sweep")
        .arg(dir.path().join("manifest.csv"))
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_bad_manifest_exits_2() {
    let out = netrobust()
        .args(["sweep", "/nonexistent/manifest.csv", "--out"])
        .arg(std::env::temp_dir().join("netrobust_nowhere"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn aggregate_standalone_matches_sweep_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = netrobust()
        .arg("sweep")
        .arg(data("manifest.csv"))
        .arg("--out")
        .arg(&out_dir)
        .args(["--seed", "5", "--replicates", "2", "--metrics", "component_count,communities_cnm"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));

    let standalone = dir.path().join("agg.csv");
    let out = netrobust()
        .arg("aggregate")
        .arg(out_dir.join("records.csv"))
        .arg("--out")
        .arg(&standalone)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let a = fs::read(out_dir.join("aggregate.csv")).unwrap();
    let b = fs::read(&standalone).unwrap();
    assert_eq!(a, b);
}

#[test]
fn demo_communities_reports_observed_and_candidate() {
    let out = netrobust()
        .arg("demo-communities")
        .arg(data("demo_modular.csv"))
        .arg("0")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    // two K_{2,2} blocks joined by one bridge: greedy merge finds both
    let cnm_row = text.lines().find(|l| l.starts_with("cnm")).unwrap();
    let fields: Vec<&str> = cnm_row.split_whitespace().collect();
    assert_eq!(fields[1], "2", "{text}");

    // at capacity the candidate is complete bipartite K_{4,4}: the greedy
    // merge stops at the four matched pairs (every further gain is zero),
    // Girvan-Newman keeps the single initial community, and label
    // propagation collapses to one.
    let out = netrobust()
        .arg("demo-communities")
        .arg(data("demo_modular.csv"))
        .arg("7")
        .args(["--seed", "1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let row = |name: &str| -> Vec<String> {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("no row {name} in:\n{text}"))
            .split_whitespace()
            .map(str::to_string)
            .collect()
    };
    assert_eq!(row("cnm")[2], "4");
    assert_eq!(row("girvan-newman")[2], "1");
    assert_eq!(row("label-propagation")[2], "1");
}

#[test]
fn demo_communities_capacity_error_exits_2() {
    let out = netrobust()
        .arg("demo-communities")
        .arg(data("demo_modular.csv"))
        .arg("99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("absent"), "{}", stderr(&out));
}

#[test]
fn seed_env_var_is_used_as_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let out_env = dir.path().join("env");
    let out_flag = dir.path().join("flag");
    let run = |out_dir: &Path, envs: &[(&str, &str)], extra: &[&str]| {
        let mut cmd = netrobust();
        cmd.arg("sweep")
            .arg(data("manifest.csv"))
            .arg("--out")
            .arg(out_dir)
            .args(["--replicates", "2", "--metrics", "component_count"])
            .args(extra);
        for (k, v) in envs {
            cmd.env(k, v);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
    };
    run(&out_env, &[("NETROBUST_SEED", "99")], &[]);
    run(&out_flag, &[], &["--seed", "99"]);
    assert_eq!(
        fs::read(out_env.join("records.csv")).unwrap(),
        fs::read(out_flag.join("records.csv")).unwrap()
    );
}
