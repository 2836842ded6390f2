//! End-to-end checks on the command entry points and the installed binary:
//! output layout, determinism across worker counts, the resolved-config echo
//! round trip, and exit-code / stderr behavior on bad input.

use std::path::Path;
use std::process::Command;

use vouch_core::crypto::hash;
use vouch_core::protocol::identity::compute_vote_identifier;

use vouch_cli::config::CliOverrides;
use vouch_cli::{cmd_run, cmd_sweep};

const SWEEP_CONF: &str = "\
sim.duration_s = 600
sim.warmup_s = 200
sim.node_count = 60
sim.event_count = 10
field.width_m = 700
field.height_m = 700
protocol.negotiation_interval_min_s = 90
protocol.negotiation_interval_max_s = 180
sweep.models = rwp,rpgm
sweep.hop_limits = 1,2
sweep.malicious_ratios = 0,0.2
sweep.repetitions = 3
sweep.master_seed = 11
";

fn write_conf(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write config");
    path
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vouch"))
}

#[test]
fn sweep_writes_grid_and_consistent_summary() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(tmp.path(), "sweep.conf", SWEEP_CONF);
    let out = tmp.path().join("out");
    cmd_sweep(Some(&conf), &out, 1, CliOverrides::default()).expect("sweep");

    let raw = read(&out.join("raw.csv"));
    let rows: Vec<&str> = raw.lines().collect();
    assert_eq!(rows[0], vouch_cli::output::RAW_HEADER);
    assert_eq!(rows.len(), 1 + 24, "2 models x 2 hops x 2 ratios x 3 reps");
    assert!(out.join("resolved.conf").exists());

    // Every summary row must restate the mean of its matching raw rows.
    let summary = read(&out.join("summary.csv"));
    let mut cells = 0;
    for line in summary.lines().skip(1) {
        let s: Vec<&str> = line.split(',').collect();
        let (model, k, ratio) = (s[0], s[1], s[2]);
        let matching: Vec<f64> = rows[1..]
            .iter()
            .map(|r| r.split(',').collect::<Vec<_>>())
            .filter(|r| r[0] == model && r[1] == k && r[2] == ratio)
            .map(|r| r[6].parse::<f64>().expect("avg_witnesses"))
            .collect();
        assert_eq!(matching.len(), 3);
        let mean = matching.iter().sum::<f64>() / matching.len() as f64;
        let reported: f64 = s[3].parse().expect("avg_witnesses_mean");
        assert!((mean - reported).abs() < 1e-9, "{model} k={k} r={ratio}: {mean} vs {reported}");
        cells += 1;
    }
    assert_eq!(cells, 8);
}

#[test]
fn sweep_output_identical_across_worker_counts() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(tmp.path(), "sweep.conf", SWEEP_CONF);
    let serial = tmp.path().join("serial");
    let threaded = tmp.path().join("threaded");
    cmd_sweep(Some(&conf), &serial, 1, CliOverrides::default()).expect("serial sweep");
    cmd_sweep(Some(&conf), &threaded, 8, CliOverrides::default()).expect("threaded sweep");
    assert_eq!(read(&serial.join("raw.csv")), read(&threaded.join("raw.csv")));
    assert_eq!(read(&serial.join("summary.csv")), read(&threaded.join("summary.csv")));
}

#[test]
fn run_round_trips_through_echoed_config() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(
        tmp.path(),
        "run.conf",
        "\
sim.duration_s = 600
sim.warmup_s = 200
sim.node_count = 60
sim.event_count = 10
sim.seed = 7
sim.trajectory_interval_s = 120
field.width_m = 700
field.height_m = 700
mobility.model = nc
protocol.negotiation_interval_min_s = 90
protocol.negotiation_interval_max_s = 180
",
    );
    let first = tmp.path().join("first");
    cmd_run(Some(&conf), &first, CliOverrides::default()).expect("first run");
    let trajectories = read(&first.join("trajectories.csv"));
    assert!(trajectories.starts_with(vouch_cli::output::TRAJECTORY_HEADER));
    assert!(trajectories.lines().count() > 1);

    // Feeding the echoed config back in must reproduce the run exactly.
    let second = tmp.path().join("second");
    cmd_run(Some(&first.join("resolved.conf")), &second, CliOverrides::default())
        .expect("round-trip run");
    assert_eq!(read(&first.join("results.csv")), read(&second.join("results.csv")));
    assert_eq!(read(&first.join("resolved.conf")), read(&second.join("resolved.conf")));
}

#[test]
fn out_dir_is_created_when_missing() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(
        tmp.path(),
        "run.conf",
        "sim.duration_s = 600\nsim.warmup_s = 200\nsim.node_count = 60\nsim.event_count = 10\nfield.width_m = 700\nfield.height_m = 700\n",
    );
    let out = tmp.path().join("a/b/c");
    cmd_run(Some(&conf), &out, CliOverrides::default()).expect("run");
    assert!(out.join("results.csv").exists());
}

#[test]
fn bin_rejects_invalid_config_naming_the_key() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(tmp.path(), "bad.conf", "sim.warmup_s = 9000\n");
    let out = bin()
        .args(["run", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("sim.warmup_s"), "stderr: {stderr}");
}

#[test]
fn bin_demo_confirms_report() {
    let out = bin().args(["demo", "--seed", "42"]).output().expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("demo complete: report confirmed"), "stdout: {stdout}");
}

#[test]
fn bin_recover_finds_planted_id() {
    let k_is = [7u8; 32];
    let h_m = hash(b"cli golden report");
    let upsilon = compute_vote_identifier(4242, &h_m, &k_is);
    let out = bin()
        .args([
            "recover",
            "--upsilon",
            &upsilon.to_hex(),
            "--report-hash",
            &h_m.to_hex(),
            "--k-is",
            &hex::encode(k_is),
            "--ids",
            "0..10000",
        ])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "4242");
}

#[test]
fn bin_recover_rejects_malformed_hex() {
    let out = bin()
        .args([
            "recover",
            "--upsilon",
            "zz",
            "--report-hash",
            "00",
            "--k-is",
            "11",
            "--ids",
            "0..10",
        ])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bin_env_var_overrides_config() {
    let tmp = tempfile::tempdir().expect("tempdir");
    let conf = write_conf(
        tmp.path(),
        "run.conf",
        "sim.duration_s = 600\nsim.warmup_s = 200\nsim.node_count = 60\nsim.event_count = 10\nsim.seed = 7\nfield.width_m = 700\nfield.height_m = 700\n",
    );
    let out_dir = tmp.path().join("out");
    let out = bin()
        .args(["run", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(&out_dir)
        .env("VOUCH_SIM_SEED", "123")
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let echoed = read(&out_dir.join("resolved.conf"));
    assert!(echoed.contains("sim.seed = 123"), "echo: {echoed}");
}
