use std::fs;
use std::process::{Command, Output};

use ams_detect_cli::output::{read_accuracy, read_runtime};
use ams_detect_cli::sweep::Parameter;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ams-detect"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn sweep_tau_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("exp.conf");
    fs::write(
        &conf,
        "# M = 100 panel\npackets = 100\nruns = 5\nseed = 3\n",
    )
    .unwrap();
    let out = cli(&["sweep-tau", "--config", conf.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let sweep = read_accuracy(&out.stdout[..]).unwrap();
    assert_eq!(sweep.parameter, Parameter::Tau);
    let taus: Vec<u64> = sweep.rows.iter().map(|r| r.value as u64).collect();
    assert_eq!(taus, (95..=105).collect::<Vec<_>>());
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("exp.conf");
    fs::write(&conf, "packets = 100\nruns = 3\n").unwrap();
    let out = cli(&[
        "sweep-tau",
        "--config",
        conf.to_str().unwrap(),
        "--packets",
        "150",
    ]);
    assert!(out.status.success());
    let sweep = read_accuracy(&out.stdout[..]).unwrap();
    assert_eq!(sweep.rows[0].value, 145.0);
}

#[test]
fn seed_changes_output() {
    let a = cli(&["sweep-tau", "--runs", "3", "--seed", "1"]);
    let b = cli(&["sweep-tau", "--runs", "3", "--seed", "1"]);
    let c = cli(&["sweep-tau", "--runs", "3", "--seed", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn sweep_depth_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("depth.csv");
    let out = cli(&[
        "sweep-depth",
        "--d-min",
        "1",
        "--d-max",
        "6",
        "--runs",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("index,d,tp,tn\n"));
    let sweep = read_accuracy(text.as_bytes()).unwrap();
    assert_eq!(
        sweep
            .rows
            .iter()
            .map(|r| r.value as usize)
            .collect::<Vec<_>>(),
        (1..=6).collect::<Vec<_>>()
    );
}

#[test]
fn runtime_csv() {
    let out = cli(&["runtime", "--depths", "1,10,20", "--runs", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,runtime\n"));
    let sweep = read_runtime(text.as_bytes()).unwrap();
    assert_eq!(
        sweep.rows.iter().map(|r| r.depth).collect::<Vec<_>>(),
        vec![1, 10, 20]
    );
    let secs = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(secs.split('.').nth(1).unwrap().len(), 6);
}

#[test]
fn trial_dump() {
    let out = cli(&["trial", "--seed", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "host,switch,window,actual,predicted,oracle,f2_estimate,f0_exact,f2_exact"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 30);
    assert_eq!(rows.iter().filter(|r| r[3] == "zombie").count(), 4);
    for r in &rows {
        let host: usize = r[0].parse().unwrap();
        assert_eq!(r[1].parse::<usize>().unwrap(), host % 5);
    }
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("attack_successful="), "{summary}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    fs::write(&conf, "hosts = 30\nattackers = 40\n").unwrap();
    assert_eq!(
        cli(&["sweep-tau", "--config", conf.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    fs::write(&conf, "hosts = thirty\n").unwrap();
    let out = cli(&["trial", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":1:"));

    assert_eq!(cli(&["sweep-tau", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(
        cli(&["sweep-tau", "--config", "/nonexistent/exp.conf"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        cli(&["trial", "--out", "/nonexistent/dir/out.csv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(cli(&["trial", "--headers", "100"]).status.code(), Some(3));
}
