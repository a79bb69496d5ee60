use std::process::{Command, Output};

fn hratp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hratp"))
        .args(args)
        .env_remove("HRATP_PRECISION")
        .output()
        .expect("binary runs")
}

fn records(csv_text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(csv_text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn writes_table_shaped_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = hratp(&["solve_collocation", "--trials", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("experiment,q,alpha,n,node_scheme,x,seed,baseline_err,hra_err,guaranteed\n"));
    let rows = records(&text);
    assert_eq!(rows.len(), 12);
    for row in &rows {
        assert_eq!(row[0], "solve_collocation");
        assert_eq!(row[4], "equidistant_pos");
        assert_eq!(row[9], "yes");
        assert!(row[8].parse::<f64>().unwrap() < 1e-13);
    }
    let cells: Vec<(&str, &str)> = rows.iter().map(|r| (r[1].as_str(), r[3].as_str())).collect();
    assert_eq!(cells[0], ("0.5", "5"));
    assert_eq!(cells[11], ("2", "20"));
}

#[test]
fn output_is_deterministic() {
    let args = ["solve_wronskian", "--q", "0.5,2", "--n", "4,9", "--seed", "11", "--trials", "4"];
    let a = hratp(&args);
    let b = hratp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = hratp(&["solve_wronskian", "--q", "0.5,2", "--n", "4,9", "--seed", "12", "--trials", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn violations_and_strict_mode() {
    let args = ["solve_wronskian", "--alpha", "1", "--x", "50", "--q", "1", "--n", "3"];
    let lenient = hratp(&args);
    assert_eq!(lenient.status.code(), Some(0));
    let rows = records(&String::from_utf8(lenient.stdout).unwrap());
    assert_eq!(rows.len(), 1);
    assert!(rows[0][9].starts_with("violation"));
    assert_eq!(rows[0][8], "");

    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(hratp(&strict).status.code(), Some(2));

    let ok = hratp(&["solve_wronskian", "--alpha", "1", "--x", "-20", "--q", "1", "--n", "3", "--strict"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn precision_sources() {
    let bin = env!("CARGO_BIN_EXE_hratp");
    let args = ["conditioning", "--q", "1", "--n", "3"];
    let bad_env = Command::new(bin).args(args).env("HRATP_PRECISION", "lots").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_env.stderr).contains("HRATP_PRECISION"));

    let flag_wins = Command::new(bin)
        .args(args)
        .args(["--precision", "60"])
        .env("HRATP_PRECISION", "lots")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());

    let from_env = Command::new(bin).args(args).env("HRATP_PRECISION", "60").output().unwrap();
    assert_eq!(from_env.stdout, flag_wins.stdout);
    assert_eq!(records(&String::from_utf8(from_env.stdout).unwrap()).len(), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(hratp(&["bogus"]).status.code(), Some(1));
    assert_eq!(hratp(&["inverse", "--nodes", "random"]).status.code(), Some(1));
    assert_eq!(hratp(&["inverse", "--precision", "0"]).status.code(), Some(1));
    let help = hratp(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("HRATP_PRECISION"));
}

#[test]
fn every_experiment_runs() {
    for exp in ["conditioning", "solve_collocation", "solve_wronskian", "eig_svd", "inverse"] {
        let o = hratp(&[exp, "--q", "1", "--n", "4", "--precision", "40"]);
        assert!(o.status.success(), "{exp}");
        let rows = records(&String::from_utf8(o.stdout).unwrap());
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r[0].starts_with(exp)));
    }
}
