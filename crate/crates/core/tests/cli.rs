//! The `tribody` binary end to end.

use std::process::{Command, Output};

fn tribody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tribody"))
        .args(args)
        .env_remove("TBI_DEFAULT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gamma_example() {
    let o = tribody(&["gamma", "-k", "0", "-l", "0", "-n", "0", "-a", "1", "-b", "1", "-c", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "k,l,n,alpha,beta,gamma,value,abs_err,terms,converged");
    assert!(out.lines().nth(1).unwrap().starts_with("0,0,0,1,1,1,0.25000000000000000E+00,"), "{out}");
}

#[test]
fn bessel_example() {
    let args = ["bessel", "--order", "0", "-k", "3", "-l", "2", "-n", "1", "-a", "2.35", "-b", "1.41", "-c", "0.567", "--V", "0.5"];
    let o = tribody(&args);
    assert!(o.status.success());
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let value: f64 = line.split(',').nth(9).unwrap().parse().unwrap();
    assert!(((value - 0.15968050735256670) / 0.15968050735256670).abs() <= 1e-11, "{line}");
}

#[test]
fn table_one_has_twenty_cells() {
    let o = tribody(&["table", "--which", "I"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    for r in rows {
        let rel: f64 = r.split(',').nth(11).unwrap().parse().unwrap();
        assert!(rel <= 1e-12, "{r}");
    }
}

#[test]
fn table_two_json() {
    let o = tribody(&["table", "--which", "II", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 20);
    assert_eq!(cells[0]["operation"], "table-II");
    assert_eq!(cells[0]["inputs"]["V"], 0.25);
}

#[test]
fn output_is_deterministic() {
    let args = ["j-integral", "-a", "2", "-b", "2", "-c", "1", "--t", "0.3"];
    assert_eq!(tribody(&args).stdout, tribody(&args).stdout);
    let args = ["addition-survey", "--count", "5"];
    assert_eq!(tribody(&args).stdout, tribody(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(tribody(&["gamma", "-a", "1"]).status.code(), Some(2));
    let o = tribody(&["gamma", "-a", "1", "-b", "-2", "-c", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain"));
    let o = tribody(&["bessel2", "-a", "2", "-b", "2", "-c", "1", "--V", "2.5"]);
    assert_eq!(o.status.code(), Some(4));
    let o = tribody(&["bessel", "--order", "-1", "-k", "0", "-a", "2", "-b", "2", "-c", "1", "--V", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tribody"))
        .args(["bessel", "--order", "0", "-k", "3", "-l", "2", "-n", "1", "-a", "2.35", "-b", "1.41", "-c", "0.567", "--V", "0.5"])
        .env("TBI_DEFAULT_TOL", "1e-6")
        .output()
        .unwrap();
    let tight = tribody(&["bessel", "--order", "0", "-k", "3", "-l", "2", "-n", "1", "-a", "2.35", "-b", "1.41", "-c", "0.567", "--V", "0.5"]);
    let terms = |o: &Output| -> usize { stdout(o).lines().nth(1).unwrap().split(',').nth(11).unwrap().parse().unwrap() };
    assert!(terms(&o) < terms(&tight));
}

#[test]
fn every_subcommand_runs() {
    let p = ["-a", "2", "-b", "2", "-c", "1"];
    let cases: Vec<Vec<&str>> = vec![
        vec!["basic-b", "-a", "1", "-b", "2", "-c", "3", "--p", "0.5", "1", "1.5"],
        vec!["power-g", "--p", "0", "0", "0", "--q", "1", "1", "1", "1", "--s", "4"],
        vec!["uehling-me", "--charges", "-1", "-1", "1"],
        vec!["uehling-point", "--r", "0.01", "--mode", "ki"],
        vec!["yukawa", "--mu", "0.5"],
        vec!["ubar", "--pair", "31", "--shift", "1"],
        vec!["special", "--function", "ki", "--order", "2", "--z", "0.5"],
        vec!["series", "--term", "1:0", "--term", "-0.5:2:0.3", "--damped"],
        vec!["oracle", "--kernel", "jj", "--orders", "0", "1", "--V", "0.5", "--weight"],
        vec!["rayleigh", "--kr", "2", "--cos", "-0.3"],
        vec!["bessel2", "--V", "0.5", "--sin-sin"],
    ];
    for c in cases {
        let needs_params = !matches!(c[0], "basic-b" | "power-g" | "uehling-point" | "special" | "rayleigh");
        let mut args = c.clone();
        if needs_params {
            args.extend(p);
        }
        let o = tribody(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).lines().count(), 2, "{args:?}");
    }
}
