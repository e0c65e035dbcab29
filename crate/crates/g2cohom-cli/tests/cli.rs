use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn g2cohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2cohom")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2cohom-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&g2cohom(&["verify", "weyl", "--k", "3"])), 0);
    assert_eq!(code(&g2cohom(&["verify", "appendix", "--samples", "20", "--seed", "42", "--mode", "float"])), 0);
    assert_eq!(code(&g2cohom(&["verify", "nope"])), 2);
    assert_eq!(code(&g2cohom(&["verify", "weyl", "--k", "4"])), 2);
    assert_eq!(code(&g2cohom(&["verify", "octonion", "--samples", "0"])), 2);
    assert_eq!(code(&g2cohom(&["verify", "octonion", "--mode", "fuzzy"])), 2);
}

#[test]
fn obstruction_verdicts() {
    let o = g2cohom(&["obstruction", "--k", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("k = 3: infeasible"));
    let o = g2cohom(&["obstruction", "--k", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no contradiction"));
    assert_eq!(code(&g2cohom(&["obstruction", "--k", "2"])), 2);
    let path = scratch("obstruction.json");
    assert_eq!(code(&g2cohom(&["obstruction", "--k", "5", "--json", path.to_str().unwrap()])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "infeasible");
    assert_eq!(v["short_bound"]["rules_out_k"], true);
}

#[test]
fn beta_scan_csv() {
    let path = scratch("beta.csv");
    assert_eq!(code(&g2cohom(&["scan", "beta", "--step", "0.001", "--csv", path.to_str().unwrap()])), 0);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("parameter,alpha,psi2_at_x_alpha,p_beta,bound"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[3])
        })
        .collect();
    let changes: Vec<f64> = rows.windows(2).filter(|w| (w[0].1 >= 0.0) != (w[1].1 >= 0.0)).map(|w| w[1].0).collect();
    assert_eq!(changes.len(), 2, "{changes:?}");
    assert!((changes[0] - -0.121880).abs() < 2e-3);
    assert!((changes[1] - 1.0 / 3f64.sqrt()).abs() < 2e-3);
    assert_eq!(code(&g2cohom(&["scan", "gamma"])), 2);
    assert_eq!(code(&g2cohom(&["scan", "alpha", "--step", "-1"])), 2);
}

#[test]
fn corrupted_table_names_the_monomial() {
    let text = include_str!("../../g2cohom-core/data/curvature_coefficients.tsv");
    let bad = text.replace("R1\t1/4\t-1\t0\txi*f1^2\tR1.3", "R1\t3/4\t-1\t0\txi*f1^2\tR1.3");
    assert_ne!(bad, text);
    let path = scratch("bad.tsv");
    fs::write(&path, bad).unwrap();
    let o = g2cohom(&["verify", "appendix", "--mode", "exact", "--samples", "4", "--table", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("[FAIL] R1"), "{out}");
    assert!(out.contains("monomial xi*f1^2"), "{out}");
    assert_eq!(code(&g2cohom(&["verify", "appendix", "--table", "/nonexistent/table.tsv"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let run = |name: &str, extra: &[&str]| {
        let path = scratch(name);
        let mut args = vec!["verify", "davis", "--samples", "4", "--seed", "9", "--json", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert_eq!(code(&g2cohom(&args)), 0);
        fs::read(&path).unwrap()
    };
    assert_eq!(run("a.json", &[]), run("b.json", &["--jobs", "2"]));
    let scan = |name: &str| {
        let path = scratch(name);
        assert_eq!(code(&g2cohom(&["scan", "alpha", "--step", "0.01", "--csv", path.to_str().unwrap()])), 0);
        fs::read(&path).unwrap()
    };
    assert_eq!(scan("a.csv"), scan("b.csv"));
}

#[test]
fn flags_override_config_file() {
    let cfg = scratch("run.cfg");
    fs::write(&cfg, "seed = 5\nsamples = 2\nk = 5\n").unwrap();
    let json = scratch("cfg.json");
    let o = g2cohom(&["verify", "brieskorn", "--config", cfg.to_str().unwrap(), "--seed", "7", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["samples"], 2);
    assert_eq!(v["config"]["k"], 5);
    assert_eq!(v["suite"], "brieskorn");
    fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(code(&g2cohom(&["verify", "weyl", "--config", cfg.to_str().unwrap()])), 2);
}
