use std::process::{Command, Output};

use hankel::report::{BoundJson, DeriveReport, SearchReport};

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_SEED")
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_prints_coefficients() {
    let o = hankel(&["derive", "--class", "starlike"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a₂=2c₁"));
    let o = hankel(&["derive", "--class", "lune"]);
    assert!(stdout(&o).contains("a₄=(1/3)(c₃+(5/2)c₁c₂+(5/4)c₁³)"), "{}", stdout(&o));
    let o = hankel(&["derive", "--class", "exponential", "--latex"]);
    assert!(stdout(&o).contains("\\frac"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hankel(&["derive", "--class", "bogus"]).status.code(), Some(2));
    assert_eq!(hankel(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(hankel(&["search", "--class", "lune", "--budget", "0"]).status.code(), Some(2));
    assert_eq!(hankel(&["search", "--class", "lune", "--step-scale", "1.5"]).status.code(), Some(2));
    assert_eq!(hankel(&["grid-export", "--resolution", "1"]).status.code(), Some(2));
    assert_eq!(hankel(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bound_json() {
    let o = hankel(&["bound", "--class", "starlike", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let b: BoundJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!((b.upper_bound_value - 0.777_987).abs() < 1e-5);
    assert!(b.steps.iter().all(|s| s.status == "pass"));
    let ev = b.optimizer_evidence.unwrap();
    assert!(ev.interior_critical_points.is_empty());
    assert!(ev.certificate.passed);

    let o = hankel(&["bound", "--class", "exponential", "--json"]);
    let b: BoundJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(b.upper_bound, "17/72");
    assert!(b.exact);
}

#[test]
fn bound_text_shows_closed_form() {
    let o = hankel(&["bound", "--class", "symmetric"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("# hankel "));
    assert!(s.contains("1/4 + 1/(3*sqrt(3))"), "{s}");
}

#[test]
fn json_round_trips() {
    let o = hankel(&["derive", "--class", "symmetric", "--json"]);
    let d: DeriveReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::from_str::<DeriveReport>(&serde_json::to_string(&d).unwrap()).unwrap(), d);
    assert_eq!(d.coefficients.len(), 4);

    let o = hankel(&["bound", "--class", "lune", "--json"]);
    let b: BoundJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::from_str::<BoundJson>(&serde_json::to_string(&b).unwrap()).unwrap(), b);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--samples", "3000", "--seed", "11"];
    let a = hankel(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).trim_end().ends_with("0 violations"));
    assert_eq!(stdout(&a), stdout(&hankel(&args)));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hankel"));
        cmd.args(["search", "--class", "exponential", "--budget", "300"]).args(extra);
        cmd.env_remove("SOURCE_DATE_EPOCH");
        match env {
            Some(v) => cmd.env("HANKEL_SEED", v),
            None => cmd.env_remove("HANKEL_SEED"),
        };
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    let from_env = run(Some("9"), &[]);
    assert!(from_env.contains("seed=9"));
    assert_eq!(from_env, run(None, &["--seed", "9"]));
    assert!(run(None, &[]).contains("seed=0"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# preset\nseed = 4\nbudget = 50\n").unwrap();
    let path = cfg.to_str().unwrap();
    let o = hankel(&["--config", path, "search", "--class", "lune", "--json"]);
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.manifest.seed, Some(4));
    assert_eq!(r.results[0].evaluations, 50);
    let o = hankel(&["--config", path, "search", "--class", "lune", "--budget", "60", "--json"]);
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.results[0].evaluations, 60);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(hankel(&["--config", path, "bound", "--class", "lune"]).status.code(), Some(2));
}

#[test]
fn search_budget_one_is_zero() {
    let args = ["search", "--class", "starlike", "--budget", "1", "--json"];
    let o = hankel(&args);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.results[0].best_value, 0.0);
    assert_eq!(r.results[0].evaluations, 1);
    assert_eq!(o.stdout, hankel(&args).stdout);
}

#[test]
fn search_all_reports_every_class() {
    let o = hankel(&["search", "--class", "all", "--budget", "2000", "--seed", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.results.len(), 4);
    for row in &r.results {
        assert!(row.best_value <= row.class_upper_bound);
    }
    assert_eq!(r.results[1].gap.prior, Some(2.5));
    assert_eq!(r.results[2].gap.prior, Some(0.500_477_81));
}

#[test]
fn grid_export_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = hankel(&["grid-export", "--resolution", "101", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# hankel 0.1.0 grid-export resolution=101"));
    assert_eq!(lines.next(), Some("x,y,h"));
    let mut max = f64::NEG_INFINITY;
    let mut rows = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(v.len(), 3);
        assert!(v[0] >= 0.0 && v[1] >= 0.0 && v[1] <= 1.0 - v[0] * v[0] + 1e-12);
        max = max.max(v[2]);
        rows += 1;
    }
    assert!(rows > 5000);
    assert!(max <= 6.003_764_890_074_22 && max > 6.0);
}

#[test]
fn output_file_option() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bound.json");
    let o = hankel(&["bound", "--class", "lune", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let b: BoundJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(b.upper_bound, "17/72");
}
