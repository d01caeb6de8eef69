use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nikolskii"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn config_text(out: &Path, witnesses: &str, n_list: &str, s_list: &str, pairs: &str) -> String {
    format!(
        r#"{{"command": "sweep", "witnesses": {witnesses}, "n_list": {n_list}, "s_list": {s_list},
            "pq_pairs": {pairs}, "seed": 7, "output_dir": {:?}}}"#,
        out
    )
}

fn csv_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(String::from).collect()
}

#[test]
fn minimal_sweep_writes_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(dir.path(), "c.json", &config_text(&out, r#"["exponential"]"#, "[8]", "[1]", r#"[[1, "inf"]]"#));
    let o = run(&["sweep", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&out.join("sweep.csv"));
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "witness,n,s,p,q,numerator,denominator,ratio,normalized,grid_M,seed");
    assert!(lines[1].starts_with("exponential,8,1,1,inf,"));
}

#[test]
fn grid_sweep_is_sorted_and_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let out = dir.path().join(format!("out{workers}"));
        let text = config_text(&out, r#"["exponential"]"#, "[8, 16, 32]", "[1, 2, 3]", r#"[[1, "inf"], [2, "inf"]]"#)
            .replace(r#""exponential"]"#, r#""exponential", "modulated_jackson"]"#);
        let cfg = write_config(dir.path(), &format!("c{workers}.json"), &text);
        let o = run(&["sweep", cfg.to_str().unwrap(), "--workers", workers]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(fs::read(out.join("sweep.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    // 18 exponential cells; the Jackson witness needs s >= 2 and n > 4rs
    let exp = rows.iter().filter(|r| r.starts_with("exponential,")).count();
    assert_eq!(exp, 18);
    assert!(rows.iter().all(|r| r.ends_with(",7")));
    let key = |r: &&str| {
        let f: Vec<&str> = r.split(',').collect();
        (f[0].to_string(), f[1].parse::<usize>().unwrap(), f[2].parse::<f64>().unwrap())
    };
    let keys: Vec<_> = rows.iter().map(key).collect();
    assert!(keys.windows(2).all(|w| (w[0].0.as_str(), w[0].1) <= (w[1].0.as_str(), w[1].1)));
}

#[test]
fn three_by_three_by_two_by_two_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let pairs = r#"[[1, "inf"], ["1/2", 2], [1, 2], ["1/2", "inf"]]"#;
    let cfg = write_config(dir.path(), "c.json", &config_text(&out, r#"["exponential"]"#, "[32, 8, 16]", "[3, 1, 2]", pairs));
    let o = run(&["sweep", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&out.join("sweep.csv"));
    assert_eq!(lines.len(), 37);
    let num = |x: &str| if x == "inf" { f64::INFINITY } else { x.parse::<f64>().unwrap() };
    let keys: Vec<(usize, f64, f64, f64)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), num(f[2]), num(f[3]), num(f[4]))
        })
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn unknown_config_field_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = config_text(dir.path(), r#"["exponential"]"#, "[8]", "[1]", r#"[[1, "inf"]]"#)
        .replace(r#""seed": 7"#, r#""seed": 7, "colour": "blue""#);
    let cfg = write_config(dir.path(), "c.json", &text);
    let o = run(&["sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn invalid_field_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let text = config_text(dir.path(), r#"["exponential"]"#, "[8]", "[1]", r#"[[2, 1]]"#);
    let cfg = write_config(dir.path(), "c.json", &text);
    let o = run(&["sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pq_pairs"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = run(&["verify", "fourier"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quick_hardy_suite_passes() {
    let o = run(&["verify", "hardy", "--quick"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("suite hardy: PASS"));
}

#[test]
fn extremal_prints_json() {
    let o = run(&["extremal", "--n", "3", "--s", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["zeros"].as_array().unwrap().len(), 6);
    assert!(v["constant"].as_f64().unwrap() > 0.0);
}

#[test]
fn hardy_atoms_are_valid() {
    let o = run(&["hardy", "atoms", "--p", "1/2", "--count", "3", "--seed", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let atoms = v["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 3);
    assert!(atoms.iter().all(|a| a["valid"] == true && a["hp_norm"].as_f64().unwrap().is_finite()));
    assert_eq!(run(&["hardy", "atoms", "--p", "2", "--count", "1"]).status.code(), Some(2));
}

fn sweep_into(dir: &Path, name: &str, n_list: &str) -> PathBuf {
    let out = dir.join(name);
    let text = config_text(&out, r#"["exponential"]"#, n_list, "[1, 2]", r#"[[1, "inf"], [1, 2]]"#);
    let cfg = write_config(dir, &format!("{name}.json"), &text);
    assert!(run(&["sweep", cfg.to_str().unwrap()]).status.success());
    out.join("sweep.csv")
}

#[test]
fn band_summary_columns_and_concatenation() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep_into(dir.path(), "a", "[8, 16]");
    let b = sweep_into(dir.path(), "b", "[32]");
    let both = sweep_into(dir.path(), "both", "[8, 16, 32]");
    let o = run(&["report", "band-summary", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let split = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = split.lines().collect();
    assert_eq!(lines[0], "witness,p,q,count,min_norm_ratio,max_norm_ratio,spread");
    assert_eq!(lines.len(), 3);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(3) == Some("6")));
    let out = dir.path().join("summary.csv");
    let o = run(&["report", "band-summary", both.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out).unwrap(), split);
}

#[test]
fn report_rejects_unknown_kind_and_bad_csv() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "a,b\n1,2\n").unwrap();
    assert_eq!(run(&["report", "histogram", bad.to_str().unwrap()]).status.code(), Some(2));
    let o = run(&["report", "scan-table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));
}
