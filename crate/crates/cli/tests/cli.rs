use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corrsphere"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_input(dir: &Path, name: &str, rows: &[Vec<f64>]) -> String {
    let n = rows[0].len();
    let mut text = String::from("tick");
    for i in 0..n {
        text.push_str(&format!(",x{i}"));
    }
    text.push('\n');
    for (t, row) in rows.iter().enumerate() {
        text.push_str(&t.to_string());
        for v in row {
            text.push_str(&format!(",{v}"));
        }
        text.push('\n');
    }
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn wavy(len: usize, n: usize) -> Vec<Vec<f64>> {
    (0..len)
        .map(|t| {
            (0..n)
                .map(|k| ((t * (k + 2)) as f64 * 0.31 + k as f64).sin() + 0.2 * (t as f64 * 1.7 + k as f64).cos())
                .collect()
        })
        .collect()
}

#[test]
fn analyze_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(120, 4));
    let out = dir.path().join("out");
    let o = run(&["analyze", "--input", &input, "--measures", "m1a,m2a", "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<String> =
        fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["manifest.json", "measure_m1a_diameter.csv", "measure_m2a_max_area.csv", "overlay.csv"]);
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["version"], corrsphere::VERSION);
    assert_eq!(manifest["config"]["window"], 21);
    assert_eq!(manifest["input"]["series"].as_array().unwrap().len(), 4);
}

#[test]
fn overlay_columns_equal_series_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(90, 3));
    let out = dir.path().join("out");
    let o = run(&["analyze", "--input", &input, "--measures", "m1a,m2a,m2", "--window", "12", "--out", path(&out)]);
    assert!(o.status.success());
    let overlay = fs::read_to_string(out.join("overlay.csv")).unwrap();
    let rows: Vec<Vec<&str>> = overlay.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["timestamp", "m1a_diameter", "m2a_max_area", "m2_hull_area"]);
    for (col, kind) in ["m1a_diameter", "m2a_max_area", "m2_hull_area"].iter().enumerate() {
        let file = fs::read_to_string(out.join(format!("measure_{kind}.csv"))).unwrap();
        let lines: Vec<&str> = file.lines().collect();
        assert_eq!(lines[0], "timestamp,value,gap");
        assert_eq!(lines.len(), rows.len());
        for (line, row) in lines[1..].iter().zip(&rows[1..]) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[0], row[0]);
            assert_eq!(cells[1], row[col + 1]);
        }
    }
}

#[test]
fn identical_columns_give_zero_measures_and_no_events() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<Vec<f64>> = wavy(60, 1).into_iter().map(|r| vec![r[0]; 4]).collect();
    let input = write_input(dir.path(), "in.csv", &rows);
    let out = dir.path().join("out");
    assert!(run(&["analyze", "--input", &input, "--out", path(&out)]).status.success());
    let overlay = fs::read_to_string(out.join("overlay.csv")).unwrap();
    for line in overlay.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(&cells[1..], ["0", "0"], "{line}");
    }
    let ev = dir.path().join("ev");
    assert!(run(&["events", "--input", &input, "--out", path(&ev)]).status.success());
    let list: serde_json::Value =
        serde_json::from_slice(&fs::read(ev.join("events_m1a_diameter.json")).unwrap()).unwrap();
    assert_eq!(list["events"].as_array().unwrap().len(), 0);
}

#[test]
fn window_longer_than_series_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(30, 3));
    let out = dir.path().join("out");
    let o = run(&["analyze", "--input", &input, "--window", "50", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds series length"));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["analyze", "--window", "x"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--input", "missing.csv"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--input", "a.csv", "--measures", "volume"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["simulate", "--noise-sigma", "0", "--out", path(&dir.path().join("s"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["simulate", "--episode", "50:20:0.5", "--out", path(&dir.path().join("s"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_runs_remove_partial_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(60, 3));
    let out = dir.path().join("out");
    // a directory where the overlay should go makes the run fail midway
    fs::create_dir_all(out.join("overlay.csv")).unwrap();
    let o = run(&["analyze", "--input", &input, "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.join("measure_m1a_diameter.csv").exists());
    assert!(!out.join("manifest.json").exists());
}

#[test]
fn simulate_round_trips_through_analyze_without_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    let o = run(&[
        "simulate",
        "--seed",
        "12",
        "--n-series",
        "3",
        "--length",
        "150",
        "--episode",
        "40:100:0.9",
        "--out",
        path(&sim),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sidecar: serde_json::Value = serde_json::from_slice(&fs::read(sim.join("episodes.json")).unwrap()).unwrap();
    assert_eq!(sidecar["spec"]["episodes"][0]["start"], 40);
    assert_eq!(sidecar["generator"], "chacha8");
    let out = dir.path().join("an");
    let input = sim.join("series.csv");
    let o =
        run(&["analyze", "--input", path(&input), "--measures", "m1a,m2a,m2", "--format", "json", "--out", path(&out)]);
    assert!(o.status.success());
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    for s in manifest["series"].as_array().unwrap() {
        assert_eq!(s["gaps"], 0, "{s}");
    }
}

#[test]
fn events_reports_each_measure_and_a_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    assert!(run(&["simulate", "--seed", "4", "--out", path(&sim)]).status.success());
    let ev = dir.path().join("ev");
    let o = run(&["events", "--input", path(&sim.join("series.csv")), "--format", "svg", "--out", path(&ev)]);
    assert!(o.status.success());
    let cmp: serde_json::Value = serde_json::from_slice(&fs::read(ev.join("comparison.json")).unwrap()).unwrap();
    let report = &cmp["reports"][0];
    assert_eq!(report["a_kind"], "m1a_diameter");
    assert_eq!(report["b_kind"], "m2a_max_area");
    let counts = &report["counts"];
    assert_eq!(counts["a"].as_u64().unwrap(), counts["matched"].as_u64().unwrap() + counts["a_only"].as_u64().unwrap());
    // both planted episodes (window starts in [100, 163) and [260, 323)) carry a diameter minimum
    let list: serde_json::Value =
        serde_json::from_slice(&fs::read(ev.join("events_m1a_diameter.json")).unwrap()).unwrap();
    let ticks: Vec<i64> = list["events"].as_array().unwrap().iter().map(|e| e["tick"].as_i64().unwrap()).collect();
    assert!(ticks.iter().any(|t| (100..163).contains(t)), "{ticks:?}");
    assert!(ticks.iter().any(|t| (260..323).contains(t)), "{ticks:?}");
    let svg = fs::read_to_string(ev.join("events.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline") && svg.contains("<circle"));
}

#[test]
fn validate_passes_on_real_data_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(80, 5));
    let out = dir.path().join("v");
    let o = run(&["validate", "--input", &input, "--window", "10", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(out.join("validation.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checked_matrices"], 2 * 71);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "in.csv", &wavy(80, 3));
    let out = dir.path().join("out");
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        format!(
            "schema_version = 1\ninput = {:?}\nout = {:?}\n[analysis]\nwindow = 15\nmeasures = [\"m1a\"]\n[output]\nformats = [\"json\"]\n",
            input,
            path(&out)
        ),
    )
    .unwrap();
    let o = run(&["analyze", "--config", path(&cfg), "--stride", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["window"], 15);
    assert_eq!(manifest["config"]["stride"], 5);
    assert_eq!(manifest["series"][0]["windows"], (80 - 15) / 5 + 1);
    assert!(out.join("measure_m1a_diameter.json").exists());
    fs::write(&cfg, "schema_version = 7\n").unwrap();
    assert_eq!(run(&["analyze", "--config", path(&cfg)]).status.code(), Some(2));
}

#[test]
fn dated_input_keeps_dates_in_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("date,a,b,c\n");
    for (i, row) in wavy(40, 3).iter().enumerate() {
        let (y, m) = (1950 + i / 12, i % 12 + 1);
        text.push_str(&format!("{y}-{m:02},{},{},{}\n", row[0], row[1], row[2]));
    }
    let input = dir.path().join("in.csv");
    fs::write(&input, text).unwrap();
    let out = dir.path().join("out");
    assert!(run(&["analyze", "--input", path(&input), "--window", "12", "--out", path(&out)]).status.success());
    let overlay = fs::read_to_string(out.join("overlay.csv")).unwrap();
    assert!(overlay.lines().nth(1).unwrap().starts_with("1950-01,"));
    assert!(overlay.lines().last().unwrap().starts_with("1952-05,"));
}
