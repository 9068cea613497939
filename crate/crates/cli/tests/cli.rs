use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use chancap::capacity::sequence::half_plus;
use chancap::capacity::{capacity_point, fig3_p, fig4_lambda};
use chancap::wiretap::{fig6_lambda, one_way_secrecy_capacity, two_way_secrecy_capacity};

fn chancap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chancap"))
        .args(args)
        .env_remove("CHANCAP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn meta_value(text: &str, key: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_string))
}

/// Data rows as (header, rows) with empty cells as `None`.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| {
            r.unwrap()
                .iter()
                .map(|c| if c.is_empty() { None } else { c.parse().ok() })
                .collect()
        })
        .collect();
    (header, rows)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn verify_lists_every_check_and_passes() {
    let o = chancap(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let passes = text.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(passes >= 25);
    assert!(!text.lines().any(|l| l.starts_with("FAIL ")));
}

#[test]
fn verify_filter_runs_one_group() {
    let o = chancap(&["verify", "--only", "degradable"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(names, ["degrading_map_grid", "rejects_above_half"]);
}

#[test]
fn corrupted_degrading_map_fails_verification() {
    let o = chancap(&["verify", "--only", "degradable", "--mutate", "flag-mixing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL degrading_map_grid"));
}

#[test]
fn unknown_filter_is_a_usage_error() {
    assert_eq!(chancap(&["verify", "--only", "no_such_check"]).status.code(), Some(2));
}

#[test]
fn fig3_sweep_first_row() {
    let o = chancap(&["sweep", "--scenario", "fig3", "--points", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["x", "lambda", "p", "one_way", "two_way", "lower_bound", "upper_bound"]);
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0][0], Some(0.25));
    assert!(close(rows[0][3].unwrap(), 0.5, 1e-15));
    assert!(close(rows[0][4].unwrap(), 0.75, 1e-15));
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
}

#[test]
fn fig6_sweep_last_row() {
    let o = chancap(&["sweep", "--scenario", "fig6", "--points", "100"]);
    let text = stdout(&o);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["x", "lambda", "p", "one_way", "two_way"]);
    let last = rows.last().unwrap();
    assert_eq!(last[2], Some(1.0));
    assert!(close(last[3].unwrap(), 0.806574, 1e-6));
    assert!(close(last[4].unwrap(), 0.806574, 1e-6));
    let crossover: f64 = meta_value(&text, "one_way_crossover_p").unwrap().parse().unwrap();
    assert!(close(crossover, 0.8687, 1e-4));
}

#[test]
fn custom_sweep_above_half_reports_bounds_only() {
    let o = chancap(&[
        "sweep", "--scenario", "custom", "--lambda-min", "0.5", "--lambda-max", "1", "--p", "0.1", "--points", "11",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout(&o));
    for row in &rows[1..] {
        assert_eq!(row[3], None);
        assert!(row[5].is_some() && row[6].is_some());
    }
}

#[test]
fn custom_sweep_needs_one_fixed_parameter() {
    assert_eq!(chancap(&["sweep", "--scenario", "custom"]).status.code(), Some(2));
    assert_eq!(
        chancap(&["sweep", "--scenario", "custom", "--p", "0.1", "--lambda", "0.2"]).status.code(),
        Some(2)
    );
}

#[test]
fn fig4_metadata_records_log_base() {
    let o = chancap(&["sweep", "--scenario", "fig4", "--points", "10"]);
    let text = stdout(&o);
    assert!(meta_value(&text, "log_base_note").unwrap().contains("log2(1/p)"));
    assert_eq!(meta_value(&text, "tool_version").unwrap(), chancap::VERSION);
}

#[test]
fn sweep_csv_round_trips_against_formulas() {
    let rel = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-15 * a.abs().max(b.abs());
    for (scenario, wiretap) in [("fig3", false), ("fig4", false), ("fig6", true)] {
        let (_, rows) = parse_csv(&stdout(&chancap(&["sweep", "--scenario", scenario, "--points", "37"])));
        for row in rows {
            let (x, lambda, p) = (row[0].unwrap(), row[1].unwrap(), row[2].unwrap());
            if wiretap {
                assert!(rel(lambda, fig6_lambda(x)));
                assert!(rel(row[3].unwrap(), one_way_secrecy_capacity(lambda, p).unwrap()));
                assert!(rel(row[4].unwrap(), two_way_secrecy_capacity(lambda).unwrap()));
            } else {
                let expected = match scenario {
                    "fig3" => {
                        assert!(rel(p, fig3_p(x).clamp(0.0, 1.0)));
                        capacity_point(x, x, p).unwrap()
                    }
                    _ => {
                        assert!(rel(lambda, fig4_lambda(x)));
                        capacity_point(x, lambda, p).unwrap()
                    }
                };
                assert!(rel(row[3].unwrap(), expected.one_way.unwrap()));
                assert!(rel(row[4].unwrap(), expected.two_way));
                assert!(rel(row[5].unwrap(), expected.lower_bound));
                assert!(rel(row[6].unwrap(), expected.upper_bound));
            }
        }
    }
}

#[test]
fn json_sweep_has_meta_and_rows() {
    let o = chancap(&["sweep", "--scenario", "fig3", "--points", "5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["meta"]["scenario"], "fig3");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["x"], 0.25);
    assert_eq!(rows[0]["one_way"], 0.5);
}

#[test]
fn seq_five_terms() {
    let o = chancap(&["seq", "--terms", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["n", "x_n", "q_lb", "q_ub", "q_two_way"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
    let b_star: f64 = meta_value(&text, "b_star").unwrap().parse().unwrap();
    assert!(b_star > 1e-4 && b_star < 2e-4);
    let quoted: f64 = meta_value(&text, "quoted_endpoint").unwrap().parse().unwrap();
    assert_eq!(quoted, 2e-4);
}

#[test]
fn seq_single_term_solves_the_bound_equation() {
    let (_, rows) = parse_csv(&stdout(&chancap(&["seq", "--terms", "1"])));
    let x1 = rows[0][1].unwrap();
    let t = 2.0 * x1;
    let target = half_plus::lower(half_plus::DEFAULT_CAP.min(half_plus::crossing()));
    assert!(half_plus::upper(t) <= target);
    assert!((half_plus::upper(t) - target).abs() <= 1e-9 * target);
}

#[test]
fn seq_empty_interval_is_a_precondition_error() {
    let o = chancap(&["seq", "--cap=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition"));
}

#[test]
fn simulate_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = chancap(&["simulate", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);

    let text = String::from_utf8(ta).unwrap();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["kind", "lambda", "p", "uses", "seed", "estimate", "std_error", "target"]
    );
    for rec in reader.records() {
        let rec = rec.unwrap();
        let num = |i: usize| rec[i].parse::<f64>().unwrap();
        match &rec[0] {
            "quantum_two_way" | "wiretap_feedback" => {
                assert_eq!(&rec[3], "100000");
                assert!((num(5) - num(7)).abs() <= 3.0 * num(6));
            }
            "wiretap_leakage" => assert!(num(5) <= 1e-2),
            other => panic!("unexpected kind {other}"),
        }
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_chancap"));
        cmd.args(["simulate", "--uses", "1000"]).env_remove("CHANCAP_SEED");
        if let Some(s) = seed {
            cmd.env("CHANCAP_SEED", s);
        }
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    let from_env = run(Some("99"));
    assert!(from_env.contains(",1000,99,"));
    assert_eq!(from_env, stdout(&chancap(&["simulate", "--uses", "1000", "--seed", "99"])));
    assert!(run(None).contains(",1000,7,"));
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# custom sweep\nscenario = custom\np = 0.1\nlambda_min = 0.2\nlambda_max = 0.4\npoints = 3\n").unwrap();
    let o = chancap(&["sweep", "--config", cfg.to_str().unwrap(), "--points", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], Some(0.2));
    assert_eq!(rows[4][0], Some(0.4));
    assert_eq!(rows[0][2], Some(0.1));
}

#[test]
fn plot_script_sits_next_to_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig3.csv");
    let o = chancap(&["sweep", "--points", "4", "--out", out.to_str().unwrap(), "--emit-plot-script"]);
    assert_eq!(o.status.code(), Some(0));
    let script = fs::read_to_string(dir.path().join("fig3.gp")).unwrap();
    assert!(script.contains("'fig3.csv' using 1:4"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let target = Path::new("/nonexistent-dir/out.csv");
    let o = chancap(&["sweep", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
