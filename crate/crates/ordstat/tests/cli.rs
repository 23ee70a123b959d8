//! End-to-end tests of the `ordstat` binary: argument handling, the CSV/JSON
//! contracts on stdout, stderr reporting for skipped cells, and determinism
//! across reruns and thread counts.

use ordstat::output;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordstat"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = binary()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

const SMALL_SWEEP: &[&str] = &[
    "sweep",
    "--family",
    "exponential",
    "--beta",
    "1",
    "--n-grid",
    "10,100",
    "--mc-runs",
    "200",
    "--seed",
    "42",
];

#[test]
fn sweep_emits_one_row_per_cell() {
    let out = run(SMALL_SWEEP);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let records = output::parse_csv(&stdout_str(&out)).unwrap();
    assert_eq!(records.len(), 8); // 4 applicable estimators x 2 sample sizes
    for r in &records {
        assert_eq!(r.family.name(), "exponential");
        assert_eq!(r.mc_runs, 200);
        assert_eq!(r.seed, 42);
        assert!(r.analytic_mse.is_some());
        assert!(r.emp_mse.is_finite());
    }
    let names: Vec<&str> = records.iter().map(|r| r.estimator.name()).collect();
    assert_eq!(
        names,
        [
            "blue",
            "blue",
            "unbiased-known",
            "unbiased-known",
            "unbiased-unknown",
            "unbiased-unknown",
            "min",
            "min"
        ]
    );
    let ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    assert_eq!(ns, [10, 100, 10, 100, 10, 100, 10, 100]);
}

#[test]
fn sweep_output_is_reproducible_and_thread_independent() {
    let first = run(SMALL_SWEEP);
    let second = run(SMALL_SWEEP);
    assert_eq!(first.stdout, second.stdout);
    let one = binary()
        .args(SMALL_SWEEP)
        .env("ORDSTAT_THREADS", "1")
        .output()
        .unwrap();
    let four = binary()
        .args(SMALL_SWEEP)
        .env("ORDSTAT_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(one.stdout, first.stdout);
    assert_eq!(four.stdout, first.stdout);
}

#[test]
fn sweep_reports_skipped_cells_on_stderr_and_keeps_going() {
    let out = run(&[
        "sweep",
        "--family",
        "weibull",
        "--beta",
        "1",
        "--alpha",
        "5",
        "--estimator",
        "unbiased-unknown",
        "--estimator",
        "min",
        "--n-grid",
        "5",
        "--mc-runs",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records = output::parse_csv(&stdout_str(&out)).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].estimator.name(), "min");
    let err = stderr_str(&out);
    assert!(
        err.contains("skipped family=weibull estimator=unbiased-unknown n=5"),
        "stderr: {err}"
    );
}

#[test]
fn draw_mode_conflicts_with_fixed_scale_flags() {
    let out = run(&[
        "sweep",
        "--family",
        "uniform",
        "--draw",
        "--beta",
        "3",
        "--n-grid",
        "5",
        "--mc-runs",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(2)); // usage error
}

#[test]
fn draw_mode_keeps_the_mixing_weight_and_blanks_theta() {
    let out = run(&[
        "sweep",
        "--family",
        "mixture",
        "--draw",
        "--alpha",
        "0.7",
        "--n-grid",
        "5,10",
        "--mc-runs",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let records = output::parse_csv(&text).unwrap();
    assert_eq!(records.len(), 6); // blue, min, mixture-rank x 2 sample sizes
    for r in &records {
        assert!(r.theta.is_none());
    }
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(&cols[5..8], ["NA", "NA", "NA"], "theta columns: {line}");
    }
}

#[test]
fn table_reproduces_single_sample_pareto_values() {
    let out = run(&[
        "table",
        "--family",
        "pareto",
        "--beta",
        "6",
        "--alpha",
        "2.5",
        "--n-grid",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,estimator,n,beta,alpha,sigma,analytic_bias,analytic_mse,asymptotic"
    );
    let mut seen = Vec::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 9);
        assert_eq!(cols[0], "pareto");
        let bias: f64 = cols[6].parse().unwrap();
        let mse: f64 = cols[7].parse().unwrap();
        assert_eq!(cols[8], "false");
        seen.push((cols[1].to_string(), bias, mse));
    }
    assert_eq!(
        seen,
        [
            ("blue".to_string(), 0.0, 80.0),
            ("unbiased-known".to_string(), 0.0, 80.0),
            ("min".to_string(), 10.0, 180.0),
        ]
    );
}

#[test]
fn table_marks_asymptotic_cells_and_unavailable_values() {
    let out = run(&[
        "table",
        "--family",
        "exponential",
        "--family",
        "mixture",
        "--beta",
        "5",
        "--alpha",
        "0.5",
        "--sigma",
        "8",
        "--n-grid",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let mut exp_unknown = None;
    let mut mix_rank = None;
    for line in text.lines().skip(1) {
        let cols: Vec<String> = line.split(',').map(str::to_string).collect();
        match (cols[0].as_str(), cols[1].as_str()) {
            ("exponential", "unbiased-unknown") => exp_unknown = Some(cols),
            ("mixture", "mixture-rank") => mix_rank = Some(cols),
            _ => {}
        }
    }
    let exp_unknown = exp_unknown.expect("exponential unbiased-unknown row");
    assert_eq!(exp_unknown[8], "true");
    let mse: f64 = exp_unknown[7].parse().unwrap();
    assert!((mse - 25.0 * 11.0 / 810.0).abs() < 1e-12);
    let mix_rank = mix_rank.expect("mixture mixture-rank row");
    assert_eq!(&mix_rank[6..9], ["NA", "NA", "false"]);
}

#[test]
fn estimate_matches_hand_computed_values() {
    let known = run_with_stdin(
        &[
            "estimate",
            "--estimator",
            "unbiased-known",
            "--family",
            "exponential",
            "--beta",
            "3",
        ],
        "2\n5\n8\n",
    );
    assert_eq!(known.status.code(), Some(0), "stderr: {}", stderr_str(&known));
    assert_eq!(stdout_str(&known).trim().parse::<f64>().unwrap(), 1.0);

    let unknown = run_with_stdin(
        &[
            "estimate",
            "--estimator",
            "unbiased-unknown",
            "--family",
            "uniform",
        ],
        "0\n1\n2\n",
    );
    assert_eq!(stdout_str(&unknown).trim().parse::<f64>().unwrap(), -1.0);

    let min = run_with_stdin(&["estimate", "--estimator", "min"], "5\n");
    assert_eq!(stdout_str(&min).trim().parse::<f64>().unwrap(), 5.0);

    // rank floor(5 * 0.5 / 2) + 1 = 2: the second smallest value
    let rank = run_with_stdin(
        &["estimate", "--estimator", "mixture-rank", "--alpha", "0.5"],
        "9\n1\n4\n7\n2\n",
    );
    assert_eq!(stdout_str(&rank).trim().parse::<f64>().unwrap(), 2.0);
}

#[test]
fn estimate_reads_from_a_file_and_skips_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample.txt");
    std::fs::write(&path, "# three measurements\n2\n\n5\n8\n").unwrap();
    let out = run(&[
        "estimate",
        "--estimator",
        "blue",
        "--family",
        "exponential",
        "--beta",
        "3",
        "--in",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    // mean 5 minus the exponential mean 3
    assert_eq!(stdout_str(&out).trim().parse::<f64>().unwrap(), 2.0);
}

#[test]
fn estimate_errors_use_the_documented_exit_codes() {
    // runtime failure: the family needs a scale that was not given
    let missing = run_with_stdin(
        &[
            "estimate",
            "--estimator",
            "unbiased-known",
            "--family",
            "exponential",
        ],
        "2\n",
    );
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr_str(&missing).starts_with("error:"));

    // usage failure: not an estimator name
    let bogus = run_with_stdin(&["estimate", "--estimator", "median"], "2\n");
    assert_eq!(bogus.status.code(), Some(2));

    // runtime failure: unparseable measurement line
    let garbled = run_with_stdin(&["estimate", "--estimator", "min"], "five\n");
    assert_eq!(garbled.status.code(), Some(1));
    assert!(stderr_str(&garbled).starts_with("error:"));
}

#[test]
fn ecdf_stays_in_support_and_reaches_one() {
    let args = [
        "ecdf", "--family", "uniform", "--beta", "50", "--n", "100", "--seed", "7",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "value,cumprob");
    let steps: Vec<(f64, f64)> = lines
        .map(|l| {
            let (v, p) = l.split_once(',').unwrap();
            (v.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    assert_eq!(steps.len(), 100);
    assert!(steps.iter().all(|&(v, _)| (0.0..=50.0).contains(&v)));
    assert!(steps.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
    assert_eq!(steps.last().unwrap().1, 1.0);
    let again = run(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn ecdf_draw_mode_respects_the_hyper_ranges() {
    let out = run(&[
        "ecdf", "--family", "uniform", "--draw", "--n", "200", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let max = stdout_str(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse::<f64>().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(max <= 50.0, "draw-mode uniform value {max} above the cap");
}

#[test]
fn ecdf_json_is_a_parsable_array() {
    let out = run(&[
        "ecdf", "--family", "rayleigh", "--beta", "5", "--n", "32", "--seed", "1",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let steps = value.as_array().unwrap();
    assert_eq!(steps.len(), 32);
    assert_eq!(steps.last().unwrap()["cumprob"].as_f64().unwrap(), 1.0);
    assert!(steps[0]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.csv");
    let mut args: Vec<&str> = SMALL_SWEEP.to_vec();
    args.extend(["--out", path.to_str().unwrap()]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    assert!(out.stdout.is_empty());
    let records = output::parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(records.len(), 8);
}

#[test]
fn sweep_json_mirrors_the_csv_records() {
    let mut args: Vec<&str> = SMALL_SWEEP.to_vec();
    args.extend(["--format", "json"]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let csv = run(SMALL_SWEEP);
    let records = output::parse_csv(&stdout_str(&csv)).unwrap();
    for (row, record) in rows.iter().zip(&records) {
        assert_eq!(row["family"].as_str().unwrap(), record.family.name());
        assert_eq!(row["estimator"].as_str().unwrap(), record.estimator.name());
        assert_eq!(row["n"].as_u64().unwrap() as usize, record.n);
        assert_eq!(row["emp_mse"].as_f64().unwrap(), record.emp_mse);
        assert!(row["sigma"].is_null());
    }
}

#[test]
fn sweep_shows_the_mixture_rank_jump_at_two_hundred() {
    // with a 1% normal component the picked rank switches from the minimum
    // to the second order statistic at n = 200, and the MSE jumps with it
    let out = run(&[
        "sweep",
        "--family",
        "mixture",
        "--alpha",
        "0.01",
        "--sigma",
        "8",
        "--beta",
        "60",
        "--n-grid",
        "199,200",
        "--mc-runs",
        "2000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let records = output::parse_csv(&stdout_str(&out)).unwrap();
    let cell = |name: &str, n: usize| {
        records
            .iter()
            .find(|r| r.estimator.name() == name && r.n == n)
            .expect("cell present")
            .emp_mse
    };
    // below the switch the picked rank is 1, so the two estimators coincide
    // on the shared draws; above it they part ways and the rank estimator
    // sheds the minimum's heavy lower tail
    assert_eq!(cell("mixture-rank", 199), cell("min", 199));
    assert_ne!(cell("mixture-rank", 200), cell("min", 200));
    let drop = cell("mixture-rank", 199) - cell("mixture-rank", 200);
    assert!(
        drop > 20.0,
        "mse at 199: {}, at 200: {}",
        cell("mixture-rank", 199),
        cell("mixture-rank", 200)
    );
}

#[test]
fn malformed_n_grid_is_a_runtime_error() {
    let out = run(&[
        "sweep",
        "--family",
        "uniform",
        "--beta",
        "3",
        "--n-grid",
        "abc",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).starts_with("error:"));
}
