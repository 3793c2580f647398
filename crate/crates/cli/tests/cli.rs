use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dampedosc"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse(csv: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn point_with_defaults() {
    let o = run(&["point"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = parse(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!(r[column(&h, "T")], 0.05);
    assert!(r[column(&h, "Q_M")] > 0.0);
    assert!(r[column(&h, "dS_M")] < 0.0);
    assert!(r[column(&h, "Q_C")] < 0.0);
    assert!(r[column(&h, "dS_C")] > 0.0);
    assert!(r[column(&h, "Delta")] < 0.0);
}

#[test]
fn zero_temperature_is_a_usage_error_without_exact_limit() {
    let o = run(&["point", "--temperature", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--exact-limit"));

    let o = run(&["point", "--temperature", "0", "--exact-limit"]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    assert!(rows[0][column(&h, "v")] > 0.5);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["point", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["figure1", "--tmin", "5", "--tmax", "1"]).status.code(), Some(2));
    assert_eq!(run(&["launch"]).status.code(), Some(2));
    assert_eq!(run(&["point", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--n-bath", "4"]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_one() {
    // a double characteristic frequency at 1 (with the third at 8)
    let o = run(&[
        "point", "--mass", "10", "--mass1", "10.5", "--omega", "0.894427190999916",
        "--eta", "16.2", "--omega-d", "10",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn figure1_grid_and_signs() {
    let o = run(&["figure1", "--tpoints", "20"]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    assert_eq!(h, ["T", "Delta_M_exact", "Delta_exact", "Delta_lowT"]);
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[0][0], 0.01);
    assert_eq!(rows[19][0], 10.0);
    assert!(rows[0][1] > 0.0);
    assert!(rows.iter().all(|r| r[2] < 0.0));
}

#[test]
fn figure2_is_finite_at_high_temperature() {
    let o = run(&["figure2", "--tmin", "1", "--tmax", "100", "--tpoints", "15"]);
    assert!(o.status.success());
    let (_, rows) = parse(&stdout(&o));
    assert!(rows.iter().flatten().all(|x| x.is_finite()));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = run(&["sweep", "--tpoints", "12", "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().filter(|l| l.starts_with('T')).count(), 1);
    // 15 significant digits in scientific notation
    let cell = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.replace('.', "").len(), 15);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# moderate coupling\neta = 0\ntemperature = 0.3\nomega = 2\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    // file alone: uncoupled oscillator with ω = 2
    let (h, rows) = parse(&stdout(&run(&["point", "--config", cfg])));
    let r = &rows[0];
    assert_eq!(r[column(&h, "T")], 0.3);
    assert_eq!(r[column(&h, "dH")], 0.0);
    let c = (1.0f64 / 0.3).tanh().recip();
    assert!((r[column(&h, "U")] - c).abs() < 1e-12);

    // flag overrides the file
    let (h, rows) = parse(&stdout(&run(&["point", "--config", cfg, "--omega", "1"])));
    let c = (0.5f64 / 0.3).tanh().recip();
    assert!((rows[0][column(&h, "U")] - 0.5 * c).abs() < 1e-12);

    fs::write(dir.path().join("bad.cfg"), "nonsense\n").unwrap();
    let bad = dir.path().join("bad.cfg");
    assert_eq!(run(&["point", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.cfg");
    assert_eq!(run(&["point", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.svg");
    let o = run(&[
        "figure2",
        "--tpoints",
        "30",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 4);
    for name in ["Q_C", "dS_C", "Q_M", "dS_M"] {
        assert!(svg.contains(&format!(">{name}<")));
    }
}

#[test]
fn oracle_ladder_converges() {
    let o = run(&[
        "oracle",
        "--preset",
        "moderate",
        "--n-bath",
        "400",
        "--temperature",
        "0.5",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = parse(&stdout(&o));
    let ns: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(ns, [50.0, 100.0, 200.0, 400.0]);
    for name in ["q2_rel_err", "p2_rel_err", "F_rel_err"] {
        let i = column(&h, name);
        assert!(rows.windows(2).all(|w| w[1][i] < w[0][i]), "{name}");
    }
}

#[test]
fn uncoupled_oracle_rows_are_exact() {
    let o = run(&[
        "oracle", "--preset", "moderate", "--eta", "0", "--n-bath", "32", "--temperature", "0.2,1",
    ]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    assert_eq!(rows.len(), 8);
    for name in ["q2_rel_err", "p2_rel_err", "F_rel_err"] {
        let i = column(&h, name);
        assert!(rows.iter().all(|r| r[i] <= 1e-10));
    }
}
