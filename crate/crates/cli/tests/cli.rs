use std::path::PathBuf;

use tfbm_cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<&str> = std::iter::once("tfbm").chain(args.iter().copied()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tfbm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const STABLE: &[&str] = &["--family", "stable", "--alpha", "0.6", "--hurst", "0.7"];

#[test]
fn every_eval_quantity_has_a_table_row() {
    let cases: &[(&str, &[&str])] = &[
        ("cov", &["--s", "1"]),
        ("corr", &["--s", "1"]),
        ("var", &[]),
        ("moment", &["--kappa", "1.5"]),
        ("increment-moment", &["--kappa", "2", "--s", "1"]),
        ("increment-cov", &["--v", "3"]),
        ("cov-y", &["--s", "1"]),
        ("abs-increment-moment", &["--m", "1", "--s", "1"]),
    ];
    for &(q, extra) in cases {
        let mut a = vec!["eval", q, "--t", "2"];
        a.extend_from_slice(STABLE);
        a.extend_from_slice(extra);
        let (c, out, err) = run_args(&a);
        assert_eq!(c, EXIT_OK, "{q}: {err}");
        let v: f64 = out.trim().parse().unwrap();

        let mut b = vec!["table", q, "--t-start", "1", "--t-stop", "2", "--t-count", "2"];
        b.extend_from_slice(STABLE);
        let second: Vec<&str> = extra.chunks(2).filter(|p| p[0] == "--s" || p[0] == "--v").map(|p| p[1]).collect();
        if let Some(s) = second.first() {
            b.extend_from_slice(&["--s-values", s]);
        }
        b.extend(extra.chunks(2).filter(|p| p[0] == "--kappa" || p[0] == "--m").flatten());
        let (c, out, err) = run_args(&b);
        assert_eq!(c, EXIT_OK, "table {q}: {err}");
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[0], "quantity,family,params,H,sigma2,t,s,value");
        assert_eq!(rows.len(), 3, "{out}");
        let last: f64 = rows[2].rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(last, v, "{q}: table and eval disagree");
    }
}

#[test]
fn table_rows_follow_grid_order() {
    let (c, out, _) = run_args(&[
        "table", "cov", "--family", "drift", "--mu", "1", "--hurst", "0.5", "--t-start", "1", "--t-stop", "3",
        "--t-count", "3", "--s-values", "0.5,2",
    ]);
    assert_eq!(c, 0);
    let ts: Vec<(&str, &str)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[5], f[6])
        })
        .collect();
    assert_eq!(ts, [("1", "0.5"), ("1", "2"), ("2", "0.5"), ("2", "2"), ("3", "0.5"), ("3", "2")]);
    assert!(out.lines().nth(1).unwrap().starts_with("cov,drift,mu=1,0.5,1,"));
}

#[test]
fn config_file_supplies_flags_and_flags_win() {
    let path = scratch("model.cfg");
    std::fs::write(&path, "# stable campaign\nfamily = stable\nalpha = 0.5\nhurst = 0.5\nt = 4\ns = 1\n").unwrap();
    let p = path.to_str().unwrap();
    let (c, out, err) = run_args(&["eval", "corr", "--config", p]);
    assert_eq!(c, EXIT_OK, "{err}");
    assert_eq!(out, "0.7071067811865476\n");
    let (_, out2, _) = run_args(&["eval", "corr", "--config", p, "--t", "16"]);
    assert_eq!(out2, "0.5\n");

    std::fs::write(&path, "family = stable\nbogus = 1\n").unwrap();
    let (c, _, err) = run_args(&["eval", "var", "--config", p]);
    assert_eq!(c, EXIT_USAGE);
    assert!(err.contains("bogus"));
    let (c, _, _) = run_args(&["eval", "var", "--config", "/nonexistent/tfbm.cfg"]);
    assert_eq!(c, EXIT_USAGE);
}

#[test]
fn table_writes_output_file() {
    let path = scratch("table.csv");
    let (c, out, _) = run_args(&[
        "table", "var", "--family", "stable", "--alpha", "0.5", "--hurst", "0.5", "--t-start", "0.1", "--t-stop",
        "10", "--t-count", "5", "--spacing", "log", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!((c, out.as_str()), (0, ""));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains('\r'));
}

#[test]
fn mc_validate_is_deterministic_and_reports_z() {
    let args = [
        "mc", "validate", "--family", "tempered", "--alpha", "0.5", "--a", "1", "--hurst", "0.7", "--t", "1",
        "--s", "0.5", "--reps", "500", "--seed", "7",
    ];
    let (c1, o1, e1) = run_args(&args);
    let (c2, o2, _) = run_args(&args);
    assert!(c1 == EXIT_OK || c1 == EXIT_FAILURE, "{e1}");
    assert_eq!((c1, &o1), (c2, &o2));
    let header = o1.lines().next().unwrap();
    assert_eq!(header, "quantity,family,params,H,sigma2,t,s,value,mc_mean,mc_se,z,reps,seed");
    let row: Vec<&str> = o1.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 13);
    assert_eq!(&row[11..], ["500", "7"]);
    let z: f64 = row[10].parse().unwrap();
    assert_eq!(c1, if z.abs() <= 3.0 { EXIT_OK } else { EXIT_FAILURE });
}

#[test]
fn mc_usage_errors() {
    let base = ["mc", "validate", "--family", "stable", "--alpha", "0.7", "--hurst", "0.7", "--t", "2", "--s", "1"];
    let mut a = base.to_vec();
    a.extend(["--reps", "1"]);
    assert_eq!(run_args(&a).0, EXIT_USAGE);
    let mut a = base.to_vec();
    a.extend(["--dt", "-1"]);
    assert_eq!(run_args(&a).0, EXIT_USAGE);
}

#[test]
fn asymptotics_reports() {
    let (c, out, err) = run_args(&["asymptotics", "stable", "--alpha", "0.6", "--hurst", "0.8", "--t", "1e4", "--s", "1", "--v", "100"]);
    assert_eq!(c, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "quantity,regime,variable,at,leading_value,leading_exponent,degenerate,terms,description"
    );
    assert_eq!(lines.count(), 3);
    let (c, _, _) = run_args(&["asymptotics", "mixture", "--family", "stable", "--alpha1", "0.3", "--alpha2", "0.7",
        "--c1", "0.5", "--c2", "0.5", "--hurst", "0.5", "--t", "1", "--s", "1"]);
    assert_eq!(c, EXIT_USAGE);
}

#[test]
fn printed_numbers_round_trip() {
    for &t in &["0.1", "3", "1e-7", "123.456"] {
        let (_, out, _) = run_args(&["eval", "var", "--family", "tempered", "--alpha", "0.4", "--a", "2", "--hurst", "0.3", "--t", t]);
        let v: f64 = out.trim().parse().unwrap();
        assert_eq!(tfbm_cli::fmt_num(v), out.trim());
    }
}

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn fuzz_seeds_hold_their_invariants() {
    for text in seeds("spec_kv") {
        if let Ok(spec) = text.parse::<tfbm::SubordinatorSpec>() {
            assert_eq!(spec.to_string().parse::<tfbm::SubordinatorSpec>().unwrap(), spec);
        }
    }
    let ok = seeds("config_file").iter().filter(|t| tfbm_cli::config::parse_config(t).is_ok()).count();
    assert_eq!(ok, 3);
    for text in seeds("cli_args") {
        let argv: Vec<&str> = std::iter::once("tfbm").chain(text.split('\0')).collect();
        tfbm_cli::parse_invocation(argv).unwrap();
    }
}
