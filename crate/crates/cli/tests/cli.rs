use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opinion-bias"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn simulate(config: &Path, out: &Path) -> Output {
    run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ])
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

/// Two-agent oracle: `0.1 + 0.8 (0.6 - w) 0.5 / (0.6 + w)` with `w` the
/// cross weight, tanh written out through exponentials.
fn antisymmetric_oracle() -> f64 {
    let t = |x: f64| (x.exp() - (-x).exp()) / (x.exp() + (-x).exp());
    let w = 0.6 - 0.011 * (t(0.5) - t(-0.5)).powi(2);
    0.1 + 0.8 * (0.6 - w) * 0.5 / (0.6 + w)
}

#[test]
fn simulate_antisymmetric_first_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&fixture("antisymmetric.json"), dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&dir.path().join("trajectory.csv"));
    assert_eq!(rows[0], ["k", "x_0", "x_1", "alpha_0", "alpha_1"]);
    assert_eq!(rows.len(), 22);
    let row1 = &rows[2];
    assert_eq!(row1[0], "1");
    let x0: f64 = row1[1].parse().unwrap();
    let x1: f64 = row1[2].parse().unwrap();
    assert!((x0 - antisymmetric_oracle()).abs() < 1e-9);
    assert!((x1 + antisymmetric_oracle()).abs() < 1e-9);
    assert_eq!(row1[3].parse::<f64>().unwrap(), 0.2);
    // the last state has no outgoing resistance
    assert_eq!(&rows[21][3..], ["", ""]);

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("trajectory.json")).unwrap())
            .unwrap();
    assert_eq!(json["config"]["model"]["beta"], 1.0);
    assert_eq!(json["trajectory"]["states"].as_array().unwrap().len(), 21);
}

#[test]
fn simulate_zero_steps_writes_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&fixture("zero_steps.json"), dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&dir.path().join("trajectory.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0], "0");
}

#[test]
fn simulate_missing_edge_list_names_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&fixture("missing_edges.json"), dir.path());
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("no-such-edges.txt"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn simulate_missing_config_and_bad_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&dir.path().join("absent.json"), dir.path());
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("absent.json"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"graph": {}, "x0": "generator"}"#).unwrap();
    assert_eq!(code(&simulate(&bad, dir.path())), 1);
}

#[test]
fn simulate_strict_infeasibility_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&fixture("strict_infeasible.json"), dir.path());
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("strict"), "{}", stderr(&out));
}

#[test]
fn simulate_is_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = simulate(&fixture("generated.json"), d.path());
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    for f in ["gen.csv", "gen.json"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
        assert!(!x.contains(&b'\r'));
    }
}

#[test]
fn simulate_batch_writes_per_config_dirs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "simulate",
        "--config",
        fixture("antisymmetric.json").to_str().unwrap(),
        "--config",
        fixture("generated.json").to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.path().join("antisymmetric/trajectory.csv").exists());
    assert!(dir.path().join("generated/gen.csv").exists());

    let single = tempfile::tempdir().unwrap();
    simulate(&fixture("generated.json"), single.path());
    assert_eq!(
        std::fs::read(single.path().join("gen.csv")).unwrap(),
        std::fs::read(dir.path().join("generated/gen.csv")).unwrap()
    );

    let out = run(&[
        "simulate",
        "--config",
        fixture("antisymmetric.json").to_str().unwrap(),
        "--config",
        fixture("strict_infeasible.json").to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

fn check(
    family: &str,
    params: &str,
    which: &str,
    extra: &[&str],
    out: &Path,
) -> (i32, serde_json::Value) {
    let mut args = vec![
        "check",
        "--family",
        family,
        "--params",
        params,
        "--which",
        which,
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let o = run(&args);
    let report = std::fs::read_to_string(out)
        .ok()
        .map(|s| serde_json::from_str(&s).unwrap())
        .unwrap_or(serde_json::Value::Null);
    (code(&o), report)
}

fn item<'a>(report: &'a serde_json::Value, id: &str) -> &'a serde_json::Value {
    report["items"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["item"] == id)
        .unwrap_or_else(|| panic!("no item {id}"))
}

#[test]
fn check_linear_symmetric_reports_equal_weight_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (c, rep) = check(
        "linear-symmetric",
        "beta=0.6,gamma=0.5",
        "confirmation",
        &[],
        &out,
    );
    assert_eq!(c, 3);
    let it = item(&rep, "7a-2");
    assert_eq!(it["status"], "fail");
    let found =
        it["witnesses"].as_array().unwrap().iter().any(|w| {
            w["x_i"] == 0.1 && w["x_j"] == 0.5 && w["x_d"] == -0.3 && w["c_j"] == w["c_d"]
        });
    assert!(found);
}

#[test]
fn check_tanh_quadratic_confirmation_status_follows_report() {
    // 7a-1 has straddling counterexamples for this family, so the command
    // reports failure; see the verifier's 7a-1 regression tests.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (c, rep) = check(
        "tanh-quadratic",
        "chi=0.6,gamma=0.011",
        "confirmation",
        &["--resolution", "41"],
        &out,
    );
    assert_eq!(rep["resolution"], 41);
    for id in ["7a-2", "7a-3-existence", "7b"] {
        assert_eq!(item(&rep, id)["status"], "pass", "{id}");
    }
    assert_eq!(item(&rep, "7a-1")["violations"], 86);
    assert_eq!(c, 3);
}

#[test]
fn check_cubic_theorem1_orientations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (c, rep) = check(
        "cubic-abs",
        "chi=0.6,gamma=0.1",
        "theorem1",
        &["--orientation", "as-written"],
        &out,
    );
    assert_eq!(c, 0);
    assert_eq!(rep["orientation"], "as-written");
    let (c, rep) = check(
        "cubic-abs",
        "chi=0.6,gamma=0.1",
        "theorem1",
        &["--orientation", "corrected"],
        &out,
    );
    assert_eq!(c, 3);
    assert_eq!(item(&rep, "11c")["status"], "fail");
}

#[test]
fn check_usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(
        check(
            "tanh-quadratic",
            "chi=0.6,gamma=0.5",
            "confirmation",
            &[],
            &out
        )
        .0,
        1
    );
    assert_eq!(
        check("tanh-quadratic", "chi=0.6", "confirmation", &[], &out).0,
        1
    );
    assert_eq!(
        check(
            "tanh-quadratic",
            "chi=0.6,gamma=0.01",
            "confirmation",
            &["--resolution", "40"],
            &out
        )
        .0,
        1
    );
    assert_eq!(
        check(
            "hk-indicator",
            "eps_lo=-0.5,eps_hi=0.5,a=1",
            "theorem1",
            &[],
            &out
        )
        .0,
        1
    );
    assert_eq!(
        check(
            "tanh-quadratic",
            "chi=0.6,gamma=0.01",
            "nonsense",
            &[],
            &out
        )
        .0,
        1
    );
    assert!(!out.exists());
}

#[test]
fn surface_rows_and_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let args = |res: &str| {
        run(&[
            "surface",
            "--family",
            "tanh-quadratic",
            "--params",
            "chi=0.6,gamma=0.011",
            "--resolution",
            res,
            "--out",
            out.to_str().unwrap(),
        ])
    };
    assert_eq!(code(&args("41")), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["x_i", "x_j", "c"]);
    assert_eq!(rows.len(), 1682);
    let lookup = |a: f64, b: f64| -> f64 {
        rows[1..]
            .iter()
            .find(|r| r[0].parse::<f64>().unwrap() == a && r[1].parse::<f64>().unwrap() == b)
            .map(|r| r[2].parse().unwrap())
            .unwrap()
    };
    assert!((lookup(0.2, 0.8) - 0.59760).abs() < 5e-6);
    assert_eq!(lookup(0.0, 0.5), lookup(0.0, -0.5));

    assert_eq!(code(&args("2")), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    assert_eq!(
        rows[1][..2],
        ["-1.0000000000000000e0", "-1.0000000000000000e0"]
    );

    assert_eq!(code(&args("1")), 1);
    let bad = run(&[
        "surface",
        "--family",
        "cubic-abs",
        "--params",
        "chi=0.6,gamma=0.1",
        "--resolution",
        "5",
        "--out",
        dir.path().join("s.csv/inside").to_str().unwrap(),
    ]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn baselines_print_and_serialize() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = run(&["baselines", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.matches("(0.1, 0.5, -0.3)").count(), 2);
    assert!(text.contains("0.4 < min(eps_hi, -eps_lo): 0.4 < 0.5 is satisfied"));

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["linear_symmetric", "hk_indicator"] {
        assert_eq!(doc[key]["witness"], serde_json::json!([0.1, 0.5, -0.3]));
        assert_eq!(doc[key]["witness_reported"], true);
        assert_eq!(doc[key]["c_j"], doc[key]["c_d"]);
    }
    assert_eq!(doc["hk_indicator"]["band_condition"]["satisfied"], true);
    let d = &doc["biased_assimilation"];
    for k in 0..2 {
        assert!((d["coefficients"][k].as_f64().unwrap() - 0.2).abs() < 1e-12);
    }
    assert!((d["next"][0].as_f64().unwrap() - 0.42).abs() < 1e-12);
    assert!((d["next"][1].as_f64().unwrap() - 0.58).abs() < 1e-12);
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&[])), 1);
}
