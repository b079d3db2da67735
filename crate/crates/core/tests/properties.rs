use opinion_bias::dynamics::run;
use opinion_bias::export::trajectory_csv;
use opinion_bias::verifier::{check_confirmation, check_negativity, check_theorem1, Status};
use opinion_bias::{
    BiasFamily, ExperimentConfig, GridSpec, InfluenceGraph, ModelConfig, Normalization, Opinion,
    Orientation, RunOptions, Tolerances,
};
use proptest::prelude::*;

/// Hypothesis counts computed on the integer lattice `X = 2k - m`, where
/// every comparison is exact.
fn lattice_counts(r: usize) -> (u64, u64, u64) {
    let m = r as i64 - 1;
    let xs: Vec<i64> = (0..r as i64).map(|k| 2 * k - m).collect();
    let (mut closer, mut equal) = (0, 0);
    for &xi in &xs {
        for &xj in &xs {
            for &xd in &xs {
                if (xj - xi).abs() < (xd - xi).abs() && xj * xd > 0 {
                    closer += 1;
                }
                if (xj - xi).abs() == (xd - xi).abs() && xi * xj > xi * xd {
                    equal += 1;
                }
            }
        }
    }
    (closer, equal, (r as u64 - 1) / 2)
}

fn odd_resolution() -> impl Strategy<Value = usize> {
    (1usize..=12).prop_map(|h| 2 * h + 1)
}

/// A smooth weight with random shape: `p0 + p1 a + p2 b + p3 a b + p4 (a - b)^2`.
fn poly_weight() -> impl Strategy<Value = [f64; 5]> {
    prop::array::uniform5(-1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn checked_counts_match_lattice(r in odd_resolution(), p in poly_weight()) {
        let grid = GridSpec::new(r).unwrap();
        let c = |a: f64, b: f64| p[0] + p[1] * a + p[2] * b + p[3] * a * b + p[4] * (a - b) * (a - b);
        let (closer, equal, neutral) = lattice_counts(r);
        let conf = check_confirmation(c, &grid, &Tolerances::default());
        prop_assert_eq!(conf.item("7a-1").unwrap().checked, closer);
        prop_assert_eq!(conf.item("7a-2").unwrap().checked, equal);
        prop_assert_eq!(conf.item("7b").unwrap().checked, neutral);
        let neg = check_negativity(c, &grid, &Tolerances::default());
        prop_assert_eq!(neg.item("8a-1").unwrap().checked, closer);
        prop_assert_eq!(neg.item("8a-2").unwrap().checked, equal);
        prop_assert_eq!(neg.item("8b").unwrap().checked, neutral);
    }

    #[test]
    fn failing_items_carry_witnesses(r in odd_resolution(), p in poly_weight(), cap in 1usize..5) {
        let grid = GridSpec::new(r).unwrap().with_max_witnesses(cap);
        let c = |a: f64, b: f64| p[0] + p[1] * a + p[2] * b + p[3] * a * b + p[4] * (a - b) * (a - b);
        for rep in [
            check_confirmation(c, &grid, &Tolerances::default()),
            check_negativity(c, &grid, &Tolerances::default()),
        ] {
            for it in &rep.items {
                prop_assert!(it.witnesses.len() <= cap);
                if it.status == Status::Fail {
                    prop_assert!(!it.witnesses.is_empty(), "{} has no witness", it.item);
                }
                prop_assert!(it.violations <= it.checked);
            }
        }
    }

    /// Passing the corrected decomposition conditions implies the
    /// equal-distance and neutrality items of the behavioral check.
    #[test]
    fn corrected_theorem_implies_equal_distance_items(
        lambda in 0.5f64..3.0,
        chi in 0.5f64..1.0,
        gamma in 0.01f64..0.1,
        power in 1i32..4,
    ) {
        let grid = GridSpec::new(21).unwrap();
        let tol = Tolerances::default();
        let f = move |x: f64| (lambda * x).tanh();
        let g = move |d: f64| chi - gamma * d.powi(power);
        let thm = check_theorem1(f, g, &grid, &tol, Orientation::Corrected);
        prop_assume!(thm.all_pass());
        let rep = check_confirmation(|a, b| g((f(a) - f(b)).abs()), &grid, &tol);
        prop_assert!(rep.item("7a-2").unwrap().passed());
        prop_assert!(rep.item("7b").unwrap().passed());
    }

    #[test]
    fn rescaled_runs_stay_convex(
        n in 1usize..7,
        beta in 0.0f64..=1.0,
        alpha_target in 0.0f64..0.99,
        raw in prop::collection::vec(0.0f64..3.0, 36),
        xs in prop::collection::vec(-1.0f64..=1.0, 12),
    ) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| raw[i * 6..i * 6 + n].to_vec()).collect();
        let g = InfluenceGraph::from_rows(rows).unwrap();
        let s = Opinion::vec(&xs[..n]).unwrap();
        let x0 = Opinion::vec(&xs[6..6 + n]).unwrap();
        let conf = BiasFamily::tanh_quadratic(0.6, 0.011).unwrap();
        let neg = BiasFamily::neg_tanh_quadratic(0.1, 0.05).unwrap();
        let model = ModelConfig::new(s, vec![beta; n], conf, neg, Normalization::Rescale { alpha_target }).unwrap();
        let mut opts = RunOptions::new(30, 0.0);
        opts.record_weights = true;
        let t = run(&model, &g, x0, &opts).unwrap();
        for (alphas, w) in t.alphas.iter().zip(t.weights.as_ref().unwrap()) {
            for i in 0..n {
                let total = alphas[i] + w.row(i).iter().sum::<f64>();
                prop_assert!((total - 1.0).abs() <= 1e-12);
                prop_assert!(w.row(i).iter().all(|&c| c >= 0.0));
            }
        }
    }

    #[test]
    fn csv_round_trips_states(xs in prop::collection::vec(-1.0f64..=1.0, 1..6), steps in 0usize..5) {
        let n = xs.len();
        let s = Opinion::vec(&xs).unwrap();
        let conf = BiasFamily::tanh_quadratic(0.6, 0.011).unwrap();
        let neg = BiasFamily::neg_tanh_quadratic(0.1, 0.05).unwrap();
        let model = ModelConfig::new(s.clone(), vec![0.5; n], conf, neg, Normalization::default()).unwrap();
        let t = run(&model, &InfluenceGraph::complete(n).unwrap(), s, &RunOptions::new(steps, 0.0)).unwrap();
        let csv = trajectory_csv(&t);
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        prop_assert_eq!(rows.len(), t.states.len());
        for (row, st) in rows.iter().zip(&t.states) {
            let fields: Vec<&str> = row.split(',').collect();
            prop_assert_eq!(fields.len(), 1 + 2 * n);
            prop_assert_eq!(fields[0].parse::<usize>().unwrap(), st.k);
            for i in 0..n {
                prop_assert_eq!(fields[1 + i].parse::<f64>().unwrap(), st.x[i].get());
            }
        }
    }
}

#[test]
fn experiment_config_round_trips() {
    let text = r#"{
      "graph": {"edge_list": {"path": "g.txt", "n": 3}},
      "model": {
        "s": {"values": [0.1, 0.2, 0.3]},
        "beta": 0.4,
        "confirmation": {"family": "cubic-abs", "params": {"chi": 0.6, "gamma": 0.1}},
        "negativity": {"family": "neg-tanh-quadratic", "params": {"chi": 0.1, "gamma": 0.05}},
        "normalization": {"mode": "strict"},
        "include_self": false
      },
      "x0": {"uniform": {"seed": 12}},
      "run": {"steps": 5, "conv_tol": 0.001, "record_weights": true},
      "output": {"csv": "a.csv", "json": "a.json"}
    }"#;
    let cfg = ExperimentConfig::from_json(text).unwrap();
    let again = ExperimentConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(cfg, again);
    assert_eq!(cfg.model.normalization, Normalization::Strict);
    assert!(!cfg.model.include_self);
}
