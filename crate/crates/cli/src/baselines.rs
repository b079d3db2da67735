use std::path::Path;

use opinion_bias::bias::eval_dandekar_step;
use opinion_bias::verifier::{check_confirmation, hk_equal_weight_witness, Witness};
use opinion_bias::{BiasFamily, GridSpec, Tolerances};
use serde::Serialize;

use crate::{write_file, Failure};

const X_I: f64 = 0.1;
const X_SAME: f64 = 0.5;
const X_OTHER: f64 = -0.3;

#[derive(Serialize)]
struct EqualWeight {
    family: &'static str,
    params: serde_json::Value,
    /// `(x_i, x_j, x_d)`: `x_j` shares the sign of `x_i`, `x_d` does not.
    witness: [f64; 3],
    c_j: f64,
    c_d: f64,
    item: &'static str,
    item_violations: u64,
    witness_reported: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    band_condition: Option<BandCondition>,
}

#[derive(Serialize)]
struct BandCondition {
    statement: &'static str,
    lhs: f64,
    rhs: f64,
    satisfied: bool,
}

#[derive(Serialize)]
struct Assimilation {
    w_ii: f64,
    w_ij: f64,
    b: f64,
    x_i: f64,
    x_j: [f64; 2],
    coefficients: [f64; 2],
    next: [f64; 2],
    equal_coefficients: bool,
}

#[derive(Serialize)]
struct Baselines {
    linear_symmetric: EqualWeight,
    hk_indicator: EqualWeight,
    biased_assimilation: Assimilation,
}

fn equal_weight(
    family: &'static str,
    params: serde_json::Value,
    fam: &BiasFamily,
    band_condition: Option<BandCondition>,
) -> EqualWeight {
    let grid = GridSpec::new(41).expect("valid resolution");
    let report = check_confirmation(|a, b| fam.value(a, b), &grid, &Tolerances::default());
    let item = report
        .item("7a-2")
        .expect("confirmation reports carry 7a-2");
    let witness_reported = item.witnesses.iter().any(|w| {
        matches!(*w, Witness::Triple { x_i, x_j, x_d, .. } if (x_i, x_j, x_d) == (X_I, X_SAME, X_OTHER))
    });
    EqualWeight {
        family,
        params,
        witness: [X_I, X_SAME, X_OTHER],
        c_j: fam.value(X_I, X_SAME),
        c_d: fam.value(X_I, X_OTHER),
        item: "7a-2",
        item_violations: item.violations,
        witness_reported,
        band_condition,
    }
}

fn compute() -> Result<Baselines, Failure> {
    let internal = |e: &dyn std::fmt::Display| Failure::Config(e.to_string());

    let lin = BiasFamily::linear_symmetric(0.6, 0.5).map_err(|e| internal(&e))?;
    let linear_symmetric = equal_weight(
        "linear-symmetric",
        serde_json::json!({"beta": 0.6, "gamma": 0.5}),
        &lin,
        None,
    );

    let (eps_lo, eps_hi, a) = (-0.5, 0.5, 1.0);
    let hk = BiasFamily::hk_indicator(eps_lo, eps_hi, a).map_err(|e| internal(&e))?;
    let found = hk_equal_weight_witness(eps_lo, eps_hi, a).map_err(|e| internal(&e))?;
    let (xi, xj, xh) = found.triple();
    debug_assert_eq!((xi, xh, xj), (X_I, X_SAME, X_OTHER));
    let dist = (X_I - X_OTHER).abs().max((X_SAME - X_I).abs());
    let rhs = eps_hi.min(-eps_lo);
    let hk_indicator = equal_weight(
        "hk-indicator",
        serde_json::json!({"eps_lo": eps_lo, "eps_hi": eps_hi, "a": a}),
        &hk,
        Some(BandCondition {
            statement: "0.4 < min(eps_hi, -eps_lo)",
            lhs: dist,
            rhs,
            satisfied: dist < rhs,
        }),
    );

    let (w_ii, w_ij, b, x_i) = (1.0, 1.0, 2.0, 0.5);
    let x_j = [0.1, 0.9];
    let lo = eval_dandekar_step(w_ii, w_ij, b, x_i, x_j[0]).map_err(|e| internal(&e))?;
    let hi = eval_dandekar_step(w_ii, w_ij, b, x_i, x_j[1]).map_err(|e| internal(&e))?;
    let biased_assimilation = Assimilation {
        w_ii,
        w_ij,
        b,
        x_i,
        x_j,
        coefficients: [lo.neighbor_coefficient, hi.neighbor_coefficient],
        next: [lo.next, hi.next],
        equal_coefficients: (lo.neighbor_coefficient - hi.neighbor_coefficient).abs() <= 1e-12,
    };

    Ok(Baselines {
        linear_symmetric,
        hk_indicator,
        biased_assimilation,
    })
}

fn print_equal_weight(title: &str, e: &EqualWeight) {
    let [x_i, x_j, x_d] = e.witness;
    println!("{title}");
    println!("  witness (x_i, x_j, x_d) = ({x_i}, {x_j}, {x_d})");
    println!("  c(x_i, x_j) = {:.6}, c(x_i, x_d) = {:.6}", e.c_j, e.c_d);
    println!(
        "  item {}: {} violations on the 41-point grid, witness {}",
        e.item,
        e.item_violations,
        if e.witness_reported {
            "reported"
        } else {
            "not reported"
        }
    );
    if let Some(b) = &e.band_condition {
        println!(
            "  band condition {}: {} < {} is {}",
            b.statement,
            b.lhs,
            b.rhs,
            if b.satisfied {
                "satisfied"
            } else {
                "not satisfied"
            }
        );
    }
}

pub fn run(out: Option<&Path>) -> Result<(), Failure> {
    let b = compute()?;
    print_equal_weight(
        "(a) linear-symmetric beta=0.6 gamma=0.5",
        &b.linear_symmetric,
    );
    print_equal_weight(
        "(b) hk-indicator eps_lo=-0.5 eps_hi=0.5 a=1",
        &b.hk_indicator,
    );
    let d = &b.biased_assimilation;
    println!(
        "(c) biased assimilation w_ii={} w_ij={} b={} x_i={}",
        d.w_ii, d.w_ij, d.b, d.x_i
    );
    for k in 0..2 {
        println!(
            "  x_j = {}: coefficient on x_j = {:.12}, next = {:.12}",
            d.x_j[k], d.coefficients[k], d.next[k]
        );
    }
    println!(
        "  coefficients {}",
        if d.equal_coefficients {
            "equal"
        } else {
            "differ"
        }
    );
    if let Some(path) = out {
        let mut doc = serde_json::to_string_pretty(&b).expect("baselines serialize");
        doc.push('\n');
        write_file(path, &doc)?;
        println!("written to {}", path.display());
    }
    Ok(())
}
