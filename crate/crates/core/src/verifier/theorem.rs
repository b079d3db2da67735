//! Checks on the `(f, g)` decomposition `c(a, b) = g(|f(a) - f(b)|)`.

use super::grid::GridSpec;
use super::report::{ConditionReport, ItemBuilder, Witness};
use super::{Orientation, Tolerances};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Monotone {
    Decreasing,
    Increasing,
}

struct Ids {
    g: &'static str,
    f: &'static str,
    upper: &'static str,
    lower: &'static str,
    neutral: &'static str,
}

/// Conditions under which a decomposed weight encodes confirmation bias:
/// `11a` g strictly decreasing in distance, `11b` f strictly increasing,
/// `11c`/`11d` midpoint inequalities (direction set by `orientation`),
/// `11e` `f(0) = (f(a) + f(-a)) / 2`.
pub fn check_theorem1(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
    orientation: Orientation,
) -> ConditionReport {
    let ids = Ids {
        g: "11a",
        f: "11b",
        upper: "11c",
        lower: "11d",
        neutral: "11e",
    };
    check(
        &f,
        &g,
        grid,
        tol,
        orientation,
        Monotone::Decreasing,
        ids,
        "theorem1",
    )
}

/// Negativity counterpart of [`check_theorem1`]: `12a` requires `g` strictly
/// increasing in distance; `12b`–`12e` mirror `11b`–`11e` with the sensed
/// expectation in place of `x_i`.
pub fn check_theorem2(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
    orientation: Orientation,
) -> ConditionReport {
    let ids = Ids {
        g: "12a",
        f: "12b",
        upper: "12c",
        lower: "12d",
        neutral: "12e",
    };
    check(
        &f,
        &g,
        grid,
        tol,
        orientation,
        Monotone::Increasing,
        ids,
        "theorem2",
    )
}

#[allow(clippy::too_many_arguments)]
fn check(
    f: &dyn Fn(f64) -> f64,
    g: &dyn Fn(f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
    orientation: Orientation,
    monotone: Monotone,
    ids: Ids,
    name: &str,
) -> ConditionReport {
    let n = grid.resolution();
    let cap = grid.max_witnesses();
    let pts = grid.points();
    let fv: Vec<f64> = pts.iter().map(|&x| f(x)).collect();

    // g along the sorted set of distinct transformed distances
    let mut dists: Vec<f64> = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            dists.push((fv[a] - fv[b]).abs());
        }
    }
    dists.sort_by(f64::total_cmp);
    let mut reps: Vec<f64> = Vec::new();
    for d in dists {
        match reps.last() {
            Some(&last) if d - last <= tol.equality => {}
            _ => reps.push(d),
        }
    }
    let mut g_item = ItemBuilder::new(ids.g, cap);
    for w in reps.windows(2) {
        let (d1, d2) = (w[0], w[1]);
        let (g1, g2) = (g(d1), g(d2));
        let ok = match monotone {
            Monotone::Decreasing => g1 > g2 + tol.strict,
            Monotone::Increasing => g2 > g1 + tol.strict,
        };
        g_item.record(ok, || Witness::Pair {
            a: d1,
            b: d2,
            value_a: g1,
            value_b: g2,
        });
    }

    let mut f_item = ItemBuilder::new(ids.f, cap);
    for k in 0..n - 1 {
        f_item.record(fv[k + 1] > fv[k] + tol.strict, || Witness::Pair {
            a: pts[k],
            b: pts[k + 1],
            value_a: fv[k],
            value_b: fv[k + 1],
        });
    }

    // Equal distance around x_i means x_j = x_i + s, x_d = x_i - s (or the
    // reverse), so x_i is the exact midpoint of x_j and x_d.
    let mut upper = ItemBuilder::new(ids.upper, cap);
    let mut lower = ItemBuilder::new(ids.lower, cap);
    for i in 0..n {
        let sign = grid.sign(i);
        if sign == 0 {
            continue;
        }
        for s in 1..=i.min(n - 1 - i) {
            // upper item: x_j > x_d with x_i > 0; lower item: x_j < x_d with x_i < 0
            let (j, d) = if sign > 0 {
                (i + s, i - s)
            } else {
                (i - s, i + s)
            };
            let mid = (fv[j] + fv[d]) / 2.0;
            let fi = fv[i];
            let below = fi < mid - tol.strict;
            let above = fi > mid + tol.strict;
            let witness = || Witness::Midpoint {
                x_i: pts[i],
                x_j: pts[j],
                x_d: pts[d],
                f_i: fi,
                midpoint: mid,
            };
            match (sign > 0, orientation) {
                (true, Orientation::AsWritten) => upper.record(below, witness),
                (true, Orientation::Corrected) => upper.record(above, witness),
                (false, Orientation::AsWritten) => lower.record(above, witness),
                (false, Orientation::Corrected) => lower.record(below, witness),
            }
        }
    }

    let mut neutral = ItemBuilder::new(ids.neutral, cap);
    let c = grid.center();
    for k in c + 1..n {
        let mirror = n - 1 - k;
        let mid = (fv[k] + fv[mirror]) / 2.0;
        neutral.record((fv[c] - mid).abs() <= tol.equality, || Witness::Midpoint {
            x_i: pts[c],
            x_j: pts[k],
            x_d: pts[mirror],
            f_i: fv[c],
            midpoint: mid,
        });
    }

    ConditionReport {
        condition: name.to_string(),
        resolution: n,
        orientation: Some(orientation),
        items: vec![
            g_item.finish(),
            f_item.finish(),
            upper.finish(),
            lower.finish(),
            neutral.finish(),
        ],
    }
}
