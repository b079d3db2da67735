//! CSV and JSON writers for trajectories and weight surfaces.
//!
//! CSV output is LF-terminated, carries a fixed header, and prints every
//! float with 17 significant digits (`{:.16e}`) so values round-trip exactly.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bias::BiasFamily;
use crate::dynamics::Trajectory;

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row per state: `k, x_0..x_{n-1}, alpha_0..alpha_{n-1}`. Row `k` holds
/// the resistances used to leave `x(k)`; the alpha fields of the final row
/// are empty.
pub fn trajectory_csv(t: &Trajectory) -> String {
    let n = t.states.first().map_or(0, |s| s.x.len());
    let mut out = String::from("k");
    for i in 0..n {
        let _ = write!(out, ",x_{i}");
    }
    for i in 0..n {
        let _ = write!(out, ",alpha_{i}");
    }
    out.push('\n');
    for (idx, st) in t.states.iter().enumerate() {
        let _ = write!(out, "{}", st.k);
        for x in &st.x {
            out.push(',');
            out.push_str(&fmt_f64(x.get()));
        }
        match t.alphas.get(idx) {
            Some(alphas) => {
                for a in alphas {
                    out.push(',');
                    out.push_str(&fmt_f64(*a));
                }
            }
            None => out.push_str(&",".repeat(n)),
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct TrajectoryDoc<'a, C: Serialize> {
    config: &'a C,
    trajectory: &'a Trajectory,
}

/// Pretty JSON with the configuration echoed under `config` and the run
/// under `trajectory`.
pub fn trajectory_json<C: Serialize>(config: &C, t: &Trajectory) -> String {
    let mut s = serde_json::to_string_pretty(&TrajectoryDoc {
        config,
        trajectory: t,
    })
    .expect("trajectory documents serialize");
    s.push('\n');
    s
}

/// `c(x_i, x_j)` on a `resolution x resolution` grid over `[-1, 1]^2`,
/// row-major in `x_i`. Returns `None` for a resolution below 2.
pub fn surface_csv(family: &BiasFamily, resolution: usize) -> Option<String> {
    if resolution < 2 {
        return None;
    }
    let m = (resolution - 1) as f64;
    let pts: Vec<f64> = (0..resolution).map(|k| (2.0 * k as f64 - m) / m).collect();
    let mut out = String::from("x_i,x_j,c\n");
    for &a in &pts {
        for &b in &pts {
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt_f64(a),
                fmt_f64(b),
                fmt_f64(family.value(a, b))
            );
        }
    }
    Some(out)
}
