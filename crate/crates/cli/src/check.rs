use std::path::Path;

use opinion_bias::verifier::{
    check_confirmation, check_negativity, check_theorem1, check_theorem2,
};
use opinion_bias::{GridSpec, Orientation, Tolerances};

use crate::{family, write_file, Failure, Which};

pub struct CheckArgs<'a> {
    pub family: &'a str,
    pub params: &'a str,
    pub which: Which,
    pub resolution: usize,
    pub orientation: Orientation,
    pub exclusion_band: f64,
    pub max_witnesses: usize,
    pub tol: Tolerances,
    pub out: &'a Path,
}

pub fn run(args: CheckArgs<'_>) -> Result<(), Failure> {
    let fam = family::parse(args.family, args.params)?;
    let grid = GridSpec::new(args.resolution)
        .and_then(|g| g.with_exclusion_band(args.exclusion_band))
        .map_err(|e| Failure::Config(e.to_string()))?
        .with_max_witnesses(args.max_witnesses);
    for (name, v) in [
        ("tol-strict", args.tol.strict),
        ("tol-distance", args.tol.distance),
        ("tol-equality", args.tol.equality),
    ] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Failure::Config(format!(
                "{name} must be a finite value >= 0, got {v}"
            )));
        }
    }
    let c = |a: f64, b: f64| fam.value(a, b);
    let report = match args.which {
        Which::Confirmation => check_confirmation(c, &grid, &args.tol),
        Which::Negativity => check_negativity(c, &grid, &args.tol),
        Which::Theorem1 | Which::Theorem2 => {
            let dec = fam.decomposition().ok_or_else(|| {
                Failure::Config(format!("{} has no g(|f(a) - f(b)|) form", fam.name()))
            })?;
            let (f, g) = (|x| dec.f(x), |d| dec.g(d));
            if args.which == Which::Theorem1 {
                check_theorem1(f, g, &grid, &args.tol, args.orientation)
            } else {
                check_theorem2(f, g, &grid, &args.tol, args.orientation)
            }
        }
    };
    write_file(args.out, &report.to_json())?;
    for item in &report.items {
        println!(
            "{:<16} {:<4} checked={} violations={}",
            item.item,
            if item.passed() { "pass" } else { "FAIL" },
            item.checked,
            item.violations
        );
    }
    println!("report written to {}", args.out.display());
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}
