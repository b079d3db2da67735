use std::path::{Path, PathBuf};

use opinion_bias::dynamics::run as run_dynamics;
use opinion_bias::export::{trajectory_csv, trajectory_json};
use opinion_bias::{ConfigError, ExperimentConfig};

use crate::{write_file, Failure};

pub fn run(configs: &[PathBuf], out_dir: &Path) -> Result<(), Failure> {
    if let [single] = configs {
        return run_one(single, out_dir);
    }
    let results: Vec<Result<(), Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| {
                let stem = cfg
                    .file_stem()
                    .map_or_else(|| "run".into(), |s| s.to_os_string());
                let dir = out_dir.join(stem);
                s.spawn(move || run_one(cfg, &dir))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    let mut worst: Option<Failure> = None;
    for (cfg, r) in configs.iter().zip(results) {
        if let Err(f) = r {
            match &f {
                Failure::Config(m) => eprintln!("{}: error: {m}", cfg.display()),
                Failure::Infeasible(m) => eprintln!("{}: infeasible: {m}", cfg.display()),
                Failure::CheckFailed => {}
            }
            // configuration errors outrank infeasibility
            let replace = matches!(
                (&worst, &f),
                (None, _) | (Some(Failure::Infeasible(_)), Failure::Config(_))
            );
            if replace {
                worst = Some(f);
            }
        }
    }
    match worst {
        None => Ok(()),
        Some(Failure::Config(_)) => {
            Err(Failure::Config("one or more configurations failed".into()))
        }
        Some(_) => Err(Failure::Infeasible(
            "one or more runs were infeasible".into(),
        )),
    }
}

fn config_error(e: ConfigError) -> Failure {
    Failure::Config(e.to_string())
}

fn run_one(config_path: &Path, out_dir: &Path) -> Result<(), Failure> {
    let cfg = ExperimentConfig::load(config_path).map_err(config_error)?;
    let base = config_path.parent().unwrap_or(Path::new("."));
    let exp = cfg.resolve(base).map_err(config_error)?;
    let traj = run_dynamics(&exp.model, &exp.graph, exp.x0, &exp.run).map_err(|e| {
        if e.is_infeasibility() {
            Failure::Infeasible(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    })?;
    let csv_path = out_dir.join(&cfg.output.csv);
    let json_path = out_dir.join(&cfg.output.json);
    write_file(&csv_path, &trajectory_csv(&traj))?;
    write_file(&json_path, &trajectory_json(&cfg, &traj))?;
    let steps = traj.states.len() - 1;
    match traj.converged_at {
        Some(k) => println!("{steps} steps, converged at k = {k}"),
        None => println!("{steps} steps, not converged"),
    }
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}
