use std::fs;
use std::path::{Path, PathBuf};

use circext::circle_group::{DiffeoJson, GroupJson};
use circext::cocycles::{cocycle_d, pairing_t, CocycleReport};
use circext::laurent::SeriesJson;
use circext::welding::weld;
use circext::{CircleDiffeo, GroupElement, LaurentSeries};
use clap::Subcommand;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::config::RunConfig;
use crate::convergence::{doubling, evaluate};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::suites::{run_suite, Suite};

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Evaluate the pairing 𝕋(f, g) of two series.
    Pairing { f: PathBuf, g: PathBuf },
    /// Evaluate the determinant cocycle D(g₁, g₂).
    CocycleD { g1: PathBuf, g2: PathBuf },
    /// Run a verification suite; exits 1 if any check fails.
    Verify { suite: Suite },
    /// Weld a circle diffeomorphism.
    Weld { f: PathBuf },
}

/// A JSON document and the exit code that goes with it.
#[derive(Debug)]
pub struct Outcome {
    pub document: Value,
    pub exit_code: i32,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Malformed {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_series(path: &Path) -> Result<LaurentSeries, CliError> {
    Ok(read_json::<SeriesJson>(path)?.try_into()?)
}

pub fn read_group(path: &Path) -> Result<GroupElement, CliError> {
    Ok(read_json::<GroupJson>(path)?.try_into()?)
}

pub fn read_diffeo(path: &Path) -> Result<CircleDiffeo, CliError> {
    Ok(read_json::<DiffeoJson>(path)?.try_into()?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `𝕋(f, g)`; with `--convergence` the quadrature grid is doubled until
/// the value settles.
pub fn cmd_pairing(f: &LaurentSeries, g: &LaurentSeries, cfg: &RunConfig) -> Result<CocycleReport, CliError> {
    let order = f.order().max(g.order());
    let base = cfg.grid.max(2 * order + 3);
    let grid = |n: usize| base * n / cfg.truncation | 1;
    let mut report = evaluate(cfg, |n| pairing_t(f, g, grid(n)))?;
    report.meta.insert("grid".into(), Value::from(grid(report.truncation)));
    report.truncation = order;
    Ok(report)
}

pub fn cmd_cocycle_d(g1: &GroupElement, g2: &GroupElement, cfg: &RunConfig) -> Result<CocycleReport, CliError> {
    Ok(evaluate(cfg, |n| cocycle_d(g1, g2, n))?)
}

/// Welding at `N`; with `--convergence` also at `2N`, recording the drift.
pub fn cmd_weld(f: &CircleDiffeo, cfg: &RunConfig) -> Result<Value, CliError> {
    let n = cfg.truncation;
    let w = weld(f, n, cfg.grid)?;
    let mut doc = to_value(&w);
    if cfg.convergence {
        let fine = weld(&f.resized(2 * n)?, 2 * n, cfg.grid_for(2 * n))?;
        let drift = w
            .v_plus
            .resized(2 * n)
            .max_coeff_diff(&fine.v_plus)
            .max(w.v_minus.resized(2 * n).max_coeff_diff(&fine.v_minus));
        doc["doubling_drift"] = Value::from(drift);
    }
    Ok(doc)
}

pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let ok = |document: Value| Outcome {
        document,
        exit_code: EXIT_OK,
    };
    match cmd {
        Command::Pairing { f, g } => {
            let (f, g) = (read_series(f)?, read_series(g)?);
            Ok(ok(to_value(&cmd_pairing(&f, &g, cfg)?)))
        }
        Command::CocycleD { g1, g2 } => {
            let (g1, g2) = (read_group(g1)?, read_group(g2)?);
            Ok(ok(to_value(&cmd_cocycle_d(&g1, &g2, cfg)?)))
        }
        Command::Verify { suite } => {
            let report = run_suite(*suite, cfg);
            for c in report.checks.iter().filter(|c| !c.passed) {
                log::warn!("{suite}: check {} failed (worst {:?}, bound {:?})", c.name, c.worst, c.bound);
            }
            Ok(Outcome {
                exit_code: if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
                document: to_value(&report),
            })
        }
        Command::Weld { f } => {
            let f = read_diffeo(f)?;
            Ok(ok(cmd_weld(&f, cfg)?))
        }
    }
}

/// Doubling trace for callers that always need a converged value.
pub fn converged_cocycle_d(g1: &GroupElement, g2: &GroupElement, cfg: &RunConfig) -> circext::Result<CocycleReport> {
    doubling(cfg.truncation, cfg.nmax, cfg.tol, |n| cocycle_d(g1, g2, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use circext::cocycles::Status;
    use num_complex::Complex64;

    #[test]
    fn pairing_of_z_with_itself() {
        let z = LaurentSeries::monomial(1, Complex64::new(1.0, 0.0), 1);
        let cfg = RunConfig::with_truncation(8);
        let r = cmd_pairing(&z, &z, &cfg).unwrap();
        assert!((r.value + 1.0).norm() < 1e-14);
    }

    #[test]
    fn cocycle_d_with_identity_converges() {
        let mut cfg = RunConfig::with_truncation(16);
        cfg.convergence = true;
        let g = GroupElement::function(LaurentSeries::from_fn(4, |k| {
            Complex64::new(if k == 0 { 2.0 } else { 0.1 }, 0.0)
        }))
        .unwrap();
        let r = cmd_cocycle_d(&g, &GroupElement::identity(4), &cfg).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert!((r.value - 1.0).norm() < 1e-13);
    }
}
