use circext::cocycles::{CocycleReport, Status};
use num_complex::Complex64;

use crate::config::RunConfig;

/// Evaluates at `start, 2·start, …` until two successive values differ by
/// less than `tol` or the next truncation would exceed `nmax`.
pub fn doubling<F>(start: usize, nmax: usize, tol: f64, mut eval: F) -> circext::Result<CocycleReport>
where
    F: FnMut(usize) -> circext::Result<Complex64>,
{
    let mut n = start;
    let mut value = eval(n)?;
    let mut report = CocycleReport::single(value, n);
    report.max_defect = f64::INFINITY;
    while n * 2 <= nmax {
        n *= 2;
        let next = eval(n)?;
        report.convergence.push((n, next));
        report.max_defect = (next - value).norm();
        report.truncation = n;
        report.value = next;
        value = next;
        if report.max_defect < tol {
            report.status = Status::Converged;
            return Ok(report);
        }
    }
    Ok(report)
}

/// Doubling when `--convergence` is set, a single evaluation otherwise.
pub fn evaluate<F>(cfg: &RunConfig, eval: F) -> circext::Result<CocycleReport>
where
    F: FnMut(usize) -> circext::Result<Complex64>,
{
    if cfg.convergence {
        doubling(cfg.truncation, cfg.nmax, cfg.tol, eval)
    } else {
        let mut eval = eval;
        Ok(CocycleReport::single(eval(cfg.truncation)?, cfg.truncation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stops_when_gap_is_small() {
        let r = doubling(8, 512, 1e-6, |n| Ok(Complex64::new(1.0 + 1.0 / (n * n * n) as f64, 0.0))).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert_eq!(r.convergence.first().unwrap().0, 8);
        assert!(r.max_defect < 1e-6);
        assert_eq!(r.truncation, r.convergence.last().unwrap().0);
    }

    #[test]
    fn unconverged_at_nmax() {
        let r = doubling(8, 32, 1e-12, |n| Ok(Complex64::new(1.0 / n as f64, 0.0))).unwrap();
        assert_eq!(r.status, Status::Unconverged);
        let ns: Vec<_> = r.convergence.iter().map(|p| p.0).collect();
        assert_eq!(ns, vec![8, 16, 32]);
    }

    #[test]
    fn single_evaluation_is_unconverged() {
        let cfg = RunConfig::with_truncation(16);
        let r = evaluate(&cfg, |_| Ok(Complex64::new(2.0, 0.0))).unwrap();
        assert_eq!(r.status, Status::Unconverged);
        assert_eq!(r.convergence.len(), 1);
    }
}
