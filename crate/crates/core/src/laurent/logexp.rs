use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use super::{grid, LaurentSeries};
use crate::error::{Error, Result};

const VANISHING: f64 = 1e-10;

fn check_resolution(order: usize, m: usize) -> Result<()> {
    if m < 2 * order + 1 {
        return Err(Error::InsufficientResolution { grid: m, order });
    }
    Ok(())
}

fn nonvanishing_samples(d: &LaurentSeries, m: usize) -> Result<Vec<Complex64>> {
    let vals = d.to_samples(m);
    let max = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let min = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    if !(min > VANISHING * max.max(f64::MIN_POSITIVE)) {
        return Err(Error::NotInvertible { min_modulus: min });
    }
    Ok(vals)
}

/// `(1/2πi) ∮ d′/d dz` by the trapezoid rule on `m` points.
pub fn winding_number(d: &LaurentSeries, m: usize) -> Result<i64> {
    check_resolution(d.order(), m)?;
    let vals = nonvanishing_samples(d, m)?;
    let dp = d.padded(1).derivative().to_samples(m);
    let z = grid::unit_grid(m);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        acc += z[j] * dp[j] / vals[j];
    }
    let value = acc.re / m as f64;
    let nearest = value.round();
    if (value - nearest).abs() > 0.1 || !value.is_finite() {
        return Err(Error::NonIntegerWinding { value });
    }
    Ok(nearest as i64)
}

fn wrap(mut a: f64) -> f64 {
    while a > PI {
        a -= TAU;
    }
    while a <= -PI {
        a += TAU;
    }
    a
}

/// Continuous branch of `log d` for winding-zero `d`, at the order of `d`.
///
/// The phase is unwrapped sample by sample starting from the principal value
/// at `z = 1`; an adjacent jump of `π/2` or more is refused.
pub fn log_series(d: &LaurentSeries, m: usize) -> Result<LaurentSeries> {
    check_resolution(d.order(), m)?;
    let vals = nonvanishing_samples(d, m)?;
    let mut phase = vals[0].arg();
    let mut logs = Vec::with_capacity(m);
    logs.push(Complex64::new(vals[0].norm().ln(), phase));
    let mut total = 0.0;
    for j in 1..=m {
        let cur = vals[j % m];
        let jump = wrap(cur.arg() - vals[j - 1].arg());
        if jump.abs() >= FRAC_PI_2 {
            return Err(Error::UnderResolved { jump: jump.abs() });
        }
        total += jump;
        if j < m {
            phase += jump;
            logs.push(Complex64::new(cur.norm().ln(), phase));
        }
    }
    let winding = (total / TAU).round() as i64;
    if winding != 0 {
        return Err(Error::NonzeroWinding { winding });
    }
    LaurentSeries::from_samples(&logs, d.order())
}

/// `exp(g)` refit at the order of `g`.
pub fn exp_series(g: &LaurentSeries, m: usize) -> Result<LaurentSeries> {
    check_resolution(g.order(), m)?;
    let vals: Vec<_> = g.to_samples(m).iter().map(|v| v.exp()).collect();
    LaurentSeries::from_samples(&vals, g.order())
}

/// `1/d` refit at the order of `d`.
pub fn reciprocal(d: &LaurentSeries, m: usize) -> Result<LaurentSeries> {
    check_resolution(d.order(), m)?;
    let vals: Vec<_> = nonvanishing_samples(d, m)?.iter().map(|v| v.inv()).collect();
    LaurentSeries::from_samples(&vals, d.order())
}

/// `d = c · d₋ · d₊` with `d₋(∞) = 1` and `d₊(0) = 1`.
#[derive(Clone, Debug)]
pub struct MultiplicativeSplit {
    pub c: Complex64,
    pub minus: LaurentSeries,
    pub plus: LaurentSeries,
}

pub fn split_multiplicative(d: &LaurentSeries, m: usize) -> Result<MultiplicativeSplit> {
    let g = log_series(d, m)?;
    let (gm, mut gp) = g.split();
    let g0 = gp.coeff(0);
    gp.set(0, Complex64::new(0.0, 0.0));
    Ok(MultiplicativeSplit {
        c: g0.exp(),
        minus: exp_series(&gm, m)?,
        plus: exp_series(&gp, m)?,
    })
}
