//! Conformal welding of analytic circle diffeomorphisms.
//!
//! With `f₊(z) = z·exp(v₊(z))` (`v₊(0) = 0`) and `f₋(w) = w·exp(v₋(w))`
//! (`v₋` bounded at `∞`), the welding condition `f₊ = f₋ ∘ f` on the circle
//! becomes the linear equation `v₊(z) − v₋(f(z)) = log(f(z)/z) = 2πi φ̃(z)`,
//! solved here as one spectral system.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle_group::CircleDiffeo;
use crate::error::{Error, Result};
use crate::laurent::{circle_grid, unit_grid, winding_number, LaurentSeries};

pub const DEFAULT_TOL: f64 = 1e-8;
const CONDITION_LIMIT: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeldingPair {
    /// Coefficients `k ≥ 1` only.
    pub v_plus: LaurentSeries,
    /// Coefficients `k ≤ 0` only, in the variable `w`.
    pub v_minus: LaurentSeries,
    /// `sup |f₊ − f₋ ∘ f|` on a doubled grid.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_estimate: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct Univalence {
    /// `min |f₊′|` over the circles of radius 0.9 and 1.
    pub min_derivative: f64,
    /// Winding of `f₊` around the unit circle.
    pub winding: i64,
}

impl Univalence {
    pub fn plausible(&self) -> bool {
        self.min_derivative > 0.0 && self.winding == 1
    }
}

impl WeldingPair {
    pub fn f_plus(&self, z: Complex64) -> Complex64 {
        z * self.v_plus.evaluate(z).exp()
    }

    pub fn f_minus(&self, w: Complex64) -> Complex64 {
        w * self.v_minus.evaluate(w).exp()
    }

    /// `sup_j |f₊(z_j) − f₋(f(z_j))|` on the `m`-point grid.
    pub fn defect(&self, f: &CircleDiffeo, m: usize) -> f64 {
        let z = unit_grid(m);
        let fz = f.image_of_grid(m);
        z.iter()
            .zip(&fz)
            .map(|(z, w)| (self.f_plus(*z) - self.f_minus(*w)).norm())
            .fold(0.0, f64::max)
    }

    pub fn univalence(&self) -> Result<Univalence> {
        let n = self.v_plus.order();
        let m = 4 * n + 1;
        let dv = self.v_plus.padded(1).derivative();
        let mut min_derivative = f64::INFINITY;
        for r in [0.9, 1.0] {
            for z in circle_grid(r, m) {
                let d = self.v_plus.evaluate(z).exp() * (1.0 + z * dv.evaluate(z));
                min_derivative = min_derivative.min(d.norm());
            }
        }
        let vals: Vec<_> = unit_grid(m).into_iter().map(|z| self.f_plus(z)).collect();
        let fp = LaurentSeries::from_samples(&vals, n + 1)?;
        let winding = winding_number(&fp, m.max(2 * n + 3))?;
        Ok(Univalence {
            min_derivative,
            winding,
        })
    }
}

/// Welds `f` at truncation `n` using an `m`-point grid, with the default
/// residual tolerance.
pub fn weld(f: &CircleDiffeo, n: usize, m: usize) -> Result<WeldingPair> {
    weld_with_tol(f, n, m, DEFAULT_TOL)
}

pub fn weld_with_tol(f: &CircleDiffeo, n: usize, m: usize, tol: f64) -> Result<WeldingPair> {
    if m < 2 * n + 1 {
        return Err(Error::InsufficientResolution { grid: m, order: n });
    }
    // equations: every coefficient the grid resolves, |k| ≤ (m-1)/2
    let window = (m - 1) / 2;
    let rows = 2 * window + 1;
    let row = |k: i64| (k + window as i64) as usize;
    let mut a = DMatrix::from_element(rows, 2 * n + 1, Complex64::new(0.0, 0.0));
    // unknowns: a_1..a_n, then b_{-n}..b_0
    for k in 1..=n {
        a[(row(k as i64), k - 1)] = Complex64::new(1.0, 0.0);
    }
    let z = unit_grid(m);
    let disp = f.displacement().to_samples(m);
    for (col, power) in (-(n as i64)..=0).enumerate() {
        let vals: Vec<_> = z
            .iter()
            .zip(&disp)
            .map(|(z, p)| z.powi(power as i32) * (Complex64::new(0.0, TAU * power as f64) * p).exp())
            .collect();
        let comp = LaurentSeries::from_samples(&vals, window)?;
        for k in -(window as i64)..=window as i64 {
            a[(row(k), n + col)] = -comp.coeff(k);
        }
    }
    let rhs = DMatrix::from_fn(rows, 1, |i, _| {
        Complex64::new(0.0, TAU) * f.displacement().coeff(i as i64 - window as i64)
    });

    let svd = a.svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= CONDITION_LIMIT) {
        return Err(Error::WeldingUnresolved { condition });
    }
    let x = svd
        .solve(&rhs, 0.0)
        .map_err(|_| Error::WeldingUnresolved { condition })?;

    let mut v_plus = LaurentSeries::zeros(n);
    for k in 1..=n {
        v_plus.set(k as i64, x[(k - 1, 0)]);
    }
    let mut v_minus = LaurentSeries::zeros(n);
    for (col, power) in (-(n as i64)..=0).enumerate() {
        v_minus.set(power, x[(n + col, 0)]);
    }
    let mut pair = WeldingPair {
        v_plus,
        v_minus,
        residual: 0.0,
        condition_estimate: Some(condition),
    };
    pair.residual = pair.defect(f, 2 * m);
    if !(pair.residual <= tol) {
        return Err(Error::TruncationInsufficient {
            residual: pair.residual,
            tol,
        });
    }
    Ok(pair)
}

/// Closed-form welding of `ψ_a(z) = (z − a)/(1 − āz)`:
/// `f₊(z) = z/(1 − āz)`, `f₋(w) = (w + a)/(1 − |a|²)`.
pub fn mobius_weld_oracle(a: Complex64, n: usize) -> Result<WeldingPair> {
    if !(a.norm() <= 0.9) {
        return Err(Error::Domain(format!(
            "Möbius welding oracle needs |a| ≤ 0.9, got {}",
            a.norm()
        )));
    }
    let v_plus = LaurentSeries::from_fn(n, |k| {
        if k >= 1 {
            a.conj().powi(k as i32) / k as f64
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v_minus = LaurentSeries::from_fn(n, |k| match k {
        0 => Complex64::new(-(1.0 - a.norm_sqr()).ln(), 0.0),
        k if k < 0 => {
            let j = -k;
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            a.powi(j as i32) * sign / j as f64
        }
        _ => Complex64::new(0.0, 0.0),
    });
    let psi = CircleDiffeo::mobius(a, 0.0, n)?;
    let mut pair = WeldingPair {
        v_plus,
        v_minus,
        residual: 0.0,
        condition_estimate: None,
    };
    pair.residual = pair.defect(&psi, 2 * (4 * n + 1));
    Ok(pair)
}
