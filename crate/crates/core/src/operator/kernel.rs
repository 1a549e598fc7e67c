use std::f64::consts::TAU;

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

/// Kernel `f(z, w) = (1/2πi) Σ a_{jk} z^j w^{-k-1}` of an operator on `ℋ₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub coeff: Matrix,
}

const AMPLIFICATION_LIMIT: f64 = 1e8;

impl Kernel {
    pub fn new(coeff: Matrix) -> Result<Self> {
        if coeff.nrows() != coeff.ncols() {
            return Err(Error::Shape(format!(
                "kernel matrix must be square, got {}x{}",
                coeff.nrows(),
                coeff.ncols()
            )));
        }
        Ok(Kernel { coeff })
    }

    pub fn size(&self) -> usize {
        self.coeff.nrows()
    }

    /// `f(z, w)`.
    pub fn evaluate(&self, z: Complex64, w: Complex64) -> Complex64 {
        let n = self.size();
        let mut zp = Vec::with_capacity(n);
        let mut wp = Vec::with_capacity(n);
        let (mut a, winv) = (Complex64::new(1.0, 0.0), w.inv());
        let mut b = winv;
        for _ in 0..n {
            zp.push(a);
            wp.push(b);
            a *= z;
            b *= winv;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let mut row = Complex64::new(0.0, 0.0);
            for k in 0..n {
                row += self.coeff[(j, k)] * wp[k];
            }
            acc += zp[j] * row;
        }
        acc / Complex64::new(0.0, TAU)
    }

    /// `Σ |a_{jk}| R^{j-k}`: growth of the diagonal restriction on `|v| = R`.
    fn amplification(&self, radius: f64) -> f64 {
        let n = self.size();
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                acc += self.coeff[(j, k)].norm() * radius.powi(j as i32 - k as i32);
            }
        }
        acc
    }
}

/// `∮_{|v| = 1+σ} f(v, v) dv` by the trapezoid rule on `m` points.
pub fn trace_contour(k: &Kernel, sigma: f64, m: usize) -> Result<Complex64> {
    let radius = 1.0 + sigma;
    let n = k.size();
    let amplification = k.amplification(radius);
    let diag: f64 = (0..n).map(|j| k.coeff[(j, j)].norm()).sum();
    if !(sigma > 0.0 && sigma <= 0.5) || amplification > AMPLIFICATION_LIMIT * diag.max(1.0) {
        return Err(Error::Radius {
            sigma,
            amplification,
        });
    }
    if m < 2 * n + 1 {
        return Err(Error::InsufficientResolution { grid: m, order: n });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let v = Complex64::from_polar(radius, TAU * j as f64 / m as f64);
        acc += k.evaluate(v, v) * v;
    }
    Ok(acc * Complex64::new(0.0, TAU) / m as f64)
}
