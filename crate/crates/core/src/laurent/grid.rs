//! Uniform grids on circles and the discrete Fourier transform between grid
//! samples and Laurent coefficients.
//!
//! Convention: for samples `v_j` at `z_j = exp(2πi j / M)`,
//! `c_k = (1/M) Σ_j v_j exp(-2πi j k / M)`, with negative `k` read from the
//! upper half of the spectrum (`k mod M`).

use std::cell::RefCell;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Default grid size for a series of order `n`.
pub fn default_grid(order: usize) -> usize {
    4 * order + 1
}

/// The points `exp(2πi j / m)`, `j = 0..m`.
pub fn unit_grid(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64))
        .collect()
}

/// The points `r · exp(2πi j / m)`.
pub fn circle_grid(radius: f64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / m as f64))
        .collect()
}

/// Angles (as fractions of a full turn) of the unit grid.
pub fn grid_fractions(m: usize) -> Vec<f64> {
    (0..m).map(|j| j as f64 / m as f64).collect()
}

pub(crate) fn forward_in_place(buf: &mut [Complex64]) {
    if buf.is_empty() {
        return;
    }
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_forward(buf.len());
        fft.process(buf);
    });
}

pub(crate) fn inverse_in_place(buf: &mut [Complex64]) {
    if buf.is_empty() {
        return;
    }
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(buf.len());
        fft.process(buf);
    });
}

/// Bin index of frequency `k` on an `m`-point grid.
#[inline]
pub(crate) fn bin(k: i64, m: usize) -> usize {
    k.rem_euclid(m as i64) as usize
}

/// Trapezoid value of `(1/2πi) ∮_{|z|=1} F(z) dz` from samples of `F` on the
/// unit grid.
pub fn contour_mean(samples: &[Complex64]) -> Complex64 {
    let m = samples.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (v, z) in samples.iter().zip(unit_grid(m)) {
        acc += v * z;
    }
    acc / m as f64
}
