//! Truncated Laurent series on an annulus around the unit circle.
//!
//! A [`LaurentSeries`] of order `N` stores the dense coefficient vector
//! `c_{-N}, …, c_N` of `Σ c_k z^k`. It is the carrier for every analytic
//! function in the crate: elements of `ℋ(S¹)`, displacements of circle
//! diffeomorphisms, and the symbols of Lie algebra elements.

pub mod grid;
mod logexp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use grid::{circle_grid, contour_mean, default_grid, grid_fractions, unit_grid};
pub use logexp::{
    exp_series, log_series, reciprocal, split_multiplicative, winding_number, MultiplicativeSplit,
};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Dense truncated two-sided series `Σ_{k=-N}^{N} c_k z^k`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct LaurentSeries {
    order: usize,
    coeffs: Vec<Complex64>,
    decay_hint: Option<f64>,
}

/// Annulus `r_min ≤ |z| ≤ r_max` on which evaluation is trusted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrustAnnulus {
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for TrustAnnulus {
    fn default() -> Self {
        TrustAnnulus {
            r_min: 0.5,
            r_max: 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainWarning {
    pub modulus: f64,
    pub annulus: TrustAnnulus,
}

impl fmt::Display for DomainWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|z| = {} outside trust annulus [{}, {}]",
            self.modulus, self.annulus.r_min, self.annulus.r_max
        )
    }
}

/// Coefficient-decay diagnostic.
#[derive(Clone, Debug)]
pub struct TailReport {
    /// `envelope[m] = max_{|k| ≥ m} |c_k|`, `m = 0..=N`.
    pub envelope: Vec<f64>,
    /// `Σ |c_k|` over the outer quarter `|k| > 3N/4`.
    pub edge_mass: f64,
    /// Least-squares geometric rate fitted to the log envelope, when defined.
    pub decay_estimate: Option<f64>,
}

impl LaurentSeries {
    pub fn new(order: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * order + 1 {
            return Err(Error::Shape(format!(
                "series of order {order} needs {} coefficients, got {}",
                2 * order + 1,
                coeffs.len()
            )));
        }
        Ok(LaurentSeries {
            order,
            coeffs,
            decay_hint: None,
        })
    }

    pub fn zeros(order: usize) -> Self {
        LaurentSeries {
            order,
            coeffs: vec![ZERO; 2 * order + 1],
            decay_hint: None,
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[order] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// `c · z^k`; the order is raised to `|k|` if needed.
    pub fn monomial(k: i64, c: Complex64, order: usize) -> Self {
        let order = order.max(k.unsigned_abs() as usize);
        let mut s = Self::zeros(order);
        s.set(k, c);
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(i64) -> Complex64) -> Self {
        let n = order as i64;
        LaurentSeries {
            order,
            coeffs: (-n..=n).map(&mut f).collect(),
            decay_hint: None,
        }
    }

    pub fn with_decay_hint(mut self, rho: f64) -> Self {
        self.decay_hint = Some(rho);
        self
    }

    pub fn decay_hint(&self) -> Option<f64> {
        self.decay_hint
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients listed `k = -N … N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.order as i64;
        if k < -n || k > n {
            ZERO
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    /// Sets the coefficient of `z^k`. Panics if `|k| > N`.
    pub fn set(&mut self, k: i64, c: Complex64) {
        let n = self.order as i64;
        assert!(k.abs() <= n, "index {k} outside order {n}");
        self.coeffs[(k + n) as usize] = c;
    }

    /// Zero-pads or truncates to a new order.
    pub fn resized(&self, order: usize) -> Self {
        let mut s = Self::from_fn(order, |k| self.coeff(k));
        s.decay_hint = self.decay_hint;
        s
    }

    pub fn padded(&self, extra: usize) -> Self {
        self.resized(self.order + extra)
    }

    /// Multiplication by `z^shift`, widening the order so nothing is lost.
    pub fn shifted(&self, shift: i64) -> Self {
        let order = self.order + shift.unsigned_abs() as usize;
        Self::from_fn(order, |k| self.coeff(k - shift))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        LaurentSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
            decay_hint: self.decay_hint,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.max(other.order);
        Self::from_fn(order, |k| self.coeff(k) + other.coeff(k))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.max(other.order);
        Self::from_fn(order, |k| self.coeff(k) - other.coeff(k))
    }

    /// Product truncated to the larger operand order.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with_tail(other).0
    }

    /// Product truncated to the larger operand order, together with the
    /// discarded tail mass `Σ_{|k| > N} |c_k|` of the exact product.
    pub fn mul_with_tail(&self, other: &Self) -> (Self, f64) {
        let order = self.order.max(other.order);
        let full = 2 * order;
        let m = grid::default_grid(order).max(2 * full + 1);
        let a = self.to_samples(m);
        let b = other.to_samples(m);
        let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let exact = Self::from_samples(&prod, full).expect("grid sized for exact product");
        let tail: f64 = (-(full as i64)..=full as i64)
            .filter(|k| k.unsigned_abs() as usize > order)
            .map(|k| exact.coeff(k).norm())
            .sum();
        (exact.resized(order), tail)
    }

    /// `d/dz` at the same order: the coefficient at `k-1` is `k·c_k`. The
    /// `z^{-N-1}` term produced by `c_{-N}` falls outside the range and is
    /// dropped; pad first when it matters.
    pub fn derivative(&self) -> Self {
        Self::from_fn(self.order, |k| {
            let src = k + 1;
            self.coeff(src) * src as f64
        })
    }

    /// `Σ c_k z^k`, evaluated as two Horner recurrences (in `z` and `1/z`).
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let n = self.order;
        let mut plus = ZERO;
        for c in self.coeffs[n..].iter().rev() {
            plus = plus * z + c;
        }
        if n == 0 {
            return plus;
        }
        let w = z.inv();
        let mut minus = ZERO;
        for c in self.coeffs[..n].iter() {
            minus = (minus + c) * w;
        }
        plus + minus
    }

    /// Evaluation that reports when `z` leaves the trust annulus.
    pub fn evaluate_checked(
        &self,
        z: Complex64,
        annulus: TrustAnnulus,
    ) -> (Complex64, Option<DomainWarning>) {
        let r = z.norm();
        let warning = (r < annulus.r_min || r > annulus.r_max).then(|| {
            let w = DomainWarning {
                modulus: r,
                annulus,
            };
            log::warn!("{w}");
            w
        });
        (self.evaluate(z), warning)
    }

    /// Projections onto `ℋ₋` (strictly negative powers) and `ℋ₊`
    /// (nonnegative powers).
    pub fn split(&self) -> (Self, Self) {
        (self.minus_part(), self.plus_part())
    }

    pub fn minus_part(&self) -> Self {
        Self::from_fn(self.order, |k| if k < 0 { self.coeff(k) } else { ZERO })
    }

    pub fn plus_part(&self) -> Self {
        Self::from_fn(self.order, |k| if k >= 0 { self.coeff(k) } else { ZERO })
    }

    /// Values at the `m`-point unit grid. Any `m` is allowed; frequencies are
    /// folded modulo `m`, which leaves the sample values exact.
    pub fn to_samples(&self, m: usize) -> Vec<Complex64> {
        self.to_samples_on_radius(1.0, m)
    }

    /// Values at `r · exp(2πi j / m)`.
    pub fn to_samples_on_radius(&self, radius: f64, m: usize) -> Vec<Complex64> {
        let mut buf = vec![ZERO; m];
        let n = self.order as i64;
        for k in -n..=n {
            let c = self.coeff(k);
            if c != ZERO {
                let w = if radius == 1.0 { c } else { c * radius.powi(k as i32) };
                buf[grid::bin(k, m)] += w;
            }
        }
        grid::inverse_in_place(&mut buf);
        buf
    }

    /// Fits a series of order `order` to samples on the unit grid.
    pub fn from_samples(values: &[Complex64], order: usize) -> Result<Self> {
        let m = values.len();
        if m < 2 * order + 1 {
            return Err(Error::InsufficientResolution { grid: m, order });
        }
        let mut buf = values.to_vec();
        grid::forward_in_place(&mut buf);
        let inv_m = 1.0 / m as f64;
        Ok(Self::from_fn(order, |k| buf[grid::bin(k, m)] * inv_m))
    }

    /// `max_j |a(z_j)|` over the `m`-point unit grid.
    pub fn sup_on_grid(&self, m: usize) -> f64 {
        self.to_samples(m).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus_on_grid(&self, m: usize) -> f64 {
        self.to_samples(m)
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest coefficient magnitude difference.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let order = self.order.max(other.order) as i64;
        (-order..=order)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn tail_report(&self) -> TailReport {
        let n = self.order;
        let mut envelope = vec![0.0; n + 1];
        let mut running: f64 = 0.0;
        for m in (0..=n).rev() {
            let k = m as i64;
            running = running.max(self.coeff(k).norm()).max(self.coeff(-k).norm());
            envelope[m] = running;
        }
        let edge_mass = (-(n as i64)..=n as i64)
            .filter(|k| 4 * k.unsigned_abs() as usize > 3 * n)
            .map(|k| self.coeff(k).norm())
            .sum();
        let decay_estimate = fit_decay(&envelope);
        TailReport {
            envelope,
            edge_mass,
            decay_estimate,
        }
    }
}

fn fit_decay(envelope: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = envelope
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > 1e-300)
        .map(|(m, v)| (m as f64, v.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some(((n * sxy - sx * sy) / denom).exp())
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order as i64;
        let mut list = f.debug_map();
        for k in -n..=n {
            let c = self.coeff(k);
            if c != ZERO {
                list.entry(&k, &c);
            }
        }
        list.finish()
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::add(self, rhs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::sub(self, rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::mul(self, rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// On-disk form: `{"order": N, "coeffs": [[re, im], …]}` listed `k = -N … N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay_hint: Option<f64>,
}

impl TryFrom<SeriesJson> for LaurentSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        let coeffs = j.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        let mut s = LaurentSeries::new(j.order, coeffs)?;
        if let Some(rho) = j.decay_hint {
            if !(rho > 0.0 && rho < 1.0) {
                return Err(Error::Domain(format!("decay_hint {rho} must lie in (0, 1)")));
            }
            s.decay_hint = Some(rho);
        }
        Ok(s)
    }
}

impl From<LaurentSeries> for SeriesJson {
    fn from(s: LaurentSeries) -> Self {
        SeriesJson {
            order: s.order,
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            decay_hint: s.decay_hint,
        }
    }
}
