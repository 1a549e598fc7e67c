use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{default_grid, LaurentSeries, SeriesJson};

const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 50;
const COMPOSE_TAIL_WARN: f64 = 1e-8;

fn turn(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

/// Orientation-preserving analytic diffeomorphism of the circle,
/// `f(e^{2πix}) = e^{2πi(x + φ̃(x))}`, stored by its displacement `φ̃`.
///
/// The displacement is real on the circle: `c_{-k} = conj(c_k)` is imposed at
/// construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiffeoJson", into = "DiffeoJson")]
pub struct CircleDiffeo {
    displacement: LaurentSeries,
    /// `2πi z φ̃′`, whose real part is `φ′ − 1` on the circle.
    slope: LaurentSeries,
}

impl CircleDiffeo {
    pub fn new(displacement: LaurentSeries) -> Result<Self> {
        let n = displacement.order() as i64;
        let mut real = displacement.clone();
        real.set(0, Complex64::new(displacement.coeff(0).re, 0.0));
        for k in 1..=n {
            let ck = 0.5 * (displacement.coeff(k) + displacement.coeff(-k).conj());
            real.set(k, ck);
            real.set(-k, ck.conj());
        }
        let slope = LaurentSeries::from_fn(real.order(), |k| {
            Complex64::new(0.0, TAU * k as f64) * real.coeff(k)
        });
        let f = CircleDiffeo {
            displacement: real,
            slope,
        };
        let min_slope = f.min_slope(default_grid(f.order()).max(64));
        if !(min_slope > 0.0) {
            return Err(Error::Orientation { min_slope });
        }
        Ok(f)
    }

    pub fn identity(order: usize) -> Self {
        Self::rotation(0.0, order)
    }

    /// `z ↦ e^{iθ} z`.
    pub fn rotation(theta: f64, order: usize) -> Self {
        let d = LaurentSeries::constant(Complex64::new(theta / TAU, 0.0), order);
        Self::new(d).expect("rotations are diffeomorphisms")
    }

    /// `z ↦ e^{iθ}(z − a)/(1 − āz)` for `|a| < 1`.
    pub fn mobius(a: Complex64, theta: f64, order: usize) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::Domain(format!("Möbius parameter |a| = {} must be < 1", a.norm())));
        }
        let disp = LaurentSeries::from_fn(order, |k| {
            let denom = Complex64::new(0.0, TAU * k as f64);
            match k {
                0 => Complex64::new(theta / TAU, 0.0),
                k if k > 0 => a.conj().powi(k as i32) / denom,
                k => a.powi(-k as i32) / denom,
            }
        });
        Self::new(disp)
    }

    pub fn displacement(&self) -> &LaurentSeries {
        &self.displacement
    }

    pub fn order(&self) -> usize {
        self.displacement.order()
    }

    /// Same map with the displacement zero-padded or truncated to `order`.
    /// Truncation can break orientation and is checked again.
    pub fn resized(&self, order: usize) -> Result<Self> {
        Self::new(self.displacement.resized(order))
    }

    /// Bound on `sup |φ̃|`.
    fn amplitude(&self) -> f64 {
        self.displacement.coeffs().iter().map(|c| c.norm()).sum()
    }

    /// `φ̃(x)` for real `x`.
    pub fn displacement_at(&self, x: f64) -> f64 {
        self.displacement.evaluate(turn(x)).re
    }

    /// The real lift `φ(x) = x + φ̃(x)`.
    pub fn lift(&self, x: f64) -> f64 {
        x + self.displacement_at(x)
    }

    /// `φ′(x)`.
    pub fn lift_slope(&self, x: f64) -> f64 {
        1.0 + self.slope.evaluate(turn(x)).re
    }

    pub fn min_slope(&self, m: usize) -> f64 {
        self.slope
            .to_samples(m)
            .iter()
            .map(|v| 1.0 + v.re)
            .fold(f64::INFINITY, f64::min)
    }

    /// `f(z)` for `z` on the unit circle.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if (r - 1.0).abs() > 1e-9 {
            return Err(Error::OffCircle { point: z, modulus: r });
        }
        let phase = Complex64::new(0.0, TAU) * self.displacement.evaluate(z);
        Ok(z * phase.exp())
    }

    /// Lift values `φ(j/m)`.
    pub fn lift_on_grid(&self, m: usize) -> Vec<f64> {
        self.displacement
            .to_samples(m)
            .iter()
            .enumerate()
            .map(|(j, v)| j as f64 / m as f64 + v.re)
            .collect()
    }

    /// Images `f(z_j)` of the unit grid.
    pub fn image_of_grid(&self, m: usize) -> Vec<Complex64> {
        self.lift_on_grid(m).into_iter().map(turn).collect()
    }

    /// Solves `φ(x) = y`.
    pub fn solve_lift(&self, y: f64) -> Result<f64> {
        let b = self.amplitude() * (1.0 + 1e-12) + 1e-14;
        let (mut lo, mut hi) = (y - b, y + b);
        let mut x = y - self.displacement_at(y);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        for _ in 0..NEWTON_MAX_ITER {
            let r = self.lift(x) - y;
            if r.abs() < NEWTON_TOL {
                // one polishing step takes the quadratic convergence to roundoff
                let polished = x - r / self.lift_slope(x);
                return Ok(if (self.lift(polished) - y).abs() <= r.abs() {
                    polished
                } else {
                    x
                });
            }
            if r > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let step = r / self.lift_slope(x);
            let next = x - step;
            x = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo < 1e-15 {
                return Ok(x);
            }
        }
        let r = self.lift(x) - y;
        if r.abs() < 10.0 * NEWTON_TOL {
            Ok(x)
        } else {
            Err(Error::InversionFailed { target: y })
        }
    }

    /// Preimages `x_j` with `φ(x_j) = j/m`.
    pub fn inverse_points(&self, m: usize) -> Result<Vec<f64>> {
        if self.displacement.is_zero() {
            return Ok((0..m).map(|j| j as f64 / m as f64).collect());
        }
        (0..m).map(|j| self.solve_lift(j as f64 / m as f64)).collect()
    }

    /// `f^{∘-1}`, displacement fitted at the same order from `m` samples.
    pub fn inverse(&self, m: usize) -> Result<Self> {
        let xs = self.inverse_points(m)?;
        let vals: Vec<_> = xs
            .iter()
            .enumerate()
            .map(|(j, x)| Complex64::new(x - j as f64 / m as f64, 0.0))
            .collect();
        Self::new(LaurentSeries::from_samples(&vals, self.order())?)
    }

    /// `self ∘ other`, fitted at the larger order.
    pub fn compose(&self, other: &Self, m: usize) -> Result<Self> {
        let order = self.order().max(other.order());
        let inner = other.lift_on_grid(m);
        let vals: Vec<_> = inner
            .iter()
            .enumerate()
            .map(|(j, y)| Complex64::new(y - j as f64 / m as f64 + self.displacement_at(*y), 0.0))
            .collect();
        let wide = LaurentSeries::from_samples(&vals, (m - 1) / 2)?;
        let tail: f64 = wide
            .coeffs()
            .iter()
            .zip(-(wide.order() as i64)..)
            .filter(|(_, k)| k.unsigned_abs() as usize > order)
            .map(|(c, _)| c.norm())
            .sum();
        if tail > COMPOSE_TAIL_WARN {
            log::warn!("composition tail mass {tail:e} beyond order {order}");
        }
        Self::new(wide.resized(order))
    }

    /// `f(z) = z exp(2πi φ̃)` as a series of order `N + 1`.
    pub fn as_series(&self, m: usize) -> Result<LaurentSeries> {
        LaurentSeries::from_samples(&self.image_of_grid(m), self.order() + 1)
    }

    /// `f′ = exp(2πi φ̃)(1 + 2πi z φ̃′)`.
    pub fn derivative_series(&self, m: usize) -> Result<LaurentSeries> {
        let vals = self.derivative_on_grid(m);
        LaurentSeries::from_samples(&vals, self.order())
    }

    /// `f′(z_j)` on the unit grid.
    pub fn derivative_on_grid(&self, m: usize) -> Vec<Complex64> {
        let disp = self.displacement.to_samples(m);
        let slope = self.slope.to_samples(m);
        disp.iter()
            .zip(&slope)
            .map(|(p, s)| (Complex64::new(0.0, TAU) * p).exp() * (1.0 + s))
            .collect()
    }

    /// `f′` at arbitrary points `e^{2πix}`.
    pub fn derivative_at_angles(&self, xs: &[f64]) -> Vec<Complex64> {
        xs.iter()
            .map(|x| {
                let z = turn(*x);
                let p = self.displacement.evaluate(z);
                let s = self.slope.evaluate(z);
                (Complex64::new(0.0, TAU) * p).exp() * (1.0 + s)
            })
            .collect()
    }

    /// Samples of `h ∘ f` on the unit grid.
    pub fn pullback_samples(&self, h: &LaurentSeries, m: usize) -> Vec<Complex64> {
        eval_at_angles(h, &self.lift_on_grid(m))
    }

    /// Samples of `h ∘ f^{∘-1}` on the unit grid.
    pub fn pushforward_samples(&self, h: &LaurentSeries, m: usize) -> Result<Vec<Complex64>> {
        if self.displacement.is_zero() {
            return Ok(h.to_samples(m));
        }
        Ok(eval_at_angles(h, &self.inverse_points(m)?))
    }
}

/// Values of `h` at `e^{2πi x}` for each `x`.
pub fn eval_at_angles(h: &LaurentSeries, xs: &[f64]) -> Vec<Complex64> {
    xs.iter().map(|x| h.evaluate(turn(*x))).collect()
}

/// On-disk form `{"displacement": series}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiffeoJson {
    pub displacement: SeriesJson,
}

impl TryFrom<DiffeoJson> for CircleDiffeo {
    type Error = Error;
    fn try_from(j: DiffeoJson) -> Result<Self> {
        CircleDiffeo::new(j.displacement.try_into()?)
    }
}

impl From<CircleDiffeo> for DiffeoJson {
    fn from(f: CircleDiffeo) -> Self {
        DiffeoJson {
            displacement: f.displacement.into(),
        }
    }
}
